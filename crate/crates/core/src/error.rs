use std::path::PathBuf;

use thiserror::Error;

use crate::circuit::GateKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("{kind} takes {expected} qubit(s), got {found}")]
    Arity { kind: GateKind, expected: usize, found: usize },
    #[error("{kind} takes {expected} parameter(s), got {found}")]
    ParamCount { kind: GateKind, expected: usize, found: usize },
    #[error("{kind} applied twice to qubit {qubit}")]
    RepeatedQubit { kind: GateKind, qubit: usize },
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QasmError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unsupported gate `{name}`")]
    UnsupportedGate { line: usize, column: usize, name: String },
    #[error("{line}:{column}: qubit index {index} out of bounds for register of size {size}")]
    IndexOutOfBounds { line: usize, column: usize, index: usize, size: usize },
    #[error("{line}:{column}: only one quantum register is supported")]
    MultipleRegisters { line: usize, column: usize },
    #[error("{line}:{column}: {source}")]
    Gate { line: usize, column: usize, source: CircuitError },
    #[error("no quantum register declared")]
    MissingRegister,
}

#[derive(Debug, Error)]
pub enum HamiltonianError {
    #[error("malformed hamiltonian document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("term {term}: invalid pauli character `{character}`")]
    InvalidCharacter { term: usize, character: char },
    #[error("term {term}: pauli string has length {found}, expected {expected}")]
    LengthMismatch { term: usize, expected: usize, found: usize },
    #[error("term {term}: coefficient is not finite")]
    NonFiniteCoefficient { term: usize },
}

#[derive(Debug, Error)]
pub enum TopologyError {
    #[error("coupling graph needs at least one qubit")]
    Empty,
    #[error("zero dimension in lattice parameters")]
    ZeroDimension,
    #[error("self-loop on qubit {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) references a qubit outside 0..{num_qubits}")]
    EdgeOutOfRange { u: usize, v: usize, num_qubits: usize },
    #[error("coupling graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("unknown topology `{0}`")]
    UnknownName(String),
    #[error("topology `{name}` has {found} qubits, registry expects {expected}")]
    QubitCountMismatch { name: String, expected: usize, found: usize },
    #[error("topology file {path}: {message}")]
    DataFile { path: PathBuf, message: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("gate {gate} touches physical qubit {qubit}, outside a {num_qubits}-qubit backend")]
    IndexOutOfRange { gate: usize, qubit: usize, num_qubits: usize },
    #[error("gate {gate} acts on physical qubit {qubit} which holds no logical qubit")]
    UnmappedQubit { gate: usize, qubit: usize },
    #[error("cannot simulate {found} qubits (limit {limit})")]
    TooManyQubits { found: usize, limit: usize },
    #[error("mapping result carries no circuit: {0}")]
    FailedResult(String),
    #[error("layout is not injective or exceeds the backend")]
    InvalidLayout,
    #[error("gate {gate} acts on ({u}, {v}), which is not a coupling edge")]
    NotAnEdge { gate: usize, u: usize, v: usize },
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown mapper `{0}`")]
    UnknownMapper(String),
    #[error("unknown circuit key `{0}`")]
    UnknownCircuit(String),
    #[error("invalid circuit key `{key}`: {message}")]
    InvalidCircuitKey { key: String, message: String },
    #[error("unknown criterion `{0}`")]
    UnknownCriterion(String),
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
    #[error("no registered mapper accepts this input")]
    NoApplicableMapper,
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error(transparent)]
    Qasm(#[from] QasmError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }
}
