//! Qubit-mapping benchmark framework: circuits, topologies, mapping
//! algorithms, correctness checks and an experiment harness.

pub mod circuit;
pub mod dag;
pub mod error;
pub mod evaluation;
pub mod harness;
pub mod io;
pub mod mappers;
pub mod topology;

pub use circuit::{Gate, GateKind, QuantumCircuit};
pub use error::{CircuitError, EvalError, HamiltonianError, HarnessError, QasmError, TopologyError};
pub use io::{Hamiltonian, Pauli, PauliTerm};
pub use mappers::{
    run_circuit, run_hamiltonian, FailureReason, Layout, MappedCircuit, MapperDescriptor, MapperParams, MappingResult,
    QubitMapper,
};
pub use topology::{Backend, CouplingGraph};
