//! The mapper contract and the built-in mapping algorithms.
//!
//! Every mapper turns a logical circuit (or a Pauli-string Hamiltonian) into a
//! circuit over the physical qubits of a [`Backend`] whose two-qubit gates all
//! act on coupling edges. Built-ins are pure functions of their inputs, seed
//! and [`MapperParams`].

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::circuit::QuantumCircuit;
use crate::io::Hamiltonian;
use crate::topology::Backend;

pub mod external;
mod layout;
pub mod pauli_static;
pub mod peephole;
mod routing;
pub mod sabre;
pub mod synthesis;
pub mod time_aware;
pub mod trivial;

pub use external::{AdapterConfig, ExternalMapper, InputMode};
pub use layout::Layout;
pub use sabre::Heuristic;
pub use synthesis::{hamiltonian_reference_circuit, synthesize_hamiltonian};

/// Tunables shared by all built-in mappers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MapperParams {
    pub layout_trials: usize,
    pub swap_trials: usize,
    pub fwd_bwd_iterations: usize,
    pub lookahead_window: usize,
    pub lookahead_weight: f64,
    pub decay_delta: f64,
    pub decay_reset_interval: usize,
    pub occupancy_weight: f64,
    /// Caps both trial counts at [`MapperParams::FAST_TRIALS`].
    pub fast_profile: bool,
    /// Wall-clock budget for built-in mappers; exceeded runs fail with `timeout`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timeout_s: Option<f64>,
}

impl Default for MapperParams {
    fn default() -> Self {
        MapperParams {
            layout_trials: 200,
            swap_trials: 200,
            fwd_bwd_iterations: 4,
            lookahead_window: 20,
            lookahead_weight: 0.5,
            decay_delta: 0.001,
            decay_reset_interval: 5,
            occupancy_weight: 0.5,
            fast_profile: false,
            timeout_s: None,
        }
    }
}

impl MapperParams {
    pub const FAST_TRIALS: usize = 20;

    pub fn fast() -> Self {
        MapperParams { fast_profile: true, ..Default::default() }
    }

    pub fn effective_layout_trials(&self) -> usize {
        if self.fast_profile {
            self.layout_trials.min(Self::FAST_TRIALS)
        } else {
            self.layout_trials
        }
    }

    pub fn effective_swap_trials(&self) -> usize {
        if self.fast_profile {
            self.swap_trials.min(Self::FAST_TRIALS)
        } else {
            self.swap_trials
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let counts = [
            ("layout_trials", self.layout_trials),
            ("swap_trials", self.swap_trials),
            ("fwd_bwd_iterations", self.fwd_bwd_iterations),
            ("lookahead_window", self.lookahead_window),
            ("decay_reset_interval", self.decay_reset_interval),
        ];
        for (name, value) in counts {
            if value == 0 {
                return Err(format!("{name} must be at least 1"));
            }
        }
        let weights = [
            ("lookahead_weight", self.lookahead_weight),
            ("decay_delta", self.decay_delta),
            ("occupancy_weight", self.occupancy_weight),
        ];
        for (name, value) in weights {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(format!("{name} must be a finite non-negative number"));
            }
        }
        if let Some(t) = self.timeout_s {
            if !(t > 0.0) {
                return Err("timeout_s must be positive".into());
            }
        }
        Ok(())
    }

    pub fn to_map(&self) -> BTreeMap<String, serde_json::Value> {
        match serde_json::to_value(self).expect("params serialize") {
            serde_json::Value::Object(map) => map.into_iter().collect(),
            _ => unreachable!("params serialize to an object"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapperDescriptor {
    pub id: String,
    pub supports_circuit: bool,
    pub supports_hamiltonian: bool,
    pub default_params: BTreeMap<String, serde_json::Value>,
    pub summary: String,
}

/// Why a mapping attempt produced no circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    UnsupportedInput,
    InsufficientQubits { required: usize, available: usize },
    Timeout,
    InvalidExternalOutput(String),
    ParseError(String),
    ExternalFailure(String),
    Internal(String),
}

impl FailureReason {
    /// Stable machine-readable tag, the prefix of the `Display` text.
    pub fn tag(&self) -> &'static str {
        match self {
            FailureReason::UnsupportedInput => "unsupported-input",
            FailureReason::InsufficientQubits { .. } => "insufficient-qubits",
            FailureReason::Timeout => "timeout",
            FailureReason::InvalidExternalOutput(_) => "invalid-external-output",
            FailureReason::ParseError(_) => "parse-error",
            FailureReason::ExternalFailure(_) => "external-failure",
            FailureReason::Internal(_) => "internal-error",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::UnsupportedInput | FailureReason::Timeout => f.write_str(self.tag()),
            // The bare tag is the contract; sizes are available on the variant.
            FailureReason::InsufficientQubits { .. } => f.write_str(self.tag()),
            FailureReason::InvalidExternalOutput(d)
            | FailureReason::ParseError(d)
            | FailureReason::ExternalFailure(d)
            | FailureReason::Internal(d) => write!(f, "{}: {d}", self.tag()),
        }
    }
}

/// A successful mapping with its measured metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct MappedCircuit {
    pub circuit: QuantumCircuit,
    pub initial_layout: Layout,
    pub final_layout: Layout,
    pub swap_count: usize,
    pub cnot_count: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MappingResult {
    pub outcome: Result<MappedCircuit, FailureReason>,
    pub optimisation_time: f64,
}

impl MappingResult {
    pub fn failure(reason: FailureReason, optimisation_time: f64) -> Self {
        MappingResult { outcome: Err(reason), optimisation_time }
    }

    pub fn is_success(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn mapped(&self) -> Option<&MappedCircuit> {
        self.outcome.as_ref().ok()
    }

    pub fn failure_reason(&self) -> Option<&FailureReason> {
        self.outcome.as_ref().err()
    }

    pub fn swap_count(&self) -> Option<usize> {
        self.mapped().map(|m| m.swap_count)
    }
}

/// A qubit mapping algorithm. Implement one or both entry points according to
/// the capability flags in the descriptor; the defaults report
/// `unsupported-input`.
pub trait QubitMapper: Send + Sync {
    fn descriptor(&self) -> &MapperDescriptor;

    fn map_circuit(&self, _circuit: &QuantumCircuit, _backend: &Backend, _seed: u64, _params: &MapperParams) -> MappingResult {
        MappingResult::failure(FailureReason::UnsupportedInput, 0.0)
    }

    fn map_hamiltonian(&self, _h: &Hamiltonian, _backend: &Backend, _seed: u64, _params: &MapperParams) -> MappingResult {
        MappingResult::failure(FailureReason::UnsupportedInput, 0.0)
    }
}

/// Maps a circuit after checking capability and capacity.
pub fn run_circuit(
    mapper: &dyn QubitMapper,
    circuit: &QuantumCircuit,
    backend: &Backend,
    seed: u64,
    params: &MapperParams,
) -> MappingResult {
    if !mapper.descriptor().supports_circuit {
        return MappingResult::failure(FailureReason::UnsupportedInput, 0.0);
    }
    if let Some(reason) = capacity_failure(circuit.num_qubits(), backend) {
        return MappingResult::failure(reason, 0.0);
    }
    mapper.map_circuit(circuit, backend, seed, params)
}

/// Maps a Hamiltonian natively when the mapper supports it, otherwise through
/// [`hamiltonian_reference_circuit`] and the circuit entry point.
pub fn run_hamiltonian(
    mapper: &dyn QubitMapper,
    h: &Hamiltonian,
    backend: &Backend,
    seed: u64,
    params: &MapperParams,
) -> MappingResult {
    let d = mapper.descriptor();
    if !d.supports_hamiltonian && !d.supports_circuit {
        return MappingResult::failure(FailureReason::UnsupportedInput, 0.0);
    }
    if let Some(reason) = capacity_failure(h.num_qubits, backend) {
        return MappingResult::failure(reason, 0.0);
    }
    if d.supports_hamiltonian {
        mapper.map_hamiltonian(h, backend, seed, params)
    } else {
        let circuit = hamiltonian_reference_circuit(h);
        mapper.map_circuit(&circuit, backend, seed, params)
    }
}

fn capacity_failure(required: usize, backend: &Backend) -> Option<FailureReason> {
    (required > backend.num_qubits())
        .then(|| FailureReason::InsufficientQubits { required, available: backend.num_qubits() })
}

/// Runs `f`, stamping the elapsed wall time on its result.
pub(crate) fn timed(f: impl FnOnce() -> Result<MappedCircuit, FailureReason>) -> MappingResult {
    let start = Instant::now();
    let outcome = f();
    MappingResult { outcome, optimisation_time: start.elapsed().as_secs_f64() }
}

/// Identifiers of the built-in mappers in registry order.
pub const BUILTIN_IDS: [&str; 5] = ["trivial", "sabre_lookahead", "sabre_decay", "time_aware", "pauli_static"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BuiltinKind {
    Trivial,
    Sabre(Heuristic),
    TimeAware,
    PauliStatic,
}

/// One of the five native algorithms.
#[derive(Clone, Debug)]
pub struct BuiltinMapper {
    kind: BuiltinKind,
    descriptor: MapperDescriptor,
}

impl BuiltinMapper {
    pub fn by_id(id: &str) -> Option<BuiltinMapper> {
        let (kind, circuit, hamiltonian, summary) = match id {
            "trivial" => (BuiltinKind::Trivial, true, false, "identity layout, shortest-path SWAPs"),
            "sabre_lookahead" => (
                BuiltinKind::Sabre(Heuristic::Lookahead),
                true,
                false,
                "bidirectional SABRE with lookahead scoring",
            ),
            "sabre_decay" => (
                BuiltinKind::Sabre(Heuristic::Decay),
                true,
                false,
                "bidirectional SABRE with decay scoring",
            ),
            "time_aware" => (
                BuiltinKind::TimeAware,
                true,
                false,
                "DFS placement, occupancy-aware dual-source routing",
            ),
            "pauli_static" => (
                BuiltinKind::PauliStatic,
                false,
                true,
                "feature-matrix placement for Pauli strings",
            ),
            _ => return None,
        };
        Some(BuiltinMapper {
            kind,
            descriptor: MapperDescriptor {
                id: id.to_string(),
                supports_circuit: circuit,
                supports_hamiltonian: hamiltonian,
                default_params: MapperParams::default().to_map(),
                summary: summary.to_string(),
            },
        })
    }

    pub fn all() -> Vec<BuiltinMapper> {
        BUILTIN_IDS.iter().map(|id| BuiltinMapper::by_id(id).expect("builtin id")).collect()
    }
}

impl QubitMapper for BuiltinMapper {
    fn descriptor(&self) -> &MapperDescriptor {
        &self.descriptor
    }

    fn map_circuit(&self, circuit: &QuantumCircuit, backend: &Backend, seed: u64, params: &MapperParams) -> MappingResult {
        if let Err(message) = params.validate() {
            return MappingResult::failure(FailureReason::Internal(message), 0.0);
        }
        match self.kind {
            BuiltinKind::Trivial => {
                trivial::trivial_route(circuit, backend, &Layout::identity(circuit.num_qubits(), backend.num_qubits()))
            }
            BuiltinKind::Sabre(h) => sabre::sabre_route(circuit, backend, seed, params, h),
            BuiltinKind::TimeAware => time_aware::time_aware_route(circuit, backend, seed, params),
            BuiltinKind::PauliStatic => MappingResult::failure(FailureReason::UnsupportedInput, 0.0),
        }
    }

    fn map_hamiltonian(&self, h: &Hamiltonian, backend: &Backend, seed: u64, params: &MapperParams) -> MappingResult {
        if let Err(message) = params.validate() {
            return MappingResult::failure(FailureReason::Internal(message), 0.0);
        }
        match self.kind {
            BuiltinKind::PauliStatic => pauli_static::pauli_static_map(h, backend, seed, params),
            _ => MappingResult::failure(FailureReason::UnsupportedInput, 0.0),
        }
    }
}
