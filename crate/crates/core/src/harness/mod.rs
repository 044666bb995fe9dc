//! Registry, workloads, selection, experiment runs and reporting.

use std::panic::{catch_unwind, AssertUnwindSafe};

use crate::mappers::{run_circuit, run_hamiltonian, FailureReason, MapperDescriptor, MapperParams, MappingResult, QubitMapper};
use crate::topology::Backend;

pub mod data;
pub mod providers;
pub mod registry;
pub mod report;
pub mod runner;
pub mod selector;

pub use data::DataDir;
pub use providers::{provide_circuit, Workload, CIRCUIT_KEYS};
pub use registry::{registry_list, Registry};
pub use report::{report_csv, ReportRow};
pub use runner::{run_experiment, ExperimentConfig, ResultRecord, RunOptions, RunOutput, Selection};
pub use selector::{parse_criteria, rank_results, select_best, Criterion, SelectionReport};

pub const FRAMEWORK_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Whether the mapper can take this workload, directly or via synthesis.
pub fn applicable(descriptor: &MapperDescriptor, workload: &Workload) -> bool {
    match workload {
        Workload::Circuit(_) => descriptor.supports_circuit,
        Workload::Hamiltonian(_) => descriptor.supports_circuit || descriptor.supports_hamiltonian,
    }
}

/// Runs one combination. A panicking mapper becomes a failed result.
pub fn execute(
    mapper: &dyn QubitMapper,
    workload: &Workload,
    backend: &Backend,
    seed: u64,
    params: &MapperParams,
) -> MappingResult {
    let outcome = catch_unwind(AssertUnwindSafe(|| match workload {
        Workload::Circuit(c) => run_circuit(mapper, c, backend, seed, params),
        Workload::Hamiltonian(h) => run_hamiltonian(mapper, h, backend, seed, params),
    }));
    outcome.unwrap_or_else(|panic| {
        let message = panic
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| panic.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        MappingResult::failure(FailureReason::Internal(format!("mapper panicked: {message}")), 0.0)
    })
}
