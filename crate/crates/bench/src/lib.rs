//! Shared inputs for the criterion benchmarks.

use qumeld_core::harness::{provide_circuit, DataDir, Workload};
use qumeld_core::topology::make_backend;
use qumeld_core::{Backend, QuantumCircuit};

pub fn backend(name: &str) -> Backend {
    make_backend(&DataDir::bundled().topologies(), name, 0).expect("shipped topology")
}

pub fn circuit(key: &str) -> QuantumCircuit {
    provide_circuit(&DataDir::bundled().hamiltonians(), key).expect("shipped workload").reference_circuit()
}

pub fn workload(key: &str) -> Workload {
    provide_circuit(&DataDir::bundled().hamiltonians(), key).expect("shipped workload")
}
