//! Baseline router: fixed layout, shortest-path SWAPs in program order.

use crate::circuit::{Gate, QuantumCircuit};
use crate::mappers::routing::{assemble, PhysLayout};
use crate::mappers::{timed, FailureReason, Layout, MappedCircuit, MappingResult};
use crate::topology::{shortest_path, Backend};

/// Routes `circuit` from `initial`. Each non-adjacent two-qubit gate is
/// preceded by SWAPs that walk its first operand towards the second.
pub fn trivial_route(circuit: &QuantumCircuit, backend: &Backend, initial: &Layout) -> MappingResult {
    timed(|| route(circuit, backend, initial))
}

pub(crate) fn route(circuit: &QuantumCircuit, backend: &Backend, initial: &Layout) -> Result<MappedCircuit, FailureReason> {
    let n = backend.num_qubits();
    if initial.len() != circuit.num_qubits() || !initial.fits(n) {
        return Err(FailureReason::Internal("initial layout does not match circuit and backend".into()));
    }
    let mut layout = PhysLayout::extend(initial, n);
    let mut out = Vec::with_capacity(circuit.len());
    for gate in circuit.gates() {
        if gate.is_two_qubit() {
            let (pa, pb) = (layout.l2p[gate.qubits[0]], layout.l2p[gate.qubits[1]]);
            if !backend.graph.has_edge(pa, pb) {
                let path = shortest_path(&backend.graph, backend.distances(), pa, pb);
                for w in path[..path.len() - 1].windows(2) {
                    out.push(Gate::swap(w[0], w[1]));
                    layout.swap_physical(w[0], w[1]);
                }
            }
        }
        out.push(layout.place(gate));
    }
    let final_layout = layout.to_layout(circuit.num_qubits());
    assemble(n, out, initial.clone(), final_layout)
}
