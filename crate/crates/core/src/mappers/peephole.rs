//! Adjacent inverse-gate cancellation and RZ merging.

use crate::circuit::{Gate, GateKind, QuantumCircuit};

fn cancels(a: &Gate, b: &Gate) -> bool {
    use GateKind::*;
    let same_wires = a.qubits == b.qubits
        || (a.kind.is_symmetric() && a.qubits.len() == 2 && a.qubits[0] == b.qubits[1] && a.qubits[1] == b.qubits[0]);
    if !same_wires {
        return false;
    }
    matches!(
        (a.kind, b.kind),
        (H, H) | (X, X) | (Y, Y) | (Z, Z) | (S, Sdg) | (Sdg, S) | (T, Tdg) | (Tdg, T) | (Cx, Cx) | (Cz, Cz) | (Swap, Swap)
    )
}

/// Rewrites until no adjacent pair cancels. With `swaps_only`, only SWAP
/// pairs are touched.
fn simplify(circuit: &QuantumCircuit, swaps_only: bool) -> QuantumCircuit {
    let mut out: Vec<Option<Gate>> = Vec::with_capacity(circuit.len());
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); circuit.num_qubits()];
    for gate in circuit.gates() {
        let top = stacks[gate.qubits[0]].last().copied();
        let shared = top.filter(|&k| {
            gate.qubits.iter().all(|&q| stacks[q].last() == Some(&k))
                && out[k].as_ref().is_some_and(|g| g.qubits.len() == gate.qubits.len())
        });
        if let Some(k) = shared {
            let prev = out[k].as_ref().expect("stack entries are live");
            let eligible = !swaps_only || gate.kind == GateKind::Swap;
            if eligible && cancels(prev, gate) {
                out[k] = None;
                for &q in &gate.qubits {
                    stacks[q].pop();
                }
                continue;
            }
            if !swaps_only && prev.kind == GateKind::Rz && gate.kind == GateKind::Rz {
                let angle = prev.params[0] + gate.params[0];
                if angle == 0.0 {
                    out[k] = None;
                    stacks[gate.qubits[0]].pop();
                } else {
                    out[k] = Some(Gate::rz(angle, gate.qubits[0]));
                }
                continue;
            }
        }
        let k = out.len();
        out.push(Some(gate.clone()));
        for &q in &gate.qubits {
            stacks[q].push(k);
        }
    }
    QuantumCircuit::from_gates(circuit.num_qubits(), out.into_iter().flatten().collect())
        .expect("simplification keeps gates inside the register")
}

/// Cancels H·H, X·X, Y·Y, Z·Z, S·Sdg, T·Tdg, CX·CX, CZ·CZ and SWAP·SWAP pairs
/// that are adjacent on their wires, merges neighbouring RZ rotations and
/// drops RZ(0) produced by a merge. Cascades are followed.
pub fn peephole(circuit: &QuantumCircuit) -> QuantumCircuit {
    simplify(circuit, false)
}

pub fn cancel_swap_pairs(circuit: &QuantumCircuit) -> QuantumCircuit {
    simplify(circuit, true)
}
