//! First-order Pauli-exponential synthesis.

use crate::circuit::{Gate, QuantumCircuit};
use crate::io::{Hamiltonian, Pauli, PauliTerm};
use crate::mappers::peephole::peephole;

/// `exp(-i * coeff * angle_scale * P)` for every term, in order.
pub fn synthesize_hamiltonian(h: &Hamiltonian, angle_scale: f64) -> QuantumCircuit {
    let mut gates = Vec::new();
    for term in &h.terms {
        synthesize_term(term, angle_scale, &mut gates);
    }
    QuantumCircuit::from_gates(h.num_qubits, gates).expect("synthesized gates lie inside the register")
}

/// The logical circuit every mapper's Hamiltonian output is checked against.
pub fn hamiltonian_reference_circuit(h: &Hamiltonian) -> QuantumCircuit {
    peephole(&synthesize_hamiltonian(h, 1.0))
}

pub(crate) fn synthesize_term(term: &PauliTerm, angle_scale: f64, out: &mut Vec<Gate>) {
    let support = term.support();
    let Some(&target) = support.last() else {
        return;
    };
    for &q in &support {
        match term.paulis[q] {
            Pauli::X => out.push(Gate::h(q)),
            Pauli::Y => {
                out.push(Gate::sdg(q));
                out.push(Gate::h(q));
            }
            _ => {}
        }
    }
    let controls = &support[..support.len() - 1];
    for &q in controls {
        out.push(Gate::cx(q, target));
    }
    out.push(Gate::rz(2.0 * term.coeff * angle_scale, target));
    for &q in controls.iter().rev() {
        out.push(Gate::cx(q, target));
    }
    for &q in &support {
        match term.paulis[q] {
            Pauli::X => out.push(Gate::h(q)),
            Pauli::Y => {
                out.push(Gate::h(q));
                out.push(Gate::s(q));
            }
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ham(n: usize, terms: &[(&str, f64)]) -> Hamiltonian {
        Hamiltonian::new(n, terms.iter().map(|(p, c)| PauliTerm::parse(p, *c).unwrap()).collect()).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let c = synthesize_hamiltonian(&ham(2, &[("ZZ", 0.3)]), 1.0);
        assert_eq!(c.gates(), &[Gate::cx(0, 1), Gate::rz(0.6, 1), Gate::cx(0, 1)]);
        let c = synthesize_hamiltonian(&ham(2, &[("XI", 0.3)]), 1.0);
        assert_eq!(c.gates(), &[Gate::h(0), Gate::rz(0.6, 0), Gate::h(0)]);
        let c = synthesize_hamiltonian(&ham(3, &[("III", 0.3)]), 1.0);
        assert!(c.is_empty());
    }

    #[test]
    fn y_basis_change() {
        let c = synthesize_hamiltonian(&ham(1, &[("Y", 0.5)]), 2.0);
        assert_eq!(c.gates(), &[Gate::sdg(0), Gate::h(0), Gate::rz(2.0, 0), Gate::h(0), Gate::s(0)]);
    }
}
