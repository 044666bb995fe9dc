//! Static placement of Pauli-string workloads by interaction strength.

use crate::circuit::{Gate, QuantumCircuit};
use crate::io::Hamiltonian;
use crate::mappers::peephole::cancel_swap_pairs;
use crate::mappers::routing::{assemble, Deadline, PhysLayout};
use crate::mappers::{
    hamiltonian_reference_circuit, timed, FailureReason, Layout, MappedCircuit, MapperParams, MappingResult,
};
use crate::topology::{centrality_order, shortest_path, Backend};

/// `F[i][j]`: number of terms in which both `i` and `j` are non-identity.
pub fn feature_matrix(h: &Hamiltonian) -> Vec<Vec<usize>> {
    let n = h.num_qubits;
    let mut f = vec![vec![0; n]; n];
    for term in &h.terms {
        let support = term.support();
        for (k, &i) in support.iter().enumerate() {
            for &j in &support[k + 1..] {
                f[i][j] += 1;
                f[j][i] += 1;
            }
        }
    }
    f
}

/// Greedy placement: strongest interactors first, each onto the free qubit
/// closest (weighted by `F`) to its already placed partners.
pub fn static_layout(h: &Hamiltonian, backend: &Backend) -> Layout {
    let n = h.num_qubits;
    let f = feature_matrix(h);
    let dist = backend.distances();
    let centrality = centrality_order(dist);
    let mut rank = vec![0; backend.num_qubits()];
    for (r, &p) in centrality.iter().enumerate() {
        rank[p] = r;
    }
    let score: Vec<usize> = f.iter().map(|row| row.iter().sum()).collect();
    let mut logical: Vec<usize> = (0..n).collect();
    logical.sort_by(|&a, &b| score[b].cmp(&score[a]).then(a.cmp(&b)));

    let mut physical = vec![usize::MAX; n];
    let mut used = vec![false; backend.num_qubits()];
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    for &i in &logical {
        let p = if placed.is_empty() {
            centrality[0]
        } else {
            centrality
                .iter()
                .copied()
                .filter(|&p| !used[p])
                .min_by_key(|&p| {
                    let cost: u64 = placed.iter().map(|&j| (f[i][j] as u64) * dist.get(p, physical[j]) as u64).sum();
                    (cost, rank[p], p)
                })
                .expect("capacity was checked")
        };
        physical[i] = p;
        used[p] = true;
        placed.push(i);
    }
    Layout::new(physical).expect("greedy placement is injective")
}

/// Deterministic; `seed` is accepted for interface symmetry.
pub fn pauli_static_map(h: &Hamiltonian, backend: &Backend, _seed: u64, params: &MapperParams) -> MappingResult {
    timed(|| map(h, backend, params))
}

fn map(h: &Hamiltonian, backend: &Backend, params: &MapperParams) -> Result<MappedCircuit, FailureReason> {
    let deadline = Deadline::from_params(params);
    let n = backend.num_qubits();
    let layout = static_layout(h, backend);
    let logical = hamiltonian_reference_circuit(h);
    let mut phys = PhysLayout::extend(&layout, n);
    let mut out = Vec::with_capacity(logical.len());
    for (i, gate) in logical.gates().iter().enumerate() {
        if i % 256 == 255 {
            deadline.check()?;
        }
        let (pa, pb) = match gate.qubits[..] {
            [a, b] => (phys.l2p[a], phys.l2p[b]),
            _ => {
                out.push(phys.place(gate));
                continue;
            }
        };
        if backend.graph.has_edge(pa, pb) {
            out.push(phys.place(gate));
            continue;
        }
        // Shuttle the first operand next to the second and back, so the
        // layout is the same before and after every ladder step.
        let path = shortest_path(&backend.graph, backend.distances(), pa, pb);
        let hops: Vec<(usize, usize)> = path[..path.len() - 1].windows(2).map(|w| (w[0], w[1])).collect();
        for &(u, v) in &hops {
            phys.swap_physical(u, v);
            out.push(Gate::swap(u, v));
        }
        out.push(phys.place(gate));
        for &(u, v) in hops.iter().rev() {
            phys.swap_physical(u, v);
            out.push(Gate::swap(u, v));
        }
    }
    let circuit = QuantumCircuit::from_gates(n, out)
        .map_err(|e| FailureReason::Internal(format!("router emitted an invalid gate: {e}")))?;
    let circuit = cancel_swap_pairs(&circuit);
    assemble(n, circuit.into_gates(), layout.clone(), layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::PauliTerm;
    use crate::topology::{grid_graph, line_graph};

    fn ham(n: usize, terms: &[&str]) -> Hamiltonian {
        Hamiltonian::new(n, terms.iter().map(|p| PauliTerm::parse(p, 0.5).unwrap()).collect()).unwrap()
    }

    #[test]
    fn feature_matrix_counts_pairs() {
        let f = feature_matrix(&ham(3, &["ZZI", "ZIZ", "ZZZ"]));
        assert_eq!(f[0], vec![0, 2, 2]);
        assert_eq!(f[1][2], 1);
    }

    #[test]
    fn dominant_qubit_goes_to_the_centre() {
        let backend = Backend::from_graph("grid", grid_graph(3, 3).unwrap(), 0).unwrap();
        let layout = static_layout(&ham(4, &["IZZI", "IZIZ", "ZZII"]), &backend);
        assert_eq!(layout.physical(1), 4);
    }

    #[test]
    fn adjacent_zz_needs_two_cnots() {
        let backend = Backend::from_graph("line", line_graph(3).unwrap(), 0).unwrap();
        let m = map(&ham(2, &["ZZ"]), &backend, &MapperParams::default()).unwrap();
        assert_eq!((m.swap_count, m.cnot_count), (0, 2));
        assert_eq!(m.circuit.len(), 3);
    }

    #[test]
    fn empty_hamiltonian() {
        let backend = Backend::from_graph("line", line_graph(3).unwrap(), 0).unwrap();
        let m = map(&ham(2, &[]), &backend, &MapperParams::default()).unwrap();
        assert!(m.circuit.is_empty());
        assert_eq!((m.swap_count, m.cnot_count, m.depth), (0, 0, 0));
    }
}
