//! Gate dependency graph.

use crate::circuit::QuantumCircuit;

/// Dependency DAG over the gates of a circuit. Node `i` is gate `i`; an arc
/// `u -> v` exists when `u` is the previous gate on some wire of `v`.
#[derive(Clone, Debug)]
pub struct CircuitDag {
    successors: Vec<Vec<usize>>,
    predecessors: Vec<Vec<usize>>,
}

impl CircuitDag {
    pub fn build(circuit: &QuantumCircuit) -> Self {
        let n = circuit.len();
        let mut successors = vec![Vec::new(); n];
        let mut predecessors: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut last_on_wire: Vec<Option<usize>> = vec![None; circuit.num_qubits()];
        for (idx, gate) in circuit.gates().iter().enumerate() {
            for &q in &gate.qubits {
                if let Some(prev) = last_on_wire[q] {
                    if !predecessors[idx].contains(&prev) {
                        predecessors[idx].push(prev);
                        successors[prev].push(idx);
                    }
                }
                last_on_wire[q] = Some(idx);
            }
        }
        CircuitDag { successors, predecessors }
    }

    pub fn num_nodes(&self) -> usize {
        self.successors.len()
    }

    pub fn num_edges(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, node: usize) -> &[usize] {
        &self.successors[node]
    }

    pub fn predecessors(&self, node: usize) -> &[usize] {
        &self.predecessors[node]
    }

    /// All arcs `(u, v)` sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .successors
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        self.predecessors.iter().map(Vec::len).collect()
    }

    /// Nodes with no predecessors, ascending.
    pub fn front_layer(&self) -> Vec<usize> {
        (0..self.num_nodes()).filter(|&v| self.predecessors[v].is_empty()).collect()
    }

    /// Kahn's algorithm, always releasing the smallest ready index first.
    pub fn topological_order(&self) -> Vec<usize> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;

        let mut indeg = self.in_degrees();
        let mut ready: BinaryHeap<Reverse<usize>> =
            self.front_layer().into_iter().map(Reverse).collect();
        let mut order = Vec::with_capacity(self.num_nodes());
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &s in &self.successors[v] {
                indeg[s] -= 1;
                if indeg[s] == 0 {
                    ready.push(Reverse(s));
                }
            }
        }
        order
    }

    /// Longest path measured in nodes.
    pub fn longest_path_len(&self) -> usize {
        let mut level = vec![0usize; self.num_nodes()];
        let mut best = 0;
        for v in self.topological_order() {
            let l = self.predecessors[v].iter().map(|&p| level[p]).max().unwrap_or(0) + 1;
            level[v] = l;
            best = best.max(l);
        }
        best
    }
}
