//! DFS placement plus occupancy-aware dual-source routing.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::circuit::{Gate, QuantumCircuit};
use crate::mappers::routing::{assemble, Deadline, PhysLayout};
use crate::mappers::{timed, FailureReason, Layout, MappedCircuit, MapperParams, MappingResult};
use crate::topology::{centrality_order, Backend};

pub const ONE_QUBIT_DURATION: u64 = 1;
pub const TWO_QUBIT_DURATION: u64 = 2;
pub const SWAP_DURATION: u64 = 6;

/// The router is deterministic; `seed` is accepted for interface symmetry.
pub fn time_aware_route(circuit: &QuantumCircuit, backend: &Backend, _seed: u64, params: &MapperParams) -> MappingResult {
    let deadline = Deadline::from_params(params);
    timed(|| route(circuit, backend, params.occupancy_weight, &deadline))
}

/// Logical qubits in DFS order over the weighted interaction graph, each
/// component started from its highest weighted degree vertex.
pub fn dfs_logical_order(circuit: &QuantumCircuit) -> Vec<usize> {
    let n = circuit.num_qubits();
    let mut weight = vec![vec![0usize; n]; n];
    for (a, b) in circuit.gates().iter().filter(|g| g.is_two_qubit()).map(|g| (g.qubits[0], g.qubits[1])) {
        weight[a][b] += 1;
        weight[b][a] += 1;
    }
    let degree: Vec<usize> = weight.iter().map(|row| row.iter().sum()).collect();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let start = (0..n)
            .filter(|&q| !seen[q])
            .max_by(|&a, &b| degree[a].cmp(&degree[b]).then(b.cmp(&a)))
            .expect("unvisited qubit remains");
        let mut stack = vec![start];
        while let Some(q) = stack.pop() {
            if seen[q] {
                continue;
            }
            seen[q] = true;
            order.push(q);
            let mut next: Vec<usize> = (0..n).filter(|&r| weight[q][r] > 0 && !seen[r]).collect();
            // Heaviest neighbour first; pushed in reverse so it pops first.
            next.sort_by(|&a, &b| weight[q][b].cmp(&weight[q][a]).then(a.cmp(&b)));
            stack.extend(next.into_iter().rev());
        }
    }
    order
}

pub fn initial_layout(circuit: &QuantumCircuit, backend: &Backend) -> Layout {
    let centre = centrality_order(backend.distances())[0];
    let slots = backend.graph.bfs_order(centre);
    let mut physical = vec![0; circuit.num_qubits()];
    for (k, q) in dfs_logical_order(circuit).into_iter().enumerate() {
        physical[q] = slots[k];
    }
    Layout::new(physical).expect("BFS order is a permutation")
}

#[derive(Copy, Clone, PartialEq)]
struct Entry {
    cost: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.cost.total_cmp(&self.cost).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source costs where entering `v` costs `1 + λ·occ[v]/(1 + max occ)`.
fn dijkstra(backend: &Backend, source: usize, occupancy: &[u64], lambda: f64) -> (Vec<f64>, Vec<usize>) {
    let n = backend.num_qubits();
    let max_occ = occupancy.iter().copied().max().unwrap_or(0) as f64;
    let mut cost = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    cost[source] = 0.0;
    heap.push(Entry { cost: 0.0, node: source });
    while let Some(Entry { cost: c, node: u }) = heap.pop() {
        if c > cost[u] {
            continue;
        }
        for &v in backend.graph.neighbors(u) {
            let next = c + 1.0 + lambda * occupancy[v] as f64 / (1.0 + max_occ);
            if next < cost[v] {
                cost[v] = next;
                parent[v] = u;
                heap.push(Entry { cost: next, node: v });
            }
        }
    }
    (cost, parent)
}

fn path_to(parent: &[usize], source: usize, mut node: usize) -> Vec<usize> {
    let mut path = vec![node];
    while node != source {
        node = parent[node];
        path.push(node);
    }
    path.reverse();
    path
}

/// SWAP chains that bring `pa` and `pb` onto the cheapest meeting edge. The
/// first chain walks `pa`, the second walks `pb`; they share no qubit.
pub fn meeting_chains(backend: &Backend, pa: usize, pb: usize, occupancy: &[u64], lambda: f64) -> (Vec<usize>, Vec<usize>) {
    let (cost_a, parent_a) = dijkstra(backend, pa, occupancy, lambda);
    let (cost_b, parent_b) = dijkstra(backend, pb, occupancy, lambda);
    let mut best: Option<(f64, usize, usize)> = None;
    for &(u, v) in backend.graph.edges() {
        for (x, y) in [(u, v), (v, u)] {
            let c = cost_a[x] + cost_b[y];
            if best.is_none_or(|(bc, _, _)| c < bc - 1e-12) {
                best = Some((c, x, y));
            }
        }
    }
    let (_, x, y) = best.expect("connected graph has an edge");
    (path_to(&parent_a, pa, x), path_to(&parent_b, pb, y))
}

struct Schedule {
    occupancy: Vec<u64>,
    gates: Vec<Gate>,
}

impl Schedule {
    fn emit(&mut self, gate: Gate, duration: u64) {
        let start = gate.qubits.iter().map(|&q| self.occupancy[q]).max().unwrap_or(0);
        for &q in &gate.qubits {
            self.occupancy[q] = start + duration;
        }
        self.gates.push(gate);
    }
}

fn route(circuit: &QuantumCircuit, backend: &Backend, lambda: f64, deadline: &Deadline) -> Result<MappedCircuit, FailureReason> {
    let n = backend.num_qubits();
    let initial = initial_layout(circuit, backend);
    let mut layout = PhysLayout::extend(&initial, n);
    let mut schedule = Schedule { occupancy: vec![0; n], gates: Vec::with_capacity(circuit.len()) };
    for (i, gate) in circuit.gates().iter().enumerate() {
        if i % 256 == 255 {
            deadline.check()?;
        }
        if !gate.is_two_qubit() {
            schedule.emit(layout.place(gate), ONE_QUBIT_DURATION);
            continue;
        }
        let (pa, pb) = (layout.l2p[gate.qubits[0]], layout.l2p[gate.qubits[1]]);
        if !backend.graph.has_edge(pa, pb) {
            let (chain_a, chain_b) = meeting_chains(backend, pa, pb, &schedule.occupancy, lambda);
            for chain in [chain_a, chain_b] {
                for w in chain.windows(2) {
                    layout.swap_physical(w[0], w[1]);
                    schedule.emit(Gate::swap(w[0], w[1]), SWAP_DURATION);
                }
            }
        }
        schedule.emit(layout.place(gate), TWO_QUBIT_DURATION);
    }
    let final_layout = layout.to_layout(circuit.num_qubits());
    assemble(n, schedule.gates, initial, final_layout)
}
