//! Bidirectional SABRE routing with lookahead or decay scoring.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Gate, QuantumCircuit};
use crate::dag::CircuitDag;
use crate::mappers::routing::{assemble, Deadline, PhysLayout};
use crate::mappers::{timed, FailureReason, MappedCircuit, MapperParams, MappingResult};
use crate::topology::{shortest_path, Backend};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Heuristic {
    Lookahead,
    Decay,
}

/// Scores within this relative distance of the minimum count as ties.
const TIE_EPSILON: f64 = 1e-10;

pub fn sabre_route(
    circuit: &QuantumCircuit,
    backend: &Backend,
    seed: u64,
    params: &MapperParams,
    heuristic: Heuristic,
) -> MappingResult {
    let deadline = Deadline::from_params(params);
    timed(|| route(circuit, backend, seed, params, heuristic, &deadline))
}

/// A circuit prepared for repeated routing passes.
struct Problem<'c> {
    gates: &'c [Gate],
    dag: CircuitDag,
    in_degree: Vec<usize>,
    front: Vec<usize>,
}

impl<'c> Problem<'c> {
    fn new(circuit: &'c QuantumCircuit) -> Self {
        let dag = circuit.dag();
        let in_degree = dag.in_degrees();
        let front = dag.front_layer();
        Problem { gates: circuit.gates(), dag, in_degree, front }
    }
}

struct PassOutcome {
    gates: Vec<Gate>,
    swaps: usize,
    depth: usize,
    saw_tie: bool,
}

struct Router<'a> {
    backend: &'a Backend,
    params: &'a MapperParams,
    heuristic: Heuristic,
    deadline: &'a Deadline,
    release_after: usize,
}

/// Mutable state of one pass.
struct Pass<'a, 'c> {
    router: &'a Router<'a>,
    problem: &'a Problem<'c>,
    layout: PhysLayout,
    in_degree: Vec<usize>,
    pending: VecDeque<usize>,
    front: Vec<usize>,
    extended: Vec<(usize, usize)>,
    extended_stale: bool,
    scratch: Vec<usize>,
    decay: Vec<f64>,
    swaps_since_reset: usize,
    swaps_since_progress: usize,
    level: Vec<usize>,
    out: PassOutcome,
    record: bool,
}

impl<'a, 'c> Pass<'a, 'c> {
    fn new(router: &'a Router<'a>, problem: &'a Problem<'c>, layout: PhysLayout, record: bool) -> Self {
        let n = router.backend.num_qubits();
        Pass {
            router,
            problem,
            layout,
            in_degree: problem.in_degree.clone(),
            pending: problem.front.iter().copied().collect(),
            front: Vec::new(),
            extended: Vec::new(),
            extended_stale: true,
            scratch: vec![0; problem.gates.len()],
            decay: vec![1.0; n],
            swaps_since_reset: 0,
            swaps_since_progress: 0,
            level: vec![0; n],
            out: PassOutcome { gates: Vec::new(), swaps: 0, depth: 0, saw_tie: false },
            record,
        }
    }

    fn emit(&mut self, physical: Gate) {
        let t = physical.qubits.iter().map(|&q| self.level[q]).max().unwrap_or(0) + 1;
        for &q in &physical.qubits {
            self.level[q] = t;
        }
        self.out.depth = self.out.depth.max(t);
        if self.record {
            self.out.gates.push(physical);
        }
    }

    fn executable(&self, g: usize) -> bool {
        let gate = &self.problem.gates[g];
        !gate.is_two_qubit()
            || self
                .router
                .backend
                .graph
                .has_edge(self.layout.l2p[gate.qubits[0]], self.layout.l2p[gate.qubits[1]])
    }

    /// Executes everything reachable without SWAPs. Returns whether any gate ran.
    fn advance(&mut self) -> bool {
        let mut progressed = false;
        while let Some(g) = self.pending.pop_front() {
            if !self.executable(g) {
                self.front.push(g);
                continue;
            }
            progressed = true;
            let placed = self.layout.place(&self.problem.gates[g]);
            self.emit(placed);
            for &s in self.problem.dag.successors(g) {
                self.in_degree[s] -= 1;
                if self.in_degree[s] == 0 {
                    self.pending.push_back(s);
                }
            }
        }
        self.front.sort_unstable();
        if progressed {
            self.extended_stale = true;
            self.swaps_since_progress = 0;
            self.reset_decay();
        }
        progressed
    }

    /// Moves now-executable front gates back to the pending queue.
    fn release_front(&mut self) -> bool {
        let mut released = false;
        let mut i = 0;
        while i < self.front.len() {
            if self.executable(self.front[i]) {
                let g = self.front.remove(i);
                self.pending.push_back(g);
                released = true;
            } else {
                i += 1;
            }
        }
        released && self.advance()
    }

    fn reset_decay(&mut self) {
        self.decay.iter_mut().for_each(|d| *d = 1.0);
        self.swaps_since_reset = 0;
    }

    /// The next `lookahead_window` two-qubit gates beyond the front layer, in
    /// topological (breadth-first) order.
    fn refresh_extended(&mut self) {
        self.extended.clear();
        self.extended_stale = false;
        let window = self.router.params.lookahead_window;
        let dag = &self.problem.dag;
        let mut queue: VecDeque<usize> = self.front.iter().copied().collect();
        let mut touched = Vec::new();
        'search: while let Some(g) = queue.pop_front() {
            for &s in dag.successors(g) {
                if self.scratch[s] == 0 {
                    touched.push(s);
                }
                self.scratch[s] += 1;
                if self.scratch[s] == self.in_degree[s] {
                    let gate = &self.problem.gates[s];
                    if gate.is_two_qubit() {
                        self.extended.push((gate.qubits[0], gate.qubits[1]));
                        if self.extended.len() >= window {
                            break 'search;
                        }
                    }
                    queue.push_back(s);
                }
            }
        }
        for s in touched {
            self.scratch[s] = 0;
        }
    }

    fn front_pairs(&self) -> Vec<(usize, usize)> {
        self.front
            .iter()
            .map(|&g| {
                let q = &self.problem.gates[g].qubits;
                (self.layout.l2p[q[0]], self.layout.l2p[q[1]])
            })
            .collect()
    }

    fn choose_swap(&mut self, rng: Option<&mut ChaCha8Rng>) -> (usize, usize) {
        if self.extended_stale {
            self.refresh_extended();
        }
        let graph = &self.router.backend.graph;
        let dist = self.router.backend.distances();
        let front = self.front_pairs();
        let ext: Vec<(usize, usize)> =
            self.extended.iter().map(|&(a, b)| (self.layout.l2p[a], self.layout.l2p[b])).collect();

        let mut candidates = Vec::new();
        for &(pa, pb) in &front {
            for p in [pa, pb] {
                for &r in graph.neighbors(p) {
                    candidates.push((p.min(r), p.max(r)));
                }
            }
        }
        candidates.sort_unstable();
        candidates.dedup();

        let weight = self.router.params.lookahead_weight;
        let decay = self.router.heuristic == Heuristic::Decay;
        let cost = |pairs: &[(usize, usize)], (u, v): (usize, usize)| -> f64 {
            let tau = |p: usize| if p == u { v } else if p == v { u } else { p };
            pairs.iter().map(|&(a, b)| dist.get(tau(a), tau(b)) as f64).sum::<f64>()
        };
        let scores: Vec<f64> = candidates
            .iter()
            .map(|&s| {
                let mut score = cost(&front, s) / front.len() as f64;
                if !ext.is_empty() {
                    score += weight * cost(&ext, s) / ext.len() as f64;
                }
                if decay {
                    score *= self.decay[s.0].max(self.decay[s.1]);
                }
                score
            })
            .collect();
        let best = scores.iter().copied().fold(f64::INFINITY, f64::min);
        let limit = best + TIE_EPSILON * best.abs().max(1.0);
        let ties: Vec<usize> = (0..candidates.len()).filter(|&i| scores[i] <= limit).collect();
        if ties.len() > 1 {
            self.out.saw_tie = true;
        }
        match rng {
            Some(rng) if ties.len() > 1 => candidates[ties[rng.gen_range(0..ties.len())]],
            _ => candidates[ties[0]],
        }
    }

    fn apply_swap(&mut self, (u, v): (usize, usize)) {
        self.layout.swap_physical(u, v);
        self.emit(Gate::swap(u, v));
        self.out.swaps += 1;
        self.swaps_since_progress += 1;
        let delta = self.router.params.decay_delta;
        self.decay[u] += delta;
        self.decay[v] += delta;
        self.swaps_since_reset += 1;
        if self.swaps_since_reset >= self.router.params.decay_reset_interval {
            self.reset_decay();
        }
    }

    /// Escape from a heuristic plateau: walk the closest front gate together.
    fn force_closest(&mut self) {
        let dist = self.router.backend.distances();
        let (&g, _) = self
            .front
            .iter()
            .map(|g| {
                let q = &self.problem.gates[*g].qubits;
                (g, dist.get(self.layout.l2p[q[0]], self.layout.l2p[q[1]]))
            })
            .min_by_key(|&(g, d)| (d, *g))
            .expect("front is non-empty");
        let q = self.problem.gates[g].qubits.clone();
        let path = shortest_path(&self.router.backend.graph, dist, self.layout.l2p[q[0]], self.layout.l2p[q[1]]);
        for w in path[..path.len() - 1].windows(2) {
            self.apply_swap((w[0].min(w[1]), w[0].max(w[1])));
        }
    }

    fn run(mut self, mut rng: Option<&mut ChaCha8Rng>) -> Result<(PassOutcome, PhysLayout), FailureReason> {
        self.advance();
        while !self.front.is_empty() {
            if self.out.swaps % 64 == 63 {
                self.router.deadline.check()?;
            }
            if self.swaps_since_progress >= self.router.release_after {
                self.force_closest();
            } else {
                let swap = self.choose_swap(rng.as_deref_mut());
                self.apply_swap(swap);
            }
            self.release_front();
        }
        Ok((self.out, self.layout))
    }
}

fn stream(seed: u64, trial: usize, attempt: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((trial as u64) << 32) | attempt as u64);
    rng
}

struct Candidate {
    gates: Vec<Gate>,
    initial: PhysLayout,
    final_layout: PhysLayout,
    swaps: usize,
    depth: usize,
}

fn route(
    circuit: &QuantumCircuit,
    backend: &Backend,
    seed: u64,
    params: &MapperParams,
    heuristic: Heuristic,
    deadline: &Deadline,
) -> Result<MappedCircuit, FailureReason> {
    let n = backend.num_qubits();
    let logical = circuit.num_qubits();
    let reversed = circuit.reverse();
    let forward = Problem::new(circuit);
    let backward = Problem::new(&reversed);
    let diameter = backend.distances().max() as usize;
    let router = Router { backend, params, heuristic, deadline, release_after: 2 * diameter + 4 };

    let mut best: Option<Candidate> = None;
    for trial in 0..params.effective_layout_trials() {
        deadline.check()?;
        let mut rng = stream(seed, trial, 0);
        let mut l2p: Vec<usize> = (0..n).collect();
        l2p.shuffle(&mut rng);
        let mut layout = PhysLayout::from_l2p(l2p);
        for _ in 0..params.fwd_bwd_iterations {
            layout = Pass::new(&router, &forward, layout, false).run(None)?.1;
            layout = Pass::new(&router, &backward, layout, false).run(None)?.1;
        }

        let mut chosen: Option<Candidate> = None;
        for attempt in 0..params.effective_swap_trials() {
            let mut attempt_rng = stream(seed, trial, attempt + 1);
            let rng = (attempt > 0).then_some(&mut attempt_rng);
            let (outcome, final_layout) = Pass::new(&router, &forward, layout.clone(), true).run(rng)?;
            let saw_tie = outcome.saw_tie;
            let better = chosen
                .as_ref()
                .is_none_or(|c| (outcome.swaps, outcome.depth) < (c.swaps, c.depth));
            if better {
                chosen = Some(Candidate {
                    gates: outcome.gates,
                    initial: layout.clone(),
                    final_layout,
                    swaps: outcome.swaps,
                    depth: outcome.depth,
                });
            }
            // Without ties every randomized attempt replays the first one.
            if chosen.as_ref().is_some_and(|c| c.swaps == 0) || (attempt == 0 && !saw_tie) {
                break;
            }
        }
        let chosen = chosen.expect("at least one swap trial");
        // Every SWAP adds three CNOTs, so (swaps, depth) orders like (swaps, depth, cnots).
        if best.as_ref().is_none_or(|b| (chosen.swaps, chosen.depth) < (b.swaps, b.depth)) {
            best = Some(chosen);
        }
        if best.as_ref().is_some_and(|b| b.swaps == 0) {
            break;
        }
    }
    let best = best.ok_or_else(|| FailureReason::Internal("no layout trials".into()))?;
    assemble(n, best.gates, best.initial.to_layout(logical), best.final_layout.to_layout(logical))
}
