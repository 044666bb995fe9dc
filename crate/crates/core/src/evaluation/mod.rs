//! Correctness checks and metric assembly for mapped circuits.

use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::{Gate, GateKind, QuantumCircuit};
use crate::dag::CircuitDag;
use crate::error::EvalError;
use crate::mappers::{Layout, MappedCircuit, MappingResult};
use crate::topology::Backend;

mod simulate;

pub use simulate::{simulate, single_qubit_matrix, StateVector, MAX_SIMULATED_QUBITS};

/// Default fidelity-deficit tolerance for state equivalence.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Widest slot pool the equivalence check will allocate.
const MAX_SLOTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// `(gate index, (u, v))` for every two-qubit gate off the coupling graph.
    pub violations: Vec<(usize, (usize, usize))>,
}

pub fn validate_coupling(mapped: &QuantumCircuit, backend: &Backend) -> Result<ValidationReport, EvalError> {
    let n = backend.num_qubits();
    let mut violations = Vec::new();
    for (i, gate) in mapped.gates().iter().enumerate() {
        if let Some(&q) = gate.qubits.iter().find(|&&q| q >= n) {
            return Err(EvalError::IndexOutOfRange { gate: i, qubit: q, num_qubits: n });
        }
        if gate.is_two_qubit() && !backend.graph.has_edge(gate.qubits[0], gate.qubits[1]) {
            violations.push((i, (gate.qubits[0], gate.qubits[1])));
        }
    }
    Ok(ValidationReport { valid: violations.is_empty(), violations })
}

fn success(result: &MappingResult) -> Result<&MappedCircuit, EvalError> {
    result.outcome.as_ref().map_err(|r| EvalError::FailedResult(r.to_string()))
}

/// Progress of one elision replay.
#[derive(Clone)]
struct Replay {
    p2l: Vec<Option<usize>>,
    in_degree: Vec<usize>,
    ready_on: Vec<Option<usize>>,
    consumed: usize,
}

impl Replay {
    fn consume(&mut self, original: &QuantumCircuit, dag: &CircuitDag, g: usize) {
        self.consumed += 1;
        for &q in &original.gates()[g].qubits {
            self.ready_on[q] = None;
        }
        for &s in dag.successors(g) {
            self.in_degree[s] -= 1;
            if self.in_degree[s] == 0 {
                for &q in &original.gates()[s].qubits {
                    self.ready_on[q] = Some(s);
                }
            }
        }
    }

    /// The ready original gate that `gate`, read through the current map, matches.
    fn ready_match(&self, original: &QuantumCircuit, gate: &Gate, i: usize) -> Result<(Gate, Option<usize>), EvalError> {
        for &p in &gate.qubits {
            self.p2l[p].ok_or(EvalError::UnmappedQubit { gate: i, qubit: p })?;
        }
        let translated = gate.remapped(|p| self.p2l[p].expect("checked above"));
        let matched = self.ready_on[translated.qubits[0]].filter(|&g| original.gates()[g].matches(&translated));
        Ok((translated, matched))
    }
}

/// Replays `mapped` with SWAPs folded into the physical-to-logical map and
/// returns the first mismatch against the original DAG, if any.
///
/// A mapped SWAP that matches a ready SWAP of the original may be either; both
/// readings are tried, consuming the original gate first.
pub fn swap_elision_mismatch(original: &QuantumCircuit, mapped: &MappedCircuit) -> Result<Option<String>, EvalError> {
    let num_physical = mapped.circuit.num_qubits();
    if mapped.initial_layout.len() != original.num_qubits()
        || mapped.final_layout.len() != original.num_qubits()
        || !mapped.initial_layout.fits(num_physical)
        || !mapped.final_layout.fits(num_physical)
    {
        return Err(EvalError::InvalidLayout);
    }
    let dag = original.dag();
    let mut start = Replay {
        p2l: mapped.initial_layout.inverse(num_physical),
        in_degree: dag.in_degrees(),
        ready_on: vec![None; original.num_qubits()],
        consumed: 0,
    };
    for g in dag.front_layer() {
        for &q in &original.gates()[g].qubits {
            start.ready_on[q] = Some(g);
        }
    }
    replay(original, &dag, mapped, start, 0)
}

fn replay(
    original: &QuantumCircuit,
    dag: &CircuitDag,
    mapped: &MappedCircuit,
    mut state: Replay,
    from: usize,
) -> Result<Option<String>, EvalError> {
    for (i, gate) in mapped.circuit.gates().iter().enumerate().skip(from) {
        if gate.kind == GateKind::Swap {
            let (a, b) = (gate.qubits[0], gate.qubits[1]);
            if state.p2l[a].is_some() && state.p2l[b].is_some() {
                if let (_, Some(g)) = state.ready_match(original, gate, i)? {
                    let mut consumed = state.clone();
                    consumed.consume(original, dag, g);
                    let first = replay(original, dag, mapped, consumed, i + 1)?;
                    if first.is_none() {
                        return Ok(None);
                    }
                    state.p2l.swap(a, b);
                    return Ok(replay(original, dag, mapped, state, i + 1)?.and(first));
                }
            }
            state.p2l.swap(a, b);
            continue;
        }
        let (translated, matched) = state.ready_match(original, gate, i)?;
        let Some(g) = matched else {
            return Ok(Some(format!("mapped gate {i} ({translated} after elision) matches no ready original gate")));
        };
        state.consume(original, dag, g);
    }
    if state.consumed != original.len() {
        let missing = original.len() - state.consumed;
        return Ok(Some(format!("{missing} of {} original gates were never replayed", original.len())));
    }
    for l in 0..original.num_qubits() {
        let p = mapped.final_layout.physical(l);
        if state.p2l[p] != Some(l) {
            return Ok(Some(format!("final layout places logical {l} on {p}, but SWAP tracking disagrees")));
        }
    }
    Ok(None)
}

pub fn check_swap_elision(original: &QuantumCircuit, result: &MappingResult) -> Result<bool, EvalError> {
    Ok(swap_elision_mismatch(original, success(result)?)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub fidelity: f64,
    /// Probability mass outside `|0⟩` on physical qubits that end unmapped.
    pub ancilla_leakage: f64,
    pub diagnostic: Option<String>,
}

/// Simulates `mapped` on a pool of slots: SWAPs only relabel wires, and a slot
/// is opened in `|0⟩` the first time another gate touches an empty wire.
pub fn state_equivalence(original: &QuantumCircuit, mapped: &MappedCircuit, tol: f64) -> Result<EquivalenceReport, EvalError> {
    let n = original.num_qubits();
    let reference = simulate(original)?;
    let num_physical = mapped.circuit.num_qubits();
    if mapped.initial_layout.len() != n || !mapped.initial_layout.fits(num_physical) || !mapped.final_layout.fits(num_physical) {
        return Err(EvalError::InvalidLayout);
    }
    let mut slot_of: Vec<Option<usize>> = vec![None; num_physical];
    for l in 0..n {
        slot_of[mapped.initial_layout.physical(l)] = Some(l);
    }
    let mut state = StateVector::zero(n);
    let mut slots = n;
    let mut open = |slot_of: &mut Vec<Option<usize>>, state: &mut StateVector, p: usize| -> Result<usize, EvalError> {
        if let Some(s) = slot_of[p] {
            return Ok(s);
        }
        if slots == MAX_SLOTS {
            return Err(EvalError::TooManyQubits { found: slots + 1, limit: MAX_SLOTS });
        }
        let len = state.amplitudes.len();
        state.amplitudes.resize(2 * len, Complex64::new(0.0, 0.0));
        slot_of[p] = Some(slots);
        slots += 1;
        Ok(slots - 1)
    };
    for gate in mapped.circuit.gates() {
        if gate.kind == GateKind::Swap {
            slot_of.swap(gate.qubits[0], gate.qubits[1]);
            continue;
        }
        for &p in &gate.qubits {
            open(&mut slot_of, &mut state, p)?;
        }
        state.apply(&gate.remapped(|p| slot_of[p].expect("opened above")));
    }
    let mut logical_slot = Vec::with_capacity(n);
    for l in 0..n {
        logical_slot.push(open(&mut slot_of, &mut state, mapped.final_layout.physical(l))?);
    }
    let logical_mask: usize = logical_slot.iter().map(|s| 1usize << s).sum();
    let ancilla_leakage: f64 = state
        .amplitudes
        .iter()
        .enumerate()
        .filter(|(i, _)| i & !logical_mask != 0)
        .map(|(_, a)| a.norm_sqr())
        .fold(0.0, |acc, p| acc + p);
    let overlap: Complex64 = reference
        .amplitudes
        .iter()
        .enumerate()
        .map(|(x, a)| {
            let index: usize = (0..n).filter(|l| x >> l & 1 == 1).map(|l| 1usize << logical_slot[l]).sum();
            a.conj() * state.amplitudes[index]
        })
        .sum();
    let fidelity = overlap.norm_sqr();
    let mut diagnostic = None;
    if ancilla_leakage > tol {
        diagnostic = Some(format!("unused physical qubits are not in |0>: leaked probability {ancilla_leakage:e}"));
    } else if 1.0 - fidelity > tol {
        diagnostic = Some(format!("fidelity {fidelity} is below 1 - {tol:e}"));
    }
    Ok(EquivalenceReport { equivalent: diagnostic.is_none(), fidelity, ancilla_leakage, diagnostic })
}

pub fn check_state_equivalence(original: &QuantumCircuit, result: &MappingResult, tol: f64) -> Result<bool, EvalError> {
    Ok(state_equivalence(original, success(result)?, tol)?.equivalent)
}

/// Metrics of a mapped circuit as reported in every result.
pub fn measured(circuit: QuantumCircuit, initial_layout: Layout, final_layout: Layout) -> MappedCircuit {
    MappedCircuit {
        swap_count: circuit.swap_count(),
        cnot_count: circuit.cnot_equivalent_count(),
        depth: circuit.depth(),
        circuit,
        initial_layout,
        final_layout,
    }
}

pub fn measure(circuit: QuantumCircuit, elapsed: f64, initial_layout: Layout, final_layout: Layout) -> MappingResult {
    MappingResult { outcome: Ok(measured(circuit, initial_layout, final_layout)), optimisation_time: elapsed }
}

/// Product of `1 - error` over two-qubit gates; a SWAP contributes three factors.
pub fn estimated_success(mapped: &MappedCircuit, backend: &Backend) -> Result<f64, EvalError> {
    let mut p = 1.0;
    for (i, gate) in mapped.circuit.gates().iter().enumerate() {
        if !gate.is_two_qubit() {
            continue;
        }
        let (u, v) = (gate.qubits[0], gate.qubits[1]);
        let err = backend.noise.edge_error(u, v).ok_or(EvalError::NotAnEdge { gate: i, u, v })?;
        let factors = if gate.kind == GateKind::Swap { 3 } else { 1 };
        p *= (1.0 - err).powi(factors);
    }
    Ok(p)
}
