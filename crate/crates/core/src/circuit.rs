//! Logical circuit representation and circuit-level metrics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dag::CircuitDag;
use crate::error::CircuitError;

/// The fixed gate alphabet understood by every mapper.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    Cx,
    Cz,
    Swap,
    Rzz,
}

impl GateKind {
    pub const ALL: [GateKind; 15] = [
        GateKind::H,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::Cx,
        GateKind::Cz,
        GateKind::Swap,
        GateKind::Rzz,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cx | GateKind::Cz | GateKind::Swap | GateKind::Rzz => 2,
            _ => 1,
        }
    }

    pub fn num_params(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::Rzz => 1,
            _ => 0,
        }
    }

    /// Whether exchanging the two operands leaves the gate unchanged.
    pub fn is_symmetric(self) -> bool {
        matches!(self, GateKind::Cz | GateKind::Swap | GateKind::Rzz)
    }

    /// Lower-case OpenQASM 2 name.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::Swap => "swap",
            GateKind::Rzz => "rzz",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| CircuitError::UnknownGate(s.to_string()))
    }
}

/// A single gate application. Qubit indices are logical or physical depending
/// on which circuit owns the gate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub params: Vec<f64>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>, params: Vec<f64>) -> Result<Self, CircuitError> {
        if qubits.len() != kind.arity() {
            return Err(CircuitError::Arity {
                kind,
                expected: kind.arity(),
                found: qubits.len(),
            });
        }
        if params.len() != kind.num_params() {
            return Err(CircuitError::ParamCount {
                kind,
                expected: kind.num_params(),
                found: params.len(),
            });
        }
        if kind.arity() == 2 && qubits[0] == qubits[1] {
            return Err(CircuitError::RepeatedQubit { kind, qubit: qubits[0] });
        }
        Ok(Gate { kind, qubits, params })
    }

    fn fixed1(kind: GateKind, q: usize) -> Self {
        Gate { kind, qubits: vec![q], params: Vec::new() }
    }

    fn rot1(kind: GateKind, theta: f64, q: usize) -> Self {
        Gate { kind, qubits: vec![q], params: vec![theta] }
    }

    fn fixed2(kind: GateKind, a: usize, b: usize) -> Self {
        assert_ne!(a, b, "{kind} operands must differ");
        Gate { kind, qubits: vec![a, b], params: Vec::new() }
    }

    pub fn h(q: usize) -> Self {
        Self::fixed1(GateKind::H, q)
    }
    pub fn x(q: usize) -> Self {
        Self::fixed1(GateKind::X, q)
    }
    pub fn y(q: usize) -> Self {
        Self::fixed1(GateKind::Y, q)
    }
    pub fn z(q: usize) -> Self {
        Self::fixed1(GateKind::Z, q)
    }
    pub fn s(q: usize) -> Self {
        Self::fixed1(GateKind::S, q)
    }
    pub fn sdg(q: usize) -> Self {
        Self::fixed1(GateKind::Sdg, q)
    }
    pub fn t(q: usize) -> Self {
        Self::fixed1(GateKind::T, q)
    }
    pub fn tdg(q: usize) -> Self {
        Self::fixed1(GateKind::Tdg, q)
    }
    pub fn rx(theta: f64, q: usize) -> Self {
        Self::rot1(GateKind::Rx, theta, q)
    }
    pub fn ry(theta: f64, q: usize) -> Self {
        Self::rot1(GateKind::Ry, theta, q)
    }
    pub fn rz(theta: f64, q: usize) -> Self {
        Self::rot1(GateKind::Rz, theta, q)
    }
    pub fn cx(control: usize, target: usize) -> Self {
        Self::fixed2(GateKind::Cx, control, target)
    }
    pub fn cz(a: usize, b: usize) -> Self {
        Self::fixed2(GateKind::Cz, a, b)
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Self::fixed2(GateKind::Swap, a, b)
    }
    pub fn rzz(theta: f64, a: usize, b: usize) -> Self {
        assert_ne!(a, b, "rzz operands must differ");
        Gate { kind: GateKind::Rzz, qubits: vec![a, b], params: vec![theta] }
    }

    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2
    }

    /// Same gate with every qubit index passed through `map`.
    pub fn remapped(&self, mut map: impl FnMut(usize) -> usize) -> Gate {
        Gate {
            kind: self.kind,
            qubits: self.qubits.iter().map(|&q| map(q)).collect(),
            params: self.params.clone(),
        }
    }

    /// Structural equality that ignores operand order for symmetric gates.
    pub fn matches(&self, other: &Gate) -> bool {
        if self.kind != other.kind || self.params != other.params {
            return false;
        }
        if self.qubits == other.qubits {
            return true;
        }
        self.kind.is_symmetric()
            && self.qubits.len() == 2
            && self.qubits[0] == other.qubits[1]
            && self.qubits[1] == other.qubits[0]
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", p.join(","))?;
        }
        let q: Vec<String> = self.qubits.iter().map(|q| q.to_string()).collect();
        write!(f, " {}", q.join(","))
    }
}

/// An ordered gate list over `num_qubits` wires.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct QuantumCircuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl QuantumCircuit {
    pub fn new(num_qubits: usize) -> Self {
        QuantumCircuit { num_qubits, gates: Vec::new() }
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut circuit = QuantumCircuit::new(num_qubits);
        for gate in gates {
            circuit.push(gate)?;
        }
        Ok(circuit)
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        let checked = Gate::new(gate.kind, gate.qubits, gate.params)?;
        if let Some(&q) = checked.qubits.iter().find(|&&q| q >= self.num_qubits) {
            return Err(CircuitError::QubitOutOfRange { qubit: q, num_qubits: self.num_qubits });
        }
        self.gates.push(checked);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    /// Same gates on a wider register. Panics if `num_qubits` shrinks the register.
    pub fn widened(&self, num_qubits: usize) -> QuantumCircuit {
        assert!(num_qubits >= self.num_qubits);
        QuantumCircuit { num_qubits, gates: self.gates.clone() }
    }

    pub fn dag(&self) -> CircuitDag {
        CircuitDag::build(self)
    }

    /// Number of gates acting on two qubits; a SWAP counts once.
    pub fn two_qubit_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Two-qubit gate count with each SWAP decomposed into three CNOTs.
    pub fn cnot_equivalent_count(&self) -> usize {
        self.gates
            .iter()
            .map(|g| match g.kind {
                GateKind::Swap => 3,
                GateKind::Cx | GateKind::Cz | GateKind::Rzz => 1,
                _ => 0,
            })
            .sum()
    }

    pub fn swap_count(&self) -> usize {
        self.gates.iter().filter(|g| g.kind == GateKind::Swap).count()
    }

    /// ASAP depth counting every gate as one time step on each of its wires.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for gate in &self.gates {
            let start = gate.qubits.iter().map(|&q| level[q]).max().unwrap_or(0);
            for &q in &gate.qubits {
                level[q] = start + 1;
            }
            depth = depth.max(start + 1);
        }
        depth
    }

    /// Gate order reversed. Gates are not inverted.
    pub fn reverse(&self) -> QuantumCircuit {
        QuantumCircuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().cloned().collect(),
        }
    }

    /// Distinct unordered qubit pairs that share at least one two-qubit gate.
    pub fn interaction_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .gates
            .iter()
            .filter(|g| g.is_two_qubit())
            .map(|g| (g.qubits[0].min(g.qubits[1]), g.qubits[0].max(g.qubits[1])))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(n: usize, gates: Vec<Gate>) -> QuantumCircuit {
        QuantumCircuit::from_gates(n, gates).unwrap()
    }

    #[test]
    fn gate_invariants_are_enforced() {
        assert!(matches!(
            Gate::new(GateKind::Cx, vec![0], vec![]),
            Err(CircuitError::Arity { .. })
        ));
        assert!(matches!(
            Gate::new(GateKind::Rz, vec![0], vec![]),
            Err(CircuitError::ParamCount { .. })
        ));
        assert!(matches!(
            Gate::new(GateKind::Cx, vec![1, 1], vec![]),
            Err(CircuitError::RepeatedQubit { .. })
        ));
        let mut c = QuantumCircuit::new(2);
        assert!(matches!(
            c.push(Gate::cx(0, 2)),
            Err(CircuitError::QubitOutOfRange { qubit: 2, num_qubits: 2 })
        ));
    }

    #[test]
    fn counts_on_small_circuits() {
        let empty = QuantumCircuit::new(3);
        assert_eq!(empty.two_qubit_gate_count(), 0);
        assert_eq!(empty.cnot_equivalent_count(), 0);
        assert_eq!(empty.swap_count(), 0);
        assert_eq!(empty.depth(), 0);

        assert_eq!(circ(2, vec![Gate::swap(0, 1)]).cnot_equivalent_count(), 3);
        let c = circ(3, vec![Gate::cx(0, 1), Gate::swap(1, 2)]);
        assert_eq!(c.cnot_equivalent_count(), 4);
        assert_eq!(c.two_qubit_gate_count(), 2);
        assert_eq!(circ(2, vec![Gate::swap(0, 1), Gate::cx(0, 1)]).swap_count(), 1);
        assert_eq!(circ(2, vec![Gate::h(0), Gate::rz(0.3, 1)]).two_qubit_gate_count(), 0);
    }

    #[test]
    fn depth_examples() {
        assert_eq!(circ(1, vec![Gate::h(0), Gate::h(0), Gate::h(0)]).depth(), 3);
        assert_eq!(circ(2, vec![Gate::h(0), Gate::h(1), Gate::cx(0, 1)]).depth(), 2);
    }

    #[test]
    fn reverse_examples() {
        let c = circ(2, vec![Gate::h(0), Gate::cx(0, 1)]);
        assert_eq!(c.reverse().gates(), &[Gate::cx(0, 1), Gate::h(0)]);
        assert_eq!(c.reverse().reverse(), c);
        let single = circ(1, vec![Gate::rz(0.25, 0)]);
        assert_eq!(single.reverse(), single);
    }

    #[test]
    fn symmetric_matching() {
        assert!(Gate::cz(0, 1).matches(&Gate::cz(1, 0)));
        assert!(Gate::rzz(0.5, 2, 3).matches(&Gate::rzz(0.5, 3, 2)));
        assert!(!Gate::cx(0, 1).matches(&Gate::cx(1, 0)));
        assert!(!Gate::rz(0.5, 0).matches(&Gate::rz(0.6, 0)));
    }

    #[test]
    fn gate_names_round_trip() {
        for kind in GateKind::ALL {
            assert_eq!(kind.name().parse::<GateKind>().unwrap(), kind);
        }
        assert!("u3".parse::<GateKind>().is_err());
    }
}
