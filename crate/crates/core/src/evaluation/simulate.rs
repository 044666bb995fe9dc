use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::circuit::{Gate, GateKind, QuantumCircuit};
use crate::error::EvalError;

pub const MAX_SIMULATED_QUBITS: usize = 14;

/// Dense state; bit `q` of an amplitude index is qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(num_qubits: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        StateVector { amplitudes }
    }

    pub fn num_qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// Applies `gate` with its qubit indices read as bit positions.
    pub fn apply(&mut self, gate: &Gate) {
        let q = &gate.qubits;
        match gate.kind {
            GateKind::Cx => {
                let (c, t) = (1 << q[0], 1 << q[1]);
                for i in 0..self.amplitudes.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amplitudes.swap(i, i | t);
                    }
                }
            }
            GateKind::Cz => {
                let mask = (1 << q[0]) | (1 << q[1]);
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if i & mask == mask {
                        *a = -*a;
                    }
                }
            }
            GateKind::Swap => {
                let (a, b) = (1 << q[0], 1 << q[1]);
                for i in 0..self.amplitudes.len() {
                    if i & a != 0 && i & b == 0 {
                        self.amplitudes.swap(i, i ^ a ^ b);
                    }
                }
            }
            GateKind::Rzz => {
                let half = gate.params[0] / 2.0;
                let even = Complex64::from_polar(1.0, -half);
                let odd = Complex64::from_polar(1.0, half);
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    let parity = ((i >> q[0]) ^ (i >> q[1])) & 1;
                    *a *= if parity == 0 { even } else { odd };
                }
            }
            kind => {
                let m = single_qubit_matrix(kind, &gate.params);
                let bit = 1 << q[0];
                for i in 0..self.amplitudes.len() {
                    if i & bit == 0 {
                        let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | bit]);
                        self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
                        self.amplitudes[i | bit] = m[1][0] * a0 + m[1][1] * a1;
                    }
                }
            }
        }
    }
}

/// 2x2 unitary of a one-qubit gate; `RZ(θ) = diag(e^{-iθ/2}, e^{iθ/2})`.
pub fn single_qubit_matrix(kind: GateKind, params: &[f64]) -> [[Complex64; 2]; 2] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    match kind {
        GateKind::H => [[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)], [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)]],
        GateKind::X => [[o, l], [l, o]],
        GateKind::Y => [[o, c(0.0, -1.0)], [c(0.0, 1.0), o]],
        GateKind::Z => [[l, o], [o, -l]],
        GateKind::S => [[l, o], [o, c(0.0, 1.0)]],
        GateKind::Sdg => [[l, o], [o, c(0.0, -1.0)]],
        GateKind::T => [[l, o], [o, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]],
        GateKind::Tdg => [[l, o], [o, Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)]],
        GateKind::Rx => {
            let (s, co) = (params[0] / 2.0).sin_cos();
            [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
        }
        GateKind::Ry => {
            let (s, co) = (params[0] / 2.0).sin_cos();
            [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
        }
        GateKind::Rz => {
            let half = params[0] / 2.0;
            [[Complex64::from_polar(1.0, -half), o], [o, Complex64::from_polar(1.0, half)]]
        }
        GateKind::Cx | GateKind::Cz | GateKind::Swap | GateKind::Rzz => {
            unreachable!("{kind} is a two-qubit gate")
        }
    }
}

/// The circuit applied to `|0…0⟩`.
pub fn simulate(circuit: &QuantumCircuit) -> Result<StateVector, EvalError> {
    if circuit.num_qubits() > MAX_SIMULATED_QUBITS {
        return Err(EvalError::TooManyQubits { found: circuit.num_qubits(), limit: MAX_SIMULATED_QUBITS });
    }
    let mut state = StateVector::zero(circuit.num_qubits());
    for gate in circuit.gates() {
        state.apply(gate);
    }
    Ok(state)
}
