//! Oracles and generators shared by the integration tests. Nothing here calls
//! into the simulator or the routers.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;
use qumeld_core::{Gate, GateKind, QuantumCircuit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = Complex64;
pub type Matrix = Vec<Vec<C>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random gate from the full alphabet.
pub fn random_gate(rng: &mut ChaCha8Rng, num_qubits: usize) -> Gate {
    let kinds: Vec<GateKind> =
        GateKind::ALL.iter().copied().filter(|k| num_qubits >= 2 || k.arity() == 1).collect();
    let kind = kinds[rng.gen_range(0..kinds.len())];
    let a = rng.gen_range(0..num_qubits);
    let mut qubits = vec![a];
    if kind.arity() == 2 {
        let mut b = rng.gen_range(0..num_qubits - 1);
        if b >= a {
            b += 1;
        }
        qubits.push(b);
    }
    let params = (0..kind.num_params()).map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect();
    Gate::new(kind, qubits, params).expect("generated gate is valid")
}

pub fn random_circuit(rng: &mut ChaCha8Rng, num_qubits: usize, num_gates: usize) -> QuantumCircuit {
    let gates = (0..num_gates).map(|_| random_gate(rng, num_qubits)).collect();
    QuantumCircuit::from_gates(num_qubits, gates).expect("valid circuit")
}

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Textbook one-qubit matrices.
pub fn oracle_1q(kind: GateKind, params: &[f64]) -> [[C; 2]; 2] {
    let s = FRAC_1_SQRT_2;
    match kind {
        GateKind::H => [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]],
        GateKind::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        GateKind::Y => [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
        GateKind::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
        GateKind::S => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]],
        GateKind::Sdg => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]],
        GateKind::T => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(FRAC_PI_4.cos(), FRAC_PI_4.sin())]],
        GateKind::Tdg => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(FRAC_PI_4.cos(), -FRAC_PI_4.sin())]],
        GateKind::Rx => {
            let t = params[0] / 2.0;
            [[c(t.cos(), 0.0), c(0.0, -t.sin())], [c(0.0, -t.sin()), c(t.cos(), 0.0)]]
        }
        GateKind::Ry => {
            let t = params[0] / 2.0;
            [[c(t.cos(), 0.0), c(-t.sin(), 0.0)], [c(t.sin(), 0.0), c(t.cos(), 0.0)]]
        }
        GateKind::Rz => {
            let t = params[0] / 2.0;
            [[c(t.cos(), -t.sin()), c(0.0, 0.0)], [c(0.0, 0.0), c(t.cos(), t.sin())]]
        }
        _ => panic!("{kind} is not a one-qubit gate"),
    }
}

/// Two-qubit matrices indexed by `2·bit(first) + bit(second)`.
pub fn oracle_2q(kind: GateKind, params: &[f64]) -> [[C; 4]; 4] {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    match kind {
        GateKind::Cx => [[o, z, z, z], [z, o, z, z], [z, z, z, o], [z, z, o, z]],
        GateKind::Cz => [[o, z, z, z], [z, o, z, z], [z, z, o, z], [z, z, z, -o]],
        GateKind::Swap => [[o, z, z, z], [z, z, o, z], [z, o, z, z], [z, z, z, o]],
        GateKind::Rzz => {
            let t = params[0] / 2.0;
            let (e, f) = (c(t.cos(), -t.sin()), c(t.cos(), t.sin()));
            [[e, z, z, z], [z, f, z, z], [z, z, f, z], [z, z, z, e]]
        }
        _ => panic!("{kind} is not a two-qubit gate"),
    }
}

/// Full `2^n x 2^n` matrix of one gate; bit `q` of an index is qubit `q`.
pub fn gate_unitary(gate: &Gate, n: usize) -> Matrix {
    let dim = 1 << n;
    let mut u = vec![vec![c(0.0, 0.0); dim]; dim];
    let q = &gate.qubits;
    for i in 0..dim {
        for j in 0..dim {
            let bit = |x: usize, k: usize| (x >> k) & 1;
            if gate.qubits.len() == 1 {
                let rest = !(1usize << q[0]);
                if i & rest == j & rest {
                    u[i][j] = oracle_1q(gate.kind, &gate.params)[bit(i, q[0])][bit(j, q[0])];
                }
            } else {
                let rest = !((1usize << q[0]) | (1usize << q[1]));
                if i & rest == j & rest {
                    let m = oracle_2q(gate.kind, &gate.params);
                    u[i][j] = m[2 * bit(i, q[0]) + bit(i, q[1])][2 * bit(j, q[0]) + bit(j, q[1])];
                }
            }
        }
    }
    u
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim).map(|i| (0..dim).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect()).collect()
}

pub fn circuit_unitary(circuit: &QuantumCircuit) -> Matrix {
    let mut u = identity(1 << circuit.num_qubits());
    for g in circuit.gates() {
        u = matmul(&gate_unitary(g, circuit.num_qubits()), &u);
    }
    u
}

/// Dense Pauli string matrix; character `k` acts on qubit `k`.
pub fn pauli_matrix(pauli: &str) -> Matrix {
    let n = pauli.len();
    let mut m = identity(1 << n);
    for (q, ch) in pauli.chars().enumerate() {
        let kind = match ch {
            'I' => continue,
            'X' => GateKind::X,
            'Y' => GateKind::Y,
            'Z' => GateKind::Z,
            _ => panic!("bad pauli"),
        };
        m = matmul(&gate_unitary(&Gate::new(kind, vec![q], vec![]).unwrap(), n), &m);
    }
    m
}

/// `exp(A)` by scaling and squaring with a Taylor core.
pub fn expm(a: &Matrix) -> Matrix {
    let dim = a.len();
    let norm: f64 = a.iter().map(|r| r.iter().map(|x| x.norm()).sum::<f64>()).fold(0.0, f64::max);
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale /= 2.0;
        squarings += 1;
    }
    let scaled: Matrix = a.iter().map(|r| r.iter().map(|x| x * scale).collect()).collect();
    let mut result = identity(dim);
    let mut term = identity(dim);
    for k in 1..30 {
        term = matmul(&term, &scaled);
        let inv = 1.0 / k as f64;
        term.iter_mut().for_each(|r| r.iter_mut().for_each(|x| *x *= inv));
        for i in 0..dim {
            for j in 0..dim {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter().zip(b).flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).norm())).fold(0.0, f64::max)
}

/// Minimum SWAPs to run `circuit` on an undirected graph with a free initial
/// layout (logical count == physical count), searching up to `max_swaps`.
/// Ready gates run for free whenever their operands are adjacent.
pub fn optimal_swaps(circuit: &QuantumCircuit, edges: &[(usize, usize)], max_swaps: usize) -> Option<usize> {
    let n = circuit.num_qubits();
    let gates = circuit.gates();
    let adjacent = |a: usize, b: usize| edges.iter().any(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a));
    // Gate i depends on the last earlier gate on each of its wires.
    let preds: Vec<Vec<usize>> = (0..gates.len())
        .map(|i| {
            gates[i]
                .qubits
                .iter()
                .filter_map(|q| (0..i).rev().find(|&j| gates[j].qubits.contains(q)))
                .collect()
        })
        .collect();
    let close = |layout: &Vec<usize>, mut done: u32| loop {
        let before = done;
        for i in 0..gates.len() {
            if done >> i & 1 == 1 || preds[i].iter().any(|&p| done >> p & 1 == 0) {
                continue;
            }
            let g = &gates[i];
            if g.qubits.len() == 1 || adjacent(layout[g.qubits[0]], layout[g.qubits[1]]) {
                done |= 1 << i;
            }
        }
        if done == before {
            return done;
        }
    };
    let full = if gates.len() == 32 { u32::MAX } else { (1u32 << gates.len()) - 1 };
    let mut seen: HashMap<(Vec<usize>, u32), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for perm in permutations(n) {
        let done = close(&perm, 0);
        if seen.insert((perm.clone(), done), 0).is_none() {
            queue.push_back((perm, done, 0));
        }
    }
    while let Some((layout, done, cost)) = queue.pop_front() {
        if done == full {
            return Some(cost);
        }
        if cost == max_swaps {
            continue;
        }
        for &(u, v) in edges {
            let mut next = layout.clone();
            for p in next.iter_mut() {
                if *p == u {
                    *p = v;
                } else if *p == v {
                    *p = u;
                }
            }
            let next_done = close(&next, done);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry((next.clone(), next_done)) {
                e.insert(cost + 1);
                queue.push_back((next, next_done, cost + 1));
            }
        }
    }
    None
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}
