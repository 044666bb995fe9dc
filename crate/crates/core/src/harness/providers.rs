//! Benchmark workloads by key.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Gate, QuantumCircuit};
use crate::error::HarnessError;
use crate::io::{parse_hamiltonian, Hamiltonian, Pauli, PauliTerm};
use crate::mappers::{hamiltonian_reference_circuit, synthesize_hamiltonian};

/// The six fixed benchmark keys.
pub const CIRCUIT_KEYS: [&str; 6] =
    ["vqe_h2", "vqe_lih", "vqe_random_demo_9", "efficientsu2_5", "qaoa_maxcut_5", "qaoa_ansatz_5"];

/// Keys whose workloads are generated in code rather than read from files.
pub const GENERATED_KEYS: [&str; 4] = ["efficientsu2_5", "qaoa_maxcut_5", "qaoa_ansatz_5", "vqe_random_demo_9"];

/// Edges of the fixed five-vertex Max-Cut instance.
pub const MAXCUT_5_EDGES: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)];

const QAOA_GAMMA: f64 = 0.4;
const QAOA_BETA: f64 = 0.7;

#[derive(Clone, Debug, PartialEq)]
pub enum Workload {
    Circuit(QuantumCircuit),
    Hamiltonian(Hamiltonian),
}

impl Workload {
    pub fn num_qubits(&self) -> usize {
        match self {
            Workload::Circuit(c) => c.num_qubits(),
            Workload::Hamiltonian(h) => h.num_qubits,
        }
    }

    pub fn is_hamiltonian(&self) -> bool {
        matches!(self, Workload::Hamiltonian(_))
    }

    /// The logical circuit a mapped result is verified against.
    pub fn reference_circuit(&self) -> QuantumCircuit {
        match self {
            Workload::Circuit(c) => c.clone(),
            Workload::Hamiltonian(h) => hamiltonian_reference_circuit(h),
        }
    }

    /// Two-qubit interactions before routing: gates for circuits, weight-2
    /// terms for Hamiltonians.
    pub fn two_qubit_interactions(&self) -> usize {
        match self {
            Workload::Circuit(c) => c.two_qubit_gate_count(),
            Workload::Hamiltonian(h) => h.two_qubit_interactions(),
        }
    }
}

pub fn efficientsu2_5() -> QuantumCircuit {
    let n = 5;
    let mut gates = Vec::new();
    let mut k = 0;
    let mut angle = || {
        k += 1;
        0.1 * k as f64
    };
    let mut rotation_layer = |gates: &mut Vec<Gate>| {
        for q in 0..n {
            gates.push(Gate::ry(angle(), q));
            gates.push(Gate::rz(angle(), q));
        }
    };
    rotation_layer(&mut gates);
    gates.extend((0..n - 1).map(|q| Gate::cx(q, q + 1)));
    rotation_layer(&mut gates);
    QuantumCircuit::from_gates(n, gates).expect("fixed ansatz is valid")
}

pub fn maxcut_hamiltonian(num_qubits: usize, edges: &[(usize, usize)]) -> Hamiltonian {
    let terms = edges
        .iter()
        .map(|&(u, v)| {
            let mut paulis = vec![Pauli::I; num_qubits];
            paulis[u] = Pauli::Z;
            paulis[v] = Pauli::Z;
            PauliTerm { paulis, coeff: 0.5 }
        })
        .collect();
    Hamiltonian::new(num_qubits, terms).expect("edges lie inside the register")
}

/// One QAOA layer: `|+⟩` preparation, `RZZ` per edge, `RX` mixer.
pub fn qaoa_ansatz(num_qubits: usize, edges: &[(usize, usize)]) -> QuantumCircuit {
    let mut gates: Vec<Gate> = (0..num_qubits).map(Gate::h).collect();
    // exp(-i γ·0.5·ZZ) = RZZ(γ)
    gates.extend(edges.iter().map(|&(u, v)| Gate::rzz(QAOA_GAMMA, u, v)));
    gates.extend((0..num_qubits).map(|q| Gate::rx(2.0 * QAOA_BETA, q)));
    QuantumCircuit::from_gates(num_qubits, gates).expect("edges lie inside the register")
}

/// Parses `"0-1,1-2,2-0"`.
fn parse_edge_list(key: &str, text: &str) -> Result<Vec<(usize, usize)>, HarnessError> {
    let invalid = |message: String| HarnessError::InvalidCircuitKey { key: key.to_string(), message };
    let mut edges = Vec::new();
    for token in text.split(',').map(str::trim) {
        let (u, v) = token.split_once('-').ok_or_else(|| invalid(format!("`{token}` is not of the form u-v")))?;
        let u: usize = u.trim().parse().map_err(|_| invalid(format!("bad vertex in `{token}`")))?;
        let v: usize = v.trim().parse().map_err(|_| invalid(format!("bad vertex in `{token}`")))?;
        if u == v {
            return Err(invalid(format!("self-loop `{token}`")));
        }
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(invalid("empty edge list".into()));
    }
    Ok(edges)
}

fn load_hamiltonian(hamiltonian_dir: &Path, key: &str) -> Result<Hamiltonian, HarnessError> {
    let path = hamiltonian_dir.join(format!("{key}.json"));
    let text = std::fs::read_to_string(&path).map_err(|e| HarnessError::io(&path, e))?;
    Ok(parse_hamiltonian(&text)?)
}

/// Resolves a fixed key or a parametric `qaoa_maxcut:<edges>` /
/// `qaoa_ansatz:<edges>` key.
pub fn provide_circuit(hamiltonian_dir: &Path, key: &str) -> Result<Workload, HarnessError> {
    if let Some((kind, edges)) = key.split_once(':') {
        let edges = parse_edge_list(key, edges)?;
        let n = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1;
        return match kind {
            "qaoa_maxcut" => Ok(Workload::Hamiltonian(maxcut_hamiltonian(n, &edges))),
            "qaoa_ansatz" => Ok(Workload::Circuit(qaoa_ansatz(n, &edges))),
            _ => Err(HarnessError::UnknownCircuit(key.to_string())),
        };
    }
    match key {
        "efficientsu2_5" => Ok(Workload::Circuit(efficientsu2_5())),
        "qaoa_maxcut_5" => Ok(Workload::Hamiltonian(maxcut_hamiltonian(5, &MAXCUT_5_EDGES))),
        "qaoa_ansatz_5" => Ok(Workload::Circuit(qaoa_ansatz(5, &MAXCUT_5_EDGES))),
        "vqe_h2" | "vqe_lih" | "vqe_random_demo_9" => Ok(Workload::Hamiltonian(load_hamiltonian(hamiltonian_dir, key)?)),
        _ => Err(HarnessError::UnknownCircuit(key.to_string())),
    }
}

/// Checks a key's syntax without loading data files.
pub fn check_circuit_key(key: &str) -> Result<(), HarnessError> {
    if let Some((kind, edges)) = key.split_once(':') {
        if kind != "qaoa_maxcut" && kind != "qaoa_ansatz" {
            return Err(HarnessError::UnknownCircuit(key.to_string()));
        }
        return parse_edge_list(key, edges).map(|_| ());
    }
    if CIRCUIT_KEYS.contains(&key) {
        Ok(())
    } else {
        Err(HarnessError::UnknownCircuit(key.to_string()))
    }
}

/// Generators for the Hamiltonian data files. They run once to produce the
/// shipped files; loading never calls them.
pub mod generators {
    use super::*;

    pub const RANDOM_DEMO_SEED: u64 = 9;
    pub const RANDOM_DEMO_TERMS: usize = 30;

    /// Thirty random 2-local terms on nine qubits. Consecutive terms never
    /// share a support, and a seed is accepted only if no ladder CNOTs cancel
    /// after peephole optimisation, so both the raw and the optimised
    /// synthesis have 60 two-qubit gates.
    pub fn vqe_random_demo_9() -> Hamiltonian {
        let n = 9;
        let mut seed = RANDOM_DEMO_SEED;
        loop {
            let h = random_two_local(n, RANDOM_DEMO_TERMS, seed)
                .with_provenance(format!("random 2-local Pauli terms, ChaCha8 seed {seed}"));
            if hamiltonian_reference_circuit(&h).two_qubit_gate_count() == 2 * RANDOM_DEMO_TERMS {
                return h;
            }
            seed += 1;
        }
    }

    fn random_two_local(n: usize, count: usize, seed: u64) -> Hamiltonian {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut terms = Vec::with_capacity(count);
        let mut previous = (usize::MAX, usize::MAX);
        while terms.len() < count {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            let pair = (i.min(j), i.max(j));
            if i == j || pair == previous {
                continue;
            }
            previous = pair;
            let mut paulis = vec![Pauli::I; n];
            for q in [pair.0, pair.1] {
                paulis[q] = *[Pauli::X, Pauli::Y, Pauli::Z].choose(&mut rng).expect("non-empty");
            }
            let coeff = (rng.gen_range(-1.0..1.0f64) * 1e4).round() / 1e4;
            terms.push(PauliTerm { paulis, coeff });
        }
        Hamiltonian::new(n, terms).expect("generated terms are valid")
    }

    /// Four-qubit H2 (STO-3G, 0.735 Å bond, Jordan-Wigner).
    pub fn vqe_h2() -> Hamiltonian {
        let terms = [
            ("IIII", -0.09886397),
            ("ZIII", 0.17119775),
            ("IZII", 0.17119775),
            ("IIZI", -0.22278593),
            ("IIIZ", -0.22278593),
            ("ZZII", 0.16862219),
            ("ZIZI", 0.12054482),
            ("ZIIZ", 0.16586702),
            ("IZZI", 0.16586702),
            ("IZIZ", 0.12054482),
            ("IIZZ", 0.17434844),
            ("XXYY", -0.0453222),
            ("XYYX", 0.0453222),
            ("YXXY", 0.0453222),
            ("YYXX", -0.0453222),
        ];
        let terms = terms.iter().map(|(p, c)| PauliTerm::parse(p, *c).expect("valid term")).collect();
        Hamiltonian::new(4, terms).expect("valid Hamiltonian").with_provenance(
            "H2 STO-3G at 0.735 angstrom, Jordan-Wigner; standard literature coefficients rounded to 8 digits. \
             Reference target for the two-qubit count only.",
        )
    }

    pub const LIH_SEED: u64 = 12;
    pub const LIH_DOUBLE_EXCITATIONS: usize = 120;

    /// Twelve-qubit stand-in with the term structure of a Jordan-Wigner
    /// molecular Hamiltonian: number terms, pairwise ZZ terms and
    /// double-excitation strings with Z parity chains.
    pub fn vqe_lih() -> Hamiltonian {
        let n = 12;
        let mut rng = ChaCha8Rng::seed_from_u64(LIH_SEED);
        let mut coeff = |scale: f64| (rng.gen_range(-scale..scale) * 1e6).round() / 1e6;
        let mut terms = vec![PauliTerm { paulis: vec![Pauli::I; n], coeff: -7.5 }];
        for q in 0..n {
            let mut paulis = vec![Pauli::I; n];
            paulis[q] = Pauli::Z;
            terms.push(PauliTerm { paulis, coeff: coeff(0.5) });
        }
        for a in 0..n {
            for b in a + 1..n {
                let mut paulis = vec![Pauli::I; n];
                paulis[a] = Pauli::Z;
                paulis[b] = Pauli::Z;
                terms.push(PauliTerm { paulis, coeff: coeff(0.2) });
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(LIH_SEED + 1);
        const PATTERNS: [[Pauli; 4]; 8] = {
            use Pauli::*;
            [
                [X, X, X, Y],
                [X, X, Y, X],
                [X, Y, X, X],
                [Y, X, X, X],
                [X, Y, Y, Y],
                [Y, X, Y, Y],
                [Y, Y, X, Y],
                [Y, Y, Y, X],
            ]
        };
        for _ in 0..LIH_DOUBLE_EXCITATIONS / PATTERNS.len() {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut rng);
            let mut quad = [idx[0], idx[1], idx[2], idx[3]];
            quad.sort_unstable();
            let c = (rng.gen_range(-0.05..0.05f64) * 1e6).round() / 1e6;
            for pattern in PATTERNS {
                let mut paulis = vec![Pauli::I; n];
                for q in quad[0] + 1..quad[1] {
                    paulis[q] = Pauli::Z;
                }
                for q in quad[2] + 1..quad[3] {
                    paulis[q] = Pauli::Z;
                }
                for (k, &q) in quad.iter().enumerate() {
                    paulis[q] = pattern[k];
                }
                terms.push(PauliTerm { paulis, coeff: c / 8.0 });
            }
        }
        Hamiltonian::new(n, terms).expect("valid Hamiltonian").with_provenance(
            "synthetic 12-qubit stand-in for LiH (the source decomposition is unpublished): seeded \
             Z, ZZ and Jordan-Wigner double-excitation terms. Reference target for the two-qubit count only.",
        )
    }

    /// File name stem and content of every generated Hamiltonian.
    pub fn all() -> Vec<(&'static str, Hamiltonian)> {
        vec![("vqe_h2", vqe_h2()), ("vqe_lih", vqe_lih()), ("vqe_random_demo_9", vqe_random_demo_9())]
    }
}

/// The naive synthesis two-qubit count of a Hamiltonian workload.
pub fn synthesized_two_qubit_gates(h: &Hamiltonian) -> usize {
    synthesize_hamiltonian(h, 1.0).two_qubit_gate_count()
}
