use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::TopologyError;
use crate::topology::{devices, distance_matrix, CouplingGraph, DistanceMatrix};

pub const T1_RANGE_US: (f64, f64) = (50.0, 100.0);
pub const T2_RANGE_US: (f64, f64) = (20.0, 80.0);
pub const FREQUENCY_RANGE_GHZ: (f64, f64) = (4.5, 5.5);
pub const TWO_QUBIT_ERROR_RANGE: (f64, f64) = (0.003, 0.03);

/// Randomised per-qubit and per-edge device characteristics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseProfile {
    pub t1_us: Vec<f64>,
    pub t2_us: Vec<f64>,
    pub frequency_ghz: Vec<f64>,
    /// Keyed by `(u, v)` with `u < v`.
    pub two_qubit_error: BTreeMap<(usize, usize), f64>,
}

impl NoiseProfile {
    pub fn edge_error(&self, u: usize, v: usize) -> Option<f64> {
        self.two_qubit_error.get(&(u.min(v), u.max(v))).copied()
    }
}

/// A coupling graph with noise metadata and its cached distance matrix.
#[derive(Clone, Debug)]
pub struct Backend {
    pub name: String,
    pub graph: CouplingGraph,
    pub noise: NoiseProfile,
    pub seed: u64,
    distances: DistanceMatrix,
}

impl Backend {
    /// Wraps an arbitrary graph; noise is drawn from `(seed, name)` exactly as
    /// for the named devices.
    pub fn from_graph(name: impl Into<String>, graph: CouplingGraph, seed: u64) -> Result<Self, TopologyError> {
        let name = name.into();
        let distances = distance_matrix(&graph)?;
        let noise = generate_noise(&name, &graph, seed);
        Ok(Backend { name, graph, noise, seed, distances })
    }

    pub fn num_qubits(&self) -> usize {
        self.graph.num_qubits()
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.distances
    }
}

pub fn make_backend(topology_dir: &Path, name: &str, seed: u64) -> Result<Backend, TopologyError> {
    let graph = devices::load_named(topology_dir, name)?;
    Backend::from_graph(name, graph, seed)
}

/// Independent stream per `(seed, name, quantity, index)`, so growing a device
/// never changes the draws for existing qubits.
fn stream(seed: u64, name: &str, quantity: &str, index: &str) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(format!("qumeld-noise\0{seed}\0{name}\0{quantity}\0{index}").as_bytes());
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

fn uniform(seed: u64, name: &str, quantity: &str, index: &str, (lo, hi): (f64, f64)) -> f64 {
    stream(seed, name, quantity, index).gen_range(lo..hi)
}

fn generate_noise(name: &str, graph: &CouplingGraph, seed: u64) -> NoiseProfile {
    let n = graph.num_qubits();
    let per_qubit = |quantity: &str, range| -> Vec<f64> {
        (0..n).map(|q| uniform(seed, name, quantity, &q.to_string(), range)).collect()
    };
    let t1_us = per_qubit("t1", T1_RANGE_US);
    let t2_us = per_qubit("t2", T2_RANGE_US);
    let frequency_ghz = per_qubit("frequency", FREQUENCY_RANGE_GHZ);
    debug_assert!(t1_us.iter().zip(&t2_us).all(|(t1, t2)| *t2 <= 2.0 * *t1));
    let two_qubit_error = graph
        .edges()
        .iter()
        .map(|&(u, v)| ((u, v), uniform(seed, name, "cx_error", &format!("{u}-{v}"), TWO_QUBIT_ERROR_RANGE)))
        .collect();
    NoiseProfile { t1_us, t2_us, frequency_ghz, two_qubit_error }
}
