//! The sixteen named devices and their on-disk edge lists.
//!
//! Only names and qubit counts are fixed; the shipped edge lists come from
//! [`generate_device`] and each file records how it was produced.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::TopologyError;
use crate::topology::lattice::{complete_graph, grid_graph, heavy_hex_graph, hex_lattice_graph};
use crate::topology::CouplingGraph;

/// Registry of `(name, qubit count, family description)`.
pub const DEVICES: [(&str, usize, &str); 16] = [
    ("ibm_almaden", 20, "IBM heavy-hex era"),
    ("ibm_cambridge", 28, "IBM heavy-hex"),
    ("ibm_falcon", 27, "IBM heavy-hex"),
    ("ibm_montreal", 27, "IBM heavy-hex"),
    ("ibm_paughkeepsie", 20, "IBM heavy-hex era"),
    ("ibm_reuschlikon", 16, "IBM ladder"),
    ("ibm_tokyo", 20, "IBM grid with diagonals"),
    ("ibm_manhattan", 65, "IBM heavy-hex"),
    ("ibm_rochester", 53, "IBM heavy-hex"),
    ("ibm_eagle", 127, "IBM heavy-hex"),
    ("ibm_heron", 133, "IBM heavy-hex"),
    ("google_willow", 105, "square grid, trimmed corners"),
    ("ionq_harmony", 9, "fully connected trapped ion"),
    ("rigetti_novera", 9, "square lattice with diagonal couplers"),
    ("riken_fujitsu", 256, "square lattice"),
    ("hex_lattice_54", 54, "synthetic honeycomb"),
];

pub fn device_names() -> impl Iterator<Item = &'static str> {
    DEVICES.iter().map(|(name, _, _)| *name)
}

pub fn expected_qubits(name: &str) -> Option<usize> {
    DEVICES.iter().find(|(n, _, _)| *n == name).map(|(_, q, _)| *q)
}

/// On-disk schema of `data/topologies/<name>.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub name: String,
    pub num_qubits: usize,
    pub edges: Vec<[usize; 2]>,
    pub provenance: String,
}

impl TopologyFile {
    pub fn from_graph(name: &str, graph: &CouplingGraph, provenance: &str) -> Self {
        TopologyFile {
            name: name.to_string(),
            num_qubits: graph.num_qubits(),
            edges: graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
            provenance: provenance.to_string(),
        }
    }

    /// Pretty JSON with one edge per line.
    pub fn to_json(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|[u, v]| format!("    [{u}, {v}]")).collect();
        format!(
            "{{\n  \"name\": {},\n  \"num_qubits\": {},\n  \"provenance\": {},\n  \"edges\": [\n{}\n  ]\n}}\n",
            serde_json::to_string(&self.name).expect("string"),
            self.num_qubits,
            serde_json::to_string(&self.provenance).expect("string"),
            edges.join(",\n")
        )
    }

    pub fn to_graph(&self) -> Result<CouplingGraph, TopologyError> {
        CouplingGraph::new(self.num_qubits, self.edges.iter().map(|&[u, v]| (u, v)))
    }
}

/// Reads `<dir>/<name>.json` and checks it against the registry.
pub fn load_named(topology_dir: &Path, name: &str) -> Result<CouplingGraph, TopologyError> {
    let expected = expected_qubits(name).ok_or_else(|| TopologyError::UnknownName(name.to_string()))?;
    let path = topology_dir.join(format!("{name}.json"));
    let data_err = |message: String| TopologyError::DataFile { path: path.clone(), message };
    let text = std::fs::read_to_string(&path).map_err(|e| data_err(e.to_string()))?;
    let file: TopologyFile = serde_json::from_str(&text).map_err(|e| data_err(e.to_string()))?;
    if file.name != name {
        return Err(data_err(format!("file declares name `{}`", file.name)));
    }
    let graph = file.to_graph().map_err(|e| data_err(e.to_string()))?;
    if graph.num_qubits() != expected {
        return Err(TopologyError::QubitCountMismatch {
            name: name.to_string(),
            expected,
            found: graph.num_qubits(),
        });
    }
    Ok(graph)
}

/// Builds the edge list shipped for `name`, with a provenance note.
pub fn generate_device(name: &str) -> Result<(CouplingGraph, String), TopologyError> {
    let expected = expected_qubits(name).ok_or_else(|| TopologyError::UnknownName(name.to_string()))?;
    let recalled = "reconstructed from the publicly documented coupling map; \
                    not verified against current hardware calibration data";
    let (graph, provenance) = match name {
        "ibm_almaden" => (row_lattice(&ALMADEN_RUNGS)?, recalled.to_string()),
        "ibm_paughkeepsie" => (row_lattice(&POUGHKEEPSIE_RUNGS)?, recalled.to_string()),
        "ibm_tokyo" => (CouplingGraph::new(20, TOKYO_EDGES)?, recalled.to_string()),
        "ibm_reuschlikon" => (CouplingGraph::new(16, RUESCHLIKON_EDGES)?, recalled.to_string()),
        "ibm_falcon" | "ibm_montreal" => (
            CouplingGraph::new(27, FALCON_EDGES)?,
            format!("27-qubit Falcon heavy-hex layout, {recalled}"),
        ),
        "ibm_manhattan" => (
            heavy_hex_graph(4, 2)?,
            "generated: heavy_hex_graph(4, 2), the 65-qubit Hummingbird arrangement".to_string(),
        ),
        "ibm_eagle" => (
            heavy_hex_graph(6, 3)?,
            "generated: heavy_hex_graph(6, 3), the 127-qubit Eagle arrangement".to_string(),
        ),
        "ibm_cambridge" | "ibm_rochester" | "ibm_heron" => pruned_heavy_hex(expected)?,
        "google_willow" => {
            let g = trimmed_grid(11, 11, 2)?;
            (g, "generated: 11x11 square grid with a 2x2 block removed at each corner; \
                 qubit count matches, exact coupler list is not public here"
                .to_string())
        }
        "ionq_harmony" => (complete_graph(9)?, "generated: complete graph on 9 qubits".to_string()),
        "rigetti_novera" => {
            let grid = grid_graph(3, 3)?;
            let edges = grid.edges().iter().copied().chain([(1, 3), (1, 5), (3, 7), (5, 7)]);
            (
                CouplingGraph::new(9, edges)?,
                "generated: 3x3 square lattice plus 4 diagonal couplers (16 edges, average degree 32/9)"
                    .to_string(),
            )
        }
        "riken_fujitsu" => (grid_graph(16, 16)?, "generated: 16x16 square lattice".to_string()),
        "hex_lattice_54" => (
            hex_lattice_graph(3, 6)?,
            "generated: hex_lattice_graph(3, 6), honeycomb of 3x6 cells".to_string(),
        ),
        _ => unreachable!("registry and generator cover the same names"),
    };
    if graph.num_qubits() != expected {
        return Err(TopologyError::QubitCountMismatch {
            name: name.to_string(),
            expected,
            found: graph.num_qubits(),
        });
    }
    Ok((graph, provenance))
}

// Four rows of five qubits with the listed vertical couplers.
const ALMADEN_RUNGS: [(usize, usize); 7] = [(1, 6), (3, 8), (5, 10), (7, 12), (9, 14), (11, 16), (13, 18)];
const POUGHKEEPSIE_RUNGS: [(usize, usize); 7] = [(0, 5), (4, 9), (5, 10), (7, 12), (9, 14), (10, 15), (14, 19)];

fn row_lattice(rungs: &[(usize, usize)]) -> Result<CouplingGraph, TopologyError> {
    let rows = (0..4).flat_map(|r| (0..4).map(move |c| (5 * r + c, 5 * r + c + 1)));
    CouplingGraph::new(20, rows.chain(rungs.iter().copied()))
}

const TOKYO_EDGES: [(usize, usize); 43] = [
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (1, 6), (1, 7), (2, 6), (2, 7), (3, 8), (3, 9),
    (4, 8), (4, 9), (5, 6), (6, 7), (7, 8), (8, 9), (5, 10), (5, 11), (6, 10), (6, 11),
    (7, 12), (7, 13), (8, 12), (8, 13), (9, 14), (10, 11), (11, 12), (12, 13), (13, 14),
    (10, 15), (11, 16), (11, 17), (12, 16), (12, 17), (13, 18), (13, 19), (14, 18), (14, 19),
    (15, 16), (16, 17), (17, 18), (18, 19),
];

const RUESCHLIKON_EDGES: [(usize, usize); 22] = [
    (1, 0), (1, 2), (2, 3), (3, 4), (3, 14), (5, 4), (6, 5), (6, 7), (6, 11), (7, 10), (8, 7),
    (9, 8), (9, 10), (11, 10), (12, 5), (12, 11), (12, 13), (13, 4), (13, 14), (15, 0),
    (15, 2), (15, 14),
];

const FALCON_EDGES: [(usize, usize); 28] = [
    (0, 1), (1, 2), (1, 4), (2, 3), (3, 5), (4, 7), (5, 8), (6, 7), (7, 10), (8, 9), (8, 11),
    (10, 12), (11, 14), (12, 13), (12, 15), (13, 14), (14, 16), (15, 18), (16, 19), (17, 18),
    (18, 21), (19, 20), (19, 22), (21, 23), (22, 25), (23, 24), (24, 25), (25, 26),
];

/// Smallest `heavy_hex_graph` with at least `target` qubits, shrunk by
/// repeatedly deleting the highest-index qubit whose removal keeps the graph
/// connected.
fn pruned_heavy_hex(target: usize) -> Result<(CouplingGraph, String), TopologyError> {
    let mut best: Option<(usize, usize, usize)> = None;
    for rows in 1..=10 {
        for cols in 1..=10 {
            let n = heavy_hex_graph(rows, cols)?.num_qubits();
            if n >= target && best.is_none_or(|(m, _, _)| n < m) {
                best = Some((n, rows, cols));
            }
        }
    }
    let (n, rows, cols) = best.expect("lattices up to 10x10 exceed every registry size");
    let base = heavy_hex_graph(rows, cols)?;
    let mut alive = vec![true; n];
    let mut remaining = n;
    while remaining > target {
        let victim = (0..n)
            .rev()
            .find(|&v| alive[v] && stays_connected(&base, &alive, v))
            .expect("a connected graph always has a non-cut vertex");
        alive[victim] = false;
        remaining -= 1;
    }
    let mut relabel = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if alive[v] {
            relabel[v] = next;
            next += 1;
        }
    }
    let edges = base
        .edges()
        .iter()
        .filter(|(u, v)| alive[*u] && alive[*v])
        .map(|&(u, v)| (relabel[u], relabel[v]));
    let graph = CouplingGraph::new(target, edges)?;
    let note = format!(
        "generated: heavy_hex_graph({rows}, {cols}) ({n} qubits) pruned to {target} by removing \
         highest-index non-cut qubits; qubit count matches, exact coupler list is not reproduced"
    );
    Ok((graph, note))
}

fn stays_connected(graph: &CouplingGraph, alive: &[bool], removed: usize) -> bool {
    let Some(start) = (0..alive.len()).find(|&v| alive[v] && v != removed) else {
        return true;
    };
    let mut seen = vec![false; alive.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in graph.neighbors(u) {
            if alive[w] && w != removed && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == alive.iter().filter(|&&a| a).count() - 1
}

fn trimmed_grid(rows: usize, cols: usize, corner: usize) -> Result<CouplingGraph, TopologyError> {
    let in_corner = |r: usize, c: usize| {
        (r < corner || r >= rows - corner) && (c < corner || c >= cols - corner)
    };
    let mut ids = vec![None; rows * cols];
    let mut next = 0;
    for r in 0..rows {
        for c in 0..cols {
            if !in_corner(r, c) {
                ids[r * cols + c] = Some(next);
                next += 1;
            }
        }
    }
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let Some(a) = ids[r * cols + c] else { continue };
            if c + 1 < cols {
                if let Some(b) = ids[r * cols + c + 1] {
                    edges.push((a, b));
                }
            }
            if r + 1 < rows {
                if let Some(b) = ids[(r + 1) * cols + c] {
                    edges.push((a, b));
                }
            }
        }
    }
    CouplingGraph::new(next, edges)
}
