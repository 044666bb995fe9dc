//! Parametric coupling-graph families.

use crate::error::TopologyError;
use crate::topology::CouplingGraph;

pub fn complete_graph(n: usize) -> Result<CouplingGraph, TopologyError> {
    if n == 0 {
        return Err(TopologyError::Empty);
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    CouplingGraph::new(n, edges)
}

/// Path graph `0 - 1 - ... - (n-1)`.
pub fn line_graph(n: usize) -> Result<CouplingGraph, TopologyError> {
    grid_graph(1, n)
}

/// Row-major 4-neighbour grid; qubit `r * cols + c`.
pub fn grid_graph(rows: usize, cols: usize) -> Result<CouplingGraph, TopologyError> {
    if rows == 0 || cols == 0 {
        return Err(TopologyError::ZeroDimension);
    }
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let q = r * cols + c;
            if c + 1 < cols {
                edges.push((q, q + 1));
            }
            if r + 1 < rows {
                edges.push((q, q + cols));
            }
        }
    }
    CouplingGraph::new(rows * cols, edges)
}

/// Heavy-hex lattice in the layout IBM uses for its Eagle-class devices.
///
/// There are `unit_rows + 1` horizontal lines of `4 * unit_cols + 3` qubits.
/// Consecutive lines are joined by `unit_cols + 1` bridge qubits, placed at
/// columns `0, 4, 8, ...` below even lines and `2, 6, 10, ...` below odd
/// lines. The unbridged end qubit of the first and last line is dropped.
/// Qubits are numbered line by line with each bridge band between the lines
/// it joins, so `(6, 3)` reproduces the 127-qubit Eagle numbering.
pub fn heavy_hex_graph(unit_rows: usize, unit_cols: usize) -> Result<CouplingGraph, TopologyError> {
    if unit_rows == 0 || unit_cols == 0 {
        return Err(TopologyError::ZeroDimension);
    }
    let width = 4 * unit_cols + 3;
    let lines = unit_rows + 1;
    let bridge_cols = |band: usize| -> Vec<usize> {
        let offset = if band.is_multiple_of(2) { 0 } else { 2 };
        (0..=unit_cols).map(|k| 4 * k + offset).collect()
    };
    // Column range kept on each line.
    let span = |line: usize| -> (usize, usize) {
        let mut lo = 0;
        let mut hi = width - 1;
        if line == 0 {
            hi -= 1;
        }
        if line == lines - 1 {
            if (lines - 2).is_multiple_of(2) {
                hi = width - 2;
            } else {
                lo = 1;
            }
        }
        (lo, hi)
    };

    let mut index = 0usize;
    let mut line_ids: Vec<Vec<Option<usize>>> = Vec::with_capacity(lines);
    let mut bridge_ids: Vec<Vec<(usize, usize)>> = Vec::with_capacity(unit_rows);
    for line in 0..lines {
        let (lo, hi) = span(line);
        let ids = (0..width)
            .map(|c| {
                (lo..=hi).contains(&c).then(|| {
                    index += 1;
                    index - 1
                })
            })
            .collect();
        line_ids.push(ids);
        if line < unit_rows {
            let band = bridge_cols(line)
                .into_iter()
                .map(|c| {
                    index += 1;
                    (c, index - 1)
                })
                .collect();
            bridge_ids.push(band);
        }
    }

    let mut edges = Vec::new();
    for ids in &line_ids {
        for c in 0..width - 1 {
            if let (Some(a), Some(b)) = (ids[c], ids[c + 1]) {
                edges.push((a, b));
            }
        }
    }
    for (band, bridges) in bridge_ids.iter().enumerate() {
        for &(c, b) in bridges {
            let above = line_ids[band][c].expect("bridge columns are never trimmed");
            let below = line_ids[band + 1][c].expect("bridge columns are never trimmed");
            edges.push((above, b));
            edges.push((b, below));
        }
    }
    CouplingGraph::new(index, edges)
}

/// Honeycomb lattice of `rows x cols` hexagonal cells, built as a brick-wall
/// grid of `cols + 1` columns by `2 * rows + 2` rows with the two degree-one
/// corners removed; `2 * (rows + 1) * (cols + 1) - 2` qubits.
pub fn hex_lattice_graph(rows: usize, cols: usize) -> Result<CouplingGraph, TopologyError> {
    if rows == 0 || cols == 0 {
        return Err(TopologyError::ZeroDimension);
    }
    let height = 2 * rows + 2;
    let removed = [(0, height - 1), (cols, if cols % 2 == 1 { height - 1 } else { 0 })];
    let mut ids = vec![vec![None; height]; cols + 1];
    let mut next = 0;
    for (i, column) in ids.iter_mut().enumerate() {
        for (j, slot) in column.iter_mut().enumerate() {
            if !removed.contains(&(i, j)) {
                *slot = Some(next);
                next += 1;
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..=cols {
        for j in 0..height {
            let Some(a) = ids[i][j] else { continue };
            if j + 1 < height {
                if let Some(b) = ids[i][j + 1] {
                    edges.push((a, b));
                }
            }
            if i < cols && i % 2 == j % 2 {
                if let Some(b) = ids[i + 1][j] {
                    edges.push((a, b));
                }
            }
        }
    }
    CouplingGraph::new(next, edges)
}
