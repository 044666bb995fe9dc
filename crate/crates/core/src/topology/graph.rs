use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::TopologyError;

/// Undirected, connected, loop-free hardware connectivity graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingGraph {
    num_qubits: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl CouplingGraph {
    /// Validates and normalises the edge list (pairs reordered to `u < v`,
    /// sorted, deduplicated).
    pub fn new(num_qubits: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, TopologyError> {
        if num_qubits == 0 {
            return Err(TopologyError::Empty);
        }
        let mut normalised = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(TopologyError::SelfLoop(u));
            }
            if u >= num_qubits || v >= num_qubits {
                return Err(TopologyError::EdgeOutOfRange { u, v, num_qubits });
            }
            normalised.push((u.min(v), u.max(v)));
        }
        normalised.sort_unstable();
        normalised.dedup();

        let mut neighbors = vec![Vec::new(); num_qubits];
        for &(u, v) in &normalised {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let graph = CouplingGraph { num_qubits, edges: normalised, neighbors };
        let components = graph.component_count();
        if components != 1 {
            return Err(TopologyError::Disconnected { components });
        }
        Ok(graph)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Edges with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.neighbors[q]
    }

    pub fn degree(&self, q: usize) -> usize {
        self.neighbors[q].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.num_qubits && self.neighbors[u].binary_search(&v).is_ok()
    }

    fn component_count(&self) -> usize {
        let mut seen = vec![false; self.num_qubits];
        let mut components = 0;
        for start in 0..self.num_qubits {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &self.neighbors[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        components
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.num_qubits];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have a distance");
            for &v in &self.neighbors[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Vertices in BFS visiting order from `source`, neighbours taken in index order.
    pub fn bfs_order(&self, source: usize) -> Vec<usize> {
        let mut seen = vec![false; self.num_qubits];
        let mut order = Vec::with_capacity(self.num_qubits);
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        order
    }
}

/// All-pairs hop distances of a connected coupling graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn max(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }
}

pub fn distance_matrix(graph: &CouplingGraph) -> Result<DistanceMatrix, TopologyError> {
    let n = graph.num_qubits();
    let mut data = Vec::with_capacity(n * n);
    for source in 0..n {
        for d in graph.bfs_distances(source) {
            match d {
                Some(d) => data.push(d),
                None => return Err(TopologyError::Disconnected { components: graph.component_count() }),
            }
        }
    }
    Ok(DistanceMatrix { n, data })
}

/// A shortest path `from -> to` inclusive of both ends. At every step the
/// smallest-index neighbour that gets one hop closer is chosen.
pub fn shortest_path(graph: &CouplingGraph, dist: &DistanceMatrix, from: usize, to: usize) -> Vec<usize> {
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        let d = dist.get(cur, to);
        cur = *graph
            .neighbors(cur)
            .iter()
            .find(|&&n| dist.get(n, to) + 1 == d)
            .expect("connected graph has a closer neighbour");
        path.push(cur);
    }
    path
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub num_qubits: usize,
    pub num_edges: usize,
    pub edge_density: f64,
    pub avg_degree: f64,
    pub diameter: u32,
}

pub fn graph_stats(graph: &CouplingGraph, dist: &DistanceMatrix) -> GraphStats {
    let n = graph.num_qubits();
    let e = graph.num_edges();
    let pairs = n * (n.saturating_sub(1)) / 2;
    GraphStats {
        num_qubits: n,
        num_edges: e,
        // A single vertex has no pairs; treat it as trivially complete.
        edge_density: if pairs == 0 { 1.0 } else { e as f64 / pairs as f64 },
        avg_degree: 2.0 * e as f64 / n as f64,
        diameter: dist.max(),
    }
}

/// Physical qubits ordered by total distance to all others, most central
/// first; ties go to the smaller index.
pub fn centrality_order(dist: &DistanceMatrix) -> Vec<usize> {
    let totals: Vec<u64> = (0..dist.size())
        .map(|u| dist.row(u).iter().map(|&d| d as u64).sum())
        .collect();
    let mut order: Vec<usize> = (0..dist.size()).collect();
    order.sort_by_key(|&u| (totals[u], u));
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::lattice::{complete_graph, grid_graph, line_graph};

    #[test]
    fn rejects_invalid_graphs() {
        assert!(matches!(CouplingGraph::new(0, []), Err(TopologyError::Empty)));
        assert!(matches!(CouplingGraph::new(2, [(1, 1)]), Err(TopologyError::SelfLoop(1))));
        assert!(matches!(
            CouplingGraph::new(2, [(0, 2)]),
            Err(TopologyError::EdgeOutOfRange { .. })
        ));
        assert!(matches!(
            CouplingGraph::new(4, [(0, 1), (2, 3)]),
            Err(TopologyError::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn normalises_edges() {
        let g = CouplingGraph::new(3, [(2, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn distance_examples() {
        let path = line_graph(3).unwrap();
        assert_eq!(distance_matrix(&path).unwrap().get(0, 2), 2);
        let k9 = complete_graph(9).unwrap();
        let d = distance_matrix(&k9).unwrap();
        for u in 0..9 {
            for v in 0..9 {
                assert_eq!(d.get(u, v), u32::from(u != v));
            }
        }
        let grid = grid_graph(3, 3).unwrap();
        assert_eq!(distance_matrix(&grid).unwrap().get(0, 8), 4);
    }

    #[test]
    fn stats_examples() {
        let k9 = complete_graph(9).unwrap();
        let s = graph_stats(&k9, &distance_matrix(&k9).unwrap());
        assert_eq!(s.edge_density, 1.0);
        assert_eq!(s.num_edges, 36);

        let path = line_graph(3).unwrap();
        let s = graph_stats(&path, &distance_matrix(&path).unwrap());
        assert!((s.edge_density - 2.0 / 3.0).abs() < 1e-15);
        assert!((s.avg_degree - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(s.diameter, 2);
    }

    #[test]
    fn centrality_examples() {
        let path = line_graph(3).unwrap();
        assert_eq!(centrality_order(&distance_matrix(&path).unwrap()), vec![1, 0, 2]);
        let k5 = complete_graph(5).unwrap();
        assert_eq!(centrality_order(&distance_matrix(&k5).unwrap()), vec![0, 1, 2, 3, 4]);
        let grid = grid_graph(3, 3).unwrap();
        assert_eq!(centrality_order(&distance_matrix(&grid).unwrap())[0], 4);
    }

    #[test]
    fn shortest_path_prefers_small_indices() {
        let grid = grid_graph(2, 2).unwrap();
        let d = distance_matrix(&grid).unwrap();
        assert_eq!(shortest_path(&grid, &d, 0, 3), vec![0, 1, 3]);
        assert_eq!(shortest_path(&grid, &d, 2, 2), vec![2]);
    }
}
