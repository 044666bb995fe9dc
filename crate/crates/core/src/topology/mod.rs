//! Coupling graphs, named devices and noisy backends.

mod backend;
pub mod devices;
mod graph;
pub mod lattice;

pub use backend::{make_backend, Backend, NoiseProfile};
pub use devices::{device_names, generate_device, load_named, TopologyFile, DEVICES};
pub use graph::{
    centrality_order, distance_matrix, graph_stats, shortest_path, CouplingGraph, DistanceMatrix, GraphStats,
};
pub use lattice::{complete_graph, grid_graph, heavy_hex_graph, hex_lattice_graph, line_graph};
