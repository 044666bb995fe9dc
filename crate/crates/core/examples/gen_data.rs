//! Regenerates the shipped data files.
//!
//! Usage: cargo run -p qumeld-core --example gen_data [-- <data dir>]

use std::path::PathBuf;

use qumeld_core::harness::providers::generators;
use qumeld_core::harness::DataDir;
use qumeld_core::io::emit_hamiltonian;
use qumeld_core::topology::{device_names, generate_device, TopologyFile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = std::env::args().nth(1).map(|p| DataDir::new(PathBuf::from(p))).unwrap_or_else(DataDir::bundled);
    std::fs::create_dir_all(data.topologies())?;
    std::fs::create_dir_all(data.hamiltonians())?;
    for name in device_names() {
        let (graph, provenance) = generate_device(name)?;
        let file = TopologyFile::from_graph(name, &graph, &provenance);
        std::fs::write(data.topologies().join(format!("{name}.json")), file.to_json())?;
        println!("{name}: {} qubits, {} edges", graph.num_qubits(), graph.num_edges());
    }
    for (key, h) in generators::all() {
        std::fs::write(data.hamiltonians().join(format!("{key}.json")), emit_hamiltonian(&h))?;
        println!("{key}: {} qubits, {} terms", h.num_qubits, h.terms.len());
    }
    Ok(())
}
