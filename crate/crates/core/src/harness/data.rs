use std::path::{Path, PathBuf};

pub const DATA_DIR_ENV: &str = "QUMELD_DATA_DIR";

/// Location of the shipped topology and Hamiltonian files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DataDir {
    root: PathBuf,
}

impl DataDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        DataDir { root: root.into() }
    }

    /// `$QUMELD_DATA_DIR`, else `./data` when it holds topologies, else the
    /// copy in the source tree.
    pub fn resolve() -> Self {
        if let Some(dir) = std::env::var_os(DATA_DIR_ENV).filter(|d| !d.is_empty()) {
            return DataDir::new(dir);
        }
        let local = PathBuf::from("data");
        if local.join("topologies").is_dir() {
            return DataDir::new(local);
        }
        DataDir::bundled()
    }

    pub fn bundled() -> Self {
        DataDir::new(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn topologies(&self) -> PathBuf {
        self.root.join("topologies")
    }

    pub fn hamiltonians(&self) -> PathBuf {
        self.root.join("hamiltonians")
    }

    pub fn adapter_templates(&self) -> PathBuf {
        self.root.join("adapter_templates")
    }
}
