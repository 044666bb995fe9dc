use std::path::Path;
use std::sync::Arc;

use crate::error::HarnessError;
use crate::mappers::{AdapterConfig, BuiltinMapper, ExternalMapper, MapperDescriptor, QubitMapper};

/// Built-in mappers followed by discovered adapters.
#[derive(Clone)]
pub struct Registry {
    mappers: Vec<Arc<dyn QubitMapper>>,
    diagnostics: Vec<String>,
}

impl Registry {
    /// No mappers at all; for embedding with a custom set.
    pub fn empty() -> Registry {
        Registry { mappers: Vec::new(), diagnostics: Vec::new() }
    }

    pub fn builtins() -> Registry {
        Registry {
            mappers: BuiltinMapper::all().into_iter().map(|m| Arc::new(m) as Arc<dyn QubitMapper>).collect(),
            diagnostics: Vec::new(),
        }
    }

    /// Built-ins plus every valid `*.json` adapter config in `adapters_dir`,
    /// ordered by id. A missing directory means no adapters.
    pub fn discover(adapters_dir: &Path) -> Registry {
        let mut registry = Registry::builtins();
        let Ok(entries) = std::fs::read_dir(adapters_dir) else {
            return registry;
        };
        let mut paths: Vec<_> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut adapters = Vec::new();
        for path in paths {
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            match AdapterConfig::load(&path).and_then(|c| {
                if c.id != stem {
                    return Err(format!("id `{}` does not match the file name", c.id));
                }
                ExternalMapper::new(c)
            }) {
                Ok(m) => adapters.push(m),
                Err(e) => registry.diagnostics.push(format!("skipped adapter {}: {e}", path.display())),
            }
        }
        adapters.sort_by(|a, b| a.descriptor().id.cmp(&b.descriptor().id));
        for adapter in adapters {
            if let Err(e) = registry.register(Arc::new(adapter)) {
                registry.diagnostics.push(format!("skipped adapter: {e}"));
            }
        }
        registry
    }

    /// Appends a mapper; ids must be unique.
    pub fn register(&mut self, mapper: Arc<dyn QubitMapper>) -> Result<(), HarnessError> {
        let id = &mapper.descriptor().id;
        if self.get(id).is_some() {
            return Err(HarnessError::InvalidConfig(format!("duplicate mapper id `{id}`")));
        }
        self.mappers.push(mapper);
        Ok(())
    }

    pub fn list(&self) -> Vec<&MapperDescriptor> {
        self.mappers.iter().map(|m| m.descriptor()).collect()
    }

    pub fn ids(&self) -> Vec<String> {
        self.mappers.iter().map(|m| m.descriptor().id.clone()).collect()
    }

    pub fn get(&self, id: &str) -> Option<Arc<dyn QubitMapper>> {
        self.mappers.iter().find(|m| m.descriptor().id == id).cloned()
    }

    pub fn mappers(&self) -> &[Arc<dyn QubitMapper>] {
        &self.mappers
    }

    /// Problems found while scanning the adapter directory.
    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }
}

pub fn registry_list(adapters_dir: &Path) -> Vec<MapperDescriptor> {
    Registry::discover(adapters_dir).list().into_iter().cloned().collect()
}
