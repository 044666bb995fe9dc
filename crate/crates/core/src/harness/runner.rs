//! Cartesian experiment runner with per-combination result files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::evaluation::estimated_success;
use crate::harness::data::DataDir;
use crate::harness::providers::{check_circuit_key, provide_circuit, Workload, CIRCUIT_KEYS};
use crate::harness::registry::Registry;
use crate::harness::selector::{default_criteria, validate_criteria, Criterion};
use crate::harness::{execute, FRAMEWORK_VERSION};
use crate::io::emit_qasm;
use crate::mappers::{MapperParams, MappingResult, QubitMapper};
use crate::topology::{device_names, make_backend, Backend};

/// `"all"` or an explicit list of names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Selection {
    Keyword(String),
    List(Vec<String>),
}

impl Selection {
    pub fn all() -> Self {
        Selection::Keyword("all".into())
    }

    fn resolve(&self, field: &str, universe: &[String]) -> Result<Vec<String>, HarnessError> {
        match self {
            Selection::Keyword(k) if k == "all" => Ok(universe.to_vec()),
            Selection::Keyword(k) => {
                Err(HarnessError::InvalidConfig(format!("{field} must be \"all\" or a list, found \"{k}\"")))
            }
            Selection::List(items) if items.is_empty() => {
                Err(HarnessError::InvalidConfig(format!("{field} must not be empty")))
            }
            Selection::List(items) => {
                let mut seen = Vec::new();
                for item in items {
                    if seen.contains(item) {
                        return Err(HarnessError::InvalidConfig(format!("{field} lists `{item}` twice")));
                    }
                    seen.push(item.clone());
                }
                Ok(seen)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mappers: Selection,
    pub topologies: Selection,
    pub circuits: Selection,
    pub seed: u64,
    #[serde(default)]
    pub params: MapperParams,
    #[serde(default = "default_criteria")]
    pub criteria: Vec<Criterion>,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let config: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| HarnessError::InvalidConfig(e.to_string()))?;
        validate_criteria(&config.criteria)?;
        config.params.validate().map_err(HarnessError::InvalidConfig)?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        ExperimentConfig::parse(&text)
    }
}

/// One attempted (topology, circuit, mapper) combination as stored on disk.
/// Fields are declared in alphabetical order, which is the key order of the
/// written JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub circuit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cnot_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimated_success: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure_reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_layout: Option<Vec<usize>>,
    pub framework_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_layout: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mapped_qasm: Option<String>,
    pub mapper: String,
    pub optimisation_time: f64,
    pub params: BTreeMap<String, serde_json::Value>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swap_count: Option<usize>,
    pub timestamp: String,
    pub topology: String,
}

impl ResultRecord {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("records serialize");
        text.push('\n');
        text
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub data: DataDir,
    pub workers: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { data: DataDir::resolve(), workers: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    /// `<output_dir>/<timestamp>`
    pub root: PathBuf,
    pub timestamp: String,
    pub records: Vec<(PathBuf, ResultRecord)>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    config: &'a ExperimentConfig,
    framework_version: &'static str,
    resolved: BTreeMap<&'static str, &'a [String]>,
}

/// Directory-safe form of a name: anything outside `[A-Za-z0-9._-]` becomes `_`.
pub fn path_component(name: &str) -> String {
    let cleaned: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') { c } else { '_' })
        .collect();
    match cleaned.as_str() {
        "" | "." | ".." => format!("_{cleaned}"),
        _ => cleaned,
    }
}

fn create_timestamp_dir(output_dir: &Path) -> Result<(PathBuf, String), HarnessError> {
    std::fs::create_dir_all(output_dir).map_err(|e| HarnessError::io(output_dir, e))?;
    loop {
        let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%SZ").to_string();
        let root = output_dir.join(&stamp);
        match std::fs::create_dir(&root) {
            Ok(()) => return Ok((root, stamp)),
            // One directory per invocation: wait for the next second.
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                std::thread::sleep(std::time::Duration::from_millis(100));
            }
            Err(e) => return Err(HarnessError::io(&root, e)),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), HarnessError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| HarnessError::io(parent, e))?;
    }
    std::fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}

struct Job<'a> {
    backend: &'a Backend,
    circuit: &'a str,
    workload: &'a Workload,
    mapper: Arc<dyn QubitMapper>,
}

fn record_for(job: &Job<'_>, result: &MappingResult, config: &ExperimentConfig, timestamp: &str) -> ResultRecord {
    let descriptor = job.mapper.descriptor();
    let mut record = ResultRecord {
        circuit: job.circuit.to_string(),
        cnot_count: None,
        depth: None,
        estimated_success: None,
        failure_reason: None,
        final_layout: None,
        framework_version: FRAMEWORK_VERSION.to_string(),
        initial_layout: None,
        mapped_qasm: None,
        mapper: descriptor.id.clone(),
        optimisation_time: result.optimisation_time,
        params: config.params.to_map(),
        seed: config.seed,
        swap_count: None,
        timestamp: timestamp.to_string(),
        topology: job.backend.name.clone(),
    };
    match &result.outcome {
        Ok(m) => {
            record.cnot_count = Some(m.cnot_count);
            record.depth = Some(m.depth);
            record.swap_count = Some(m.swap_count);
            record.estimated_success = estimated_success(m, job.backend).ok();
            record.initial_layout = Some(m.initial_layout.as_slice().to_vec());
            record.final_layout = Some(m.final_layout.as_slice().to_vec());
            record.mapped_qasm = Some(emit_qasm(&m.circuit));
        }
        Err(reason) => record.failure_reason = Some(reason.to_string()),
    }
    record
}

/// Runs every (topology, circuit, mapper) combination and writes
/// `<output_dir>/<timestamp>/<topology>/<circuit>/<mapper>.json` plus a
/// `manifest.json`. Unknown names are rejected before any work starts.
pub fn run_experiment(config: &ExperimentConfig, registry: &Registry, options: &RunOptions) -> Result<RunOutput, HarnessError> {
    validate_criteria(&config.criteria)?;
    config.params.validate().map_err(HarnessError::InvalidConfig)?;
    let all_topologies: Vec<String> = device_names().map(str::to_string).collect();
    let all_circuits: Vec<String> = CIRCUIT_KEYS.iter().map(|k| k.to_string()).collect();
    let mapper_ids = config.mappers.resolve("mappers", &registry.ids())?;
    let topologies = config.topologies.resolve("topologies", &all_topologies)?;
    let circuits = config.circuits.resolve("circuits", &all_circuits)?;
    let mappers = mapper_ids
        .iter()
        .map(|id| registry.get(id).ok_or_else(|| HarnessError::UnknownMapper(id.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    for key in &circuits {
        check_circuit_key(key)?;
    }
    let backends = topologies
        .iter()
        .map(|name| make_backend(&options.data.topologies(), name, config.seed))
        .collect::<Result<Vec<_>, _>>()?;
    let workloads = circuits
        .iter()
        .map(|key| provide_circuit(&options.data.hamiltonians(), key))
        .collect::<Result<Vec<_>, _>>()?;

    let (root, timestamp) = create_timestamp_dir(&config.output_dir)?;
    let manifest = Manifest {
        config,
        framework_version: FRAMEWORK_VERSION,
        resolved: BTreeMap::from([
            ("circuits", circuits.as_slice()),
            ("mappers", mapper_ids.as_slice()),
            ("topologies", topologies.as_slice()),
        ]),
    };
    let mut manifest_text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    manifest_text.push('\n');
    write_file(&root.join("manifest.json"), &manifest_text)?;

    let mut jobs = Vec::new();
    for backend in &backends {
        for (key, workload) in circuits.iter().zip(&workloads) {
            for mapper in &mappers {
                jobs.push(Job { backend, circuit: key, workload, mapper: Arc::clone(mapper) });
            }
        }
    }
    let run_job = |job: &Job<'_>| -> Result<(PathBuf, ResultRecord), HarnessError> {
        let result = execute(job.mapper.as_ref(), job.workload, job.backend, config.seed, &config.params);
        let record = record_for(job, &result, config, &timestamp);
        let path = root
            .join(path_component(&job.backend.name))
            .join(path_component(job.circuit))
            .join(format!("{}.json", path_component(&record.mapper)));
        write_file(&path, &record.to_json())?;
        Ok((path, record))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| HarnessError::InvalidConfig(format!("worker pool: {e}")))?;
    let records = pool.install(|| jobs.par_iter().map(run_job).collect::<Vec<_>>());
    let records = records.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(RunOutput { root, timestamp, records })
}
