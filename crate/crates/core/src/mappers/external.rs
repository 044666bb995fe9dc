//! Subprocess adapter for external mapping tools.
//!
//! The tool receives the circuit as OpenQASM (or the Hamiltonian as JSON) and
//! the coupling graph as a topology file, and must answer with an OpenQASM
//! circuit over physical qubits. Optional `// initial_layout: a,b,...` and
//! `// final_layout: ...` comment lines declare layouts; without them the
//! identity layout is assumed and SWAPs are tracked to derive the final one.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::circuit::{GateKind, QuantumCircuit};
use crate::evaluation::{measured, validate_coupling};
use crate::io::{emit_hamiltonian, emit_qasm, parse_qasm, Hamiltonian};
use crate::mappers::{FailureReason, Layout, MappedCircuit, MapperDescriptor, MapperParams, MappingResult, QubitMapper};
use crate::topology::{Backend, TopologyFile};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputMode {
    /// Paths are passed through `{input}` and `{output}`.
    #[default]
    File,
    /// Input on stdin, output read from stdout.
    Stream,
}

/// Contents of `adapters/<id>.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdapterConfig {
    pub id: String,
    pub command: Vec<String>,
    pub timeout_s: f64,
    pub supports_hamiltonian: bool,
    #[serde(default = "default_true")]
    pub supports_circuit: bool,
    #[serde(default)]
    pub input_mode: InputMode,
    /// Opaque settings forwarded to the descriptor.
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
}

fn default_true() -> bool {
    true
}

impl AdapterConfig {
    pub fn parse(text: &str) -> Result<AdapterConfig, String> {
        let config: AdapterConfig = serde_json::from_str(text).map_err(|e| e.to_string())?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<AdapterConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        AdapterConfig::parse(&text)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.id.is_empty() || !self.id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(format!("adapter id `{}` must be non-empty and use only [A-Za-z0-9_-]", self.id));
        }
        if self.command.is_empty() || self.command[0].is_empty() {
            return Err("command must name a program".into());
        }
        if !(self.timeout_s > 0.0 && self.timeout_s.is_finite()) {
            return Err("timeout_s must be a positive number".into());
        }
        if !self.supports_circuit && !self.supports_hamiltonian {
            return Err("adapter supports neither circuits nor Hamiltonians".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ExternalMapper {
    config: AdapterConfig,
    descriptor: MapperDescriptor,
}

impl ExternalMapper {
    pub fn new(config: AdapterConfig) -> Result<ExternalMapper, String> {
        config.validate()?;
        let descriptor = MapperDescriptor {
            id: config.id.clone(),
            supports_circuit: config.supports_circuit,
            supports_hamiltonian: config.supports_hamiltonian,
            default_params: config.params.clone(),
            summary: config.summary.clone().unwrap_or_else(|| format!("external: {}", config.command.join(" "))),
        };
        Ok(ExternalMapper { config, descriptor })
    }

    pub fn config(&self) -> &AdapterConfig {
        &self.config
    }

    fn invoke(&self, input: &str, extension: &str, num_logical: usize, backend: &Backend, seed: u64) -> MappingResult {
        let start = Instant::now();
        let outcome = self.run_tool(input, extension, backend, seed).and_then(|(output, elapsed)| {
            let mapped = interpret_output(&output, num_logical, backend)?;
            Ok((mapped, elapsed))
        });
        match outcome {
            Ok((mapped, elapsed)) => MappingResult { outcome: Ok(mapped), optimisation_time: elapsed },
            Err(reason) => MappingResult::failure(reason, start.elapsed().as_secs_f64()),
        }
    }

    /// Runs the tool in a private directory; returns its output and wall time.
    fn run_tool(&self, input: &str, extension: &str, backend: &Backend, seed: u64) -> Result<(String, f64), FailureReason> {
        let internal = |what: &str, e: std::io::Error| FailureReason::Internal(format!("{what}: {e}"));
        let dir = tempfile::tempdir().map_err(|e| internal("creating work directory", e))?;
        let input_path = dir.path().join(format!("input.{extension}"));
        let output_path = dir.path().join("output.qasm");
        let topology_path = dir.path().join("topology.json");
        std::fs::write(&input_path, input).map_err(|e| internal("writing input", e))?;
        let topology = TopologyFile::from_graph(&backend.name, &backend.graph, "handoff to external mapper");
        std::fs::write(&topology_path, topology.to_json()).map_err(|e| internal("writing topology", e))?;

        let substitute = |arg: &str| {
            arg.replace("{input}", &input_path.to_string_lossy())
                .replace("{output}", &output_path.to_string_lossy())
                .replace("{topology}", &topology_path.to_string_lossy())
                .replace("{seed}", &seed.to_string())
        };
        let argv: Vec<String> = self.config.command.iter().map(|a| substitute(a)).collect();
        let stream = self.config.input_mode == InputMode::Stream;
        let start = Instant::now();
        let mut child = Command::new(&argv[0])
            .args(&argv[1..])
            .current_dir(dir.path())
            .stdin(if stream { Stdio::piped() } else { Stdio::null() })
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|e| FailureReason::ExternalFailure(format!("could not start `{}`: {e}", argv[0])))?;

        let stdin_writer = child.stdin.take().map(|mut pipe| {
            let data = input.to_string();
            // A tool that exits without reading its input closes the pipe early.
            thread::spawn(move || {
                let _ = pipe.write_all(data.as_bytes());
            })
        });
        let reader = |pipe: Option<Box<dyn Read + Send>>| {
            thread::spawn(move || {
                let mut buf = Vec::new();
                if let Some(mut pipe) = pipe {
                    let _ = pipe.read_to_end(&mut buf);
                }
                String::from_utf8_lossy(&buf).into_owned()
            })
        };
        let stdout = reader(child.stdout.take().map(|p| Box::new(p) as Box<dyn Read + Send>));
        let stderr = reader(child.stderr.take().map(|p| Box::new(p) as Box<dyn Read + Send>));

        let budget = Duration::from_secs_f64(self.config.timeout_s);
        let status = loop {
            match child.try_wait() {
                Ok(Some(status)) => break status,
                Ok(None) if start.elapsed() >= budget => {
                    let _ = child.kill();
                    let _ = child.wait();
                    return Err(FailureReason::Timeout);
                }
                Ok(None) => thread::sleep(Duration::from_millis(5)),
                Err(e) => return Err(internal("waiting for external mapper", e)),
            }
        };
        let elapsed = start.elapsed().as_secs_f64();
        if let Some(handle) = stdin_writer {
            let _ = handle.join();
        }
        let stdout = stdout.join().unwrap_or_default();
        let stderr = stderr.join().unwrap_or_default();
        if !status.success() {
            let code = status.code().map_or_else(|| "signal".to_string(), |c| c.to_string());
            let diagnostic = tail(stderr.trim(), 2000);
            return Err(FailureReason::ExternalFailure(format!("exit status {code}: {diagnostic}")));
        }
        let output = if stream {
            stdout
        } else {
            std::fs::read_to_string(&output_path)
                .map_err(|e| FailureReason::ParseError(format!("no readable output file: {e}")))?
        };
        Ok((output, elapsed))
    }
}

fn tail(text: &str, max: usize) -> &str {
    if text.len() <= max {
        return text;
    }
    let mut cut = text.len() - max;
    while !text.is_char_boundary(cut) {
        cut += 1;
    }
    &text[cut..]
}

/// Reads a `// <key>: a,b,...` comment, as written by external tools and `qumeld map --out`.
pub fn layout_comment(text: &str, key: &str) -> Result<Option<Layout>, FailureReason> {
    for line in text.lines() {
        let Some(rest) = line.trim().strip_prefix("//") else { continue };
        let Some(value) = rest.trim().strip_prefix(key).and_then(|r| r.trim_start().strip_prefix(':')) else {
            continue;
        };
        return Layout::parse(value)
            .map(Some)
            .ok_or_else(|| FailureReason::ParseError(format!("malformed {key} comment")));
    }
    Ok(None)
}

/// Parses, validates and measures a tool's answer.
pub fn interpret_output(text: &str, num_logical: usize, backend: &Backend) -> Result<MappedCircuit, FailureReason> {
    let n = backend.num_qubits();
    let circuit = parse_qasm(text).map_err(|e| FailureReason::ParseError(e.to_string()))?;
    if circuit.num_qubits() > n {
        return Err(FailureReason::InvalidExternalOutput(format!(
            "output uses {} qubits but the backend has {n}",
            circuit.num_qubits()
        )));
    }
    let circuit = circuit.widened(n);
    let report = validate_coupling(&circuit, backend).map_err(|e| FailureReason::InvalidExternalOutput(e.to_string()))?;
    if let Some(&(gate, (u, v))) = report.violations.first() {
        return Err(FailureReason::InvalidExternalOutput(format!(
            "gate {gate} acts on ({u}, {v}), which is not a coupling edge ({} violations)",
            report.violations.len()
        )));
    }
    let bad_layout = |which: &str| FailureReason::InvalidExternalOutput(format!("{which} does not fit the circuit"));
    let initial = match layout_comment(text, "initial_layout")? {
        Some(l) if l.len() == num_logical && l.fits(n) => l,
        Some(_) => return Err(bad_layout("initial_layout")),
        None => Layout::identity(num_logical, n),
    };
    let final_layout = match layout_comment(text, "final_layout")? {
        Some(l) if l.len() == num_logical && l.fits(n) => l,
        Some(_) => return Err(bad_layout("final_layout")),
        None => track_swaps(&circuit, &initial),
    };
    Ok(measured(circuit, initial, final_layout))
}

fn track_swaps(circuit: &QuantumCircuit, initial: &Layout) -> Layout {
    let mut l2p = initial.as_slice().to_vec();
    let mut p2l = initial.inverse(circuit.num_qubits());
    for gate in circuit.gates().iter().filter(|g| g.kind == GateKind::Swap) {
        let (a, b) = (gate.qubits[0], gate.qubits[1]);
        p2l.swap(a, b);
        for p in [a, b] {
            if let Some(l) = p2l[p] {
                l2p[l] = p;
            }
        }
    }
    Layout::new(l2p).expect("swaps preserve injectivity")
}

impl QubitMapper for ExternalMapper {
    fn descriptor(&self) -> &MapperDescriptor {
        &self.descriptor
    }

    fn map_circuit(&self, circuit: &QuantumCircuit, backend: &Backend, seed: u64, _params: &MapperParams) -> MappingResult {
        if !self.config.supports_circuit {
            return MappingResult::failure(FailureReason::UnsupportedInput, 0.0);
        }
        self.invoke(&emit_qasm(circuit), "qasm", circuit.num_qubits(), backend, seed)
    }

    fn map_hamiltonian(&self, h: &Hamiltonian, backend: &Backend, seed: u64, _params: &MapperParams) -> MappingResult {
        if !self.config.supports_hamiltonian {
            return MappingResult::failure(FailureReason::UnsupportedInput, 0.0);
        }
        self.invoke(&emit_hamiltonian(h), "json", h.num_qubits, backend, seed)
    }
}

/// Runs an adapter on a circuit.
pub fn external_map(config: &AdapterConfig, circuit: &QuantumCircuit, backend: &Backend, seed: u64) -> MappingResult {
    match ExternalMapper::new(config.clone()) {
        Ok(mapper) => crate::mappers::run_circuit(&mapper, circuit, backend, seed, &MapperParams::default()),
        Err(message) => MappingResult::failure(FailureReason::Internal(message), 0.0),
    }
}
