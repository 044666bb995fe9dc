use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qumeld_core::evaluation::{
    measured, state_equivalence, swap_elision_mismatch, validate_coupling, DEFAULT_TOLERANCE, MAX_SIMULATED_QUBITS,
};
use qumeld_core::harness::providers::GENERATED_KEYS;
use qumeld_core::harness::{
    execute, parse_criteria, provide_circuit, report_csv, run_experiment, select_best, DataDir, ExperimentConfig,
    Registry, RunOptions, Workload, CIRCUIT_KEYS,
};
use qumeld_core::io::{emit_qasm, parse_qasm};
use qumeld_core::mappers::external::layout_comment;
use qumeld_core::topology::{graph_stats, make_backend, DEVICES};
use qumeld_core::{Backend, FailureReason, HarnessError, Layout, MappedCircuit, MapperParams, QuantumCircuit};

mod table;

use table::Table;

const ADAPTERS_DIR: &str = "adapters";

#[derive(Parser)]
#[command(name = "qumeld", version, about = "Qubit mapping benchmark: map, compare and verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List registered mappers, topologies or circuits.
    List {
        #[arg(value_enum)]
        kind: ListKind,
    },
    /// Map one circuit onto one topology.
    Map {
        #[arg(long)]
        mapper: String,
        #[arg(long)]
        topology: String,
        /// Benchmark key, e.g. efficientsu2_5 or qaoa_maxcut:0-1,1-2
        #[arg(long, conflicts_with = "qasm_in", required_unless_present = "qasm_in")]
        circuit: Option<String>,
        /// OpenQASM 2.0 file to map instead of a benchmark
        #[arg(long)]
        qasm_in: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the mapped circuit here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cap layout and swap trials at 20
        #[arg(long)]
        fast: bool,
    },
    /// Run an experiment config over every combination.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Rank every applicable mapper on one circuit and topology.
    Select {
        #[arg(long)]
        topology: String,
        #[arg(long)]
        circuit: String,
        /// Comma-separated chain from swap_count, cnot_count, depth, optimisation_time
        #[arg(long, default_value = "swap_count,cnot_count,depth")]
        criteria: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a mapped circuit against its original.
    Verify {
        #[arg(long)]
        original: PathBuf,
        #[arg(long)]
        mapped: PathBuf,
        #[arg(long)]
        topology: String,
        /// Physical qubit of each logical qubit, e.g. 3,0,1 (default: file comment, else identity)
        #[arg(long)]
        initial_layout: Option<String>,
        /// As --initial-layout, after the last gate (default: file comment, else SWAP tracking)
        #[arg(long)]
        final_layout: Option<String>,
    },
    /// Collect result files into a CSV table.
    Report {
        #[arg(long)]
        results: PathBuf,
        /// Defaults to <results>/report.csv
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum ListKind {
    Mappers,
    Topologies,
    Circuits,
}

enum CliError {
    /// Bad input from the user: exit 1.
    User(String),
    /// Something broke while doing valid work: exit 2.
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::User(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Csv(_) => CliError::Internal(e.to_string()),
            _ => CliError::User(e.to_string()),
        }
    }
}

fn user(e: impl fmt::Display) -> CliError {
    CliError::User(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::List { kind } => list(kind),
        Command::Map { mapper, topology, circuit, qasm_in, seed, out, fast } => {
            map(&mapper, &topology, circuit.as_deref(), qasm_in.as_deref(), seed, out.as_deref(), fast)
        }
        Command::Run { config, workers } => run(&config, workers),
        Command::Select { topology, circuit, criteria, seed } => select(&topology, &circuit, &criteria, seed),
        Command::Verify { original, mapped, topology, initial_layout, final_layout } => {
            verify(&original, &mapped, &topology, initial_layout.as_deref(), final_layout.as_deref())
        }
        Command::Report { results, csv } => report(&results, csv.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::User(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn registry() -> Registry {
    let registry = Registry::discover(Path::new(ADAPTERS_DIR));
    for d in registry.diagnostics() {
        eprintln!("warning: {d}");
    }
    registry
}

fn backend(data: &DataDir, name: &str) -> Result<Backend, CliError> {
    make_backend(&data.topologies(), name, 0).map_err(user)
}

fn list(kind: ListKind) -> Result<(), CliError> {
    let data = DataDir::resolve();
    let mut table;
    match kind {
        ListKind::Mappers => {
            table = Table::new(["id", "circuit", "hamiltonian", "summary"]);
            for d in registry().list() {
                let flag = |b: bool| if b { "yes" } else { "no" };
                table.row([d.id.clone(), flag(d.supports_circuit).into(), flag(d.supports_hamiltonian).into(), d.summary.clone()]);
            }
        }
        ListKind::Topologies => {
            table = Table::new(["name", "qubits", "edges", "avg_degree", "diameter", "description"]);
            for (name, _, description) in DEVICES {
                let b = backend(&data, name)?;
                let s = graph_stats(&b.graph, b.distances());
                table.row([
                    name.to_string(),
                    s.num_qubits.to_string(),
                    s.num_edges.to_string(),
                    format!("{:.2}", s.avg_degree),
                    s.diameter.to_string(),
                    description.to_string(),
                ]);
            }
        }
        ListKind::Circuits => {
            table = Table::new(["key", "kind", "qubits", "two_qubit_interactions", "generated"]);
            for key in CIRCUIT_KEYS {
                let w = provide_circuit(&data.hamiltonians(), key)?;
                let kind = if w.is_hamiltonian() { "hamiltonian" } else { "circuit" };
                let generated = if GENERATED_KEYS.contains(&key) { "yes" } else { "no" };
                table.row([
                    key.to_string(),
                    kind.into(),
                    w.num_qubits().to_string(),
                    w.two_qubit_interactions().to_string(),
                    generated.into(),
                ]);
            }
        }
    }
    print!("{table}");
    Ok(())
}

/// Mapped QASM with the layouts recorded as comments, which `verify` reads back.
fn annotated_qasm(m: &MappedCircuit) -> String {
    format!("// initial_layout: {}\n// final_layout: {}\n{}", m.initial_layout, m.final_layout, emit_qasm(&m.circuit))
}

fn read_qasm(path: &Path) -> Result<(String, QuantumCircuit), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| user(format!("{}: {e}", path.display())))?;
    let circuit = parse_qasm(&text).map_err(|e| user(format!("{}: {e}", path.display())))?;
    Ok((text, circuit))
}

fn map(
    mapper_id: &str,
    topology: &str,
    circuit: Option<&str>,
    qasm_in: Option<&Path>,
    seed: u64,
    out: Option<&Path>,
    fast: bool,
) -> Result<(), CliError> {
    let data = DataDir::resolve();
    let registry = registry();
    let mapper = registry.get(mapper_id).ok_or_else(|| user(format!("unknown mapper `{mapper_id}`")))?;
    let backend = backend(&data, topology)?;
    let (label, workload) = match (circuit, qasm_in) {
        (Some(key), _) => (key.to_string(), provide_circuit(&data.hamiltonians(), key)?),
        (None, Some(path)) => (path.display().to_string(), Workload::Circuit(read_qasm(path)?.1)),
        (None, None) => return Err(user("one of --circuit or --qasm-in is required")),
    };
    let params = if fast { MapperParams::fast() } else { MapperParams::default() };
    let result = execute(mapper.as_ref(), &workload, &backend, seed, &params);
    println!("mapper: {mapper_id}");
    println!("topology: {topology}");
    println!("circuit: {label}");
    println!("seed: {seed}");
    match &result.outcome {
        Ok(m) => {
            println!("swap_count: {}", m.swap_count);
            println!("cnot_count: {}", m.cnot_count);
            println!("depth: {}", m.depth);
            println!("optimisation_time: {:.6}", result.optimisation_time);
            println!("initial_layout: {}", m.initial_layout);
            println!("final_layout: {}", m.final_layout);
            if let Some(path) = out {
                std::fs::write(path, annotated_qasm(m)).map_err(|e| user(format!("{}: {e}", path.display())))?;
                println!("mapped circuit: {}", path.display());
            }
            Ok(())
        }
        Err(reason) => {
            println!("failure_reason: {reason}");
            match reason {
                FailureReason::UnsupportedInput | FailureReason::InsufficientQubits { .. } => {
                    Err(user(format!("{mapper_id} cannot map {label} onto {topology}: {reason}")))
                }
                _ => Err(CliError::Internal(format!("mapping failed: {reason}"))),
            }
        }
    }
}

fn run(config_path: &Path, workers: usize) -> Result<(), CliError> {
    let config = ExperimentConfig::load(config_path)?;
    if workers == 0 {
        return Err(user("--workers must be at least 1"));
    }
    let options = RunOptions { data: DataDir::resolve(), workers };
    let out = run_experiment(&config, &registry(), &options)?;
    let failed = out.records.iter().filter(|(_, r)| r.failure_reason.is_some()).count();
    println!("seed: {}", config.seed);
    println!("{} result files ({failed} failures)", out.records.len());
    println!("{}", out.root.display());
    Ok(())
}

fn select(topology: &str, circuit: &str, criteria: &str, seed: u64) -> Result<(), CliError> {
    let data = DataDir::resolve();
    let criteria = parse_criteria(criteria)?;
    let backend = backend(&data, topology)?;
    let workload = provide_circuit(&data.hamiltonians(), circuit)?;
    let report = select_best(&registry(), &workload, &backend, seed, &MapperParams::default(), &criteria)?;
    let chain: Vec<&str> = criteria.iter().map(|c| c.name()).collect();
    println!("topology: {topology}");
    println!("circuit: {circuit}");
    println!("seed: {seed}");
    println!("criteria: {}", chain.join(","));
    let mut table = Table::new(["rank", "mapper", "swap_count", "cnot_count", "depth", "optimisation_time", "status"]);
    let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    for (i, e) in report.ranked.iter().enumerate() {
        let ok = e.failure_reason.is_none();
        table.row([
            if ok { (i + 1).to_string() } else { "-".into() },
            e.mapper.clone(),
            opt(e.swap_count),
            opt(e.cnot_count),
            opt(e.depth),
            format!("{:.6}", e.optimisation_time),
            e.failure_reason.clone().unwrap_or_else(|| "ok".into()),
        ]);
    }
    print!("{table}");
    match report.best {
        Some(best) => {
            println!("best: {best}");
            Ok(())
        }
        None => Err(CliError::Internal("no mapper succeeded".into())),
    }
}

fn layout_arg(flag: &str, value: Option<&str>, text: &str, key: &str) -> Result<Option<Layout>, CliError> {
    match value {
        Some(v) => Layout::parse(v).map(Some).ok_or_else(|| user(format!("{flag}: expected distinct integers like 0,1,2"))),
        None => layout_comment(text, key).map_err(user),
    }
}

fn verify(
    original_path: &Path,
    mapped_path: &Path,
    topology: &str,
    initial: Option<&str>,
    final_layout: Option<&str>,
) -> Result<(), CliError> {
    let data = DataDir::resolve();
    let backend = backend(&data, topology)?;
    let (_, original) = read_qasm(original_path)?;
    let (mapped_text, mapped) = read_qasm(mapped_path)?;
    let n = backend.num_qubits();
    if mapped.num_qubits() > n {
        return Err(user(format!("mapped circuit uses {} qubits, {topology} has {n}", mapped.num_qubits())));
    }
    let mapped = mapped.widened(n);
    let k = original.num_qubits();
    let initial = layout_arg("--initial-layout", initial, &mapped_text, "initial_layout")?.unwrap_or_else(|| Layout::identity(k, n));
    let final_layout = match layout_arg("--final-layout", final_layout, &mapped_text, "final_layout")? {
        Some(l) => l,
        None => track_swaps(&mapped, &initial),
    };
    for (flag, l) in [("--initial-layout", &initial), ("--final-layout", &final_layout)] {
        if l.len() != k || !l.fits(n) {
            return Err(user(format!("{flag} must place {k} logical qubits on distinct qubits below {n}")));
        }
    }
    let m = measured(mapped, initial, final_layout);

    let mut all_pass = true;
    let mut verdict = |name: &str, pass: bool, detail: String| {
        all_pass &= pass;
        let status = if pass { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            println!("{name}: {status}");
        } else {
            println!("{name}: {status} {detail}");
        }
    };
    let coupling = validate_coupling(&m.circuit, &backend).map_err(user)?;
    let detail = match coupling.violations.first() {
        Some((g, (u, v))) => format!("({} off-edge gates, first: gate {g} on {u}-{v})", coupling.violations.len()),
        None => format!("({} two-qubit gates on edges)", m.circuit.two_qubit_gate_count()),
    };
    verdict("coupling", coupling.valid, detail);
    match swap_elision_mismatch(&original, &m) {
        Ok(None) => verdict("swap_elision", true, String::new()),
        Ok(Some(why)) => verdict("swap_elision", false, format!("({why})")),
        Err(e) => verdict("swap_elision", false, format!("({e})")),
    }
    if k <= MAX_SIMULATED_QUBITS {
        match state_equivalence(&original, &m, DEFAULT_TOLERANCE) {
            Ok(r) => verdict(
                "statevector",
                r.equivalent,
                format!("(fidelity {:.12}, ancilla leakage {:.3e})", r.fidelity, r.ancilla_leakage),
            ),
            Err(e) => verdict("statevector", false, format!("({e})")),
        }
    } else {
        println!("statevector: SKIP ({k} qubits > {MAX_SIMULATED_QUBITS})");
    }
    println!("swap_count: {}  cnot_count: {}  depth: {}", m.swap_count, m.cnot_count, m.depth);
    if all_pass {
        println!("verdict: PASS");
        Ok(())
    } else {
        println!("verdict: FAIL");
        Err(user("verification failed"))
    }
}

fn track_swaps(circuit: &QuantumCircuit, initial: &Layout) -> Layout {
    let mut p2l = initial.inverse(circuit.num_qubits());
    for g in circuit.gates().iter().filter(|g| g.kind == qumeld_core::GateKind::Swap) {
        p2l.swap(g.qubits[0], g.qubits[1]);
    }
    let mut l2p = vec![0; initial.len()];
    for (p, l) in p2l.iter().enumerate() {
        if let Some(l) = l {
            l2p[*l] = p;
        }
    }
    Layout::new(l2p).expect("swaps preserve injectivity")
}

fn report(results: &Path, csv: Option<&Path>) -> Result<(), CliError> {
    let path = report_csv(results, csv)?;
    println!("{}", path.display());
    Ok(())
}
