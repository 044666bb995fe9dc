use std::path::Path;
use std::sync::Arc;

use qumeld_core::harness::report::{read_rows, CSV_HEADER, UNREADABLE};
use qumeld_core::harness::selector::{default_criteria, rank_results};
use qumeld_core::harness::{
    execute, parse_criteria, provide_circuit, report_csv, run_experiment, select_best, Criterion, DataDir,
    ExperimentConfig, Registry, RunOptions, Workload,
};
use qumeld_core::topology::make_backend;
use qumeld_core::{
    Backend, Gate, HarnessError, MapperDescriptor, MapperParams, MappingResult, QuantumCircuit, QubitMapper,
};

fn data() -> DataDir {
    DataDir::bundled()
}

fn device(name: &str) -> Backend {
    make_backend(&data().topologies(), name, 0).unwrap()
}

fn workload(key: &str) -> Workload {
    provide_circuit(&data().hamiltonians(), key).unwrap()
}

/// Routes like `trivial`, then pads the result with cancelling SWAP pairs.
struct Crippled {
    descriptor: MapperDescriptor,
    inner: Arc<dyn QubitMapper>,
}

impl QubitMapper for Crippled {
    fn descriptor(&self) -> &MapperDescriptor {
        &self.descriptor
    }

    fn map_circuit(&self, c: &QuantumCircuit, b: &Backend, seed: u64, p: &MapperParams) -> MappingResult {
        let r = self.inner.map_circuit(c, b, seed, p);
        let Ok(m) = r.outcome else { return r };
        let (u, v) = b.graph.edges()[0];
        let mut gates = m.circuit.gates().to_vec();
        gates.extend([Gate::swap(u, v), Gate::swap(u, v), Gate::swap(u, v), Gate::swap(u, v)]);
        let padded = QuantumCircuit::from_gates(m.circuit.num_qubits(), gates).unwrap();
        qumeld_core::evaluation::measure(padded, r.optimisation_time, m.initial_layout, m.final_layout)
    }
}

fn registry_with_crippled() -> Registry {
    let mut registry = Registry::builtins();
    let inner = registry.get("sabre_lookahead").unwrap();
    registry
        .register(Arc::new(Crippled {
            descriptor: MapperDescriptor {
                id: "aaa_crippled".into(),
                supports_circuit: true,
                supports_hamiltonian: false,
                default_params: Default::default(),
                summary: "sabre plus wasted SWAPs".into(),
            },
            inner,
        }))
        .unwrap();
    registry
}

#[test]
fn crippled_mapper_never_wins() {
    let registry = registry_with_crippled();
    for (topology, key) in [("ibm_tokyo", "efficientsu2_5"), ("rigetti_novera", "qaoa_ansatz_5"), ("ibm_falcon", "vqe_h2")] {
        let report =
            select_best(&registry, &workload(key), &device(topology), 0, &MapperParams::fast(), &default_criteria())
                .unwrap();
        assert_ne!(report.best.as_deref(), Some("aaa_crippled"), "{topology}/{key}");
        let crippled = report.ranked.iter().position(|e| e.mapper == "aaa_crippled").unwrap();
        let sabre = report.ranked.iter().position(|e| e.mapper == "sabre_lookahead").unwrap();
        assert!(sabre < crippled);
    }
}

#[test]
fn complete_graph_tie_breaks_by_id() {
    let report = select_best(
        &Registry::builtins(),
        &workload("qaoa_ansatz_5"),
        &device("ionq_harmony"),
        0,
        &MapperParams::fast(),
        &[Criterion::SwapCount],
    )
    .unwrap();
    // Every circuit mapper ties at zero SWAPs.
    assert!(report.ranked.iter().all(|e| e.swap_count == Some(0)));
    assert_eq!(report.best.as_deref(), Some("sabre_decay"));
}

#[test]
fn criterion_order_matters_and_is_deterministic() {
    let registry = Registry::builtins();
    let w = workload("vqe_random_demo_9");
    let b = device("ibm_tokyo");
    let run = |text: &str| {
        select_best(&registry, &w, &b, 0, &MapperParams::fast(), &parse_criteria(text).unwrap()).unwrap()
    };
    for text in ["depth,swap_count", "swap_count,depth"] {
        let a = run(text);
        let again = run(text);
        let strip = |r: &qumeld_core::harness::SelectionReport| {
            r.ranked.iter().map(|e| (e.mapper.clone(), e.swap_count, e.depth)).collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&again));
        let first = &a.ranked[0];
        let key = |e: &qumeld_core::harness::selector::RankedEntry| match text {
            "depth,swap_count" => (e.depth, e.swap_count),
            _ => (e.swap_count, e.depth),
        };
        assert!(a.ranked.iter().filter(|e| e.failure_reason.is_none()).all(|e| key(first) <= key(e)));
    }
}

#[test]
fn reranking_is_permutation_invariant() {
    let registry = Registry::builtins();
    let w = workload("efficientsu2_5");
    let b = device("ibm_almaden");
    let results: Vec<(String, MappingResult)> = registry
        .mappers()
        .iter()
        .filter(|m| m.descriptor().supports_circuit)
        .map(|m| (m.descriptor().id.clone(), execute(m.as_ref(), &w, &b, 0, &MapperParams::fast())))
        .collect();
    let base = rank_results(results.clone(), &default_criteria());
    let mut reversed = results.clone();
    reversed.reverse();
    assert_eq!(rank_results(reversed, &default_criteria()), base);
    let mut rotated = results;
    rotated.rotate_left(2);
    assert_eq!(rank_results(rotated, &default_criteria()), base);
}

#[test]
fn no_applicable_mapper() {
    let mut registry = Registry::empty();
    registry.register(Registry::builtins().get("pauli_static").unwrap()).unwrap();
    let err = select_best(&registry, &workload("efficientsu2_5"), &device("ibm_tokyo"), 0, &MapperParams::fast(), &default_criteria())
        .unwrap_err();
    assert!(matches!(err, HarnessError::NoApplicableMapper));
    assert!(registry.register(Registry::builtins().get("pauli_static").unwrap()).is_err());
}

fn config(dir: &Path, mappers: &[&str], topologies: &[&str], circuits: &[&str]) -> ExperimentConfig {
    let json = serde_json::json!({
        "mappers": mappers,
        "topologies": topologies,
        "circuits": circuits,
        "seed": 1,
        "params": {"fast_profile": true},
        "output_dir": dir,
    });
    ExperimentConfig::parse(&json.to_string()).unwrap()
}

fn options() -> RunOptions {
    RunOptions { data: data(), workers: 1 }
}

#[test]
fn two_by_two_by_one_run() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), &["trivial", "sabre_lookahead"], &["ibm_tokyo", "rigetti_novera"], &["efficientsu2_5"]);
    let out = run_experiment(&c, &Registry::builtins(), &options()).unwrap();
    assert_eq!(out.records.len(), 4);
    let files = qumeld_core::harness::report::result_files(dir.path());
    assert_eq!(files.len(), 4);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.root.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["seed"], 1);
    assert!(manifest["framework_version"].is_string());

    // Keys are sorted and indented by two spaces.
    let text = std::fs::read_to_string(&files[0]).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim_start().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);

    let csv = report_csv(dir.path(), None).unwrap();
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    let csv_swaps: usize = rows.iter().map(|r| r[4].parse::<usize>().unwrap()).sum();
    let memory_swaps: usize = out.records.iter().map(|(_, r)| r.swap_count.unwrap()).sum();
    assert_eq!(csv_swaps, memory_swaps);
    let csv_cnots: usize = rows.iter().map(|r| r[5].parse::<usize>().unwrap()).sum();
    assert_eq!(csv_cnots, out.records.iter().map(|(_, r)| r.cnot_count.unwrap()).sum::<usize>());
    let order: Vec<(String, String)> = rows.iter().map(|r| (r[1].to_string(), r[3].to_string())).collect();
    let mut sorted = order.clone();
    sorted.sort();
    assert_eq!(order, sorted);
}

#[test]
fn oversized_circuit_gets_a_failure_record() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), &["trivial"], &["rigetti_novera"], &["vqe_lih"]);
    let out = run_experiment(&c, &Registry::builtins(), &options()).unwrap();
    let (path, record) = &out.records[0];
    assert!(path.ends_with("rigetti_novera/vqe_lih/trivial.json"));
    assert_eq!(record.failure_reason.as_deref(), Some("insufficient-qubits"));
    assert!(record.swap_count.is_none() && record.mapped_qasm.is_none());
}

#[test]
fn unknown_names_fail_before_any_work() {
    for (m, t, c) in [("nope", "ibm_tokyo", "vqe_h2"), ("trivial", "nope", "vqe_h2"), ("trivial", "ibm_tokyo", "nope")] {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("results");
        let err = run_experiment(&config(&out, &[m], &[t], &[c]), &Registry::builtins(), &options()).unwrap_err();
        assert!(matches!(err, HarnessError::UnknownMapper(_) | HarnessError::UnknownCircuit(_) | HarnessError::Topology(_)));
        assert!(!out.exists(), "{m}/{t}/{c} created output");
    }
}

#[test]
fn parametric_keys_run() {
    let dir = tempfile::tempdir().unwrap();
    let key = "qaoa_ansatz:0-1,1-2,2-3,3-0";
    let out = run_experiment(&config(dir.path(), &["sabre_decay"], &["ibm_tokyo"], &[key]), &Registry::builtins(), &options())
        .unwrap();
    let (path, record) = &out.records[0];
    assert_eq!(record.circuit, key);
    assert!(path.ends_with("ibm_tokyo/qaoa_ansatz_0-1_1-2_2-3_3-0/sabre_decay.json"));
    assert!(record.failure_reason.is_none());
}

#[test]
fn report_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), &["trivial"], &["ibm_tokyo"], &["qaoa_maxcut_5", "efficientsu2_5"]);
    run_experiment(&c, &Registry::builtins(), &options()).unwrap();
    let victim = qumeld_core::harness::report::result_files(dir.path())[0].clone();
    std::fs::write(&victim, "{ truncated").unwrap();
    let rows = read_rows(dir.path()).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows.iter().filter(|r| r.failure_reason.as_deref() == Some(UNREADABLE)).count(), 1);
    let custom = dir.path().join("custom.csv");
    assert_eq!(report_csv(dir.path(), Some(&custom)).unwrap(), custom);
}

#[test]
fn registry_order_is_stable() {
    assert_eq!(Registry::builtins().ids(), Registry::builtins().ids());
    assert_eq!(
        Registry::builtins().ids(),
        ["trivial", "sabre_lookahead", "sabre_decay", "time_aware", "pauli_static"]
    );
}
