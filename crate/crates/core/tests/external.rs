use std::time::Instant;

use qumeld_core::evaluation::measure;
use qumeld_core::mappers::{AdapterConfig, ExternalMapper};
use qumeld_core::topology::line_graph;
use qumeld_core::{
    run_circuit, run_hamiltonian, Backend, FailureReason, Gate, Hamiltonian, Layout, MapperParams, PauliTerm,
    QuantumCircuit, QubitMapper,
};

fn adapter(command: &[&str], extra: &str) -> ExternalMapper {
    let command = serde_json::to_string(command).unwrap();
    let text = format!(r#"{{"id":"tool","command":{command},"timeout_s":10,"supports_hamiltonian":false{extra}}}"#);
    ExternalMapper::new(AdapterConfig::parse(&text).unwrap()).unwrap()
}

fn line3() -> Backend {
    Backend::from_graph("line_3", line_graph(3).unwrap(), 0).unwrap()
}

fn valid_circuit() -> QuantumCircuit {
    QuantumCircuit::from_gates(3, vec![Gate::h(0), Gate::cx(0, 1), Gate::swap(1, 2), Gate::rz(0.25, 1)]).unwrap()
}

fn qasm_writer(body: &str) -> Vec<String> {
    let script = format!("printf '%s\\n' 'OPENQASM 2.0;' 'include \"qelib1.inc\";' 'qreg q[3];' {body} > {{output}}");
    vec!["sh".into(), "-c".into(), script]
}

#[test]
fn file_passthrough_matches_direct_measurement() {
    let c = valid_circuit();
    let r = run_circuit(&adapter(&["cp", "{input}", "{output}"], ""), &c, &line3(), 0, &MapperParams::default());
    let direct = measure(c.clone(), 0.0, Layout::identity(3, 3), Layout::new(vec![0, 2, 1]).unwrap());
    assert_eq!(r.outcome, direct.outcome);
}

#[test]
fn stream_passthrough() {
    let c = valid_circuit();
    let r = run_circuit(&adapter(&["cat"], r#","input_mode":"stream""#), &c, &line3(), 0, &MapperParams::default());
    assert_eq!(r.swap_count(), Some(1));
}

#[test]
fn failing_tool_reports_its_diagnostic() {
    let tool = adapter(&["sh", "-c", "echo 'solver exploded' >&2; exit 1"], "");
    let r = tool.map_circuit(&valid_circuit(), &line3(), 0, &MapperParams::default());
    match r.failure_reason() {
        Some(FailureReason::ExternalFailure(msg)) => assert!(msg.contains("solver exploded"), "{msg}"),
        other => panic!("{other:?}"),
    }
    assert!(r.failure_reason().unwrap().to_string().starts_with("external-failure"));
}

#[test]
fn non_edge_output_is_rejected() {
    let cmd = qasm_writer("'cx q[0],q[2];'");
    let tool = adapter(&cmd.iter().map(String::as_str).collect::<Vec<_>>(), "");
    let c = QuantumCircuit::from_gates(3, vec![Gate::cx(0, 2)]).unwrap();
    let r = tool.map_circuit(&c, &line3(), 0, &MapperParams::default());
    assert!(matches!(r.failure_reason(), Some(FailureReason::InvalidExternalOutput(_))), "{:?}", r.failure_reason());
    assert!(r.failure_reason().unwrap().to_string().starts_with("invalid-external-output"));
}

#[test]
fn unparseable_output_is_a_parse_error() {
    let tool = adapter(&["sh", "-c", "echo 'not qasm at all' > {output}"], "");
    let r = tool.map_circuit(&valid_circuit(), &line3(), 0, &MapperParams::default());
    assert!(matches!(r.failure_reason(), Some(FailureReason::ParseError(_))));
}

#[test]
fn layout_comments_are_honoured() {
    let cmd = qasm_writer("'// initial_layout: 1,0' '// final_layout: 1,0' 'cx q[1],q[0];'");
    let tool = adapter(&cmd.iter().map(String::as_str).collect::<Vec<_>>(), "");
    let c = QuantumCircuit::from_gates(2, vec![Gate::cx(0, 1)]).unwrap();
    let r = tool.map_circuit(&c, &line3(), 0, &MapperParams::default());
    let m = r.mapped().unwrap();
    assert_eq!(m.initial_layout.as_slice(), [1, 0]);
    assert!(qumeld_core::evaluation::check_swap_elision(&c, &r).unwrap());
}

#[test]
fn slow_tool_times_out() {
    let text = r#"{"id":"slow","command":["sleep","5"],"timeout_s":0.2,"supports_hamiltonian":false}"#;
    let tool = ExternalMapper::new(AdapterConfig::parse(text).unwrap()).unwrap();
    let start = Instant::now();
    let r = tool.map_circuit(&valid_circuit(), &line3(), 0, &MapperParams::default());
    assert_eq!(r.failure_reason(), Some(&FailureReason::Timeout));
    assert!(start.elapsed().as_secs_f64() < 3.0);
}

#[test]
fn hamiltonian_tools_receive_json() {
    let script = "case {input} in *.json) grep -q terms {input} && printf '%s\\n' 'OPENQASM 2.0;' 'include \"qelib1.inc\";' 'qreg q[3];' 'cx q[0],q[1];' 'rz(0.5) q[1];' 'cx q[0],q[1];' > {output};; esac";
    let command = serde_json::to_string(&["sh", "-c", script]).unwrap();
    let text = format!(
        r#"{{"id":"ham","command":{command},"timeout_s":10,"supports_hamiltonian":true,"supports_circuit":false}}"#
    );
    let tool = ExternalMapper::new(AdapterConfig::parse(&text).unwrap()).unwrap();
    let h = Hamiltonian::new(2, vec![PauliTerm::parse("ZZ", 0.25).unwrap()]).unwrap();
    let r = run_hamiltonian(&tool, &h, &line3(), 0, &MapperParams::default());
    assert_eq!(r.mapped().unwrap().cnot_count, 2);
    let c = run_circuit(&tool, &QuantumCircuit::new(2), &line3(), 0, &MapperParams::default());
    assert_eq!(c.failure_reason(), Some(&FailureReason::UnsupportedInput));
}

#[test]
fn malformed_configs_are_rejected() {
    assert!(AdapterConfig::parse(r#"{"id":"bad id","command":["x"],"timeout_s":1,"supports_hamiltonian":false}"#).is_err());
    assert!(AdapterConfig::parse(r#"{"id":"x","command":[],"timeout_s":1,"supports_hamiltonian":false}"#).is_err());
    assert!(AdapterConfig::parse(r#"{"id":"x","command":["x"],"timeout_s":0,"supports_hamiltonian":false}"#).is_err());
    assert!(AdapterConfig::parse(r#"{"id":"x","command":["x"],"timeout_s":1}"#).is_err());
}

#[test]
fn shipped_template_parses() {
    let path = qumeld_core::harness::DataDir::bundled().adapter_templates().join("rustiq.json");
    let config = AdapterConfig::load(&path).unwrap();
    assert!(config.supports_hamiltonian && !config.supports_circuit);
}
