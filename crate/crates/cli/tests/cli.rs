use std::path::{Path, PathBuf};
use std::process::{Command, Output};

struct Sandbox {
    dir: tempfile::TempDir,
}

impl Sandbox {
    fn new() -> Sandbox {
        Sandbox { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, rel: &str) -> PathBuf {
        self.dir.path().join(rel)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_qumeld"))
            .args(args)
            .current_dir(self.dir.path())
            .env_remove("QUMELD_DATA_DIR")
            .output()
            .unwrap()
    }

    fn write(&self, rel: &str, text: &str) -> PathBuf {
        let p = self.path(rel);
        std::fs::create_dir_all(p.parent().unwrap()).unwrap();
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// Value of a `key: value` line.
fn field(o: &Output, key: &str) -> String {
    let prefix = format!("{key}: ");
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
        .unwrap_or_else(|| panic!("no `{key}` in:\n{}", stdout(o)))
}

fn without_times(o: &Output) -> String {
    stdout(o).lines().filter(|l| !l.starts_with("optimisation_time")).collect::<Vec<_>>().join("\n")
}

#[test]
fn list_counts() {
    let s = Sandbox::new();
    let topologies = s.run(&["list", "topologies"]);
    assert_eq!(code(&topologies), 0);
    assert_eq!(stdout(&topologies).lines().count(), 1 + 16);
    assert_eq!(stdout(&s.run(&["list", "mappers"])).lines().count(), 1 + 5);
    assert_eq!(stdout(&s.run(&["list", "circuits"])).lines().count(), 1 + 6);
    assert_eq!(code(&s.run(&["list", "bogus"])), 1);
}

#[test]
fn adapters_directory_is_scanned() {
    let s = Sandbox::new();
    s.write("adapters/echo.json", r#"{"id":"echo","command":["cat"],"timeout_s":5,"supports_hamiltonian":false,"input_mode":"stream"}"#);
    s.write("adapters/broken.json", "{");
    let out = s.run(&["list", "mappers"]);
    assert_eq!(stdout(&out).lines().count(), 1 + 6);
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.json"));
    let mapped = s.run(&["map", "--mapper", "echo", "--topology", "ionq_harmony", "--circuit", "qaoa_ansatz_5"]);
    assert_eq!(code(&mapped), 0, "{}", String::from_utf8_lossy(&mapped.stderr));
    assert_eq!(field(&mapped, "swap_count"), "0");
}

#[test]
fn map_examples() {
    let s = Sandbox::new();
    let complete = s.run(&["map", "--mapper", "trivial", "--topology", "ionq_harmony", "--circuit", "qaoa_maxcut_5"]);
    assert_eq!(code(&complete), 0);
    assert_eq!(field(&complete, "swap_count"), "0");
    assert_eq!(field(&complete, "seed"), "0");

    let args = ["map", "--mapper", "sabre_lookahead", "--topology", "ibm_tokyo", "--circuit", "efficientsu2_5", "--seed", "7"];
    let (a, b) = (s.run(&args), s.run(&args));
    assert_eq!(without_times(&a), without_times(&b));
    assert_eq!(field(&a, "seed"), "7");

    let too_big = s.run(&["map", "--mapper", "trivial", "--topology", "rigetti_novera", "--circuit", "vqe_lih"]);
    assert_ne!(code(&too_big), 0);
    assert_eq!(field(&too_big, "failure_reason"), "insufficient-qubits");
}

#[test]
fn map_user_errors() {
    let s = Sandbox::new();
    let q = s.write("c.qasm", "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncx q[0],q[1];\n");
    let q = q.to_str().unwrap();
    for args in [
        vec!["map", "--mapper", "trivial", "--topology", "ibm_tokyo", "--circuit", "vqe_h2", "--qasm-in", q],
        vec!["map", "--mapper", "nope", "--topology", "ibm_tokyo", "--circuit", "vqe_h2"],
        vec!["map", "--mapper", "trivial", "--topology", "nope", "--circuit", "vqe_h2"],
        vec!["map", "--mapper", "trivial", "--topology", "ibm_tokyo", "--circuit", "nope"],
        vec!["map", "--mapper", "trivial", "--topology", "ibm_tokyo"],
        vec!["map", "--mapper", "trivial", "--topology", "ibm_tokyo", "--qasm-in", "missing.qasm"],
        vec!["map", "--mapper", "pauli_static", "--topology", "ibm_tokyo", "--qasm-in", q],
        vec!["map", "--bogus-flag"],
    ] {
        assert_eq!(code(&s.run(&args)), 1, "{args:?}");
    }
}

fn write_config(s: &Sandbox, name: &str, mappers: &[&str], topologies: &[&str], circuits: &[&str]) -> String {
    let json = serde_json::json!({
        "mappers": mappers,
        "topologies": topologies,
        "circuits": circuits,
        "seed": 4,
        "params": {"fast_profile": true},
        "output_dir": "results",
    });
    s.write(name, &json.to_string()).to_str().unwrap().to_string()
}

fn result_payloads(root: &Path) -> Vec<(PathBuf, String)> {
    let mut files = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for e in std::fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else if p.file_name().unwrap() != "manifest.json" {
                let text = std::fs::read_to_string(&p).unwrap();
                let kept: Vec<&str> = text
                    .lines()
                    .filter(|l| !l.contains("\"optimisation_time\"") && !l.contains("\"timestamp\""))
                    .collect();
                files.push((p.strip_prefix(root).unwrap().to_path_buf(), kept.join("\n")));
            }
        }
    }
    files.sort();
    files
}

#[test]
fn run_minimal_and_parallel() {
    let s = Sandbox::new();
    let cfg = write_config(&s, "one.json", &["trivial"], &["ibm_tokyo"], &["efficientsu2_5"]);
    let out = s.run(&["run", "--config", &cfg]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let root = s.path(stdout(&out).lines().last().unwrap());
    assert!(root.join("manifest.json").is_file());
    assert_eq!(result_payloads(&root).len(), 1);

    let cfg = write_config(&s, "many.json", &["trivial", "sabre_decay", "time_aware"], &["ibm_tokyo", "rigetti_novera"], &["qaoa_ansatz_5", "vqe_h2"]);
    let one = s.run(&["run", "--config", &cfg, "--workers", "1"]);
    let four = s.run(&["run", "--config", &cfg, "--workers", "4"]);
    let root = |o: &Output| s.path(stdout(o).lines().last().unwrap());
    assert_ne!(root(&one), root(&four));
    let (a, b) = (result_payloads(&root(&one)), result_payloads(&root(&four)));
    assert_eq!(a.len(), 12);
    assert_eq!(a, b);
}

#[test]
fn run_errors() {
    let s = Sandbox::new();
    assert_eq!(code(&s.run(&["run", "--config", "missing.json"])), 1);
    s.write("bad.json", r#"{"mappers":"all","topologies":"all","circuits":"all","output_dir":"results"}"#);
    assert_eq!(code(&s.run(&["run", "--config", "bad.json"])), 1);
    let cfg = write_config(&s, "unknown.json", &["trivial"], &["atlantis"], &["vqe_h2"]);
    assert_eq!(code(&s.run(&["run", "--config", &cfg])), 1);
    assert!(!s.path("results").exists());
}

#[test]
fn select_examples() {
    let s = Sandbox::new();
    let complete = s.run(&["select", "--topology", "ionq_harmony", "--circuit", "qaoa_ansatz_5", "--criteria", "swap_count"]);
    assert_eq!(code(&complete), 0);
    assert_eq!(field(&complete, "best"), "sabre_decay");
    let table_first = stdout(&complete).lines().find(|l| l.starts_with("1 ")).unwrap().to_string();
    assert!(table_first.contains("sabre_decay"));

    for criteria in ["depth,swap_count", "swap_count,depth"] {
        let args = ["select", "--topology", "ibm_tokyo", "--circuit", "vqe_random_demo_9", "--criteria", criteria];
        let strip = |o: &Output| {
            stdout(o)
                .lines()
                .map(|l| l.split_whitespace().take(5).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&s.run(&args)), strip(&s.run(&args)));
    }
    assert_eq!(code(&s.run(&["select", "--topology", "ibm_tokyo", "--circuit", "vqe_h2", "--criteria", "speed"])), 1);
    let none = s.run(&["select", "--topology", "rigetti_novera", "--circuit", "vqe_lih"]);
    assert_eq!(code(&none), 2);
    assert!(stdout(&none).contains("insufficient-qubits"));
}

#[test]
fn verify_examples() {
    let s = Sandbox::new();
    let original = s.write(
        "ghz.qasm",
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[4];\nh q[0];\ncx q[0],q[3];\ncx q[3],q[1];\nrz(0.3) q[1];\ncx q[1],q[2];\n",
    );
    let original = original.to_str().unwrap();
    let mapped = s.run(&["map", "--mapper", "trivial", "--topology", "ibm_falcon", "--qasm-in", original, "--out", "mapped.qasm"]);
    assert_eq!(code(&mapped), 0);
    assert_ne!(field(&mapped, "swap_count"), "0");
    let ok = s.run(&["verify", "--original", original, "--mapped", "mapped.qasm", "--topology", "ibm_falcon"]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    for check in ["coupling", "swap_elision", "statevector"] {
        assert!(field(&ok, check).starts_with("PASS"), "{check}");
    }

    // Explicit layouts take precedence over the comments.
    let init = field(&mapped, "initial_layout");
    let fin = field(&mapped, "final_layout");
    let explicit = s.run(&[
        "verify", "--original", original, "--mapped", "mapped.qasm", "--topology", "ibm_falcon", "--initial-layout", &init,
        "--final-layout", &fin,
    ]);
    assert_eq!(code(&explicit), 0);

    let text = std::fs::read_to_string(s.path("mapped.qasm")).unwrap();
    let mut dropped = false;
    let mutated: Vec<&str> = text
        .lines()
        .filter(|l| {
            if !dropped && l.starts_with("swap ") {
                dropped = true;
                return false;
            }
            true
        })
        .collect();
    s.write("mutated.qasm", &mutated.join("\n"));
    let bad = s.run(&["verify", "--original", original, "--mapped", "mutated.qasm", "--topology", "ibm_falcon"]);
    assert_ne!(code(&bad), 0);
    assert!(field(&bad, "swap_elision").starts_with("FAIL"));

    let same = s.run(&["verify", "--original", original, "--mapped", original, "--topology", "ionq_harmony", "--initial-layout", "0,1,2,3", "--final-layout", "0,1,2,3"]);
    assert_eq!(code(&same), 0, "{}", stdout(&same));

    s.write("junk.qasm", "qreg q[2]; frobnicate q[0];");
    assert_eq!(code(&s.run(&["verify", "--original", original, "--mapped", "junk.qasm", "--topology", "ibm_falcon"])), 1);
    assert_eq!(
        code(&s.run(&["verify", "--original", original, "--mapped", original, "--topology", "ionq_harmony", "--initial-layout", "0,0,1,2"])),
        1
    );
}

#[test]
fn report_examples() {
    let s = Sandbox::new();
    let cfg = write_config(&s, "c.json", &["trivial", "sabre_lookahead"], &["ibm_tokyo", "rigetti_novera"], &["qaoa_maxcut_5"]);
    assert_eq!(code(&s.run(&["run", "--config", &cfg])), 0);
    let out = s.run(&["report", "--results", "results"]);
    assert_eq!(code(&out), 0);
    let csv_path = PathBuf::from(stdout(&out).trim());
    let rows = |p: &Path| csv::Reader::from_path(s.path(p.to_str().unwrap())).unwrap().records().count();
    assert_eq!(rows(&csv_path), 4);

    std::fs::create_dir_all(s.path("empty")).unwrap();
    let empty = s.run(&["report", "--results", "empty", "--csv", "empty.csv"]);
    assert_eq!(code(&empty), 0);
    assert_eq!(std::fs::read_to_string(s.path("empty.csv")).unwrap().lines().count(), 1);

    s.write("broken/20260101T000000Z/ibm_tokyo/vqe_h2/trivial.json", "{");
    assert_eq!(code(&s.run(&["report", "--results", "broken"])), 0);
    let text = std::fs::read_to_string(s.path("broken/report.csv")).unwrap();
    assert!(text.contains("unreadable-record"));

    assert_eq!(code(&s.run(&["report", "--results", "nowhere"])), 1);
}

#[test]
fn help_lists_every_flag() {
    let s = Sandbox::new();
    for (sub, flags) in [
        ("map", &["--mapper", "--topology", "--circuit", "--qasm-in", "--seed", "--out", "--fast"][..]),
        ("run", &["--config", "--workers"]),
        ("select", &["--topology", "--circuit", "--criteria"]),
        ("verify", &["--original", "--mapped", "--topology", "--initial-layout", "--final-layout"]),
        ("report", &["--results", "--csv"]),
    ] {
        let out = s.run(&[sub, "--help"]);
        assert_eq!(code(&out), 0);
        for flag in flags {
            assert!(stdout(&out).contains(flag), "{sub} --help lacks {flag}");
        }
    }
    let top = stdout(&s.run(&["--help"]));
    for sub in ["list", "map", "run", "select", "verify", "report"] {
        assert!(top.contains(sub));
    }
}

#[test]
fn data_dir_override() {
    let s = Sandbox::new();
    let out = Command::new(env!("CARGO_BIN_EXE_qumeld"))
        .args(["list", "topologies"])
        .current_dir(s.dir.path())
        .env("QUMELD_DATA_DIR", s.path("nothing-here"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
}
