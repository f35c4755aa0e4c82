use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn qsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsim"))
        .args(args)
        .env_remove("QSIM_MAX_QUBITS")
        .output()
        .unwrap()
}

fn qsim_env(args: &[&str], max_qubits: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsim"))
        .args(args)
        .env("QSIM_MAX_QUBITS", max_qubits)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn bell() -> String {
    data("bell.qcf").to_string_lossy().into_owned()
}

#[test]
fn run_json_matches_golden_and_bounds() {
    let o = qsim(&["run", &bell(), "--shots", "4096", "--seed", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stderr.is_empty());
    let text = stdout(&o);
    assert_eq!(text, golden("bell_seed7.json"));

    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["shots"], 4096);
    assert_eq!(doc["seed"], 7);
    let counts = doc["counts"].as_object().unwrap();
    let keys: Vec<&String> = counts.keys().collect();
    assert_eq!(keys, ["00", "11"]);
    let total: u64 = counts.values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 4096);
    for v in counts.values() {
        assert!((1952..=2144).contains(&v.as_u64().unwrap()));
    }
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(reparsed, doc);
}

#[test]
fn run_csv_and_text_goldens() {
    let o = qsim(&["run", &bell(), "--shots", "4096", "--seed", "7", "--format", "csv"]);
    assert_eq!(stdout(&o), golden("bell_seed7.csv"));
    let o = qsim(&["run", &bell(), "--shots", "4096", "--seed", "7"]);
    assert_eq!(stdout(&o), golden("bell_seed7.txt"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["run", &bell(), "--shots", "5000", "--seed", "123", "--format", "csv"];
    let a = qsim(&args);
    let b = qsim(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = qsim(&["run", &bell(), "--shots", "5000", "--seed", "124", "--format", "csv"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn defaults_are_1024_shots_seed_zero() {
    let explicit = qsim(&["run", &bell(), "--shots", "1024", "--seed", "0", "--backend", "statevector", "--format", "text"]);
    let implicit = qsim(&["run", &bell()]);
    assert_eq!(explicit.stdout, implicit.stdout);
    assert!(stdout(&implicit).contains("shots=1024 seed=0"));
}

#[test]
fn density_backend_prints_exact_probabilities() {
    let o = qsim(&["run", &bell(), "--backend", "density"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("bell_density.txt"));

    let o = qsim(&["run", &bell(), "--backend", "density", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = &doc["probabilities"];
    for (label, want) in [("00", 0.5), ("01", 0.0), ("10", 0.0), ("11", 0.5)] {
        assert!((p[label].as_f64().unwrap() - want).abs() < 1e-12);
    }

    let o = qsim(&["run", &bell(), "--backend", "density", "--format", "csv"]);
    assert!(stdout(&o).starts_with("label,probability\n00,0.500000000000\n"));
}

#[test]
fn parse_errors_exit_2_with_location_on_stderr() {
    let o = qsim(&["run", &data("bad_wire.qcf").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = stderr(&o);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("WireOutOfRange"), "{err}");
}

#[test]
fn unitary_goldens_and_cap() {
    let o = qsim(&["unitary", &bell()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("bell_unitary.txt"));

    let o = qsim(&["unitary", &data("empty1.qcf").to_string_lossy()]);
    assert_eq!(
        stdout(&o),
        "1.000000+0.000000i 0.000000+0.000000i\n0.000000+0.000000i 1.000000+0.000000i\n"
    );

    let o = qsim(&["unitary", &data("wide13.qcf").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("capacity"));
}

#[test]
fn grover_outputs() {
    let o = qsim(&["grover", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("grover_2_3.txt"));

    let o = qsim(&["grover", "3", "0"]);
    let text = stdout(&o);
    assert!(text.contains("iterations: 2\n"));
    assert!(text.contains("success_probability: 0.945312500\n"));
    assert!(text.contains("closed_form: 0.945312500\n"));

    let o = qsim(&["grover", "3", "0", "0"]);
    assert!(stdout(&o).contains("success_probability: 0.125000000\n"));

    let o = qsim(&["grover", "25", "0"]);
    assert_eq!(o.status.code(), Some(3));

    let o = qsim(&["grover", "3", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_outcomes() {
    let o = qsim(&["validate", &bell()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "OK\n");

    let o = qsim(&["validate", &data("truncated.qcf").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("BadArity"));
    assert!(o.stdout.is_empty());

    let o = qsim(&["validate", &data("unknown_gate.qcf").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("UnknownGate"));

    let o = qsim(&["validate", &data("does_not_exist.qcf").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qsim(&["run", &bell(), "--backend", "gpu"]).status.code(), Some(2));
    assert_eq!(qsim(&["run", &bell(), "--shots", "0"]).status.code(), Some(2));
    assert_eq!(qsim(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qsim(&["--help"]).status.code(), Some(0));
    assert!(stdout(&qsim(&["run", "--help"])).contains("[default: 1024]"));
}

#[test]
fn max_qubits_env_overrides_caps() {
    let o = qsim_env(&["run", &bell()], "1");
    assert_eq!(o.status.code(), Some(3));
    let o = qsim_env(&["grover", "3", "0"], "2");
    assert_eq!(o.status.code(), Some(3));
    let o = qsim_env(&["run", &bell(), "--backend", "density"], "2");
    assert_eq!(o.status.code(), Some(0));
    let o = qsim_env(&["run", &bell()], "lots");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn crlf_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell_crlf.qcf");
    std::fs::write(&path, "qubits 2\r\nH 0\r\nCNOT 0 1\r\n").unwrap();
    let crlf = qsim(&["run", &path.to_string_lossy(), "--seed", "7", "--shots", "4096", "--format", "json"]);
    assert_eq!(stdout(&crlf), golden("bell_seed7.json"));
}
