//! Integration tests for the command-line surface: the exit-code contract,
//! report determinism modulo the timestamp header, input-error hygiene, and
//! the `QFRAC_DEPTH` environment override.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qfslp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> String {
    let path = std::env::temp_dir().join(format!("qfslp-cli-test-{name}"));
    std::fs::write(&path, contents).expect("temp file written");
    path.to_string_lossy().into_owned()
}

const PROBLEM: &str = r#"{
    "spec_version": 1,
    "q": 0.5,
    "a": 1.0,
    "depth": 20,
    "alpha": 0.7,
    "p": {"kind": "const", "v": 1.0},
    "r": {"kind": "const", "v": 0.0},
    "w": {"kind": "const", "v": 1.0},
    "bc": [1.0, 0.0, 0.0, 1.0]
}"#;

/// Strip the `header` object (the only nondeterministic part) from a JSON
/// report.
fn strip_header(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("valid JSON output");
    v.as_object_mut().expect("object output").remove("header");
    v
}

#[test]
fn op_tabulates_and_is_deterministic_modulo_header() {
    let spec = write_temp("pow.json", r#"{"kind": "pow", "mu": 0.3}"#);
    let args = [
        "op", "--op", "ileft", "--alpha", "0.5", "--q", "0.5", "--depth", "16", "--fn", &spec,
        "--out", "json",
    ];
    let out1 = run(&args);
    let out2 = run(&args);
    assert_eq!(out1.status.code(), Some(0));
    let v1 = strip_header(&String::from_utf8_lossy(&out1.stdout));
    let v2 = strip_header(&String::from_utf8_lossy(&out2.stdout));
    assert_eq!(v1, v2, "reports must be byte-identical modulo the header");
    assert_eq!(v1["rows"].as_array().unwrap().len(), 17);
}

#[test]
fn op_csv_has_documented_columns() {
    let spec = write_temp("x.json", r#"{"kind": "x"}"#);
    let out = run(&[
        "op", "--op", "iright", "--alpha", "0", "--q", "0.5", "--depth", "8", "--fn", &spec,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("j,x,f,of"));
    // order zero is the identity: the f and of columns coincide
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 4);
        assert_eq!(cols[2], cols[3]);
    }
}

#[test]
fn malformed_function_spec_exits_2_with_no_partial_output() {
    let bad = write_temp("bad.json", "{this is not json");
    let out = run(&[
        "op", "--op", "ileft", "--alpha", "0.5", "--q", "0.5", "--fn", &bad,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        out.stdout.is_empty(),
        "input errors must not produce partial output"
    );
}

#[test]
fn malformed_problem_document_exits_2() {
    let bad = write_temp("bad-problem.json", r#"{"spec_version": 7}"#);
    let out = run(&["solve", "--problem", &bad, "--lambda", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn solve_reports_convergence_and_exits_0() {
    let problem = write_temp("problem.json", PROBLEM);
    let out = run(&["solve", "--problem", &problem, "--lambda", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = strip_header(&String::from_utf8_lossy(&out.stdout));
    assert_eq!(v["converged"], serde_json::Value::Bool(true));
    assert!(v["admissible"].as_bool().unwrap());
    assert!(v["fixed_point_residual"].as_f64().unwrap() <= 1e-9);
    assert!(v.get("warning").is_none());
}

#[test]
fn solve_missing_lambda_is_an_input_error() {
    let problem = write_temp("problem-nolambda.json", PROBLEM);
    let out = run(&["solve", "--problem", &problem]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_exhausted_iterations_exit_1_with_honest_report() {
    let problem = write_temp("problem-cap.json", PROBLEM);
    let out = run(&[
        "solve", "--problem", &problem, "--lambda", "0.3", "--max-iter", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = strip_header(&String::from_utf8_lossy(&out.stdout));
    assert_eq!(v["converged"], serde_json::Value::Bool(false));
    assert!(v["error"].as_str().unwrap().contains("2 iterations"));
}

#[test]
fn spectrum_passes_at_the_pinned_grid() {
    let out = run(&["spectrum", "--q", "0.5", "--mu", "0.6", "--beta", "0.4", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,lambda_n,eigen_residual,bc0_residual,bc1_split_weight,bc1_full_weight,gram_offdiag_max"
    );
    assert_eq!(lines.len(), 5, "header plus one row per eigenpair");
}

#[test]
fn spectrum_rejects_out_of_range_order_with_exit_2() {
    let out = run(&["spectrum", "--q", "0.5", "--mu", "1.2", "--beta", "0.4", "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_unknown_suite_exits_2() {
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_spectrum_suite_prints_rows_and_writes_report() {
    let path = std::env::temp_dir().join("qfslp-cli-test-report.json");
    let out = run(&[
        "verify",
        "--suite",
        "spectrum",
        "--seed",
        "42",
        "--json-report",
        path.to_string_lossy().as_ref(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().count() >= 5);
    assert!(text.contains("pass"));
    let report = std::fs::read_to_string(&path).expect("report written");
    let v = strip_header(&report);
    assert_eq!(v["suite"], "spectrum");
    assert_eq!(v["seed"], 42);
    assert!(v["rows"].as_array().unwrap().iter().all(|row| row["pass"] == true));
}

#[test]
fn qfrac_depth_env_overrides_default_but_flags_win() {
    let spec = write_temp("env.json", r#"{"kind": "x"}"#);
    // env sets the depth when no flag is given
    let out = bin()
        .env("QFRAC_DEPTH", "10")
        .args(["op", "--op", "ileft", "--alpha", "0.5", "--q", "0.5", "--fn", &spec])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).lines().count(),
        12,
        "header plus depth+1 rows from the environment override"
    );
    // an explicit flag wins over the environment
    let out = bin()
        .env("QFRAC_DEPTH", "10")
        .args([
            "op", "--op", "ileft", "--alpha", "0.5", "--q", "0.5", "--depth", "6", "--fn", &spec,
        ])
        .output()
        .expect("binary runs");
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 8);
    // garbage in the variable is an input error
    let out = bin()
        .env("QFRAC_DEPTH", "many")
        .args(["op", "--op", "ileft", "--alpha", "0.5", "--q", "0.5", "--fn", &spec])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}
