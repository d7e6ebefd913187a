use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn riesz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riesz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn identity_sweep_passes_and_rejects_order_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_string_lossy().into_owned();
    let out = riesz(&["identities", "--alpha-max", "8", "--out", &out_dir]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&dir.path().join("identities.json"));
    let rows = report["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["pass"] == Value::Bool(true)));

    let out = riesz(&["identities", "--alpha-max", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn identity_output_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let p = d.path().to_string_lossy().into_owned();
        assert_eq!(
            code(&riesz(&["identities", "--alpha-max", "4", "--seed", "7", "--out", &p])),
            0
        );
    }
    let read = |d: &tempfile::TempDir| fs::read(d.path().join("identities.json")).unwrap();
    assert_eq!(read(&a), read(&b));
}

#[test]
fn heat_to_lambda_diag_on_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "heat.json",
        r#"{"m": 1, "kind": "heat", "coeffs": [{"s": 0, "value": "1/2 * pi^(-1/2)"}]}"#,
    );
    let out = riesz(&["transform", "--input", &input, "--direction", "heat2lambda-diag"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["kind"], "lambda-diag");
    assert_eq!(doc["coeffs"][0]["value"], "1 * pi^(-2/2)");
}

#[test]
fn lambda_to_omega_marks_the_log_slot_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "lambda.json",
        r#"{"m": 1, "kind": "lambda-diag", "coeffs": [
            {"s": 0, "value": "1 * pi^(-2/2)"}, {"s": 1, "value": "-1/2"}, {"s": 2, "value": "1/6"}]}"#,
    );
    let omega = dir.path().join("omega.json");
    let back = dir.path().join("back.json");
    let out = riesz(&[
        "transform",
        "--input",
        &input,
        "--to",
        "omega-diag",
        "--output",
        omega.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc = read_json(&omega);
    assert_eq!(doc["coeffs"][2]["value"], "undetermined");
    assert!(doc["coeffs"][2]["log"].is_string());

    let out = riesz(&[
        "transform",
        "--input",
        omega.to_str().unwrap(),
        "--to",
        "lambda-diag",
        "--output",
        back.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        read_json(&back),
        serde_json::from_str::<Value>(&fs::read_to_string(&input).unwrap()).unwrap()
    );
}

#[test]
fn consuming_an_undetermined_entry_fails_with_the_slot() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "bad.json",
        r#"{"m": 1, "kind": "lambda-diag", "coeffs": [{"s": 0, "value": "1"}, {"s": 1, "value": "undetermined"}]}"#,
    );
    let out = riesz(&["transform", "--input", &input, "--to", "heat"]);
    assert_eq!(code(&out), 1);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("s = 1"), "{msg}");
    assert!(msg.contains("undetermined"), "{msg}");
}

#[test]
fn malformed_coefficient_files_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.json", r#"{"m": 1, "kind": "bogus", "coeffs": []}"#);
    assert_eq!(code(&riesz(&["transform", "--input", &input, "--to", "heat"])), 2);
    let input = write(
        dir.path(),
        "ok.json",
        r#"{"m": 1, "kind": "heat", "coeffs": [{"s": 0, "value": "1"}]}"#,
    );
    assert_eq!(
        code(&riesz(&[
            "transform",
            "--input",
            &input,
            "--direction",
            "cylinder2heat"
        ])),
        2
    );
}

fn report(args: &[&str]) -> (i32, Value, tempfile::TempDir) {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_string_lossy().into_owned();
    let mut full = vec!["model-report"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &out_dir]);
    let out = riesz(&full);
    let json = read_json(&dir.path().join("report.json"));
    (code(&out), json, dir)
}

fn fitted(report: &Value, kind: &str, s: u64) -> f64 {
    let fit = report["fits"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["kind"] == kind)
        .unwrap();
    let c = fit["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["s"] == s)
        .unwrap();
    c["estimate"].as_f64().unwrap()
}

#[test]
fn circle_report_recovers_the_bernoulli_coefficient() {
    let (code, rep, dir) = report(&["--manifold", "circle", "--L", "1"]);
    assert_eq!(code, 0);
    assert_eq!(rep["pass"], true);
    let e2 = fitted(&rep, "cylinder", 2);
    assert!((e2 - std::f64::consts::PI / 12.0).abs() < 1e-3 * e2);
    let kernels = fs::read_to_string(dir.path().join("kernels.csv")).unwrap();
    assert!(kernels.starts_with("kind,t,value,closed_form"));
    let means = fs::read_to_string(dir.path().join("means.csv")).unwrap();
    assert!(means.lines().count() > 1);
}

#[test]
fn interval_report_recovers_the_boundary_term() {
    let (code, rep, _dir) = report(&["--manifold", "interval", "--L", "1"]);
    assert_eq!(code, 0);
    let b1 = fitted(&rep, "heat", 1);
    assert!((b1 + 0.5).abs() < 1e-6, "{b1}");
}

#[test]
fn half_line_off_diagonal_report_passes() {
    let (code, rep, _dir) = report(&[
        "--manifold",
        "half-line",
        "--observable",
        "off-diagonal",
        "--x",
        "1",
        "--y",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(rep["table_check"]["status"], "consistent");
}

#[test]
fn unknown_manifold_is_a_usage_error() {
    let out = riesz(&["model-report", "--manifold", "torus"]);
    assert_eq!(code(&out), 2);
    let out = riesz(&["model-report", "--manifold", "circle"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn config_file_drives_the_report_and_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"manifold": "circle", "L": 2.0, "observable": "trace", "seed": 3}"#,
    );
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let out_dir = dir.path().join(format!("run{i}"));
            let out = riesz(&["model-report", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
            assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
            fs::read(out_dir.join("report.json")).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let rep: Value = serde_json::from_slice(&runs[0]).unwrap();
    assert_eq!(rep["run"]["seed"], 3);
    assert_eq!(rep["run"]["config"]["observable"], "trace");
}
