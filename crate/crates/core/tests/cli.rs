use std::path::{Path, PathBuf};

use toroidal::cli::{cmd_oracle, cmd_run, cmd_verify, read_trace, ExitStatus, Format, RunStatus};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(path: &Path, out: Option<&Path>, max_steps: Option<usize>, format: Format) -> (ExitStatus, String, String) {
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = cmd_run(path, out, max_steps, format, &mut o, &mut e);
    (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
}

fn oracle(name: &str, depth: usize) -> ExitStatus {
    cmd_oracle(&fixture(name), depth, Format::Json, &mut Vec::new(), &mut Vec::new())
}

#[test]
fn euclid_runs_with_decreasing_omega() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let (code, _, _) = run(&fixture("euclid.json"), Some(&out), None, Format::Json);
    assert_eq!(code, ExitStatus::Ok);
    let doc = read_trace(&out).unwrap();
    let values: Vec<String> = doc.canonical.rounds[0]
        .trace
        .steps
        .iter()
        .map(|s| s.value.to_string())
        .collect();
    assert_eq!(values, ["6", "2", "1"]);
    assert!(doc.canonical.rounds[0].trace.terminal_report.as_ref().unwrap().is_empty());
}

#[test]
fn smooth_takes_one_step() {
    let (code, out, _) = run(&fixture("smooth.json"), None, None, Format::Json);
    assert_eq!(code, ExitStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["canonical"]["summary"]["steps"], 1);
}

#[test]
fn malformed_reports_field_path() {
    let (code, out, err) = run(&fixture("malformed.json"), None, None, Format::Json);
    assert_eq!(code, ExitStatus::Schema);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "schema_error");
    assert_eq!(v["path"], "presentations[0]");
    assert!(v["message"].as_str().unwrap().contains("u[1]"));
    assert!(err.contains("presentations[0]"));
}

#[test]
fn missing_file_is_io_error() {
    let (code, _, _) = run(Path::new("/nonexistent/scenario.json"), None, None, Format::Json);
    assert_eq!(code, ExitStatus::Io);
}

#[test]
fn budget_exceeded_keeps_partial_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let (code, report, _) = run(&fixture("euclid.json"), Some(&out), Some(1), Format::Json);
    assert_eq!(code, ExitStatus::Budget);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["status"], "budget_exceeded");
    let doc = read_trace(&out).unwrap();
    assert_eq!(doc.canonical.status, RunStatus::BudgetExceeded);
    assert_eq!(doc.canonical.rounds[0].trace.steps.len(), 1);
    assert_eq!(
        cmd_verify(&out, Format::Json, &mut Vec::new(), &mut Vec::new()),
        ExitStatus::Verify
    );
}

#[test]
fn text_format_renders_steps() {
    let (code, out, _) = run(&fixture("euclid.json"), None, None, Format::Text);
    assert_eq!(code, ExitStatus::Ok);
    assert!(out.contains("ω = 6"));
    assert!(out.contains("locus empty after 3 step(s)"));
    assert!(out.contains("T3"));
}

#[test]
fn oracle_exit_codes() {
    assert_eq!(oracle("euclid.json", 32), ExitStatus::Ok);
    assert_eq!(oracle("euclid.json", 1), ExitStatus::Budget);
    assert_eq!(oracle("smooth.json", 2), ExitStatus::Ok);
    assert_eq!(oracle("malformed.json", 2), ExitStatus::Schema);
}

#[test]
fn verify_rejects_non_trace() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.json");
    std::fs::write(&p, "{\"canonical\": {}}").unwrap();
    assert_eq!(cmd_verify(&p, Format::Text, &mut Vec::new(), &mut Vec::new()), ExitStatus::Verify);
    std::fs::write(&p, "not json").unwrap();
    assert_eq!(cmd_verify(&p, Format::Text, &mut Vec::new(), &mut Vec::new()), ExitStatus::Schema);
}

#[test]
fn binary_round_trip() {
    let bin = env!("CARGO_BIN_EXE_toroidal");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let status = std::process::Command::new(bin)
        .args(["run", fixture("three_point.json").to_str().unwrap(), "-o", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = std::process::Command::new(bin)
        .args(["verify", out.to_str().unwrap(), "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&status.stdout).starts_with("valid"));
    let status = std::process::Command::new(bin)
        .args(["run", fixture("malformed.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
}
