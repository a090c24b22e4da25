use std::path::Path;
use std::process::{Command, Output};

fn lefschetz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn full_run_on_hyperplane_pencil_passes() {
    let out = lefschetz(&["--pencil", "builtin:hyperplane-p3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    let ids = report["identities"].as_array().unwrap();
    assert!(!ids.is_empty());
    assert!(ids.iter().all(|i| i["status"] == "pass"));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for f in [&a, &b] {
        assert_eq!(lefschetz(&["--pencil", "builtin:p1cubed", "--out", path(f)]).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn failed_identity_exits_one_with_witness() {
    let out = lefschetz(&["--pencil", "builtin:hyperplane-p3", "--suite", "prinduccion", "--j-max", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("on H^6"), "{stderr}");
    let report = stdout_json(&out);
    let failed: Vec<_> = report["identities"].as_array().unwrap().iter().filter(|i| i["status"] == "fail").collect();
    assert!(failed.iter().any(|f| f["witness"]["location"].as_str().unwrap().starts_with("H^6")));
}

#[test]
fn broken_model_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    let good = lefschetz(&["--model", "builtin:p2", "--export"]);
    let mut doc: serde_json::Value = serde_json::from_slice(&good.stdout).unwrap();
    doc["trace"] = serde_json::json!(["0"]);
    std::fs::write(&file, doc.to_string()).unwrap();
    let out = lefschetz(&["--model", path(&file), "--suite", "sl2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("validation failed: pairing-nondegenerate"));
}

#[test]
fn malformed_file_and_bad_arguments_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("junk.json");
    std::fs::write(&file, "{ not json").unwrap();
    let out = lefschetz(&["--model", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("junk.json:1:"));

    let out = lefschetz(&["--pencil", "builtin:p1cubed", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("known suites"));

    assert_eq!(lefschetz(&["--model", "builtin:p3", "--suite", "leray"]).status.code(), Some(2));
    assert_eq!(lefschetz(&["--model", "builtin:p3", "--pencil", "builtin:p1cubed"]).status.code(), Some(2));
}

#[test]
fn emit_lambda_on_projective_space() {
    let out = lefschetz(&["--model", "builtin:p3", "--emit", "Lambda"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["operator"], "Lambda");
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 3);
    assert!(blocks.iter().all(|b| b["rows"] == serde_json::json!([["1"]])));
    assert_eq!(lefschetz(&["--model", "builtin:p3", "--emit", "nope"]).status.code(), Some(2));
}

#[test]
fn exported_pencil_reloads_with_identical_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pencil.json");
    let export = lefschetz(&["--pencil", "builtin:quadric-p3", "--export", "--out", path(&file)]);
    assert_eq!(export.status.code(), Some(0));
    let from_file = lefschetz(&["--pencil", path(&file), "--suite", "leray,mainthm"]);
    let builtin = lefschetz(&["--pencil", "builtin:quadric-p3", "--suite", "leray,mainthm"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, builtin.stdout);
}

#[test]
fn bare_chern_run() {
    let out = lefschetz(&["--suite", "chern", "--chern", "1,4,6,4", "--deg-x", "1", "--betti", "1,0,1,0,1,0,1", "--d-range", "1..3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["parameters"]["chi"], "-2*d^3 + 4*d^2");
    assert_eq!(lefschetz(&["--suite", "chern", "--chern", "2,1"]).status.code(), Some(2));
}
