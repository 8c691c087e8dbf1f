use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pstneps"));
    c.env_remove("PSTNEPS_SIZE_CAP");
    c
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn write_spec(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn build_reports_degree_and_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let q2 = write_spec(dir.path(), "q2.json", r#"{"factors":[2,2],"basis":[[1,0],[0,1]]}"#);
    let out = bin().args(["build"]).arg(&q2).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["degree"], 2);
    assert_eq!(v["report"]["eigenvalues"], serde_json::json!([-2, 0, 0, 2]));

    let k3 = write_spec(dir.path(), "k3.json", r#"{"factors":[3],"basis":[[1]]}"#);
    let v = json(&bin().arg("build").arg(&k3).output().unwrap());
    assert_eq!(v["report"]["eigenvalues"], serde_json::json!([-1, -1, 2]));
}

#[test]
fn malformed_row_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_spec(dir.path(), "bad.json", "{\n\"factors\": [3, 2],\n\"basis\": [\n[1, 1],\n[0, 0]\n]\n}");
    let out = bin().arg("build").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5") && err.contains("row 1"), "{err}");
}

#[test]
fn transition_k2_quarter_turn() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write_spec(dir.path(), "k2.json", r#"{"factors":[2],"basis":[[1]]}"#);
    let v = json(&bin().arg("transition").arg(&k2).args(["--time", "1/2", "--verify-paths"]).output().unwrap());
    let m = &v["report"]["matrix"];
    let close = |x: &Value, y: f64| (x.as_f64().unwrap() - y).abs() < 1e-12;
    assert!(close(&m[0][0][0], 0.0) && close(&m[0][1][1], -1.0) && close(&m[1][0][1], -1.0));

    let v = json(&bin().arg("transition").arg(&k2).args(["--time", "0/1"]).output().unwrap());
    assert_eq!(v["report"]["matrix"][0][0], serde_json::json!([1.0, 0.0]));
}

#[test]
fn analyze_hamming_and_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let h = write_spec(dir.path(), "h.json", r#"{"factors":[4,2,2],"basis":[[1,0,0],[0,1,0],[0,0,1]]}"#);
    let out = bin().arg("analyze").arg(&h).args(["--times", "1/2", "--no-timings"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let verified = v["report"]["verification"].as_array().unwrap();
    assert!(verified.iter().any(|x| x["rule"] == "corollary1c" && x["confirmed"] == true));

    let out = bin().arg("analyze").arg(data("example3.json")).args(["--times", "1/4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["pst_beyond_sufficient_conditions"], serde_json::json!(["1/4"]));
}

#[test]
fn analyze_complete_graph() {
    let dir = tempfile::tempdir().unwrap();
    let k7 = write_spec(dir.path(), "k7.json", r#"{"factors":[7],"basis":[[1]]}"#);
    let v = json(&bin().arg("analyze").arg(&k7).output().unwrap());
    assert!(v["report"]["events"].as_array().unwrap().is_empty());
    assert_eq!(v["report"]["predictions"][0]["period"], "2/7");
}

#[test]
fn output_is_deterministic_without_timings() {
    let run = || bin().arg("analyze").arg(data("example2.json")).args(["--times", "1/4,1/2", "--no-timings"]).output().unwrap().stdout;
    assert_eq!(run(), run());
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = bin().arg("certify").arg(data("example2.json")).args(["--times", "1/4", "--output"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["report"]["passed"], true);
}

#[test]
fn certify_default_grid_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let q4 = write_spec(dir.path(), "q4.json", r#"{"factors":[2,2,2,2],"basis":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#);
    let out = bin().arg("certify").arg(&q4).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["results"].as_array().unwrap().len(), 44);
    let out = bin().arg("certify").arg(&q4).args(["--times", "1/2", "--corrupt"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_cap_from_env_and_flag() {
    let out = bin().env("PSTNEPS_SIZE_CAP", "64").arg("build").arg(data("example2.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin().arg("build").arg(data("example2.json")).args(["--size-cap", "95"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn examples_subcommand_passes() {
    let out = bin().arg("examples").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let table = String::from_utf8_lossy(&out.stdout);
    assert_eq!(table.lines().count(), 19);
    assert!(!table.contains("FAIL"));
}

#[test]
fn bad_time_is_rejected() {
    let out = bin().args(["transition", "x.json", "--time", "1/0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
