use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bvdouble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bvdouble")).args(args).output().expect("binary runs")
}

fn write_config(dir: &TempDir, body: &str) -> String {
    let p = dir.path().join("config.json");
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const SMALL: &str = r#"{"dimension": 3, "mode_cutoff": 1, "samples": 2, "seed": 5}"#;

#[test]
fn passing_suite_exits_zero_and_writes_report() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, SMALL);
    let out = dir.path().join("r.json");
    let o = bvdouble(&["verify", "--suite", "courant", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["suite"], "courant");
    assert_eq!(v["passed"], true);
    assert_eq!(v["config"]["seed"], 5);
    assert_eq!(v["identities"].as_array().unwrap().len(), 9);
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, SMALL);
    let run = |name: &str| {
        let p = dir.path().join(name);
        let o = bvdouble(&["verify", "--suite", "cyclic", "--config", &cfg, "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(p).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn overrides_apply() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, SMALL);
    let o = bvdouble(&["verify", "--suite", "linf", "--config", &cfg, "--seed", "11", "--samples", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 11);
    assert_eq!(v["identities"][0]["samples"], 1);
}

#[test]
fn zero_samples_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, SMALL);
    let o = bvdouble(&["verify", "--suite", "courant", "--config", &cfg, "--samples", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("samples"));
}

#[test]
fn unknown_suite_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, SMALL);
    let o = bvdouble(&["verify", "--suite", "nope", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_configs() {
    let dir = TempDir::new().unwrap();
    for body in [r#"{"dimension": 0}"#, r#"{"metric": [[1, 0], [0, 1]]}"#, "not json", r#"{"metric": [[1,2,0],[3,1,0],[0,0,1]]}"#] {
        let cfg = write_config(&dir, body);
        let o = bvdouble(&["verify", "--suite", "courant", "--config", &cfg]);
        assert_eq!(o.status.code(), Some(2), "{body}");
    }
    let o = bvdouble(&["verify", "--suite", "courant", "--config", "/nonexistent/config.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!Path::new("/nonexistent/config.json").exists());
}

#[test]
fn irrational_volume_rejected_for_exterior_only() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, r#"{"metric": [[2,0,0],[0,1,0],[0,0,1]], "mode_cutoff": 1, "samples": 1}"#);
    assert_eq!(bvdouble(&["verify", "--suite", "exterior", "--config", &cfg]).status.code(), Some(2));
    assert_eq!(bvdouble(&["verify", "--suite", "linf", "--config", &cfg]).status.code(), Some(0));
}
