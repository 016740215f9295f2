use std::process::Command;

use serde_json::Value;
use verlinde_core::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["verlinde", "--no-cache"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn roots_info_g2() {
    let v = json(&["roots", "info", "G2"]);
    assert_eq!(v["marks"], serde_json::json!([3, 2]));
    assert_eq!(v["root_norms"], serde_json::json!(["2/3", "2"]));
    assert_eq!(v["dual_coxeter"], 4);
    assert!(v["reference"].is_string());
}

#[test]
fn depth_a1() {
    let v = json(&["depth", "A1", "3"]);
    assert_eq!((v["depth"].as_u64(), v["lower"].as_u64(), v["upper"].as_u64()), (Some(3), Some(3), Some(3)));
    assert_eq!(v["mode"], "level");
    let c = json(&["depth", "A1", "3", "--classical"]);
    assert_eq!(c["depth"], 3);
    assert_eq!(c["mode"], "classical");
}

#[test]
fn fusion_and_tables() {
    let v = json(&["fusion", "A1", "2", "2", "2"]);
    assert_eq!(v["terms"], serde_json::json!({"0": 1}));
    let t = json(&["fusion-table", "A1", "1"]);
    assert_eq!(t["tensor"], serde_json::json!([[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]]));
    let s = json(&["smatrix", "A2", "2"]);
    assert_eq!(s["verlinde_agrees"], true);
    let tensor = json(&["tensor", "A2", "1,0", "0,1", "--oracle"]);
    assert_eq!(tensor["terms"], serde_json::json!({"0,0": 1, "1,1": 1}));
    assert_eq!(tensor["dimension"], "9");
}

#[test]
fn bk_and_lp() {
    let b = json(&["bk", "A2", "1"]);
    assert_eq!(b["weights"], serde_json::json!(["0,0", "0,1", "1,0"]));
    assert_eq!(json(&["lpmax", "G2", "2"])["value"], "3");
    assert_eq!(json(&["lpmax", "B3", "1"])["value"], "3/2");
}

#[test]
fn tower_and_trace() {
    let t = json(&["tower", "A1", "2", "--floors", "3"]);
    assert_eq!(t["floors"][3]["dims"], serde_json::json!(["4", "5", "3"]));
    assert_eq!(t["stationary_from"], 2);
    let (code, dot, _) = call(&["tower", "A1", "1", "--floors", "2", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph bratteli {"));
    let tr = json(&["trace", "A1", "1", "--floor", "1"]);
    assert_eq!(tr["pf_eigenvalue"], 2.0);
    assert_eq!(tr["identity_trace"], 1.0);
}

#[test]
fn verify_passes_and_fails_honestly() {
    let (code, out, _) = call(&["verify", "--types", "A1,G2", "--levels", "1..3"]);
    assert_eq!(code, 0, "{out}");
    // the published E8 lower bound ⌈4l/15⌉ exceeds d(1) = 0
    let (code, out, _) = call(&["verify", "--types", "E8", "--levels", "1..2"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    let failing: Vec<_> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| (r["level"].as_u64().unwrap(), r["check"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(failing, vec![(1, "depth lower bound".to_string())]);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["verify", "--types", "", "--levels", "1..2"]).0, 2);
    assert_eq!(call(&["verify", "--types", "A1", "--levels", "3..1"]).0, 2);
    assert_eq!(call(&["depth", "X9", "1"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    let (code, _, err) = call(&["fusion", "A1", "2", "3", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("not in D_2"));
    assert_eq!(call(&["depth", "A1", "-1"]).0, 1);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["fusion-table", "G2", "3"][..],
        &["smatrix", "B2", "2"],
        &["tower", "A2", "2", "--floors", "5"],
        &["verify", "--types", "B2", "--levels", "1..2"],
    ] {
        let a = call(args);
        let b = call(args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn cache_file_via_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested").join("chars.txt");
    let bin = env!("CARGO_BIN_EXE_verlinde");
    let go = || {
        Command::new(bin)
            .args(["depth", "B3", "2"])
            .env("VERLINDE_CACHE", &path)
            .output()
            .unwrap()
    };
    let first = go();
    assert!(first.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("verlinde-character-cache 1\n"));
    assert!(text.contains("char B3 3 "));
    let second = go();
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "weyl_cap = 10\n").unwrap();
    let (code, _, err) = call(&["--config", cfg.to_str().unwrap(), "smatrix", "B3", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("exceeds cap 10"), "{err}");
    std::fs::write(&cfg, "weyl_cap = 0\n").unwrap();
    assert_eq!(call(&["--config", cfg.to_str().unwrap(), "bk", "A1", "1"]).0, 2);
}
