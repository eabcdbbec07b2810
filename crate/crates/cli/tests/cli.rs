use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn ncdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncdiv"))
        .args(args)
        .env_remove("NCDIV_DATA")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn table1_passes() {
    let o = ncdiv(&["table1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("delta_2(a, b) = -ab (x) 1\n"));
    assert!(out.contains("delta_2(tu, stuvu^-1t^-1) = 0\n"));
    assert!(out.contains("spot-checked on the sample"));
    assert!(out.ends_with("RESULT PASS\n"));
}

#[test]
fn table1_json_is_well_formed() {
    let o = ncdiv(&["--format", "json", "table1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 13);
}

#[test]
fn delta_prints_one_term_per_line() {
    let o = ncdiv(&["delta", "--words", "ab", "ab"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "# delta --words ab ab\n# delta_2(ab, ab)\n-2 ab (x) ab\n2 abab (x) 1\n");
}

#[test]
fn delta_zero_prints_zero() {
    let o = ncdiv(&["delta", "--words", "tu", "stuvu^-1t^-1"]);
    assert!(stdout(&o).ends_with("\n0\n"));
}

#[test]
fn delta_with_pairing_matches_lk() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", r#"{"skew": true, "values": {"u,v": "1", "u,w": "-1/2"}}"#);
    let d = ncdiv(&["delta", "--pairing", s(&p), "--generators", "u,v,w", "--words", "uvw", "vwu"]);
    let r = ncdiv(&["ribbon", "--lk", "2", "--pairing", s(&p), "--generators", "u,v,w", "--words", "uvw", "vwu"]);
    let body = |o: &Output| stdout(o).lines().skip(2).map(String::from).collect::<Vec<_>>();
    // (−1)² δ₂ = L₂
    assert_eq!(body(&d), body(&r));
    assert!(!body(&d).is_empty());
}

#[test]
fn divk_default_and_free() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", r#"{"kind": "nabla_W"}"#);
    let f = write(&dir, "f.json", r#"{"name": "f", "values": {"u": "uv"}}"#);
    let g = write(&dir, "g.json", r#"{"name": "g", "values": {"v": "u"}}"#);
    let o = ncdiv(&["divk", "--connection", s(&c), "--action", "default", "--derivations", s(&f), s(&g), "--generators", "u,v"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# Div_2(f, g)\n"));
    // c(f)(du) = −d(f(u)) = −du, so Div₁(f) = −|1|⊗|1|
    let e = write(&dir, "e.json", r#"{"values": {"u": "u"}}"#);
    let o = ncdiv(&["divk", "--connection", s(&c), "--derivations", s(&e), "--generators", "u,v"]);
    assert!(stdout(&o).ends_with("-1 1 (x) 1\n"), "{}", stdout(&o));
    // ω = du·v and f(u) = u give Tr i_f ω = |uv|
    let fm = write(&dir, "fm.json", r#"{"kind": "free_module", "rank": 1, "omega": [["d(u) v"]]}"#);
    let o = ncdiv(&["divk", "--connection", s(&fm), "--derivations", s(&e), "--generators", "u,v"]);
    assert!(stdout(&o).ends_with("\n1 uv\n"), "{}", stdout(&o));
}

#[test]
fn verify_examples() {
    let o = ncdiv(&["verify", "ribbon-equivalence", "--k", "2", "--trials", "100", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("RESULT PASS\n"));
    let o = ncdiv(&["verify", "cocycle", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[identically zero]"));
    let o = ncdiv(&["verify", "fuks", "--k", "3", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_is_byte_stable() {
    let a = ncdiv(&["--format", "json", "verify", "mc", "--trials", "5", "--seed", "9"]);
    let b = ncdiv(&["verify", "mc", "--trials", "5", "--seed", "9", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 9);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ncdiv(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(ncdiv(&["verify", "mc", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(ncdiv(&["delta", "--words", "q"]).status.code(), Some(2));
    assert_eq!(ncdiv(&["delta", "--words", "st +"]).status.code(), Some(2));
    assert_eq!(ncdiv(&["bogus"]).status.code(), Some(2));
    assert_eq!(ncdiv(&["verify", "cocycle", "--connection", "free_module"]).status.code(), Some(2));
}

#[test]
fn missing_data_dir_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ncdiv"))
        .arg("table1")
        .env("NCDIV_DATA", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("configuration error"));
}

#[test]
fn data_dir_override_is_used() {
    let dir = TempDir::new().unwrap();
    let surface = ncdiv(&["surface", "--genus", "2", "--boundary", "4"]);
    std::fs::write(dir.path().join("surface_g2_n4.json"), &surface.stdout).unwrap();
    let table = r#"{"surface": "g2n4", "rows": [
        {"x": "a", "y": "b", "expected": "ab (x) 1", "disjoint": true}
    ]}"#;
    std::fs::write(dir.path().join("table1.json"), table).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ncdiv"))
        .arg("table1")
        .env("NCDIV_DATA", dir.path())
        .output()
        .unwrap();
    // the golden value has the wrong sign, so the check fails
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample: delta_2(a, b): expected ab (x) 1; got -ab (x) 1"));
}

#[test]
fn graph_info_reports_validity() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "g.json", r#"{"half_edges": [1, 2], "tau1": [[1, 2]], "tau0": [[1], [2]]}"#);
    let o = ncdiv(&["graph-info", "--graph", s(&good)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("boundaries: 1\n"));
    let bad = write(&dir, "b.json", r#"{"half_edges": [1, 2], "tau1": [[1, 2]], "tau0": [[1]]}"#);
    let o = ncdiv(&["--format", "json", "graph-info", "--graph", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], false);
}

#[test]
fn ribbon_graph_file_flip_negates() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", r#"{"skew": true, "values": {"u,v": "1"}}"#);
    let a = write(&dir, "a.json", r#"{"half_edges": [1, 2], "tau1": [[1, 2]], "tau0": [[1], [2]]}"#);
    let b = write(&dir, "b.json", r#"{"half_edges": [1, 2], "tau1": [[2, 1]], "tau0": [[1], [2]]}"#);
    let run = |g: &PathBuf| {
        stdout(&ncdiv(&["ribbon", "--graph", s(g), "--pairing", s(&p), "--generators", "u,v", "--words", "uv", "uuv"]))
            .lines()
            .skip(2)
            .map(String::from)
            .collect::<Vec<_>>()
    };
    assert_eq!(run(&a), vec!["-1 uuv"]);
    assert_eq!(run(&b), vec!["1 uuv"]);
}

#[test]
fn experiment_runs_and_passes() {
    let o = ncdiv(&["experiment-symmetric-connection", "--frames", "2", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("frame 0 (standard) = "));
    assert!(out.contains("frames with uniformly (anti)symmetric values = "));
}
