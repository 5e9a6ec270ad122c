use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const C1: &str = r#"{"k": 6, "facets": [[1,2,3],[1,3,4],[1,4,5],[1,5,6],[1,2,6],[2,3,4],[3,4,5],[4,5,6],[2,5,6],[2,3,6]]}"#;
const P2: &str = r#"{"k": 6, "facets": [[1,2,3],[1,3,4],[1,4,5],[1,5,6],[1,2,6],[2,3,5],[3,4,6],[2,4,5],[3,5,6],[2,4,6]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stosskit")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn reduce_c1_writes_a_certificate_that_verifies() {
    let dir = TempDir::new().unwrap();
    let c1 = file(&dir, "c1.json", C1);
    let out = path(&dir, "cert.json");
    let o = run(&["reduce", "--complex", &c1, "--side", "Q", "--out", &out]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(Path::new(&out).exists());
    let o = run(&["verify", "--certificate", &out, "--complex", &c1]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("spdim_Q <= 3"));
}

#[test]
fn reduce_p2_quotient_has_no_valid_deletion() {
    let dir = TempDir::new().unwrap();
    let p2 = file(&dir, "p2.json", P2);
    let o = run(&["reduce", "--complex", &p2, "--side", "Q", "--target", "3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("no valid deletion"));
}

#[test]
fn reduce_p2_ideal_side_succeeds() {
    let dir = TempDir::new().unwrap();
    let p2 = file(&dir, "p2.json", P2);
    let o = run(&["reduce", "--complex", &p2, "--side", "I"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn certify_maximal_ideal_quotient_at_depth_one_is_infeasible() {
    let dir = TempDir::new().unwrap();
    let id = file(&dir, "m.json", r#"{"n": 3, "generators": [[1,0,0],[0,1,0],[0,0,1]]}"#);
    let o = run(&["certify", "--ideal", &id, "--side", "Q", "--depth", "1"]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn certify_emits_a_decomposition_that_verifies() {
    let dir = TempDir::new().unwrap();
    let id = file(&dir, "xy.json", r#"{"n": 2, "generators": [[1,0],[0,1]]}"#);
    let dec = path(&dir, "dec.json");
    let lp = path(&dir, "sys.lp");
    let o = run(&["certify", "--ideal", &id, "--side", "I", "--depth", "1", "--export-lp", &lp, "--emit-decomposition", &dec]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(fs::read_to_string(&lp).unwrap().contains("Subject To"));
    let o = run(&["verify", "--decomposition", &dec, "--ideal", &id]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["certify", "--ideal", &id, "--side", "I"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("sdepth = 1"));
}

#[test]
fn enumerate_trees_on_five_vertices() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "manifest.json");
    let o = run(&["enumerate", "--vertices", "5", "--dim", "1", "--out", &out]);
    assert_eq!(code(&o), 0);
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(manifest["count"], 3);
}

#[test]
fn unsupported_enumeration_is_a_usage_error() {
    assert_eq!(code(&run(&["enumerate", "--vertices", "8", "--dim", "3"])), 2);
}

#[test]
fn bad_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.json", "{\"k\": 3}");
    assert_eq!(code(&run(&["reduce", "--complex", &bad])), 2);
    assert_eq!(code(&run(&["reduce"])), 2);
}

#[test]
fn reproduce_trees() {
    let dir = TempDir::new().unwrap();
    let o = run(&["reproduce", "trees", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(dir.path().join("report-trees.json").exists());
    assert!(!stdout(&o).contains("[FAIL]"));
}
