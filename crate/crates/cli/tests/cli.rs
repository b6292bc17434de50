use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_osalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("osalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn char_poly_of_three_concurrent_lines() {
    let o = run(&["char-poly", corpus("central3.json").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "t^2 - 3t + 2\n");
}

#[test]
fn homology_betti_of_generic_lines() {
    let o = run(&["betti", "--steps", "4", "--format", "json", corpus("generic3.json").to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "betti");
    assert_eq!(v["payload"]["totals"], serde_json::json!([3, 6, 10, 15, 21]));
    assert_eq!(v["payload"]["predicted"], v["payload"]["totals"]);
}

#[test]
fn engines_agree() {
    let f = corpus("central4.json");
    let a = run(&["betti", "--steps", "3", "--engine", "iterated", f.to_str().unwrap()]);
    let b = run(&["betti", "--steps", "3", "--engine", "tor", f.to_str().unwrap()]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn output_is_deterministic() {
    let f = corpus("central3.json");
    let args = ["local-system", "--seed", "11", "--samples", "5", "--format", "json", f.to_str().unwrap()];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let f = corpus("central3.json");
    let f = f.to_str().unwrap();
    assert_eq!(run(&["betti", "--steps", "0", f]).status.code(), Some(2));
    assert_eq!(run(&["char-poly", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["local-system", f]).status.code(), Some(3));
    assert_eq!(run(&["sf-betti", corpus("quadrics.json").to_str().unwrap()]).status.code(), Some(3));
    let o = run(&["check-linear", "--module", "ideal", corpus("nongeneric4.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not linear"));
}

#[test]
fn prime_field_override() {
    let o = run(&["--field", "Fp:5", "--format", "json", "char-poly", corpus("central3.json").to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field"], "Fp:5");
    assert_eq!(run(&["--field", "Fp:6", "char-poly", corpus("central3.json").to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn alexander_dual_is_involutive() {
    let p = temp_file("path.json", r#"{"n":4,"facets":[[1,2],[2,3],[3,4]]}"#);
    let o = run(&["--format", "json", "alexander-dual", p.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["payload"]["facets"], serde_json::json!([[1, 3], [2, 3], [2, 4]]));
    let q = temp_file("dual.json", &v["payload"].to_string());
    let w: Value = serde_json::from_slice(&run(&["--format", "json", "alexander-dual", q.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(w["payload"]["facets"], serde_json::json!([[1, 2], [2, 3], [3, 4]]));
}

#[test]
fn square_free_identity_on_a_path_ideal() {
    let p = temp_file("path_ideal.json", r#"{"kind":"ideal","n":3,"generators":["e1e2","e2e3"]}"#);
    let o = run(&["--format", "json", "sf-betti", p.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["payload"]["identity"], true);
}

#[test]
fn groebner_of_quadrics() {
    let o = run(&["groebner", corpus("quadrics.json").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("initial ideal: (bc, ac, ab)\n"));
}

#[test]
fn verify_single_suite() {
    let o = run(&["verify", "--suite", "socle", corpus("").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(run(&["verify", "--suite", "nope", corpus("").to_str().unwrap()]).status.code(), Some(2));
}
