//! Black-box tests of the binary: flag validation, exit codes, output
//! formats, and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pauli-cone"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_family_flags() {
    let out = run(&["check", "--family", "depol:1/3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("cp = true"));
    assert!(text.contains("ppt = true"));
    assert!(text.contains("decomposable = true"));
}

#[test]
fn check_tensor_square() {
    let out = run(&["check", "--xyz", "1,1,1", "--tensor-square"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("tensor_square_positive = true"));
    assert!(text.contains("tensor_square_decomposable = true"));
}

#[test]
fn check_mu_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mu.json");
    std::fs::write(&path, r#"{"n":1,"coeffs":["1","1","1","-1"]}"#).unwrap();
    let out = run(&["check", "--mu", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("cocp = true"));
}

#[test]
fn check_requires_one_source() {
    let out = run(&["check", "--xyz", "1,1,1", "--family", "depol:1/2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"n":1,"coeffs":["1"]}"#).unwrap();
    let out = run(&["check", "--mu", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check", "--mu", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["check", "--family", "bogus:1/2"]);
    assert_eq!(out.status.code(), Some(2));
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn rays_census_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let out = run(&["rays", "--n", "1", "--out", p1.to_str().unwrap(), "--orbits"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("rays = 6"));
    let out = run(&["rays", "--n", "1", "--out", p2.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(read(&p1), read(&p2));
    let parsed: serde_json::Value = serde_json::from_str(&read(&p1)).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 6);
    assert!(parsed[0]["p"].is_array());
    assert!(parsed[0]["q"].is_array());
    assert!(parsed[0]["orbit"].is_string());
}

#[test]
fn rays_rejects_unsupported_order() {
    let out = run(&["rays", "--n", "3", "--out", "/dev/null"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_tables_suite_passes() {
    let out = run(&["verify", "--suite", "tables"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn scan_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("theta.csv");
    let svg = dir.path().join("theta.svg");
    let out = run(&[
        "scan", "--region", "theta", "--step", "1/4",
        "--csv", csv.to_str().unwrap(), "--svg", svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = read(&csv);
    assert!(text.starts_with("a,t,positive,decomposable,cp,cocp,ppt,violation\n"));
    assert_eq!(text.lines().count(), 1 + 25);
    let svg_text = read(&svg);
    assert!(svg_text.starts_with("<svg"));
    assert!(svg_text.contains("#808080"));
}

#[test]
fn scan_rejects_bad_step() {
    let out = run(&["scan", "--region", "theta", "--step", "1/2", "--csv", "/dev/null"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["scan", "--region", "theta", "--step", "0", "--csv", "/dev/null"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_starry_covers_nine_slices() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("starry.csv");
    let out = run(&["scan", "--region", "starry", "--step", "1/4", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let text = read(&csv);
    assert!(text.starts_with("z,x,y,positive,decomposable\n"));
    assert_eq!(text.lines().count(), 1 + 9 * 9 * 9);
}

#[test]
fn tables_emit_expected_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let out = run(&["tables", "--which", "kostka", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let text = read(&csv);
    assert!(text.contains("4310,0,1,1,2,2,4,5,7"));
    let out = run(&["tables", "--which", "counts", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(read(&csv).contains("2222,1,4,6,12,12,28,48,90"));
    let out = run(&["tables", "--which", "classes", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(read(&csv).contains("2222,1,1,1,1,1,2,2,2"));
}

#[test]
fn io_failure_exits_3() {
    let out = run(&["tables", "--which", "kostka", "--csv", "/nonexistent-dir/t.csv"]);
    assert_eq!(out.status.code(), Some(3));
}
