use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ewit::format::{load_matrix, load_matrix_field, save_matrix};
use ewit_core::linalg::hermitian_eig;
use ewit_core::states::{build_rho, maximally_entangled_projector};
use ewit_core::{Operator, StateParameter};

fn ewit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ewit"))
        .args(args)
        .env_remove("EWIT_SEED")
        .output()
        .expect("spawn ewit")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn half() -> StateParameter {
    StateParameter::new(0.5).unwrap()
}

// Cheap optimizer settings keep the subprocess tests fast.
const FAST: [&str; 4] = ["--starts", "8", "--oracle-points", "2000"];

#[test]
fn matrix_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.json");
    let rho = build_rho(half());
    save_matrix(&path, &rho).unwrap();
    let back = load_matrix(&path).unwrap();
    assert!(rho.max_abs_diff(&back).unwrap() <= 1e-15);
    assert_eq!(back, rho);
}

#[test]
fn dimension_mismatch_is_rejected_with_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"dimA": 2, "dimB": 3, "entries": [[[1.0, 0.0]]]}"#).unwrap();
    let err = load_matrix(&path).unwrap_err().to_string();
    assert!(err.contains("dimA") || err.contains("entries"), "{err}");

    let out = ewit(&["check-ppt", "--matrix", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn subtracted_fixture_has_golden_ratio_eigenvalue() {
    let m = load_matrix(&fixture("subtracted_pt_a0.5.json")).unwrap();
    let min = hermitian_eig(&m).unwrap().min_eigenvalue();
    assert!((min + 0.0618034).abs() < 1e-7, "{min}");
    assert!((min - half().subtraction_eigenvalue()).abs() < 1e-12);
}

#[test]
fn check_edge_reports_edge_evidence() {
    let out = ewit(&[&["check-edge", "--a", "0.5"][..], &FAST].concat());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"EdgeEvidence\""), "{text}");
}

#[test]
fn tampered_npt_state_fails_check_edge() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("npt.json");
    let mix = &(&build_rho(half()) * 0.5) + &(&maximally_entangled_projector(3) * 0.5);
    save_matrix(&path, &mix).unwrap();

    let out = ewit(&[&["check-edge", "--matrix", path.to_str().unwrap()][..], &FAST].concat());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"NotEdge\""));

    let out = ewit(&["check-ppt", "--matrix", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ewit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ewit(&["sweep", "--a", "0.9:0.1:0.1"]).status.code(), Some(2));
    assert_eq!(ewit(&["build-state", "--a", "1.5"]).status.code(), Some(2));
    assert_eq!(ewit(&["build-state", "--a", "0.5", "--format", "csv"]).status.code(), Some(2));
    let out = ewit(&["build-state", "--a", "0.5", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_file_round_trip_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let out = ewit(&[&["build-witness", "--a", "0.5", "--out", cert.to_str().unwrap()][..], &FAST].concat());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let w = load_matrix_field(&cert, "W").unwrap();
    assert!(w.is_hermitian(1e-12));
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(&cert).unwrap()).unwrap();
    let eps = json["epsilon"].as_f64().unwrap();
    assert!((json["trace_W_rho"].as_f64().unwrap() + eps).abs() < 1e-12);

    let out = ewit(&[&["eval-witness", "--witness", cert.to_str().unwrap(), "--a", "0.5", "--verify"][..], &FAST].concat());
    assert_eq!(out.status.code(), Some(0));

    // Overshooting ε produces an operator that goes negative on product states.
    let mut broken = w.clone();
    let shift = Operator::identity(3, 3);
    broken = &broken - &(&shift * 0.05);
    let bad = dir.path().join("bad.json");
    save_matrix(&bad, &broken).unwrap();
    let out = ewit(&[&["eval-witness", "--witness", bad.to_str().unwrap(), "--a", "0.5", "--verify"][..], &FAST].concat());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn outputs_are_byte_identical_for_the_same_seed() {
    let args = [&["build-witness", "--a", "0.3", "--seed", "7"][..], &FAST].concat();
    let first = ewit(&args);
    let second = ewit(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let sweep = [&["sweep", "--a", "0.2:0.4:0.1", "--format", "csv"][..], &FAST].concat();
    assert_eq!(ewit(&sweep).stdout, ewit(&sweep).stdout);
}

#[test]
fn env_seed_matches_flag() {
    let via_flag = ewit(&[&["build-witness", "--a", "0.3", "--seed", "11"][..], &FAST].concat());
    let via_env = Command::new(env!("CARGO_BIN_EXE_ewit"))
        .args([&["build-witness", "--a", "0.3"][..], &FAST].concat())
        .env("EWIT_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(via_flag.stdout, via_env.stdout);
    assert!(String::from_utf8_lossy(&via_env.stdout).contains("\"seed\": 11"));
}

#[test]
fn default_sweep_has_nine_rows_matching_closed_form() {
    let out = ewit(&[&["sweep", "--format", "csv"][..], &FAST].concat());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 9);
    for row in &rows {
        assert_eq!(&row[col("ppt")], "true");
        let neg: f64 = row[col("neg_eig")].parse().unwrap();
        let closed: f64 = row[col("neg_eig_closed_form")].parse().unwrap();
        assert!((neg - closed).abs() <= 1e-10);
    }
}
