use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn sobmul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sobmul")).args(args).output().expect("spawn sobmul")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const ALGEBRA_1D: &[&str] =
    &["--n", "1", "--domain", "rn", "--family", "W", "--s1", "1", "--p1", "2", "--s2", "1", "--p2", "2", "--s", "1", "--p", "2"];

#[test]
fn verify_algebra_case_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec!["verify"];
    args.extend_from_slice(ALGEBRA_1D);
    args.extend_from_slice(&["--samples", "200", "--seed", "7", "--out", dir.path().to_str().unwrap()]);
    let out = sobmul(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let report: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("empirical_boundedness.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert!(report["slope"].as_f64().unwrap() <= 0.05);
    assert_eq!(report["rows"].as_array().unwrap().len(), 4);
    let csv = fs::read_to_string(dir.path().join("empirical_boundedness.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn verify_is_reproducible_for_a_seed() {
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let mut args = vec!["--json", "verify"];
        args.extend_from_slice(ALGEBRA_1D);
        args.extend_from_slice(&["--samples", "30", "--seed", "3", "--out", dir.path().to_str().unwrap()]);
        assert_eq!(sobmul(&args).status.code(), Some(0));
        fs::read_to_string(dir.path().join("empirical_boundedness.csv")).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn verify_without_out_is_an_error() {
    let mut args = vec!["verify"];
    args.extend_from_slice(ALGEBRA_1D);
    let out = sobmul(&args);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--out"));
}

#[test]
fn verify_refuses_unproved_claims() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let disproved = [
        "verify", "--n", "1", "--domain", "rn", "--family", "W", "--s1", "1/2", "--p1", "4", "--s2", "1", "--p2", "2", "--s", "1/2",
        "--p", "2", "--out", out_dir,
    ];
    let undetermined = [
        "verify", "--n", "1", "--domain", "rn", "--family", "W", "--s1", "1/4", "--p1", "2", "--s2", "1/4", "--p2", "2", "--s", "1/4",
        "--p", "2", "--out", out_dir,
    ];
    for args in [&disproved[..], &undetermined[..]] {
        let out = sobmul(args);
        assert_eq!(out.status.code(), Some(1));
        assert!(stderr(&out).contains("refusing to verify unproved claim"), "{}", stderr(&out));
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn counterexample_defaults_recover_quarter_slope() {
    let dir = tempfile::tempdir().unwrap();
    let out = sobmul(&["--json", "counterexample", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((report["slope"].as_f64().unwrap() - 0.25).abs() <= 0.02);
    assert_eq!(report["expected"]["value"], "1/4");
    assert!(dir.path().join("counterexample_growth.json").exists());
    assert!(dir.path().join("counterexample_growth.csv").exists());
}

#[test]
fn counterexample_without_gap_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = sobmul(&["counterexample", "--p1", "2", "--p", "2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no contradiction expected"));
}

#[test]
fn counterexample_needs_three_points() {
    let dir = tempfile::tempdir().unwrap();
    let out = sobmul(&["counterexample", "--Nmax", "2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn counterexample_grid_too_small() {
    let dir = tempfile::tempdir().unwrap();
    let out = sobmul(&["counterexample", "--Nmax", "64", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("grid too small"), "{}", stderr(&out));
}
