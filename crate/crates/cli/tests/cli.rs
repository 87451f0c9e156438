use std::path::Path;
use std::process::{Command, Output};

use pwave_cli::error::exit;
use serde_json::Value;

fn pwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwave")).args(args).output().unwrap()
}

fn run_to(args: &[&str], out: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push("--output");
    all.push(out.to_str().unwrap());
    pwave(&all)
}

#[test]
fn verify_algebra_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.json");
    let o = run_to(&["verify-algebra"], &out);
    assert_eq!(o.status.code(), Some(exit::SUCCESS));
    let doc: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["rng_algorithm"], "ChaCha8");
    assert!(doc["max_residual"].as_f64().unwrap() < 1e-12);
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout.lines().count(), doc["checks"].as_array().unwrap().len());
}

#[test]
fn solve_gap_csv_row() {
    let o = pwave(&[
        "solve-gap",
        "--branch",
        "bw",
        "--g",
        "0.25",
        "--omega-c",
        "1",
        "--T",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(exit::SUCCESS));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "T,delta0,residual,iterations,branch,g,omega_c");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let delta0: f64 = row[1].parse().unwrap();
    assert!((delta0 - 1.0 / 4f64.sinh()).abs() < 1e-10);
    assert_eq!(row[4], "bw");
    assert!(lines.next().is_none());
}

#[test]
fn sweep_rows_are_monotone() {
    let o = pwave(&["sweep-temperature", "--n", "20"]);
    assert_eq!(o.status.code(), Some(exit::SUCCESS));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(!text.contains('\r'));
    let gaps: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(gaps.len(), 20);
    assert!(gaps.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(*gaps.last().unwrap(), 0.0);
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"command": "solve-gap", "g": 0.3, "format": "json"}"#).unwrap();
    let out = dir.path().join("o.json");
    let o = run_to(&["--config", cfg.to_str().unwrap(), "--g", "0.2"], &out);
    assert_eq!(o.status.code(), Some(exit::SUCCESS));
    let doc: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(doc["command"], "solve-gap");
    assert_eq!(doc["solution"]["g"], 0.2);
}

#[test]
fn exit_codes_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"command": "solve-gap", "coupling": 0.3}"#).unwrap();
    assert_eq!(
        pwave(&["--config", bad.to_str().unwrap()]).status.code(),
        Some(exit::CONFIG)
    );
    assert_eq!(pwave(&["solve-gap", "--g", "2"]).status.code(), Some(exit::CONFIG));
    let missing = dir.path().join("missing.json");
    assert_eq!(
        pwave(&["--config", missing.to_str().unwrap()]).status.code(),
        Some(exit::IO)
    );
    let unwritable = dir.path().join("no/such/dir/out.csv");
    assert_eq!(run_to(&["verify-algebra"], &unwritable).status.code(), Some(exit::IO));
    // the stated Yangian coefficients do not hold for μ₂ ≠ μ₁
    let out = dir.path().join("y.json");
    assert_eq!(run_to(&["yangian-check"], &out).status.code(), Some(exit::TOLERANCE));
    assert!(out.exists());
}

#[test]
fn degenerate_yangian_passes() {
    let o = pwave(&["yangian-check", "--mu1", "0.5", "--mu2", "0.5", "--h", "0", "--n", "40"]);
    assert_eq!(o.status.code(), Some(exit::SUCCESS));
}

#[test]
fn field_sweep_reports_every_point() {
    let o = pwave(&["field-sweep", "--n", "20", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(exit::SUCCESS));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 21);
    for l in text.lines().skip(1) {
        let eps: f64 = l.split(',').next().unwrap().parse().unwrap();
        assert!(eps.abs() >= 0.1);
    }
}

#[test]
fn seeds_change_random_suites() {
    let a = pwave(&["dipole-check", "--seed", "1", "--n", "5"]).stdout;
    let b = pwave(&["dipole-check", "--seed", "2", "--n", "5"]).stdout;
    let c = pwave(&["dipole-check", "--seed", "1", "--n", "5"]).stdout;
    assert_ne!(a, b);
    assert_eq!(a, c);
}
