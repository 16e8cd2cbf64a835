//! End-to-end tests of the binary: exit codes, precedence, output formats.

use std::fs;
use std::process::{Command, Output};

use phase_cavity_cli::emit::parse_csv;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_phase-cavity"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn missing_mode_is_a_usage_error() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_preset_is_a_usage_error() {
    let out = run(&["preset", "fig9z"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("fig9z"));
}

#[test]
fn out_of_domain_flag_is_a_config_error() {
    let out = run(&["point", "--gamma12", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("gamma12"));
}

#[test]
fn point_at_opposite_phase_hits_the_transmitter_identity() {
    let out = run(&["point", "--phi2", "3.141592653589793"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_csv(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 1);
    let vals = rows[0].values.unwrap();
    assert!(vals[0].abs() <= 1e-12, "i_c = {}", vals[0]);
    assert!((vals[1] - 1.0).abs() <= 1e-12);
    assert!((vals[2] - 1.0).abs() <= 1e-12);
    assert!((vals[3] - 2.0).abs() <= 1e-12);
}

#[test]
fn flag_overrides_config_file() {
    let dir = std::env::temp_dir().join("phase-cavity-test-config");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    fs::write(&path, "phi2 = 3.141592653589793\ndelta_p = 2.0 # comment\n").unwrap();

    let out = run(&[
        "point",
        "--config",
        path.to_str().unwrap(),
        "--phi2",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_csv(&stdout(&out)).unwrap();
    assert_eq!(rows[0].phi2, 0.0); // flag wins
    assert_eq!(rows[0].delta_p, 2.0); // file wins over default
}

#[test]
fn config_file_with_unknown_key_is_rejected_with_line() {
    let dir = std::env::temp_dir().join("phase-cavity-test-config");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.conf");
    fs::write(&path, "kappa = 1\nmystery = 2\n").unwrap();
    let out = run(&["point", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr: {err}");
    assert!(err.contains("mystery"));
}

#[test]
fn spectrum_needs_exactly_one_axis() {
    let out = run(&["spectrum"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["spectrum", "--axis", "delta_p:-5:5:11"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_csv(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0].delta_p, -5.0);
    assert_eq!(rows[10].delta_p, 5.0);
}

#[test]
fn contour_needs_exactly_two_axes() {
    let out = run(&["contour", "--axis", "phi1:0:6.283185307179586:3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "contour",
        "--axis",
        "phi1:0:6.283185307179586:3",
        "--axis",
        "phi2:0:6.283185307179586:4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_csv(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 12);
    // Row-major: outer phi1 constant over each inner block of four.
    assert_eq!(rows[0].phi1, rows[3].phi1);
    assert_ne!(rows[0].phi1, rows[4].phi1);
    assert_eq!(rows[0].phi2, rows[4].phi2);
}

#[test]
fn preset_output_to_file_and_json_format() {
    let dir = std::env::temp_dir().join("phase-cavity-test-out");
    fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("fig4b.csv");
    let out = run(&[
        "preset",
        "fig4b",
        "--output",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_csv(&fs::read_to_string(&csv_path).unwrap()).unwrap();
    assert_eq!(rows.len(), 201);
    assert!(rows.iter().all(|r| r.delta_p == 2.0));

    let json_path = dir.join("fig4b.json");
    let out = run(&[
        "preset",
        "fig4b",
        "--format",
        "json",
        "--output",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 201);
    assert_eq!(doc["base"]["delta_p"].as_f64().unwrap(), 2.0);
    assert_eq!(doc["axes"][0]["name"].as_str().unwrap(), "phi2");
}

#[test]
fn preset_rejects_extra_axes() {
    let out = run(&["preset", "fig4a", "--axis", "phi2:0:6:3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = run(&["preset", "fig5b"]);
    let b = run(&["preset", "fig5b"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn zero_tolerance_fails_the_suite() {
    // With every bound collapsed to zero at least one check must fail on
    // floating-point grounds, and the exit code reports it.
    let out = run(&["validate", "--tol-scale", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL"));
}
