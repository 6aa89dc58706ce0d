//! End-to-end checks of the command-line harness: flags, config files,
//! output formats, determinism, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taudiff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("taudiff_test_{}_{name}", std::process::id()));
    p
}

/// Drop non-deterministic timing columns from a CSV table.
fn strip_seconds(csv: &str) -> Vec<Vec<String>> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let keep: Vec<usize> = header
        .iter()
        .enumerate()
        .filter(|(_, h)| !h.starts_with("seconds"))
        .map(|(i, _)| i)
        .collect();
    std::iter::once(header.clone())
        .chain(lines.map(|l| l.split(',').collect()))
        .map(|row: Vec<&str>| keep.iter().map(|&i| row[i].to_string()).collect())
        .collect()
}

#[test]
fn solve_mode_writes_csv_and_json() {
    let csv_path = tmp("out.csv");
    let out = run(&[
        "--mode",
        "solve",
        "--n",
        "8",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("alpha1,alpha2,"));
    assert_eq!(csv.lines().count(), 2);

    let json_path = tmp("out.json");
    let out = run(&[
        "--mode",
        "solve",
        "--n",
        "8",
        "--format",
        "json",
        "--out",
        json_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["mode"], "solve");
    let error = doc["rows"][0]["error"].as_f64().unwrap();
    assert!(error > 0.0 && error < 0.2, "error column {error}");

    let _ = std::fs::remove_file(csv_path);
    let _ = std::fs::remove_file(json_path);
}

#[test]
fn reruns_are_bit_identical_outside_timing_columns() {
    let args = ["--mode", "solve", "--n", "8", "--eta", "1e-4"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success() && second.status.success());
    let a = strip_seconds(&String::from_utf8_lossy(&first.stdout));
    let b = strip_seconds(&String::from_utf8_lossy(&second.stdout));
    assert_eq!(a, b);
}

#[test]
fn spectrum_mode_refuses_large_grids_with_exit_code_3() {
    let out = run(&["--mode", "spectrum", "--n", "128"]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("cap"), "stderr: {msg}");
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(run(&["--mode", "nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["--alpha1", "2.5"]).status.code(), Some(1));
    assert_eq!(run(&["--m-rule", "sometimes"]).status.code(), Some(1));
    assert_eq!(run(&["--such-flag-does-not-exist"]).status.code(), Some(1));
}

#[test]
fn empty_sweep_from_config_is_a_usage_error_and_writes_nothing() {
    let conf = tmp("empty.conf");
    let out_path = tmp("never.csv");
    std::fs::write(&conf, "n =\n").unwrap();
    let out = run(&[
        "--config",
        conf.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out_path.exists());
    let _ = std::fs::remove_file(conf);
}

#[test]
fn non_convergence_exits_2_with_partial_results_flagged() {
    let out = run(&[
        "--mode",
        "solve",
        "--n",
        "16",
        "--no-precond",
        "--rtol",
        "1e-13",
        "--restart",
        "5",
        "--maxiter",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("partial results"), "stderr: {msg}");
}

#[test]
fn flags_override_config_file() {
    let conf = tmp("override.conf");
    std::fs::write(
        &conf,
        "mode = solve\nkx = 1e-4\nky = 1e-4\nn = 8\neta = 1e-4\n",
    )
    .unwrap();
    let out = run(&["--config", conf.to_str().unwrap(), "--kx", "0.5"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let header: Vec<&str> = stdout.lines().next().unwrap().split(',').collect();
    let row: Vec<&str> = stdout.lines().nth(1).unwrap().split(',').collect();
    let kx_idx = header.iter().position(|h| *h == "kx").unwrap();
    let ky_idx = header.iter().position(|h| *h == "ky").unwrap();
    assert_eq!(row[kx_idx], "5.0000000000000000e-1");
    assert_eq!(row[ky_idx], "1.0000000000000000e-4");
    let _ = std::fs::remove_file(conf);
}

#[test]
fn dump_dense_writes_the_system_matrix() {
    let path = tmp("dense.csv");
    let out = run(&[
        "--mode",
        "solve",
        "--n",
        "4",
        "--dump-dense",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r.split(',').count() == 16));
    // Diagonal dominance shows up even in the serialized form.
    let first: f64 = rows[0].split(',').next().unwrap().parse().unwrap();
    assert!(first > 1.0);
    let _ = std::fs::remove_file(path);
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let msg = String::from_utf8_lossy(&out.stdout);
    assert!(msg.contains("--mode"));
    assert!(msg.contains("--eta"));
}

#[test]
fn penalty_scan_rows_cover_the_eta_list() {
    let out = run(&[
        "--mode",
        "penalty-scan",
        "--n",
        "8",
        "--eta",
        "1e-4",
        "--eta",
        "1e-5",
        "--kx",
        "1e-4",
        "--ky",
        "1e-4",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.lines().count(), 3);
}
