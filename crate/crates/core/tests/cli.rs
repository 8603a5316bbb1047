//! Process-level checks of the `harmshell` binary: exit codes, gate lines,
//! output files and configuration sources.

use std::path::Path;
use std::process::{Command, Output};

fn harmshell(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmshell"))
        .args(args)
        .current_dir(dir)
        .env_remove("HARMSHELL_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn gate_lines(out: &Output) -> Vec<Vec<String>> {
    stdout(out)
        .lines()
        .filter(|l| l.starts_with("GATE "))
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect()
}

#[test]
fn expand_constant_gives_scaled_area_root() {
    let dir = tempfile::tempdir().unwrap();
    let out = harmshell(dir.path(), &["expand", "--phi", "constant:3", "--dim", "3", "--m", "4", "--out", "a.csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,chain,l,a"));
    let expected = 3.0 * (4.0 * std::f64::consts::PI).sqrt();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let a: f64 = fields[3].parse().unwrap();
        if fields[0] == "0" {
            assert!((a - expected).abs() < 1e-12, "{a} vs {expected}");
        } else {
            assert!(a.abs() < 1e-12, "{line}");
        }
    }
    let gates = gate_lines(&out);
    assert_eq!(gates.len(), 1);
    assert_eq!(gates[0][1], "expansion_exactness");
    assert_eq!(gates[0][2], "PASS");
}

#[test]
fn gate_lines_are_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let out = harmshell(dir.path(), &["basis", "--dim", "4", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let gates = gate_lines(&out);
    assert_eq!(gates.len(), 2);
    for g in &gates {
        assert_eq!(g.len(), 5, "{g:?}");
        assert!(g[2] == "PASS" || g[2] == "FAIL");
        let value: f64 = g[3].parse().unwrap();
        let tolerance: f64 = g[4].parse().unwrap();
        assert!(value <= tolerance, "{g:?}");
    }
}

#[test]
fn failing_gate_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = harmshell(dir.path(), &["basis", "--dim", "3", "--m", "2", "--tol", "gram_residual=-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("GATE gram_residual FAIL"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gate gram_residual failed"));
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["frobnicate"][..],
        &["expand", "--phi", "coord:9", "--dim", "3"],
        &["sweep", "--problem", "perfect", "--phi", "coord:1", "--eps", "0.1,0.2"],
        &["eval", "--problem", "insulated", "--phi", "coord:1"],
        &["basis", "--dim", "1"],
    ] {
        let out = harmshell(dir.path(), args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!String::from_utf8_lossy(&out.stderr).is_empty(), "{args:?}");
    }
}

#[test]
fn missing_points_file_is_a_module_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = harmshell(
        dir.path(),
        &["eval", "--problem", "perfect", "--phi", "coord:1", "--points", "absent.csv", "--out", "u.csv"],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn eval_writes_values_and_gradients() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("pts.csv"), "x1,x2,x3\n0,0,1.05\n0,0.6,0.8\n").unwrap();
    let out = harmshell(
        dir.path(),
        &[
            "eval", "--problem", "perfect", "--dim", "3", "--r0", "1", "--eps", "0.1", "--phi", "coord:3", "--m", "4",
            "--points", "pts.csv", "--out", "u.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("u.csv")).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "x1,x2,x3,u,g1,g2,g3");
    let first: Vec<f64> = rows[1].split(',').map(|v| v.parse().unwrap()).collect();
    // Perfect conductor with boundary data xi_3: u = c (r - r0^3 / r^2) cos(theta).
    let c = 1.21 / 0.331;
    assert!((first[3] - c * (1.05 - 1.0 / (1.05 * 1.05))).abs() < 1e-10, "{first:?}");
    assert_eq!(rows.len(), 3);
}

#[test]
fn sweep_prints_fitted_exponent_and_writes_both_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = harmshell(
        dir.path(),
        &[
            "sweep", "--problem", "insulated", "--dim", "2", "--eps", "0.2,0.1,0.05", "--phi", "coord:1", "--m", "4",
            "--radial-samples", "9", "--out", "s.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).lines().any(|l| l.starts_with("fitted exponent: ")));
    let sweep = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert!(sweep.starts_with("problem,d,r0,eps,m,sup_grad,C0,exponent_running\n"));
    assert_eq!(sweep.lines().count(), 4);
    assert!(dir.path().join("s_fit.csv").exists());
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.conf"), "phi = constant:3\ndim = 2\nm = 9\n").unwrap();
    let out = harmshell(dir.path(), &["expand", "--config", "run.conf", "--m", "2", "--out", "a.csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    // Degree 2 in d = 2 has 1 + 2 + 2 coefficients.
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn thread_count_comes_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_harmshell"))
            .args(["basis", "--dim", "3", "--m", "3"])
            .current_dir(dir.path())
            .env("HARMSHELL_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let two = run("2");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(run("0").status.code(), Some(1));
}
