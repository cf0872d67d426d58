use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scalespec"))
        .arg("--out")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(dir: &Path, task: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(format!("{task}.json"))).unwrap()).unwrap()
}

#[test]
fn eigenvalue_true_for_five() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--triple", "4:0,2:0,1", "eigenvalue", "--q", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(dir.path(), "eigenvalue");
    assert_eq!(r["verdict"]["q"], 5);
    assert_eq!(r["verdict"]["is_eigenvalue"], true);
    let stdout: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stdout, r);
}

#[test]
fn eigenvalue_three_has_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--triple", "4:0,2:0,1", "eigenvalue", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path(), "eigenvalue");
    assert_eq!(r["verdict"]["is_eigenvalue"], false);
    assert_eq!(r["verdict"]["witness"], "1/3");
}

#[test]
fn non_coprime_q_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--triple", "4:0,2:0,1", "eigenvalue", "--q", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("gcd(q = 2, N = 4) = 2"), "{err}");
    assert!(err.contains("eigenvalue criterion"), "{err}");
}

#[test]
fn verify_reports_failing_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--triple", "4:0,1:0,1", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path(), "verify");
    assert_eq!(r["verdict"]["is_hadamard"], false);
    assert_eq!(r["verdict"]["failing_pair"], serde_json::json!([0, 1]));
}

#[test]
fn missing_triple_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["cycles"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires a triple"));
}

#[test]
fn config_file_with_string_integers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let csv = dir.path().join("nested/levels.csv");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"triple": {{"N": "4", "B": ["0", "2"], "L": ["0", "3"]}}, "task": "spectrum",
                "params": {{"levels": "1"}}, "output": {{"csv": {:?}}}}}"#,
            csv
        ),
    )
    .unwrap();
    let out = run(dir.path(), &["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(dir.path(), "spectrum");
    assert_eq!(r["verdict"]["levels"], serde_json::json!([["-1", "0"], ["-4", "-1", "0", "3"]]));
    let body = std::fs::read_to_string(&csv).unwrap();
    assert!(body.starts_with("level,point\n0,-1\n"));
    let footer = body.lines().last().unwrap();
    assert_eq!(footer, format!("# config-hash: {}", r["config_hash"].as_str().unwrap()));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"task": "dickman", "params": {"u": 2.0, "steps": 5}}"#).unwrap();
    let out = run(dir.path(), &["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_error_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--triple", "4:0,2:0,1", "spectrum", "--levels", "40"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource budget"));
}

#[test]
fn reports_are_byte_identical_across_runs_and_workers() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let c = tempfile::tempdir().unwrap();
    let args = ["--triple", "6:0,1:0,3", "scan", "--x", "500"];
    assert!(run(a.path(), &args).status.success());
    assert!(run(b.path(), &args).status.success());
    let mut parallel = vec!["--workers", "4"];
    parallel.extend(args);
    assert!(run(c.path(), &parallel).status.success());
    for f in ["scan.json", "scan.csv"] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        assert_eq!(x, std::fs::read(b.path().join(f)).unwrap(), "{f}");
        assert_eq!(x, std::fs::read(c.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn seeded_fourier_grid_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["--seed", "7", "--triple", "4:0,2:0,1", "fourier-q", "--levels", "3", "--depth", "20"];
    assert!(run(a.path(), &args).status.success());
    assert!(run(b.path(), &args).status.success());
    let x = std::fs::read(a.path().join("fourier-q.csv")).unwrap();
    assert_eq!(x, std::fs::read(b.path().join("fourier-q.csv")).unwrap());
    let r = report(a.path(), "fourier-q");
    assert_eq!(r["diagnostic"]["grid"].as_array().unwrap().len(), 16);
    assert!(r["verdict"].as_object().unwrap().is_empty());
}

#[test]
fn fourier_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.txt");
    std::fs::write(&grid, "# t0\n0.0\n0.25\n").unwrap();
    let out = run(
        dir.path(),
        &["--triple", "4:0,2:0,1", "fourier-q", "--levels", "6", "--grid", grid.to_str().unwrap()],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(dir.path(), "fourier-q");
    let q = &r["diagnostic"]["q_by_level"];
    assert!((q[0][0].as_f64().unwrap() - 1.0).abs() < 1e-9);
    let top = q[6][1].as_f64().unwrap();
    assert!((0.95..=1.001).contains(&top), "{top}");
}

#[test]
fn number_theory_tasks() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(run(p, &["order-stats", "--a", "2", "--delta", "0.99", "--x", "10"]).status.success());
    let r = report(p, "order-stats");
    assert_eq!((r["verdict"]["numerator"].as_u64(), r["verdict"]["denominator"].as_u64()), (Some(0), Some(4)));

    assert!(run(p, &["pplus-stats", "--x", "100", "--delta", "1/2"]).status.success());
    assert_eq!(report(p, "pplus-stats")["verdict"]["denominator"], 25);

    assert!(run(p, &["dickman", "--u", "2"]).status.success());
    let rho = report(p, "dickman")["diagnostic"]["rho"].as_f64().unwrap();
    assert!((rho - (1.0 - 2f64.ln())).abs() < 1e-8);

    assert!(run(p, &["eh-sum", "--x", "300", "--theta", "1/2"]).status.success());
    assert_eq!(report(p, "eh-sum")["verdict"]["q_max"], 17);

    assert_eq!(run(p, &["eh-sum", "--x", "300", "--theta", "3/2"]).status.code(), Some(1));
    assert_eq!(run(p, &["order-stats", "--a", "2", "--delta", "abc", "--x", "10"]).status.code(), Some(2));
}

#[test]
fn triple_tasks() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(run(p, &["--triple", "4:0,2:0,3", "cycles"]).status.success());
    assert_eq!(report(p, "cycles")["verdict"]["count"], 2);

    assert!(run(p, &["--triple", "4:0,2:0,1", "dp-scan", "--p", "3", "--M", "5"]).status.success());
    let r = report(p, "dp-scan");
    assert_eq!(r["verdict"]["levels"][1], serde_json::json!(["2/3"]));
    assert_eq!(r["diagnostic"]["stabilization_index"], 1);

    assert!(run(p, &["--triple", "4:0,2:0,1", "power-closure", "--primes", "5,7", "--M", "4", "--budget", "2"])
        .status
        .success());
    let r = report(p, "power-closure");
    assert_eq!(r["verdict"]["conclusion_holds"], true);
    assert_eq!(r["diagnostic"]["n0"], 0);
    let csv = std::fs::read_to_string(p.join("power-closure.csv")).unwrap();
    assert!(csv.contains("1 1,35,true"), "{csv}");

    assert_eq!(run(p, &["--triple", "4:0,1:0,1", "cycles"]).status.code(), Some(1));
    assert_eq!(run(p, &["--triple", "4:0,2:0,1", "power-closure", "--primes", "3,2", "--M", "3", "--budget", "1"]).status.code(), Some(1));
}
