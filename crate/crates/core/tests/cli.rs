use std::process::{Command, Output};

use liesym::verify::VerificationReport;

fn liesym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liesym"))
        .args(args)
        .output()
        .unwrap()
}

fn report(out: &Output) -> VerificationReport {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_passes_and_reports_json() {
    let out = liesym(&[
        "verify",
        "--space",
        "su-so",
        "--n",
        "3",
        "--samples",
        "20",
        "--seed",
        "42",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r.passed);
    assert_eq!(
        (r.space.as_str(), r.candidate.as_str(), r.samples, r.seed),
        ("su-so", "all", 20, 42)
    );
    assert!(r.max_tau_residual <= r.tolerance && r.max_kappa_residual <= r.tolerance);
    assert_eq!(r.wall_time_ms, 0);
}

#[test]
fn verify_output_is_reproducible() {
    let args = [
        "verify",
        "--space",
        "quaternionic-grassmannian",
        "--m",
        "1",
        "--n",
        "1",
        "--samples",
        "10",
        "--seed",
        "7",
    ];
    let a = liesym(&args);
    let b = liesym(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn verify_writes_the_same_json_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = liesym(&[
        "verify",
        "--space",
        "sp-u",
        "--n",
        "1",
        "--samples",
        "5",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let saved = std::fs::read(&path).unwrap();
    assert_eq!(saved, out.stdout);
    let back: VerificationReport = serde_json::from_slice(&saved).unwrap();
    assert_eq!(back, report(&out));
}

#[test]
fn single_candidate_by_label() {
    let out = liesym(&[
        "verify",
        "--space",
        "complex-grassmannian",
        "--m",
        "1",
        "--n",
        "2",
        "--samples",
        "5",
        "--candidate",
        "psi[1][0]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out).candidate, "psi[1][0]");
    let missing = liesym(&[
        "verify",
        "--space",
        "complex-grassmannian",
        "--candidate",
        "psi[9][9]",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn impossible_tolerance_fails_with_exit_one() {
    let out = liesym(&[
        "verify",
        "--space",
        "real-grassmannian",
        "--m",
        "2",
        "--n",
        "2",
        "--samples",
        "5",
        "--tol",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!report(&out).passed);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        liesym(&["verify", "--space", "torus"]).status.code(),
        Some(2)
    );
    assert_eq!(liesym(&["verify"]).status.code(), Some(2));
    assert_eq!(
        liesym(&["killing", "--group", "e8", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        liesym(&["verify", "--space", "so-u", "--n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        liesym(&["pharmonic", "--lambda", "0", "--mu", "0", "--p", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn killing_subcommand() {
    let out = liesym(&["killing", "--group", "sp", "--n", "2", "--pairs", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["max_relative_deviation"].as_f64().unwrap() < 1e-9);

    let u = liesym(&["killing", "--group", "u", "--n", "2", "--pairs", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&u.stdout).unwrap();
    assert_eq!(v["central_pair"], serde_json::json!([0.0, 0.0]));
}

#[test]
fn pharmonic_subcommand() {
    let out = liesym(&["pharmonic", "--lambda", "-4", "--mu", "-2", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["proper"], true);
    assert_eq!(v["trace"].as_array().unwrap().len(), 3);
    assert_eq!(v["trace"][2], "0");

    let zero_mu = liesym(&[
        "pharmonic",
        "--lambda",
        "-2,-2",
        "--mu",
        "0",
        "--p",
        "2",
        "--c1",
        "1/2",
    ]);
    assert_eq!(zero_mu.status.code(), Some(0));
}

#[test]
fn export_writes_one_row_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("values.tsv");
    let out = liesym(&[
        "export",
        "--space",
        "sp-u",
        "--n",
        "1",
        "--candidate",
        "phi_a",
        "--points",
        "64",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 64);
    for (i, row) in rows.iter().enumerate() {
        let cols: Vec<&str> = row.split('\t').collect();
        assert_eq!(cols.len(), 3);
        assert_eq!(cols[0].parse::<usize>().unwrap(), i);
        assert!(cols[1].parse::<f64>().unwrap().is_finite());
    }

    let empty = dir.path().join("empty.tsv");
    let out = liesym(&[
        "export",
        "--space",
        "sp-u",
        "--n",
        "1",
        "--candidate",
        "phi_a",
        "--points",
        "0",
        "--out",
        empty.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&empty)
        .unwrap()
        .lines()
        .all(|l| l.starts_with('#')));

    let bad = liesym(&[
        "export",
        "--space",
        "sp-u",
        "--n",
        "1",
        "--candidate",
        "psi_ab",
        "--points",
        "3",
        "--out",
        empty.to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(2));
}
