//! End-to-end behaviour of the `pibell` binary: exit codes, determinism,
//! output formats and summary files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn pibell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pibell"))
        .args(args)
        .env("PIBELL_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pibell-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn polytope_n17_minimum_zero_and_exit_codes() {
    let out = tmp("v17.csv");
    let r = pibell(&["polytope", "--n", "17", "--out", out.to_str().unwrap()]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&r.stdout).lines().next().unwrap()).unwrap();
    assert_eq!(summary["classical_minimum"], 0);
    assert_eq!(summary["affine_rank"], 4);
    assert!(summary["psd_certificate_ok"].as_bool().unwrap());

    // Budget exceeded → exit code 2 with the required count in the message.
    let r = pibell(&["polytope", "--n", "25"]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("strategies"));

    // Input error → exit code 1.
    let r = pibell(&["bounds-vs-n"]);
    assert_eq!(r.status.code(), Some(1));
    let r = pibell(&["dim-bound", "--d", "4"]);
    assert_eq!(r.status.code(), Some(1));
    let r = pibell(&["bec", "--n", "1"]);
    assert_eq!(r.status.code(), Some(1));
}

#[test]
fn reruns_are_byte_identical() {
    let a = tmp("traj_a.csv");
    let b = tmp("traj_b.csv");
    for (path, _) in [(&a, 0), (&b, 1)] {
        let r = pibell(&[
            "bec", "--n", "8", "--c", "-1", "--g", "0.2", "--t-max", "3", "--t-steps", "40",
            "--out", path.to_str().unwrap(),
        ]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    let ca = std::fs::read(&a).unwrap();
    let cb = std::fs::read(&b).unwrap();
    assert!(!ca.is_empty());
    assert_eq!(ca, cb, "trajectory CSVs differ between reruns");

    let va = tmp("dim_a.json");
    let vb = tmp("dim_b.json");
    for path in [&va, &vb] {
        let r = pibell(&[
            "dim-bound", "--d", "2", "--restarts", "3", "--seed", "7",
            "--out", path.to_str().unwrap(),
        ]);
        assert!(r.status.success());
    }
    assert_eq!(std::fs::read(&va).unwrap(), std::fs::read(&vb).unwrap());
}

#[test]
fn ground_state_csv_and_json_mirror_each_other() {
    let csv_path = tmp("gs15.csv");
    let r = pibell(&["ground-state", "--n", "15", "--out", csv_path.to_str().unwrap()]);
    assert!(r.status.success());
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "mu0,mu1,mu2,re_amp,im_amp,magnitude");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 136, "(n+1)(n+2)/2 rows at n = 15");
    let total: f64 = rows
        .iter()
        .map(|row| row.split(',').nth(5).unwrap().parse::<f64>().unwrap().powi(2))
        .sum();
    assert!((total - 1.0).abs() < 1e-10, "magnitudes² sum to {total}");

    let json_path = tmp("gs15.json");
    let r = pibell(&[
        "ground-state", "--n", "15", "--format", "json", "--out", json_path.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let arr = parsed.as_array().unwrap();
    assert_eq!(arr.len(), 136);
    // Same fields, same first-row values up to JSON float round-trip.
    let first_csv: Vec<f64> = rows[0]
        .split(',')
        .map(|v| v.parse::<f64>().unwrap())
        .collect();
    assert_eq!(arr[0]["mu0"].as_f64().unwrap(), first_csv[0]);
    assert!((arr[0]["magnitude"].as_f64().unwrap() - first_csv[5]).abs() < 1e-15);

    // Summary sidecar exists and carries the fit scalars.
    let summary: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(csv_path.with_extension("summary.json")).unwrap(),
    )
    .unwrap();
    assert!(summary["lambda_min"].as_f64().unwrap() < 0.0);
    assert!(summary["gaussian_fit"]["fidelity"].as_f64().unwrap() > 0.0);
    assert!(summary["gaussian_fit_balanced_frame"]["fidelity"].as_f64().unwrap() > 0.3);
}

#[test]
fn bounds_summary_reports_convergence() {
    let out = tmp("bounds.csv");
    let r = pibell(&[
        "bounds-vs-n", "--n-range", "10:20:5", "--settings", "qubit",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let summary: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&r.stdout).lines().next().unwrap()).unwrap();
    assert_eq!(summary["settings"], "qubit");
    let ratios = summary["hp_convergence"].as_array().unwrap();
    assert_eq!(ratios.len(), 3);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("n,lambda_min,hp_bound,qubit_line\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn type1_scan_columns_and_monotone_beta() {
    let w0 = tmp("scan0.csv");
    let wq = tmp("scanq.csv");
    for (path, beta) in [(&w0, "0"), (&wq, "-0.25")] {
        let r = pibell(&[
            "type1-scan", "--n", "12", "--theta-grid", "6", "--beta", beta,
            "--out", path.to_str().unwrap(),
        ]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    let parse = |p: &PathBuf| -> Vec<Vec<f64>> {
        let text = std::fs::read_to_string(p).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "theta,x,y,z,witness");
        lines
            .map(|l| l.split(',').map(|v| v.parse::<f64>().unwrap()).collect())
            .collect()
    };
    let rows0 = parse(&w0);
    let rowsq = parse(&wq);
    assert_eq!(rows0.len(), 6);
    for (a, b) in rows0.iter().zip(&rowsq) {
        assert_eq!(a[0], b[0]);
        // Identical data columns; the β = −1/4 witness is never easier to
        // violate than the β = 0 one.
        for k in 1..=3 {
            assert!((a[k] - b[k]).abs() < 1e-12);
        }
        if a[4].is_finite() && b[4].is_finite() {
            assert!(a[4] <= b[4] + 1e-12, "witness monotonicity in β broke");
        }
    }
}
