use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use krylov_sublab::instance::{hermitian_defect, normality_defect};
use krylov_sublab::mtx::read_matrix_market;
use krylov_sublab_cli::output::read_csv_norms;
use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_krylov-sublab"));
    cmd.env_remove("KRYLOV_SUBLAB_SEED");
    cmd
}

fn run(args: &[&str], out: &Path) -> Output {
    bin()
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_writes_hermitian_instance() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "gen",
            "--n",
            "4",
            "--class",
            "hermitian",
            "--spectrum",
            "pm:1,2",
            "--seed",
            "7",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let a = read_matrix_market(&dir.path().join("A.mtx")).unwrap();
    assert_eq!((a.rows(), a.cols()), (4, 4));
    assert!(hermitian_defect(&a) <= 1e-15);
    let b = read_matrix_market(&dir.path().join("b.mtx")).unwrap();
    let x0 = read_matrix_market(&dir.path().join("x0.mtx")).unwrap();
    assert_eq!((b.rows(), b.cols()), (4, 1));
    assert_eq!(x0.max_abs(), 0.0);
    let side = json(&dir.path().join("instance.json"));
    assert_eq!(side["class"], "hermitian");
    assert_eq!(side["seed"], 7);
}

#[test]
fn unit_kappa_diagonalizable_is_unitary() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "gen",
            "--n",
            "10",
            "--class",
            "diagonalizable",
            "--kappa",
            "1",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let side = json(&dir.path().join("instance.json"));
    assert!((side["alpha"].as_f64().unwrap() - 1.0).abs() <= 1e-10);
    assert!((side["kappa"].as_f64().unwrap() - 1.0).abs() <= 1e-10);
    let a = read_matrix_market(&dir.path().join("A.mtx")).unwrap();
    assert!(normality_defect(&a) <= 1e-12);
}

#[test]
fn gen_then_solve_matches_direct_solve() {
    let inst = tempfile::tempdir().unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(run(&["gen", "--n", "30", "--seed", "5"], inst.path())
        .status
        .success());
    let input = inst.path().to_str().unwrap();
    assert!(run(&["solve", "--input", input, "--m", "4"], a.path())
        .status
        .success());
    assert!(
        run(&["solve", "--n", "30", "--m", "4", "--seed", "5"], b.path())
            .status
            .success()
    );
    let from_file =
        read_csv_norms(&fs::read_to_string(a.path().join("convergence.csv")).unwrap()).unwrap();
    let direct =
        read_csv_norms(&fs::read_to_string(b.path().join("convergence.csv")).unwrap()).unwrap();
    assert_eq!(from_file.len(), direct.len());
    for (x, y) in from_file.iter().zip(&direct) {
        assert!((x - y).abs() <= 1e-12 * direct[0], "{x} vs {y}");
    }
}

#[test]
fn identity_system_converges_in_one_cycle() {
    let inst = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let mut a = String::from("%%MatrixMarket matrix coordinate real general\n3 3 3\n");
    for i in 1..=3 {
        a.push_str(&format!("{i} {i} 1\n"));
    }
    fs::write(inst.path().join("A.mtx"), a).unwrap();
    fs::write(
        inst.path().join("b.mtx"),
        "%%MatrixMarket matrix array real general\n3 1\n3\n0\n4\n",
    )
    .unwrap();
    fs::write(
        inst.path().join("x0.mtx"),
        "%%MatrixMarket matrix array real general\n3 1\n0\n0\n0\n",
    )
    .unwrap();
    let o = run(
        &[
            "solve",
            "--input",
            inst.path().to_str().unwrap(),
            "--m",
            "1",
        ],
        out.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.path().join("convergence.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "cycle,residual_norm,ratio");
    assert_eq!(rows[1], "0,5.0000000000000000e+00,");
    assert_eq!(rows[2], "1,0.0000000000000000e+00,0.0000000000000000e+00");
    assert_eq!(rows.len(), 3);
}

#[test]
fn csv_and_json_agree() {
    let out = tempfile::tempdir().unwrap();
    assert!(run(
        &["solve", "--n", "40", "--m", "3", "--seed", "11"],
        out.path()
    )
    .status
    .success());
    let norms =
        read_csv_norms(&fs::read_to_string(out.path().join("convergence.csv")).unwrap()).unwrap();
    let doc = json(&out.path().join("report.json"));
    assert_eq!(doc["schema"], "krylov-sublab/report/v1");
    let report = &doc["report"];
    assert_eq!(norms[0], report["initial_norm"].as_f64().unwrap());
    let cycles = report["cycles"].as_array().unwrap();
    assert_eq!(norms.len(), cycles.len() + 1);
    for (k, c) in cycles.iter().enumerate() {
        assert_eq!(norms[k + 1], c["exit_norm"].as_f64().unwrap());
    }
}

#[test]
fn injected_nonnormal_instance_fails_theorem_suite() {
    let out = tempfile::tempdir().unwrap();
    let o = run(
        &["verify", "--suite", "theorem1", "--inject-nonnormal"],
        out.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let doc = json(&out.path().join("verdict-theorem1.json"));
    let failed: Vec<&Value> = doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .collect();
    assert!(!failed.is_empty());
    for r in failed {
        assert_eq!(r["instance"]["class"], "diagonalizable-nonnormal");
        assert!(r["note"].as_str().unwrap().contains("normal"));
    }
}

#[test]
fn suite_summary_counts_add_up() {
    let out = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--suite", "lemma2"], out.path());
    assert!(o.status.success());
    let doc = json(&out.path().join("verdict-lemma2.json"));
    let records = doc["records"].as_array().unwrap();
    let total: u64 = doc["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["total"].as_u64().unwrap())
        .sum();
    assert_eq!(total, records.len() as u64);
    assert_eq!(doc["summary"]["total"].as_u64().unwrap(), total);
    assert_eq!(doc["summary"]["failed"], 0);
}

#[test]
fn rejects_bad_arguments() {
    let out = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--suite", "nope"], out.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
    let o = run(&["solve", "--n", "5", "--m", "5"], out.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 <= m <= n - 1"));
    let o = run(&["figure", "2", "--kappa", "10"], out.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["gen", "--class", "normal", "--kappa", "5"], out.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    fs::write(&config, r#"{"n": 12, "m": 2, "seed": 3, "max-cycles": 4}"#).unwrap();
    let o = run(
        &["solve", "--config", config.to_str().unwrap(), "--m", "3"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let cfg = &json(&dir.path().join("report.json"))["config"];
    assert_eq!(cfg["n"], 12);
    assert_eq!(cfg["m"], 3);
    assert_eq!(cfg["seed"], 3);
    assert_eq!(cfg["max_cycles"], 4);

    fs::write(&config, r#"{"n": 12, "colour": "red"}"#).unwrap();
    let o = run(&["solve", "--config", config.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seed_falls_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .env("KRYLOV_SUBLAB_SEED", "1234")
        .args(["gen", "--n", "6", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(json(&dir.path().join("instance.json"))["seed"], 1234);
}

#[test]
fn figure1_curve_is_log_convex() {
    let out = tempfile::tempdir().unwrap();
    let o = run(&["figure", "1"], out.path());
    assert!(o.status.success());
    let doc = json(&out.path().join("figure1.json"));
    assert!(doc["min_log_curvature"].as_f64().unwrap() >= -1e-8);
    let ratios: Vec<f64> = doc["ratios"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_f64().unwrap())
        .collect();
    assert!(ratios.windows(2).all(|w| w[1] >= w[0] - 1e-8));
    let svg = fs::read_to_string(out.path().join("figure1.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("polyline"));
}
