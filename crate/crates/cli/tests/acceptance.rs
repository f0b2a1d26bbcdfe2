//! End-to-end acceptance run: every criterion is checked against the
//! documents the binary writes, with one PASS/FAIL line per criterion.

use std::fs;
use std::path::Path;
use std::process::Command;

use krylov_sublab_cli::svg::strip_version;
use serde_json::Value;

fn run(args: &[&str], out: &Path) -> i32 {
    let o = Command::new(env!("CARGO_BIN_EXE_krylov-sublab"))
        .env_remove("KRYLOV_SUBLAB_SEED")
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs");
    o.status.code().unwrap_or(-1)
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

/// Runs every command the criteria depend on into `out`.
fn run_all(out: &Path) -> (i32, i32) {
    let verify = run(&["verify", "--suite", "all"], out);
    let figure2 = run(&["figure", "2", "--budget", "64"], out);
    assert_eq!(run(&["figure", "1"], out), 0);
    assert_eq!(run(&["solve"], out), 0);
    (verify, figure2)
}

struct Criterion {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

/// All records of each named check must pass, with at least the given number of instances.
fn suite_criterion(
    id: usize,
    name: &'static str,
    records: &[Value],
    checks: &[(&str, usize)],
) -> Criterion {
    let mut pass = true;
    let mut detail = Vec::new();
    for (check, instances) in checks {
        let rows: Vec<&Value> = records.iter().filter(|r| r["check"] == *check).collect();
        let failed = rows.iter().filter(|r| r["pass"] != true).count();
        let upper = rows
            .first()
            .is_none_or(|r| r["bound"] == "measured <= tolerance");
        let measured = rows.iter().filter_map(|r| r["measured"].as_f64());
        let worst = if upper {
            measured.reduce(f64::max)
        } else {
            measured.reduce(f64::min)
        };
        pass &= failed == 0 && rows.len() >= *instances;
        detail.push(format!(
            "{check}: {}/{} pass, worst {}",
            rows.len() - failed,
            rows.len(),
            worst.map_or("n/a".into(), |w| format!("{w:.2e}"))
        ));
    }
    Criterion {
        id,
        name,
        pass,
        detail: detail.join("; "),
    }
}

#[test]
fn acceptance() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let (verify, figure2) = run_all(first.path());
    let (verify_again, figure2_again) = run_all(second.path());

    let verdict = json(&first.path().join("verdict-all.json"));
    let records = verdict["records"].as_array().unwrap().clone();
    let mut out = vec![
        suite_criterion(
            1,
            "sublinear cycle-convergence of normal matrices",
            &records,
            &[("theorem1/ratio-monotonicity", 200)],
        ),
        suite_criterion(
            2,
            "A and A^H give equal cycle residual norms",
            &records,
            &[
                ("lemma3/norm-equality", 200),
                ("lemma3/polynomial-conjugation", 200),
            ],
        ),
        suite_criterion(
            3,
            "Krylov pseudoinverse, factorization and null-space identities",
            &records,
            &[
                ("lemma1/pseudoinverse-identity", 50),
                ("lemma2/spectral-factorization", 50),
                ("undersys/e1-identity", 50),
                ("undersys/pythagoras", 50),
            ],
        ),
        suite_criterion(
            4,
            "equality case m = n - 1",
            &records,
            &[
                ("corollary-n1/null-space", 20),
                ("corollary-n1/ratio-slack", 20),
                ("corollary-n1/prediction", 20),
            ],
        ),
        suite_criterion(
            5,
            "alternating residuals for Hermitian and skew-Hermitian matrices",
            &records,
            &[
                ("corollary-alt/collinearity", 40),
                ("corollary-alt/alpha-range", 40),
            ],
        ),
        suite_criterion(
            6,
            "diagonalizable ratio bound",
            &records,
            &[("lemma4/bound", 50)],
        ),
        suite_criterion(
            7,
            "cycle exit equals the minimum residual",
            &records,
            &[("oracle/minimum-residual", 100)],
        ),
    ];
    let ratio_rows = records
        .iter()
        .filter(|r| r["check"] == "theorem1/ratio-monotonicity");
    let pairs: u64 = ratio_rows
        .clone()
        .filter_map(|r| r["samples"].as_u64())
        .sum();
    let without_pairs = ratio_rows.filter(|r| r["samples"] == 0).count();
    out[0].pass &= pairs > 0;
    out[0].detail = format!(
        "{}; {pairs} ratio pairs, {without_pairs} instance(s) below the floor after one cycle",
        out[0].detail
    );
    // Criterion 6 also pins the unitary case.
    let unit = suite_criterion(
        6,
        "",
        &records,
        &[("lemma4/alpha", 17), ("lemma4/beta", 17)],
    );
    out[5].pass &= unit.pass;
    out[5].detail = format!("{}; {}", out[5].detail, unit.detail);

    let fig = json(&first.path().join("figure2.json"));
    let drop = fig["ratio_drop"].as_f64().unwrap_or(0.0);
    out.push(Criterion {
        id: 8,
        name: "nonnormal counterexample within 64 seeds",
        pass: figure2 == 0
            && fig["found"] == true
            && drop > 1e-6
            && fig["config"]["n"] == 100
            && fig["config"]["m"] == 5
            && fig["kappa"]
                .as_f64()
                .is_some_and(|k| k >= 100.0 * (1.0 - 1e-12))
            && fig["seeds_tried"].as_u64().is_some_and(|s| s <= 64),
        detail: format!(
            "seed {}, {} tried, ratio drop {drop:.3e} after cycle {}",
            fig["seed"], fig["seeds_tried"], fig["superlinear_cycle"]
        ),
    });

    let files = [
        "verdict-all.json",
        "figure1.csv",
        "figure1.json",
        "figure2.csv",
        "figure2.json",
        "convergence.csv",
        "report.json",
    ];
    let mut differing: Vec<&str> = files
        .iter()
        .copied()
        .filter(|f| {
            fs::read(first.path().join(f)).unwrap() != fs::read(second.path().join(f)).unwrap()
        })
        .collect();
    for f in ["figure1.svg", "figure2.svg"] {
        let a = strip_version(&fs::read_to_string(first.path().join(f)).unwrap());
        let b = strip_version(&fs::read_to_string(second.path().join(f)).unwrap());
        if a != b {
            differing.push(f);
        }
    }
    out.push(Criterion {
        id: 9,
        name: "reruns are byte-identical",
        pass: differing.is_empty() && verify == verify_again && figure2 == figure2_again,
        detail: if differing.is_empty() {
            format!("{} files compared", files.len() + 2)
        } else {
            format!("differs: {}", differing.join(", "))
        },
    });

    for c in &out {
        println!(
            "{} criterion {}: {} ({})",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.detail
        );
    }
    assert_eq!(verify, 0, "verify reported failures");
    let failed: Vec<usize> = out.iter().filter(|c| !c.pass).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
