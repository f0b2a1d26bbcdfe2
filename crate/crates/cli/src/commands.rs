use std::path::Path;

use anyhow::{bail, Context, Result};
use krylov_sublab::dense::{svd, DenseMatrix, DenseVector};
use krylov_sublab::gen::{gen_diagonalizable, gen_hermitian, gen_normal, gen_skew_hermitian};
use krylov_sublab::gmres::{restarted_gmres, ConvergenceReport, RestartConfig};
use krylov_sublab::mtx::{read_matrix_market, write_matrix_market};
use krylov_sublab::theory::{log_convexity, usable_norms};
use krylov_sublab::{MatrixClass, SystemInstance};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::output::{convergence_csv, write_json, write_text, TOOL_VERSION};
use crate::suites::run_suites;
use crate::svg::Chart;

pub const INSTANCE_SCHEMA: &str = "krylov-sublab/instance/v1";
pub const REPORT_SCHEMA: &str = "krylov-sublab/report/v1";
pub const FIGURE_SCHEMA: &str = "krylov-sublab/figure/v1";

/// Exit status when `figure 2` exhausts its seed budget.
pub const EXIT_NOT_FOUND: i32 = 3;
/// Smallest ratio decrease counted as superlinear.
pub const SUPERLINEAR_DROP: f64 = 1e-6;

#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceSidecar {
    pub schema: String,
    pub tool_version: String,
    pub n: usize,
    pub class: MatrixClass,
    pub seed: u64,
    pub spectrum: String,
    /// Achieved condition number of the eigenvector matrix.
    pub kappa: f64,
    pub sigma_min: f64,
    /// `1 / σ_min(V)²`.
    pub alpha: f64,
}

pub fn build_instance(cfg: &RunConfig, seed: u64) -> Result<SystemInstance> {
    let (n, spec) = (cfg.n, &cfg.spectrum);
    Ok(match cfg.class {
        MatrixClass::DiagonalizableNonnormal => gen_diagonalizable(n, spec, cfg.kappa, seed)?,
        _ if cfg.kappa != 1.0 => bail!("--kappa {} needs --class diagonalizable", cfg.kappa),
        MatrixClass::Normal => gen_normal(n, spec, seed)?,
        MatrixClass::Hermitian => gen_hermitian(n, spec, seed)?,
        MatrixClass::SkewHermitian => gen_skew_hermitian(n, spec, seed)?,
        MatrixClass::General => {
            bail!("no generator for class general; pass --input with Matrix Market files instead")
        }
    })
}

fn column(v: &DenseVector) -> DenseMatrix {
    DenseMatrix::from_columns(std::slice::from_ref(v)).expect("one column")
}

pub fn cmd_gen(cfg: &RunConfig) -> Result<i32> {
    let out = cfg.prepare_out()?;
    let sys = build_instance(cfg, cfg.seed)?;
    let spectral = sys
        .spectral
        .as_ref()
        .expect("generated instances carry their spectral form");
    let sv = svd(&spectral.v)?;
    let sidecar = InstanceSidecar {
        schema: INSTANCE_SCHEMA.into(),
        tool_version: TOOL_VERSION.into(),
        n: sys.n(),
        class: sys.class,
        seed: cfg.seed,
        spectrum: cfg.spectrum.to_string(),
        kappa: sv.condition_number(),
        sigma_min: sv.sigma_min(),
        alpha: 1.0 / sv.sigma_min().powi(2),
    };
    write_matrix_market(&sys.a, out.join("A.mtx")).context("writing A.mtx")?;
    write_matrix_market(&column(&sys.b), out.join("b.mtx")).context("writing b.mtx")?;
    write_matrix_market(&column(&sys.x0), out.join("x0.mtx")).context("writing x0.mtx")?;
    write_json(&out.join("instance.json"), &sidecar)?;
    println!(
        "wrote {}-class instance n = {} to {}",
        sys.class,
        sys.n(),
        out.display()
    );
    Ok(0)
}

fn read_vector(path: &Path, n: usize) -> Result<DenseVector> {
    let m = read_matrix_market(path).with_context(|| format!("reading {}", path.display()))?;
    if m.cols() != 1 || m.rows() != n {
        bail!(
            "{} is {}x{}, expected {n}x1",
            path.display(),
            m.rows(),
            m.cols()
        );
    }
    Ok(m.column(0))
}

/// Loads `A.mtx`, `b.mtx`, optional `x0.mtx` and optional `instance.json`.
pub fn load_instance(dir: &Path) -> Result<SystemInstance> {
    let a = read_matrix_market(dir.join("A.mtx"))
        .with_context(|| format!("reading {}", dir.join("A.mtx").display()))?;
    if !a.is_square() {
        bail!(
            "A.mtx is {}x{}, expected a square matrix",
            a.rows(),
            a.cols()
        );
    }
    let n = a.rows();
    let b = read_vector(&dir.join("b.mtx"), n)?;
    let x0_path = dir.join("x0.mtx");
    let x0 = if x0_path.exists() {
        read_vector(&x0_path, n)?
    } else {
        DenseVector::zeros(n)
    };
    let sidecar_path = dir.join("instance.json");
    let (class, seed) = if sidecar_path.exists() {
        let text = std::fs::read_to_string(&sidecar_path)?;
        let s: InstanceSidecar = serde_json::from_str(&text)
            .with_context(|| format!("parsing {}", sidecar_path.display()))?;
        (s.class, Some(s.seed))
    } else {
        (MatrixClass::General, None)
    };
    let mut sys = SystemInstance::new(a, b, x0, class)?;
    sys.seed = seed;
    Ok(sys)
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    schema: &'static str,
    tool_version: &'static str,
    config: &'a RunConfig,
    report: &'a ConvergenceReport,
}

pub fn cmd_solve(cfg: &RunConfig) -> Result<i32> {
    let sys = match &cfg.input {
        Some(dir) => load_instance(dir)?,
        None => build_instance(cfg, cfg.seed)?,
    };
    let n = sys.n();
    if cfg.m == 0 || cfg.m >= n {
        bail!(
            "restart length must satisfy 1 <= m <= n - 1, got m = {} for n = {n}",
            cfg.m
        );
    }
    let report = restarted_gmres(&sys, &RestartConfig::new(cfg.m, cfg.max_cycles, cfg.rtol))?;
    let out = cfg.prepare_out()?;
    write_text(&out.join("convergence.csv"), &convergence_csv(&report))?;
    let doc = ReportDocument {
        schema: REPORT_SCHEMA,
        tool_version: TOOL_VERSION,
        config: cfg,
        report: &report,
    };
    write_json(&out.join("report.json"), &doc)?;
    let last = report
        .norms()
        .last()
        .copied()
        .unwrap_or(report.initial_norm);
    println!(
        "GMRES({}) on n = {n}: {} cycle(s), stop {:?}, ||r|| {:.3e} -> {:.3e}",
        cfg.m,
        report.cycles.len(),
        report.stop_reason,
        report.initial_norm,
        last
    );
    Ok(0)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<i32> {
    let doc = run_suites(cfg)?;
    let out = cfg.prepare_out()?;
    let path = out.join(format!("verdict-{}.json", cfg.suite));
    write_json(&path, &doc)?;
    for s in &doc.suites {
        println!(
            "{:<14} {:>4} checks  {:>4} passed  {:>4} failed",
            s.name, s.counts.total, s.counts.passed, s.counts.failed
        );
    }
    for r in doc.records.iter().filter(|r| !r.pass) {
        println!(
            "FAIL {} instance {} (n = {}, m = {}, seed {}): measured {:?}, tolerance {:e}{}",
            r.check,
            r.instance.id,
            r.instance.n,
            r.instance.m,
            r.instance.seed,
            r.measured,
            r.tolerance,
            r.note
                .as_deref()
                .map(|n| format!(" ({n})"))
                .unwrap_or_default()
        );
    }
    println!("verdict written to {}", path.display());
    Ok(if doc.passed() { 0 } else { 1 })
}

#[derive(Serialize)]
struct FigureDocument<'a> {
    schema: &'static str,
    tool_version: &'static str,
    figure: u8,
    config: &'a RunConfig,
    found: bool,
    seeds_tried: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kappa: Option<f64>,
    norms: Vec<f64>,
    ratios: Vec<f64>,
    /// Smallest `log‖r_{k+1}‖ − 2 log‖r_k‖ + log‖r_{k−1}‖` above the floor.
    #[serde(skip_serializing_if = "Option::is_none")]
    min_log_curvature: Option<f64>,
    /// Cycle `k` with `ρ_{k+1} < ρ_k − 1e-6`.
    #[serde(skip_serializing_if = "Option::is_none")]
    superlinear_cycle: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio_drop: Option<f64>,
}

fn figure_outputs(
    cfg: &RunConfig,
    which: u8,
    report: &ConvergenceReport,
    title: &str,
    highlight: Option<(usize, usize)>,
) -> Result<()> {
    let out = cfg.prepare_out()?;
    write_text(
        &out.join(format!("figure{which}.csv")),
        &convergence_csv(report),
    )?;
    let norms = report.norms();
    let chart = Chart {
        title,
        x_label: "cycle k",
        y_label: "||r_k||",
        values: &norms,
        highlight,
        highlight_label: highlight.map(|_| "superlinear segment"),
        version: TOOL_VERSION,
    };
    write_text(&out.join(format!("figure{which}.svg")), &chart.render())
}

/// First `k ≥ 1` with `ρ_{k+1} < ρ_k − SUPERLINEAR_DROP`, both ratios above the floor.
pub fn superlinear_cycle(norms: &[f64]) -> Option<(usize, f64)> {
    let ratios: Vec<f64> = norms.windows(2).map(|w| w[1] / w[0]).collect();
    (0..ratios.len().saturating_sub(1))
        .map(|j| (j + 1, ratios[j] - ratios[j + 1]))
        .find(|&(_, drop)| drop > SUPERLINEAR_DROP)
}

pub fn cmd_figure1(cfg: &RunConfig) -> Result<i32> {
    let sys = build_instance(cfg, cfg.seed)?;
    let report = restarted_gmres(&sys, &RestartConfig::new(cfg.m, cfg.max_cycles, cfg.rtol))?;
    let usable = usable_norms(&report, cfg.floor);
    let curvature = log_convexity(&usable).into_iter().reduce(f64::min);
    let title = format!(
        "GMRES({}) cycle convergence, {n}x{n} {} matrix, seed {}",
        cfg.m,
        sys.class,
        cfg.seed,
        n = cfg.n
    );
    figure_outputs(cfg, 1, &report, &title, None)?;
    let doc = FigureDocument {
        schema: FIGURE_SCHEMA,
        tool_version: TOOL_VERSION,
        figure: 1,
        config: cfg,
        found: true,
        seeds_tried: 1,
        seed: Some(cfg.seed),
        kappa: None,
        norms: report.norms(),
        ratios: report.ratios.clone(),
        min_log_curvature: curvature,
        superlinear_cycle: None,
        ratio_drop: None,
    };
    write_json(&cfg.out.join("figure1.json"), &doc)?;
    match curvature {
        Some(c) => println!(
            "figure 1: {} cycles, min log-curvature {c:.3e}",
            report.cycles.len()
        ),
        None => println!(
            "figure 1: {} cycles, too few to measure log-curvature",
            report.cycles.len()
        ),
    }
    Ok(0)
}

pub fn cmd_figure2(cfg: &RunConfig) -> Result<i32> {
    for (tried, seed) in (cfg.seed..).take(cfg.budget).enumerate() {
        let sys = build_instance(cfg, seed)?;
        let report = restarted_gmres(&sys, &RestartConfig::new(cfg.m, cfg.max_cycles, cfg.rtol))?;
        let usable = usable_norms(&report, cfg.floor);
        let Some((k, drop)) = superlinear_cycle(&usable) else {
            continue;
        };
        let kappa = sys.spectral.as_ref().map(|s| s.kappa);
        let title = format!(
            "GMRES({}) cycle convergence, {n}x{n} nonnormal matrix, kappa {}, seed {seed}",
            cfg.m,
            cfg.kappa,
            n = cfg.n
        );
        figure_outputs(cfg, 2, &report, &title, Some((k - 1, k + 1)))?;
        let doc = FigureDocument {
            schema: FIGURE_SCHEMA,
            tool_version: TOOL_VERSION,
            figure: 2,
            config: cfg,
            found: true,
            seeds_tried: tried + 1,
            seed: Some(seed),
            kappa,
            norms: report.norms(),
            ratios: report.ratios.clone(),
            min_log_curvature: log_convexity(&usable).into_iter().reduce(f64::min),
            superlinear_cycle: Some(k),
            ratio_drop: Some(drop),
        };
        write_json(&cfg.out.join("figure2.json"), &doc)?;
        println!(
            "figure 2: seed {seed} (after {} tries), ratio drops by {drop:.3e} after cycle {k}",
            tried + 1
        );
        return Ok(0);
    }
    let out = cfg.prepare_out()?;
    let doc = FigureDocument {
        schema: FIGURE_SCHEMA,
        tool_version: TOOL_VERSION,
        figure: 2,
        config: cfg,
        found: false,
        seeds_tried: cfg.budget,
        seed: None,
        kappa: None,
        norms: Vec::new(),
        ratios: Vec::new(),
        min_log_curvature: None,
        superlinear_cycle: None,
        ratio_drop: None,
    };
    write_json(&out.join("figure2.json"), &doc)?;
    eprintln!(
        "figure 2: not found within budget ({} seeds from {})",
        cfg.budget, cfg.seed
    );
    Ok(EXIT_NOT_FOUND)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn superlinear_detection() {
        assert_eq!(superlinear_cycle(&[1.0, 0.5, 0.25, 0.125]), None);
        let (k, drop) = superlinear_cycle(&[1.0, 0.9, 0.45, 0.2]).unwrap();
        assert_eq!(k, 1);
        assert!((drop - 0.4).abs() < 1e-12);
        assert_eq!(superlinear_cycle(&[1.0, 0.5]), None);
    }
}
