use serde::{Deserialize, Serialize};

use super::cycle::{run_cycle, CycleRecord};
use crate::dense::{DenseVector, C64};
use crate::error::{Error, Result};
use crate::instance::{MatrixClass, SystemInstance};

/// Residual norms below `EXACT_FLOOR ‖r_0‖` end the run; ratios between
/// roundoff-level numbers carry no information.
pub const EXACT_FLOOR: f64 = 1e-13;

#[derive(Clone, Debug)]
pub struct RestartConfig {
    pub m: usize,
    pub max_cycles: usize,
    /// Stop once `‖r_k‖ ≤ rtol ‖r_0‖`.
    pub rtol: f64,
    /// Keep every exit residual vector in the report.
    pub keep_residuals: bool,
}

impl RestartConfig {
    pub fn new(m: usize, max_cycles: usize, rtol: f64) -> Self {
        Self {
            m,
            max_cycles,
            rtol,
            keep_residuals: false,
        }
    }

    pub fn keep_residuals(mut self, keep: bool) -> Self {
        self.keep_residuals = keep;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    Tolerance,
    MaxCycles,
    ExactConvergence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemDescriptor {
    pub n: usize,
    pub m: usize,
    pub class: MatrixClass,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub system: SystemDescriptor,
    /// `‖r_0‖`.
    pub initial_norm: f64,
    pub cycles: Vec<CycleRecord>,
    /// `ρ_k = ‖r_k‖ / ‖r_{k−1}‖`, one per cycle.
    pub ratios: Vec<f64>,
    pub stop_reason: StopReason,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub initial_residual: Option<DenseVector>,
    pub solution: DenseVector,
}

impl ConvergenceReport {
    /// `‖r_0‖, ‖r_1‖, …`.
    pub fn norms(&self) -> Vec<f64> {
        std::iter::once(self.initial_norm)
            .chain(self.cycles.iter().map(|c| c.exit_norm))
            .collect()
    }

    /// `r_0, r_1, …` when the run kept its residual vectors.
    pub fn residuals(&self) -> Option<Vec<&DenseVector>> {
        let mut out = vec![self.initial_residual.as_ref()?];
        for c in &self.cycles {
            out.push(c.exit_residual.as_ref()?);
        }
        Some(out)
    }
}

/// GMRES(m): chains cycles, each starting from the previous exit residual.
pub fn restarted_gmres(sys: &SystemInstance, cfg: &RestartConfig) -> Result<ConvergenceReport> {
    let n = sys.n();
    if cfg.m == 0 || cfg.m >= n {
        return Err(Error::ContractViolation(format!(
            "restart length must satisfy 1 <= m <= n - 1, got m = {}, n = {n}",
            cfg.m
        )));
    }
    if cfg.max_cycles == 0 {
        return Err(Error::ContractViolation(
            "max_cycles must be at least 1".into(),
        ));
    }
    if !(cfg.rtol >= 0.0) {
        return Err(Error::ContractViolation(format!(
            "rtol must be >= 0, got {}",
            cfg.rtol
        )));
    }
    let r0 = sys.initial_residual();
    let r0_norm = r0.norm();
    if r0_norm <= EXACT_FLOOR * sys.b.norm() {
        return Err(Error::ContractViolation(
            "initial residual is zero; the initial guess already solves the system".into(),
        ));
    }

    let mut x = sys.x0.clone();
    let mut r = r0.clone();
    let mut cycles = Vec::new();
    let mut stop_reason = StopReason::MaxCycles;
    for k in 1..=cfg.max_cycles {
        let out = run_cycle(&sys.a, &r, cfg.m, k)?;
        x = x.axpy(C64::new(1.0, 0.0), &out.correction)?;
        let mut record = out.record;
        let exit_norm = record.exit_norm;
        let exact = record.exact_convergence;
        if cfg.keep_residuals {
            record.exit_residual = Some(out.exit_residual.clone());
        }
        cycles.push(record);
        r = out.exit_residual;
        if exact || exit_norm <= EXACT_FLOOR * r0_norm {
            stop_reason = StopReason::ExactConvergence;
            break;
        }
        if exit_norm <= cfg.rtol * r0_norm {
            stop_reason = StopReason::Tolerance;
            break;
        }
    }
    let ratios = cycles.iter().map(CycleRecord::ratio).collect();
    Ok(ConvergenceReport {
        system: SystemDescriptor {
            n,
            m: cfg.m,
            class: sys.class,
            seed: sys.seed,
        },
        initial_norm: r0_norm,
        cycles,
        ratios,
        stop_reason,
        initial_residual: cfg.keep_residuals.then_some(r0),
        solution: x,
    })
}
