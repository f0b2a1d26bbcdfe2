//! Ratio monotonicity of GMRES(m) and its consequences.

use serde::{Deserialize, Serialize};

use super::lemmas::{undersys_check, NullSpaceSplit};
use crate::dense::{svd, DenseMatrix, DenseVector, C64};
use crate::error::{Error, Result};
use crate::gmres::{apply_polynomial, ConvergenceReport};
use crate::instance::{MatrixClass, SystemInstance};

/// Absolute tolerance on ratio comparisons.
pub const RATIO_TOL: f64 = 1e-8;

/// Cycles with `‖r_k‖ ≤ USABLE_FLOOR ‖r_0‖` are left out of ratio analysis.
pub const USABLE_FLOOR: f64 = 1e-8;

/// Tolerance for `α − 1` and `β_k / ‖r_k‖` when `V` is unitary.
pub const UNITARY_BOUND_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct BoundReport {
    /// `ρ_k` for cycles above the floor.
    pub ratios: Vec<f64>,
    /// `ρ_{k+1} − ρ_k`.
    pub slacks: Vec<f64>,
    pub w_norms: Vec<f64>,
    /// `‖r̂_{k+1}‖` from cycles on `A^H`.
    pub conjugate_norms: Vec<f64>,
    /// `1 / σ_min(V)²`.
    pub alpha: Option<f64>,
    /// `‖p_k(A) (I − V V^H) r_k‖`.
    pub betas: Vec<f64>,
    /// `α (‖r_{k+1}‖ + β_k) / ‖r_k‖ − ρ_k`.
    pub bound_slacks: Vec<f64>,
    pub tolerance: f64,
    pub verdicts: Vec<bool>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|&v| v)
    }

    pub fn min_slack(&self) -> Option<f64> {
        self.slacks
            .iter()
            .chain(&self.bound_slacks)
            .copied()
            .reduce(f64::min)
    }
}

/// Norms `‖r_0‖, ‖r_1‖, …` truncated to the cycles above `floor ‖r_0‖`.
pub fn usable_norms(report: &ConvergenceReport, floor: f64) -> Vec<f64> {
    let norms = report.norms();
    let cut = floor * norms[0];
    norms.iter().take_while(|&&x| x > cut).copied().collect()
}

fn require_normal(class: MatrixClass, what: &str) -> Result<()> {
    if !class.is_normal() {
        return Err(Error::ContractViolation(format!(
            "{what} requires a normal matrix, got class {class}"
        )));
    }
    Ok(())
}

/// Checks `ρ_k ≤ ρ_{k+1} + RATIO_TOL` over consecutive cycles above the floor.
pub fn theorem1_check(report: &ConvergenceReport, floor: f64) -> Result<BoundReport> {
    require_normal(report.system.class, "ratio monotonicity")?;
    let norms = usable_norms(report, floor);
    if norms.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} cycle(s) above the floor, need at least 2",
            norms.len().saturating_sub(1)
        )));
    }
    let ratios: Vec<f64> = norms.windows(2).map(|w| w[1] / w[0]).collect();
    let slacks: Vec<f64> = ratios.windows(2).map(|w| w[1] - w[0]).collect();
    let verdicts = slacks.iter().map(|&s| s >= -RATIO_TOL).collect();
    Ok(BoundReport {
        ratios,
        slacks,
        tolerance: RATIO_TOL,
        verdicts,
        ..Default::default()
    })
}

/// Second differences `log‖r_{k+1}‖ − 2 log‖r_k‖ + log‖r_{k−1}‖` above the
/// floor; all are nonnegative exactly when the ratios are nondecreasing.
pub fn log_convexity(norms: &[f64]) -> Vec<f64> {
    norms
        .windows(3)
        .map(|w| w[2].ln() - 2.0 * w[1].ln() + w[0].ln())
        .collect()
}

fn require_full_restart(report: &ConvergenceReport) -> Result<()> {
    if report.system.m + 1 != report.system.n {
        return Err(Error::ContractViolation(format!(
            "the equality case needs m = n − 1, got m = {} for n = {}",
            report.system.m, report.system.n
        )));
    }
    Ok(())
}

/// Largest relative error of `‖r_{k+1}‖ = ‖r_1‖ (‖r_1‖/‖r_0‖)^k` over the
/// cycles above [`USABLE_FLOOR`].
pub fn corollary_n1_check(report: &ConvergenceReport) -> Result<f64> {
    require_normal(report.system.class, "the GMRES(n−1) formula")?;
    require_full_restart(report)?;
    let norms = usable_norms(report, USABLE_FLOOR);
    if norms.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} cycle(s) above the floor, need at least 3",
            norms.len().saturating_sub(1)
        )));
    }
    let (r0, r1) = (norms[0], norms[1]);
    let q = r1 / r0;
    Ok((2..norms.len())
        .map(|k| {
            let predicted = r1 * q.powi(k as i32 - 1);
            (predicted - norms[k]).abs() / norms[k]
        })
        .fold(0.0, f64::max))
}

/// [`undersys_check`] on every consecutive pair `(r_{k−1}, r_k)`, `k ≥ 1`,
/// whose successor `r_{k+1}` is above [`USABLE_FLOOR`]. The minimum-norm part
/// is rebuilt from a cycle that starts at `r_k`, so its accuracy degrades
/// once that cycle's exit reaches roundoff.
pub fn null_space_chain(
    a: &DenseMatrix,
    report: &ConvergenceReport,
) -> Result<Vec<NullSpaceSplit>> {
    let residuals = report.residuals().ok_or_else(|| {
        Error::ContractViolation("the run did not keep its residual vectors".into())
    })?;
    let usable = usable_norms(report, USABLE_FLOOR).len();
    (1..usable.saturating_sub(1))
        .map(|k| undersys_check(a, residuals[k - 1], residuals[k], report.system.m))
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlternatingResiduals {
    /// `max_k ‖r_{k+1} − α_k r_{k−1}‖ / ‖r_{k+1}‖`; 0 when no `k` qualifies.
    pub max_defect: f64,
    /// `α_k = ‖r_{k+1}‖² / ‖r_k‖²`.
    pub alphas: Vec<f64>,
}

impl AlternatingResiduals {
    pub fn alphas_in_unit_interval(&self) -> bool {
        self.alphas.iter().all(|&a| a > 0.0 && a <= 1.0)
    }
}

/// Checks `r_{k+1} = α_k r_{k−1}` for Hermitian or skew-Hermitian GMRES(n−1).
/// The report must have been produced with residual vectors kept.
pub fn corollary_alt_check(report: &ConvergenceReport) -> Result<AlternatingResiduals> {
    if !matches!(
        report.system.class,
        MatrixClass::Hermitian | MatrixClass::SkewHermitian
    ) {
        return Err(Error::ContractViolation(format!(
            "alternating residuals need a Hermitian or skew-Hermitian matrix, got {}",
            report.system.class
        )));
    }
    require_full_restart(report)?;
    let residuals = report.residuals().ok_or_else(|| {
        Error::ContractViolation("the run did not keep its residual vectors".into())
    })?;
    let usable = usable_norms(report, USABLE_FLOOR).len();
    let mut max_defect: f64 = 0.0;
    let mut alphas = Vec::new();
    for k in 1..usable.saturating_sub(1) {
        let (prev, cur, next) = (residuals[k - 1], residuals[k], residuals[k + 1]);
        let alpha = (next.norm() / cur.norm()).powi(2);
        let defect = next.sub(&prev.scaled(C64::new(alpha, 0.0)))?.norm() / next.norm();
        max_defect = max_defect.max(defect);
        alphas.push(alpha);
    }
    Ok(AlternatingResiduals { max_defect, alphas })
}

/// Checks `ρ_k ≤ α (‖r_{k+1}‖ + β_k) / ‖r_k‖` with `α = 1/σ_min(V)²`.
///
/// For a unitary `V` it also asserts `α − 1 ≤ 1e-10` and
/// `β_k ≤ 1e-10 ‖r_k‖`, one verdict each.
pub fn lemma4_check(sys: &SystemInstance, report: &ConvergenceReport) -> Result<BoundReport> {
    let spectral = sys.spectral.as_ref().ok_or_else(|| {
        Error::ContractViolation("the nonnormal bound needs the eigenvector matrix V".into())
    })?;
    let residuals = report.residuals().ok_or_else(|| {
        Error::ContractViolation("the run did not keep its residual vectors".into())
    })?;
    let sigma_min = svd(&spectral.v)?.sigma_min();
    if sigma_min == 0.0 {
        return Err(Error::Conditioning("V is singular".into()));
    }
    let alpha = 1.0 / (sigma_min * sigma_min);
    let n = sys.n();
    let projector = DenseMatrix::identity(n).sub(&spectral.v.matmul(&spectral.v.adjoint())?)?;

    let usable = usable_norms(report, USABLE_FLOOR).len();
    let mut out = BoundReport {
        alpha: Some(alpha),
        tolerance: RATIO_TOL,
        ..Default::default()
    };
    // Pairs (k, k+1) with r_{k+1} above the floor, 1 ≤ k.
    for k in 1..usable.saturating_sub(1) {
        let (prev, cur, next) = (residuals[k - 1], residuals[k], residuals[k + 1]);
        let poly = report.cycles[k].polynomial.as_ref().ok_or_else(|| {
            Error::Conditioning(format!("no residual polynomial for cycle {}", k + 1))
        })?;
        let leak: DenseVector = projector.matvec(cur)?;
        let beta = apply_polynomial(poly, &sys.a, &leak)?.norm();
        let ratio = cur.norm() / prev.norm();
        let rhs = alpha * (next.norm() + beta) / cur.norm();
        out.ratios.push(ratio);
        out.betas.push(beta);
        out.bound_slacks.push(rhs - ratio);
        out.verdicts.push(rhs - ratio >= -RATIO_TOL);
        if spectral.class.is_normal() {
            out.verdicts.push(beta <= UNITARY_BOUND_TOL * cur.norm());
        }
    }
    if spectral.class.is_normal() {
        out.verdicts.push(alpha - 1.0 <= UNITARY_BOUND_TOL);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmres::{ConvergenceReport, CycleRecord, StopReason, SystemDescriptor};

    /// Report whose norms are given directly.
    pub(crate) fn synthetic(
        norms: &[f64],
        class: MatrixClass,
        n: usize,
        m: usize,
    ) -> ConvergenceReport {
        let cycles = norms
            .windows(2)
            .enumerate()
            .map(|(k, w)| CycleRecord {
                index: k + 1,
                entry_norm: w[0],
                exit_norm: w[1],
                iteration_norms: vec![w[0], w[1]],
                polynomial: None,
                exit_residual: None,
                exact_convergence: false,
                steps: m,
            })
            .collect::<Vec<_>>();
        ConvergenceReport {
            system: SystemDescriptor {
                n,
                m,
                class,
                seed: None,
            },
            initial_norm: norms[0],
            ratios: cycles.iter().map(CycleRecord::ratio).collect(),
            cycles,
            stop_reason: StopReason::MaxCycles,
            initial_residual: None,
            solution: DenseVector::zeros(n),
        }
    }

    #[test]
    fn geometric_decay_is_the_equality_case() {
        let norms: Vec<f64> = (0..8).map(|k| 0.5f64.powi(k)).collect();
        let rep = synthetic(&norms, MatrixClass::Normal, 8, 7);
        let b = theorem1_check(&rep, USABLE_FLOOR).unwrap();
        assert!(b.passed());
        assert!(b.slacks.iter().all(|s| s.abs() < 1e-15));
        assert!(corollary_n1_check(&rep).unwrap() < 1e-14);
        assert!(log_convexity(&norms).iter().all(|d| d.abs() < 1e-12));
    }

    #[test]
    fn decreasing_ratio_fails() {
        let rep = synthetic(&[1.0, 0.9, 0.1, 0.05], MatrixClass::Normal, 4, 1);
        let b = theorem1_check(&rep, USABLE_FLOOR).unwrap();
        assert!(!b.passed());
        assert_eq!(b.verdicts, vec![false, true]);
    }

    #[test]
    fn floor_and_data_requirements() {
        let rep = synthetic(&[1.0, 0.5, 1e-9, 1e-10], MatrixClass::Normal, 4, 1);
        assert!(matches!(
            theorem1_check(&rep, USABLE_FLOOR),
            Err(Error::InsufficientData(_))
        ));
        let rep = synthetic(
            &[1.0, 0.5, 0.25],
            MatrixClass::DiagonalizableNonnormal,
            4,
            1,
        );
        assert!(matches!(
            theorem1_check(&rep, USABLE_FLOOR),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn stagnation_is_an_exact_prediction() {
        let rep = synthetic(&[1.0; 6], MatrixClass::Normal, 6, 5);
        assert_eq!(corollary_n1_check(&rep).unwrap(), 0.0);
        assert!(theorem1_check(&rep, USABLE_FLOOR).unwrap().passed());
    }

    #[test]
    fn corollary_needs_full_restart() {
        let rep = synthetic(&[1.0, 0.5, 0.25, 0.125], MatrixClass::Normal, 6, 2);
        assert!(matches!(
            corollary_n1_check(&rep),
            Err(Error::ContractViolation(_))
        ));
    }
}
