use serde::{Deserialize, Serialize};

use super::krylov::{build_krylov_matrix, KrylovBundle};
use crate::dense::{DenseMatrix, DenseVector, C64};
use crate::error::{Error, Result};
use crate::gmres::gmres_cycle;
use crate::instance::{MatrixClass, SpectralForm};

#[derive(Clone, Debug)]
pub struct PseudoinverseIdentity {
    /// `‖(K†)^H e_1 − r_exit/‖r_exit‖²‖ · ‖r_exit‖`.
    pub defect: f64,
    /// `r = v / ‖v‖²` rebuilt from `v = (K†)^H e_1`.
    pub reconstructed: DenseVector,
}

/// The first column of `(K†)^H` is the next residual scaled by `1/‖r_exit‖²`.
pub fn lemma1_check(bundle: &KrylovBundle, r_exit: &DenseVector) -> Result<PseudoinverseIdentity> {
    let nrm = r_exit.norm();
    if nrm == 0.0 {
        return Err(Error::ContractViolation(
            "the exit residual is zero; GMRES converged exactly".into(),
        ));
    }
    let v = bundle.pinv_adjoint_e1()?;
    let target = r_exit.scaled(C64::new(1.0 / (nrm * nrm), 0.0));
    let defect = v.sub(&target)?.norm() * nrm;
    let vn = v.norm();
    let reconstructed = v.scaled(C64::new(1.0 / (vn * vn), 0.0));
    Ok(PseudoinverseIdentity {
        defect,
        reconstructed,
    })
}

/// `‖K − V D Z‖ / ‖K‖` with `K` built by matrix–vector products and
/// `d = V^{-1} r`.
pub fn lemma2_check(
    a: &DenseMatrix,
    spectral: &SpectralForm,
    r: &DenseVector,
    m: usize,
) -> Result<f64> {
    let bundle = build_krylov_matrix(a, r, m)?.with_factors(spectral)?;
    Ok(bundle.factorization_defect().expect("factors attached"))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjugateRuns {
    /// `‖r_m‖` from `m` steps on `A`.
    pub norm_a: f64,
    /// `‖r̂_m‖` from `m` steps on `A^H`.
    pub norm_ah: f64,
    /// `‖conj(p_A) − p_{A^H}‖` over coefficient vectors.
    pub conjugation_defect: f64,
}

/// Runs one cycle on `A` and on `A^H` from the same residual.
pub fn lemma3_check(
    a: &DenseMatrix,
    class: MatrixClass,
    r0: &DenseVector,
    m: usize,
) -> Result<ConjugateRuns> {
    if !class.is_normal() {
        return Err(Error::ContractViolation(format!(
            "A and A^H runs are only comparable for normal A, got {class}"
        )));
    }
    let run_a = gmres_cycle(a, r0, m)?;
    let run_ah = gmres_cycle(&a.adjoint(), r0, m)?;
    let conjugation_defect = match (&run_a.polynomial, &run_ah.polynomial) {
        (Some(p), Some(q)) => p.conjugate().coefficient_distance(q),
        _ => {
            return Err(Error::Conditioning(format!(
                "residual polynomial unavailable at m = {m}"
            )));
        }
    };
    Ok(ConjugateRuns {
        norm_a: run_a.exit_norm,
        norm_ah: run_ah.exit_norm,
        conjugation_defect,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NullSpaceSplit {
    /// `max_j |K_j^H r_prev − ‖r_cur‖² δ_{j0}| / (‖K_j‖ ‖r_prev‖)` with
    /// `K = K(A^H, r_cur)`.
    pub e1_defect: f64,
    /// `‖w‖` in `r_prev = ‖r_cur‖² (K^H)† e_1 + w`.
    pub w_norm: f64,
    /// `|‖r_prev‖² − ‖r_cur‖⁴ ‖(K^H)† e_1‖² − ‖w‖²| / ‖r_prev‖²`.
    pub pythagoras_defect: f64,
    /// `1 / ‖(K†)^H e_1‖`, the exit norm of a cycle on `A^H` from `r_cur`.
    pub conjugate_exit_norm: f64,
}

/// Treats `r_prev` as a solution of `K^H(A^H, r_cur) x = ‖r_cur‖² e_1` and
/// splits it into the minimum-norm solution plus a null-space part `w`.
/// Conditioning error when `K(A^H, r_cur)` is numerically rank deficient.
pub fn undersys_check(
    a: &DenseMatrix,
    r_prev: &DenseVector,
    r_cur: &DenseVector,
    m: usize,
) -> Result<NullSpaceSplit> {
    let cur2 = r_cur.norm().powi(2);
    let prev = r_prev.norm();
    if cur2 == 0.0 || prev == 0.0 {
        return Err(Error::ContractViolation(
            "consecutive residuals must be nonzero".into(),
        ));
    }
    let bundle = build_krylov_matrix(&a.adjoint(), r_cur, m)?;

    let mut e1_defect: f64 = 0.0;
    for j in 0..=m {
        let col = bundle.k.column(j);
        let target = if j == 0 { cur2 } else { 0.0 };
        let dev = (col.dot(r_prev) - C64::new(target, 0.0)).norm() / (col.norm() * prev);
        e1_defect = e1_defect.max(dev);
    }

    if !bundle.is_full_rank() {
        return Err(Error::Conditioning(format!(
            "K(A^H, r) has numerical rank {} < {}",
            bundle.rank,
            m + 1
        )));
    }
    // (K†)^H e_1 = r̂ / ‖r̂‖² with r̂ the exit residual of a cycle on A^H;
    // the Arnoldi route avoids inverting the explicit Krylov matrix.
    let hat = gmres_cycle(&a.adjoint(), r_cur, m)?
        .exit_residual
        .expect("gmres_cycle keeps its exit residual");
    let hat_norm = hat.norm();
    if hat_norm == 0.0 {
        return Err(Error::Conditioning(
            "the cycle on A^H converged exactly".into(),
        ));
    }
    let v = hat.scaled(C64::new(1.0 / (hat_norm * hat_norm), 0.0));
    let x = v.scaled(C64::new(cur2, 0.0));
    let w = r_prev.sub(&x)?;
    let w_norm = w.norm();
    let pythagoras_defect =
        (prev * prev - x.norm().powi(2) - w_norm * w_norm).abs() / (prev * prev);
    Ok(NullSpaceSplit {
        e1_defect,
        w_norm,
        pythagoras_defect,
        conjugate_exit_norm: 1.0 / v.norm(),
    })
}
