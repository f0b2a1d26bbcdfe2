//! Seeded instance generators for each matrix class.
//!
//! Every generator draws, in order: the eigenvalues, the unitary factor(s),
//! then the unit-norm right-hand side. `x0` is always zero.

use super::{SeededRng, SpectrumSpec};
use crate::dense::{svd, DenseMatrix, DenseVector, C64};
use crate::error::{Error, Result};
use crate::instance::{
    hermitian_defect, normality_defect, skew_hermitian_defect, MatrixClass, SpectralForm,
    SystemInstance,
};

/// Largest admissible target `κ(V)` for [`gen_diagonalizable`].
pub const MAX_KAPPA: f64 = 1e6;

/// Class-defect tolerance applied to every generated instance.
pub const CLASS_DEFECT_TOL: f64 = 1e-12;

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::ContractViolation(format!(
            "instances need n >= 2, got {n}"
        )));
    }
    Ok(())
}

/// `U diag(λ) W` as a dense product.
fn scale_columns(u: &DenseMatrix, d: &[C64]) -> DenseMatrix {
    DenseMatrix::from_fn(u.rows(), u.cols(), |i, j| u[(i, j)] * d[j])
}

fn unitary_instance(
    n: usize,
    spec: &SpectrumSpec,
    seed: u64,
    class: MatrixClass,
) -> Result<SystemInstance> {
    check_size(n)?;
    let mut rng = SeededRng::new(seed);
    let lambda = spec.sample(n, &mut rng)?;
    let v = rng.haar_unitary(n);
    let b = rng.unit_vector(n);
    let vh = v.adjoint();
    let mut a = scale_columns(&v, &lambda).matmul(&vh)?;
    match class {
        MatrixClass::Hermitian => {
            a = a
                .axpy(C64::new(1.0, 0.0), &a.adjoint())?
                .scaled(C64::new(0.5, 0.0))
        }
        MatrixClass::SkewHermitian => a = a.sub(&a.adjoint())?.scaled(C64::new(0.5, 0.0)),
        _ => {}
    }
    let ortho = v.orthonormality_defect();
    if ortho > CLASS_DEFECT_TOL * n as f64 {
        return Err(Error::Conditioning(format!(
            "eigenvector basis orthonormality defect {ortho:.3e}"
        )));
    }
    let class_defect = match class {
        MatrixClass::Hermitian => hermitian_defect(&a),
        MatrixClass::SkewHermitian => skew_hermitian_defect(&a),
        _ => normality_defect(&a),
    };
    if class_defect > CLASS_DEFECT_TOL {
        return Err(Error::Conditioning(format!(
            "{class} class defect {class_defect:.3e}"
        )));
    }
    let form = SpectralForm {
        v,
        v_inv: vh,
        lambda: DenseVector::from(lambda),
        class,
        kappa: 1.0,
        sigma_min: 1.0,
    };
    let mut inst = SystemInstance::new(a, b, DenseVector::zeros(n), class)?.with_spectral(form)?;
    inst.seed = Some(seed);
    inst.spectrum = Some(spec.clone());
    Ok(inst)
}

/// `A = V Λ V^H` with Haar-unitary `V`.
pub fn gen_normal(n: usize, spec: &SpectrumSpec, seed: u64) -> Result<SystemInstance> {
    unitary_instance(n, spec, seed, MatrixClass::Normal)
}

/// Hermitian instance from a real spectrum; `A` is symmetrized exactly.
pub fn gen_hermitian(n: usize, spec: &SpectrumSpec, seed: u64) -> Result<SystemInstance> {
    if !spec.is_real() {
        return Err(Error::ContractViolation(format!(
            "hermitian instances need a real spectrum, got {spec}"
        )));
    }
    unitary_instance(n, spec, seed, MatrixClass::Hermitian)
}

/// Skew-Hermitian instance from a purely imaginary spectrum.
pub fn gen_skew_hermitian(n: usize, spec: &SpectrumSpec, seed: u64) -> Result<SystemInstance> {
    if !spec.is_imaginary() {
        return Err(Error::ContractViolation(format!(
            "skew-hermitian instances need an imaginary spectrum, got {spec}"
        )));
    }
    unitary_instance(n, spec, seed, MatrixClass::SkewHermitian)
}

/// `A = V Λ V^{-1}` with `V = U₁ diag(g) U₂`, where `g_i = κ^{-i/(n-1)}`
/// grades geometrically from 1 down to `1/κ`. `V^{-1} = U₂^H diag(1/g) U₁^H`
/// is formed from the factors, never by inversion.
///
/// `κ = 1` yields a unitary `V` and a normal-class instance.
pub fn gen_diagonalizable(
    n: usize,
    spec: &SpectrumSpec,
    kappa: f64,
    seed: u64,
) -> Result<SystemInstance> {
    check_size(n)?;
    if !(kappa >= 1.0) {
        return Err(Error::ContractViolation(format!(
            "target condition number must be >= 1, got {kappa}"
        )));
    }
    if kappa > MAX_KAPPA {
        return Err(Error::Conditioning(format!(
            "target condition number {kappa:e} exceeds the cap {MAX_KAPPA:e}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let lambda = spec.sample(n, &mut rng)?;
    let u1 = rng.haar_unitary(n);
    let u2 = rng.haar_unitary(n);
    let b = rng.unit_vector(n);

    let grades: Vec<f64> = (0..n)
        .map(|i| kappa.powf(-(i as f64) / (n - 1) as f64))
        .collect();
    let g: Vec<C64> = grades.iter().map(|&x| C64::new(x, 0.0)).collect();
    let ginv: Vec<C64> = grades.iter().map(|&x| C64::new(1.0 / x, 0.0)).collect();
    let v = scale_columns(&u1, &g).matmul(&u2)?;
    let v_inv = scale_columns(&u2.adjoint(), &ginv).matmul(&u1.adjoint())?;
    let a = scale_columns(&v, &lambda).matmul(&v_inv)?;

    let s = svd(&v)?;
    let achieved = s.condition_number();
    if (achieved / kappa - 1.0).abs() > 0.05 {
        return Err(Error::Conditioning(format!(
            "achieved κ(V) = {achieved:.6e} for target {kappa:e}"
        )));
    }
    let class = if kappa == 1.0 {
        MatrixClass::Normal
    } else {
        MatrixClass::DiagonalizableNonnormal
    };
    let form = SpectralForm {
        v,
        v_inv,
        lambda: DenseVector::from(lambda),
        class,
        kappa: achieved,
        sigma_min: s.sigma_min(),
    };
    let defect = form.reconstruction_defect(&a);
    if defect > 1e-8 {
        return Err(Error::Conditioning(format!(
            "reconstruction defect {defect:.3e} at κ = {kappa:e}"
        )));
    }
    let mut inst = SystemInstance::new(a, b, DenseVector::zeros(n), class)?.with_spectral(form)?;
    inst.seed = Some(seed);
    inst.spectrum = Some(spec.clone());
    Ok(inst)
}
