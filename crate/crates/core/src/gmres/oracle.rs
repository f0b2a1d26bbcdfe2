//! Arnoldi-free reference for a single GMRES cycle on a normal matrix.
//!
//! With `A = V Λ V^H` and `d = V^H r`, `‖p(A) r‖² = Σ_i |p(λ_i)|² |d_i|²`, so
//! the GMRES minimum over `p ∈ P_m, p(0) = 1` is the weighted Vandermonde
//! least-squares problem `min_c ‖d + D Z[:, 1..] c‖`.

use super::ResidualPolynomial;
use crate::dense::{least_squares_scaled, vandermonde, DenseMatrix, DenseVector, C64};
use crate::error::{Error, Result};
use crate::instance::SpectralForm;

#[derive(Clone, Debug)]
pub struct OracleMinimum {
    pub norm: f64,
    pub polynomial: ResidualPolynomial,
    /// The minimum is zero: `r` lies in an invariant subspace of dimension
    /// at most `m`.
    pub exact_convergence: bool,
}

pub fn oracle_min_residual(
    spectral: &SpectralForm,
    r_entry: &DenseVector,
    m: usize,
) -> Result<OracleMinimum> {
    if !spectral.class.is_normal() {
        return Err(Error::ContractViolation(format!(
            "the spectral oracle needs a unitary eigenvector basis, got class {}",
            spectral.class
        )));
    }
    if m == 0 {
        return Err(Error::ContractViolation("oracle needs m >= 1".into()));
    }
    let d = spectral.v.adjoint().matvec(r_entry)?;
    let n = d.dim();
    let z = vandermonde(&spectral.lambda, m);

    let mut degree = m;
    loop {
        // Columns d_i λ_i^j for j = 1..=degree.
        let w = DenseMatrix::from_fn(n, degree, |i, j| d[i] * z[(i, j + 1)]);
        let neg_d = d.scaled(C64::new(-1.0, 0.0));
        match least_squares_scaled(&w, &neg_d) {
            Ok(c) => {
                let residual = d.add(&w.apply(&c))?;
                let mut coeffs = vec![C64::new(1.0, 0.0)];
                coeffs.extend_from_slice(&c);
                coeffs.resize(m + 1, C64::new(0.0, 0.0));
                let polynomial = ResidualPolynomial::new(coeffs)?;
                return Ok(if degree < m {
                    OracleMinimum {
                        norm: 0.0,
                        polynomial,
                        exact_convergence: true,
                    }
                } else {
                    OracleMinimum {
                        norm: residual.norm(),
                        polynomial,
                        exact_convergence: false,
                    }
                });
            }
            // The columns are Krylov vectors of Λ on d, so the first `rank`
            // of them span the whole column space and `d` lies in it.
            Err(Error::RankDeficient { rank, .. }) if rank >= 1 && rank < degree => degree = rank,
            Err(Error::RankDeficient { .. }) => {
                return Err(Error::Conditioning(
                    "weighted Vandermonde matrix has no usable columns".into(),
                ))
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::DenseMatrix;
    use crate::instance::MatrixClass;

    fn diagonal_form(lambda: &[f64]) -> SpectralForm {
        let n = lambda.len();
        SpectralForm {
            v: DenseMatrix::identity(n),
            v_inv: DenseMatrix::identity(n),
            lambda: DenseVector::from_real(lambda),
            class: MatrixClass::Normal,
            kappa: 1.0,
            sigma_min: 1.0,
        }
    }

    #[test]
    fn symmetric_pair_stagnates() {
        let s = 1.0 / 2f64.sqrt();
        let o = oracle_min_residual(
            &diagonal_form(&[1.0, -1.0]),
            &DenseVector::from_real(&[s, s]),
            1,
        )
        .unwrap();
        assert!((o.norm - 1.0).abs() < 1e-15);
        assert!(o.polynomial.coefficients()[1].norm() < 1e-15);
    }

    #[test]
    fn identity_gives_one_minus_z() {
        let r = DenseVector::from_real(&[0.5, 0.5, 0.5, 0.5]);
        for m in 1..=3 {
            let o = oracle_min_residual(&diagonal_form(&[1.0; 4]), &r, m).unwrap();
            assert!(o.norm < 1e-15);
            let c = o.polynomial.coefficients();
            assert!((c[1] + C64::new(1.0, 0.0)).norm() < 1e-15);
            assert!(c[2..].iter().all(|x| x.norm() == 0.0));
        }
    }

    #[test]
    fn rejects_nonnormal_form() {
        let mut f = diagonal_form(&[1.0, 2.0]);
        f.class = MatrixClass::DiagonalizableNonnormal;
        assert!(oracle_min_residual(&f, &DenseVector::from_real(&[1.0, 1.0]), 1).is_err());
    }
}
