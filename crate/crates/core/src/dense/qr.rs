//! Householder QR.
//!
//! Each reflector is `H = I - 2 v v^H / (v^H v)` with `v = x - alpha e_1` and
//! `alpha = -sign(x_0) ‖x‖`, where `sign(z) = z/|z|` (and 1 for `z = 0`).
//! The resulting `R` diagonal is therefore complex in general; callers that
//! need a unique factorization normalize phases themselves.

use super::matrix::{dotc, norm2, DenseMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Thin QR factors: `q` is `rows x cols` with orthonormal columns and `r` is
/// `cols x cols` upper triangular.
#[derive(Clone, Debug)]
pub struct QrFactors {
    pub q: DenseMatrix,
    pub r: DenseMatrix,
}

impl QrFactors {
    /// Number of `|R_jj|` at or above `rel_tol * max_j |R_jj|`.
    pub fn numerical_rank(&self, rel_tol: f64) -> usize {
        let diag: Vec<f64> = self.r.diagonal().iter().map(|z| z.norm()).collect();
        let max = diag.iter().cloned().fold(0.0, f64::max);
        if max == 0.0 {
            return 0;
        }
        diag.iter().filter(|&&d| d >= rel_tol * max).count()
    }
}

pub(crate) fn phase(z: C64) -> C64 {
    let r = z.norm();
    if r == 0.0 {
        ONE
    } else {
        z / r
    }
}

pub fn householder_qr(a: &DenseMatrix) -> Result<QrFactors> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Err(Error::ContractViolation(format!(
            "QR needs rows >= cols, got {m}x{n}"
        )));
    }
    let mut work = a.clone();
    let mut reflectors: Vec<Option<Vec<C64>>> = Vec::with_capacity(n);
    for k in 0..n {
        let x = &work.col(k)[k..];
        let xnorm = norm2(x);
        if xnorm == 0.0 {
            reflectors.push(None);
            continue;
        }
        let alpha = -phase(x[0]) * xnorm;
        let mut v = x.to_vec();
        v[0] -= alpha;
        let vv = dotc(&v, &v).re;
        if vv == 0.0 {
            reflectors.push(None);
            continue;
        }
        for j in k..n {
            let col = &mut work.col_mut(j)[k..];
            let s = dotc(&v, col) * (2.0 / vv);
            for (c, &vi) in col.iter_mut().zip(&v) {
                *c -= s * vi;
            }
        }
        // Column k below the diagonal is now zero up to rounding; set it exactly.
        work[(k, k)] = alpha;
        for i in k + 1..m {
            work[(i, k)] = ZERO;
        }
        reflectors.push(Some(v));
    }

    let r = DenseMatrix::from_fn(n, n, |i, j| if i <= j { work[(i, j)] } else { ZERO });

    // Q = H_0 H_1 ... H_{n-1} applied to the first n columns of the identity.
    let mut q = DenseMatrix::from_fn(m, n, |i, j| if i == j { ONE } else { ZERO });
    for (k, refl) in reflectors.iter().enumerate().rev() {
        let Some(v) = refl else { continue };
        let vv = dotc(v, v).re;
        for j in 0..n {
            let col = &mut q.col_mut(j)[k..];
            let s = dotc(v, col) * (2.0 / vv);
            for (c, &vi) in col.iter_mut().zip(v) {
                *c -= s * vi;
            }
        }
    }
    Ok(QrFactors { q, r })
}

/// Solves `R x = b` for upper-triangular `R`.
pub(crate) fn solve_upper(r: &DenseMatrix, b: &[C64]) -> Vec<C64> {
    let n = r.cols();
    let mut x = b[..n].to_vec();
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in i + 1..n {
            s -= r[(i, j)] * x[j];
        }
        x[i] = s / r[(i, i)];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::matrix::DenseVector;
    use crate::gen::SeededRng;

    fn check_factors(a: &DenseMatrix, f: &QrFactors) {
        let anorm = a.norm_fro().max(f64::MIN_POSITIVE);
        let recon = f.q.matmul(&f.r).unwrap().sub(a).unwrap().norm_fro();
        assert!(recon <= 1e-13 * anorm, "reconstruction {recon}");
        assert!(f.q.orthonormality_defect() <= 1e-13 * a.cols() as f64);
        for j in 0..f.r.cols() {
            for i in j + 1..f.r.rows() {
                assert_eq!(f.r[(i, j)], ZERO);
            }
        }
    }

    #[test]
    fn identity_up_to_phases() {
        let f = householder_qr(&DenseMatrix::identity(4)).unwrap();
        for j in 0..4 {
            let ph = f.r[(j, j)];
            assert!((ph.norm() - 1.0).abs() < 1e-15);
            for i in 0..4 {
                let expect = if i == j { ph.conj() } else { ZERO };
                assert!((f.q[(i, j)] - expect).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn single_column() {
        let col = DenseVector::new(vec![C64::new(3.0, 0.0), C64::new(0.0, 4.0)]).unwrap();
        let a = DenseMatrix::from_columns(&[col.clone()]).unwrap();
        let f = householder_qr(&a).unwrap();
        let r = f.r[(0, 0)];
        assert!((r.norm() - 5.0).abs() < 1e-14);
        // Q column equals column / ‖column‖ up to the phase carried by R.
        let ph = phase(r);
        for i in 0..2 {
            assert!((f.q[(i, 0)] * ph - col[i] / 5.0).norm() < 1e-15);
        }
    }

    #[test]
    fn seeded_tall_matrix() {
        let mut rng = SeededRng::new(7);
        let a = rng.gaussian_matrix(6, 3);
        check_factors(&a, &householder_qr(&a).unwrap());
    }

    #[test]
    fn zero_column_is_not_an_error() {
        let a = DenseMatrix::from_real_rows(&[&[1.0, 0.0], &[1.0, 0.0], &[0.0, 0.0]]);
        let f = householder_qr(&a).unwrap();
        assert_eq!(f.numerical_rank(1e-14), 1);
        check_factors(&a, &f);
    }

    #[test]
    fn wide_input_rejected() {
        assert!(householder_qr(&DenseMatrix::zeros(2, 3)).is_err());
    }
}
