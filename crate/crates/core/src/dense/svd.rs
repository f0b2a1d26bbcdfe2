//! Singular value decomposition by one-sided (Hestenes) Jacobi.
//!
//! Tall inputs are first reduced with Householder QR and the Jacobi sweeps
//! run on the square `R`; wide inputs are handled through `A^H`.

use super::matrix::{dotc, norm2, DenseMatrix, C64, ONE, ZERO};
use super::qr::householder_qr;
use crate::error::{Error, Result};

/// Sweep cap for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 80;

/// Thin SVD `A = U diag(sigma) W^H`.
///
/// With `k = min(rows, cols)`, `u` is `rows x k` and `w` is `cols x k`, both
/// with orthonormal columns; `sigma` is nonincreasing and nonnegative.
#[derive(Clone, Debug)]
pub struct SvdResult {
    pub u: DenseMatrix,
    pub sigma: Vec<f64>,
    pub w: DenseMatrix,
}

impl SvdResult {
    pub fn sigma_max(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma.last().copied().unwrap_or(0.0)
    }

    /// `sigma_max / sigma_min`; infinite for singular inputs.
    pub fn condition_number(&self) -> f64 {
        let lo = self.sigma_min();
        if lo == 0.0 {
            f64::INFINITY
        } else {
            self.sigma_max() / lo
        }
    }

    pub fn reconstruct(&self) -> DenseMatrix {
        let us = DenseMatrix::from_fn(self.u.rows(), self.u.cols(), |i, j| {
            self.u[(i, j)] * self.sigma[j]
        });
        us.matmul(&self.w.adjoint())
            .expect("conforming SVD factors")
    }
}

pub fn svd(a: &DenseMatrix) -> Result<SvdResult> {
    if a.rows() < a.cols() {
        let t = svd(&a.adjoint())?;
        return Ok(SvdResult {
            u: t.w,
            sigma: t.sigma,
            w: t.u,
        });
    }
    let n = a.cols();
    if n == 0 {
        return Ok(SvdResult {
            u: DenseMatrix::zeros(a.rows(), 0),
            sigma: vec![],
            w: DenseMatrix::zeros(0, 0),
        });
    }
    let qr = householder_qr(a)?;
    let mut g = qr.r;
    let mut w = DenseMatrix::identity(n);
    jacobi_sweeps(&mut g, &mut w)?;

    let mut sigma: Vec<f64> = (0..n).map(|j| norm2(g.col(j))).collect();
    let smax = sigma.iter().cloned().fold(0.0, f64::max);
    let mut ur = DenseMatrix::zeros(n, n);
    let mut missing = Vec::new();
    for j in 0..n {
        if sigma[j] > smax * 1e-300 && sigma[j] > 0.0 {
            let s = sigma[j];
            for (dst, &src) in ur.col_mut(j).iter_mut().zip(g.col(j)) {
                *dst = src / s;
            }
        } else {
            sigma[j] = 0.0;
            missing.push(j);
        }
    }
    complete_basis(&mut ur, &missing);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]).then(i.cmp(&j)));
    let ur = DenseMatrix::from_fn(n, n, |i, j| ur[(i, order[j])]);
    let w = DenseMatrix::from_fn(n, n, |i, j| w[(i, order[j])]);
    let sigma = order.iter().map(|&j| sigma[j]).collect();
    let u = qr.q.matmul(&ur)?;
    Ok(SvdResult { u, sigma, w })
}

fn jacobi_sweeps(g: &mut DenseMatrix, w: &mut DenseMatrix) -> Result<()> {
    let n = g.cols();
    let tol = 4.0 * f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dotc(g.col(p), g.col(p)).re;
                let beta = dotc(g.col(q), g.col(q)).re;
                let gamma = dotc(g.col(p), g.col(q));
                let abs_gamma = gamma.norm();
                if abs_gamma == 0.0 || abs_gamma <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate column q by the phase of gamma so the pair is real.
                let ph = (gamma / abs_gamma).conj();
                let zeta = (beta - alpha) / (2.0 * abs_gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(g, p, q, ph, c, s);
                rotate(w, p, q, ph, c, s);
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

fn rotate(m: &mut DenseMatrix, p: usize, q: usize, ph: C64, c: f64, s: f64) {
    for i in 0..m.rows() {
        let xp = m[(i, p)];
        let xq = m[(i, q)] * ph;
        m[(i, p)] = xp * c - xq * s;
        m[(i, q)] = xp * s + xq * c;
    }
}

/// Fills the listed columns of `u` with unit vectors orthogonal to every other
/// column, using Gram–Schmidt on the standard basis.
fn complete_basis(u: &mut DenseMatrix, missing: &[usize]) {
    let n = u.rows();
    let mut filled: Vec<usize> = (0..u.cols()).filter(|j| !missing.contains(j)).collect();
    let mut candidate = 0;
    for &j in missing {
        while candidate < n {
            let mut v = vec![ZERO; n];
            v[candidate] = ONE;
            candidate += 1;
            for _ in 0..2 {
                for &k in &filled {
                    let h = dotc(u.col(k), &v);
                    for (vi, &uk) in v.iter_mut().zip(u.col(k)) {
                        *vi -= h * uk;
                    }
                }
            }
            let nv = norm2(&v);
            if nv > 0.5 {
                for (dst, src) in u.col_mut(j).iter_mut().zip(v) {
                    *dst = src / nv;
                }
                filled.push(j);
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::SeededRng;

    fn check_invariants(a: &DenseMatrix, s: &SvdResult) {
        let scale = s.sigma_max().max(f64::MIN_POSITIVE);
        assert!(
            s.reconstruct().sub(a).unwrap().norm_fro() <= 1e-12 * scale * (a.cols() as f64).sqrt()
        );
        assert!(s.u.orthonormality_defect() <= 1e-12 * s.sigma.len() as f64);
        assert!(s.w.orthonormality_defect() <= 1e-12 * s.sigma.len() as f64);
        assert!(s.sigma.windows(2).all(|p| p[0] >= p[1]));
        assert!(s.sigma.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn unitary_has_unit_singular_values() {
        let mut rng = SeededRng::new(1);
        let q = rng.haar_unitary(6);
        let s = svd(&q).unwrap();
        assert!(s.sigma.iter().all(|&x| (x - 1.0).abs() <= 1e-12));
        check_invariants(&q, &s);
    }

    #[test]
    fn diagonal_with_zero() {
        let a = DenseMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 0.0]]);
        let s = svd(&a).unwrap();
        assert_eq!(s.sigma, vec![3.0, 0.0]);
        check_invariants(&a, &s);
    }

    #[test]
    fn wide_and_tall_inputs() {
        let mut rng = SeededRng::new(4);
        for (r, c) in [(7, 3), (3, 7), (1, 4), (5, 1)] {
            let a = rng.gaussian_matrix(r, c);
            let s = svd(&a).unwrap();
            assert_eq!(s.sigma.len(), r.min(c));
            check_invariants(&a, &s);
        }
    }

    #[test]
    fn rank_one_completion() {
        let a = DenseMatrix::from_fn(4, 3, |i, j| {
            C64::new((i + 1) as f64, 0.0) * C64::new(1.0, j as f64)
        });
        let s = svd(&a).unwrap();
        assert!(s.sigma[1] <= 1e-14 * s.sigma[0]);
        check_invariants(&a, &s);
    }
}
