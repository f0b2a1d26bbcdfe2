//! Residual polynomials `p(z) = 1 − z q(z)` of GMRES cycles.

use serde::{Deserialize, Serialize};

use super::ArnoldiDecomposition;
use crate::dense::{least_squares_scaled, DenseMatrix, DenseVector, C64, ONE};
use crate::error::{Error, Result};

/// Largest cycle length for which monomial coefficients are extracted.
pub const POLY_DEGREE_CAP: usize = 12;

/// Required agreement `‖p(A) r_entry − r_exit‖ ≤ POLY_CHECK_TOL ‖r_entry‖`.
pub const POLY_CHECK_TOL: f64 = 1e-8;

/// Monomial coefficients `c_0, …, c_m` with `c_0 = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualPolynomial {
    coefficients: Vec<C64>,
}

impl ResidualPolynomial {
    pub fn new(coefficients: Vec<C64>) -> Result<Self> {
        if coefficients.first() != Some(&ONE) {
            return Err(Error::ContractViolation(
                "residual polynomials must satisfy p(0) = 1".into(),
            ));
        }
        Ok(Self { coefficients })
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self {
            coefficients: vec![ONE],
        }
    }

    /// `1 − z (q_0 + q_1 z + …)`.
    pub fn from_correction(q: &[C64]) -> Self {
        let mut coefficients = Vec::with_capacity(q.len() + 1);
        coefficients.push(ONE);
        coefficients.extend(q.iter().map(|c| -c));
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Polynomial with conjugated coefficients, `p̄`.
    pub fn conjugate(&self) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coefficients
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `‖self − other‖_2` over coefficient vectors, padding the shorter one.
    pub fn coefficient_distance(&self, other: &Self) -> f64 {
        let len = self.coefficients.len().max(other.coefficients.len());
        let at = |p: &Self, i: usize| p.coefficients.get(i).copied().unwrap_or_default();
        (0..len)
            .map(|i| (at(self, i) - at(other, i)).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn coefficient_norm(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// `p(A) v` by Horner's rule, using only matrix–vector products.
pub fn apply_polynomial(
    p: &ResidualPolynomial,
    a: &DenseMatrix,
    v: &DenseVector,
) -> Result<DenseVector> {
    if !a.is_square() || a.cols() != v.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix and vector of length {}",
            a.rows(),
            a.cols(),
            v.dim()
        )));
    }
    let c = p.coefficients();
    let mut y = v.scaled(c[c.len() - 1]);
    for &cj in c.iter().rev().skip(1) {
        y = a.apply(&y).axpy(cj, v)?;
    }
    Ok(y)
}

/// Recovers the cycle's residual polynomial.
///
/// The correction `u = Q_j y` is re-expressed in the monomial Krylov basis
/// `[r, A r, …, A^{j-1} r]` by least squares on the column-equilibrated
/// Krylov matrix, giving `u = q(A) r` and `p(z) = 1 − z q(z)`. The result is
/// accepted only if `p(A) r_entry` reproduces `r_exit`.
pub fn extract_polynomial(
    a: &DenseMatrix,
    r_entry: &DenseVector,
    decomposition: &ArnoldiDecomposition,
    y: &[C64],
    r_exit: &DenseVector,
) -> Result<ResidualPolynomial> {
    let j = y.len();
    if j == 0 {
        return Ok(ResidualPolynomial::one());
    }
    if j > POLY_DEGREE_CAP {
        return Err(Error::Conditioning(format!(
            "monomial coefficients are only extracted for m <= {POLY_DEGREE_CAP}, got {j}"
        )));
    }
    let q_j = decomposition.basis.leading_columns(j);
    let u = q_j.apply(y);

    let mut cols = Vec::with_capacity(j);
    cols.push(r_entry.clone());
    for k in 1..j {
        let next = a.apply(&cols[k - 1]);
        cols.push(next);
    }
    let krylov = DenseMatrix::from_columns(&cols)?;
    let q = least_squares_scaled(&krylov, &u).map_err(|e| match e {
        Error::RankDeficient { rank, .. } => Error::Conditioning(format!(
            "Krylov matrix has numerical rank {rank} < {j}; use a smaller m or a better separated spectrum"
        )),
        other => other,
    })?;
    let p = ResidualPolynomial::from_correction(&q);

    let check = apply_polynomial(&p, a, r_entry)?.sub(r_exit)?.norm();
    if check > POLY_CHECK_TOL * r_entry.norm() {
        return Err(Error::Conditioning(format!(
            "extracted polynomial reproduces the cycle residual only to {:.3e} relative",
            check / r_entry.norm()
        )));
    }
    Ok(p)
}
