//! Explicit Krylov matrices `K(A, r) = [r, A r, …, A^m r]` and the identities
//! they satisfy.

use crate::dense::{
    householder_qr, pseudoinverse_scaled, vandermonde, DenseMatrix, DenseVector, RANK_TOL,
};
use crate::error::{Error, Result};
use crate::instance::SpectralForm;

/// Spectral factors `V`, `d`, `Z` with `K = V diag(d) Z`.
#[derive(Clone, Debug)]
pub struct KrylovFactors {
    pub v: DenseMatrix,
    /// `V^{-1} r` (`V^H r` in the normal case).
    pub d: DenseVector,
    pub z: DenseMatrix,
}

#[derive(Clone, Debug)]
pub struct KrylovBundle {
    /// `n x (m+1)`.
    pub k: DenseMatrix,
    pub r: DenseVector,
    pub m: usize,
    /// Numerical rank of the column-equilibrated `K`.
    pub rank: usize,
    pub factors: Option<KrylovFactors>,
}

impl KrylovBundle {
    pub fn is_full_rank(&self) -> bool {
        self.rank == self.m + 1
    }

    pub fn with_factors(mut self, spectral: &SpectralForm) -> Result<Self> {
        let d = spectral.coordinates(&self.r)?;
        let z = vandermonde(&spectral.lambda, self.m);
        self.factors = Some(KrylovFactors {
            v: spectral.v.clone(),
            d,
            z,
        });
        Ok(self)
    }

    /// `‖K − V D Z‖_F / ‖K‖_F`.
    pub fn factorization_defect(&self) -> Option<f64> {
        let f = self.factors.as_ref()?;
        let dz = DenseMatrix::from_fn(f.z.rows(), f.z.cols(), |i, j| f.d[i] * f.z[(i, j)]);
        let vdz = f.v.matmul(&dz).ok()?;
        Some(self.k.sub(&vdz).ok()?.norm_fro() / self.k.norm_fro())
    }

    /// `K†` via QR of the column-equilibrated matrix.
    pub fn pseudoinverse(&self) -> Result<DenseMatrix> {
        if !self.is_full_rank() {
            return Err(Error::Conditioning(format!(
                "Krylov matrix has numerical rank {} < {}",
                self.rank,
                self.m + 1
            )));
        }
        pseudoinverse_scaled(&self.k)
    }

    /// `(K†)^H e_1`, the conjugated first row of `K†`.
    pub fn pinv_adjoint_e1(&self) -> Result<DenseVector> {
        let p = self.pseudoinverse()?;
        Ok(DenseVector::from(
            (0..p.cols()).map(|i| p[(0, i)].conj()).collect::<Vec<_>>(),
        ))
    }
}

/// Builds `K(A, r)` by repeated matrix–vector products and records its
/// numerical rank. Rank deficiency is recorded, not raised.
pub fn build_krylov_matrix(a: &DenseMatrix, r: &DenseVector, m: usize) -> Result<KrylovBundle> {
    if r.norm() == 0.0 {
        return Err(Error::ContractViolation(
            "Krylov matrix of a zero vector".into(),
        ));
    }
    if m == 0 {
        return Err(Error::ContractViolation(
            "Krylov matrix needs m >= 1".into(),
        ));
    }
    let mut cols = vec![r.clone()];
    for j in 1..=m {
        let next = a.matvec(&cols[j - 1])?;
        cols.push(next);
    }
    let k = DenseMatrix::from_columns(&cols)?;
    let rank = if k.rows() < k.cols() {
        k.rows().min(numerical_rank(&k.adjoint()))
    } else {
        numerical_rank(&k)
    };
    Ok(KrylovBundle {
        k,
        r: r.clone(),
        m,
        rank,
        factors: None,
    })
}

fn numerical_rank(k: &DenseMatrix) -> usize {
    let scaled = DenseMatrix::from_fn(k.rows(), k.cols(), |i, j| {
        let s = crate::dense::norm2(k.col(j));
        if s == 0.0 {
            k[(i, j)]
        } else {
            k[(i, j)] / s
        }
    });
    householder_qr(&scaled)
        .map(|f| f.numerical_rank(RANK_TOL))
        .unwrap_or(0)
}
