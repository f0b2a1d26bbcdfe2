use crate::dense::{dotc, norm2, DenseMatrix, DenseVector, C64, ZERO};
use crate::error::{Error, Result};

/// Relative breakdown threshold: the new Arnoldi vector is declared zero when
/// its norm falls to `BREAKDOWN_TOL * ‖A‖_F` or below.
pub const BREAKDOWN_TOL: f64 = 1e-14;

/// Orthonormal Krylov basis and Hessenberg matrix with `A Q_j = Q_{j+1} H`.
///
/// Without breakdown `basis` is `n x (steps+1)` and `hessenberg` is
/// `(steps+1) x steps`. When the Krylov space became invariant at step
/// `steps`, both are truncated to the square case: `basis` is `n x steps`,
/// `hessenberg` is `steps x steps` and `A Q = Q H` holds.
#[derive(Clone, Debug)]
pub struct ArnoldiDecomposition {
    pub basis: DenseMatrix,
    pub hessenberg: DenseMatrix,
    pub steps: usize,
    /// Step at which the candidate vector vanished.
    pub breakdown: Option<usize>,
    /// `‖v‖` of the starting vector.
    pub beta: f64,
}

impl ArnoldiDecomposition {
    /// `‖A Q[:, :steps] − Q H‖_F`.
    pub fn relation_defect(&self, a: &DenseMatrix) -> f64 {
        let q_j = self.basis.leading_columns(self.steps);
        let aq = a.matmul(&q_j).expect("conforming");
        let qh = self.basis.matmul(&self.hessenberg).expect("conforming");
        aq.sub(&qh).expect("same shape").norm_fro()
    }
}

/// Arnoldi with modified Gram–Schmidt and one full reorthogonalization pass.
pub fn arnoldi(a: &DenseMatrix, v: &DenseVector, m: usize) -> Result<ArnoldiDecomposition> {
    let n = a.rows();
    if !a.is_square() || v.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix, start vector of length {}",
            a.rows(),
            a.cols(),
            v.dim()
        )));
    }
    if m == 0 || m > n {
        return Err(Error::ContractViolation(format!(
            "Arnoldi needs 1 <= m <= n, got m = {m}, n = {n}"
        )));
    }
    let beta = v.norm();
    if beta == 0.0 {
        return Err(Error::ContractViolation(
            "Arnoldi start vector is zero".into(),
        ));
    }
    let threshold = BREAKDOWN_TOL * a.norm_fro();

    let mut basis: Vec<Vec<C64>> = vec![v.iter().map(|z| z / beta).collect()];
    let mut h = DenseMatrix::zeros(m + 1, m);
    let mut w = vec![ZERO; n];
    for j in 0..m {
        a.apply_into(&basis[j], &mut w);
        for _pass in 0..2 {
            for (i, q) in basis.iter().enumerate() {
                let hij = dotc(q, &w);
                for (wk, &qk) in w.iter_mut().zip(q) {
                    *wk -= hij * qk;
                }
                h[(i, j)] += hij;
            }
        }
        let hnext = norm2(&w);
        if hnext <= threshold {
            let steps = j + 1;
            let hessenberg = DenseMatrix::from_fn(steps, steps, |r, c| h[(r, c)]);
            return Ok(ArnoldiDecomposition {
                basis: columns(n, &basis),
                hessenberg,
                steps,
                breakdown: Some(steps),
                beta,
            });
        }
        h[(j + 1, j)] = C64::new(hnext, 0.0);
        basis.push(w.iter().map(|z| z / hnext).collect());
    }
    Ok(ArnoldiDecomposition {
        basis: columns(n, &basis),
        hessenberg: h,
        steps: m,
        breakdown: None,
        beta,
    })
}

fn columns(n: usize, cols: &[Vec<C64>]) -> DenseMatrix {
    DenseMatrix::from_fn(n, cols.len(), |i, j| cols[j][i])
}
