use super::matrix::{DenseMatrix, DenseVector};
use super::qr::{householder_qr, solve_upper, QrFactors};
use crate::error::{Error, Result};

/// Relative threshold on `|R_jj| / max |R_jj|` below which a QR is treated as
/// rank deficient.
pub const RANK_TOL: f64 = 1e-14;

fn full_rank_qr(a: &DenseMatrix) -> Result<QrFactors> {
    let f = householder_qr(a)?;
    let rank = f.numerical_rank(RANK_TOL);
    if rank < a.cols() {
        return Err(Error::RankDeficient {
            rank,
            cols: a.cols(),
        });
    }
    Ok(f)
}

/// `argmin_x ‖b − A x‖` through Householder QR.
pub fn least_squares(a: &DenseMatrix, b: &DenseVector) -> Result<DenseVector> {
    if a.rows() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.dim()
        )));
    }
    let f = full_rank_qr(a)?;
    let qhb = f.q.adjoint().apply(b);
    Ok(DenseVector::from(solve_upper(&f.r, &qhb)))
}

/// Moore–Penrose pseudoinverse of a full-column-rank matrix, `R^{-1} Q^H`.
///
/// A rank-deficient Krylov matrix means GMRES has already converged exactly,
/// so the caller receives [`Error::RankDeficient`] instead of a regularized
/// inverse.
pub fn pseudoinverse(k: &DenseMatrix) -> Result<DenseMatrix> {
    let f = full_rank_qr(k)?;
    let qh = f.q.adjoint();
    let mut out = DenseMatrix::zeros(k.cols(), k.rows());
    for j in 0..k.rows() {
        let x = solve_upper(&f.r, qh.col(j));
        out.col_mut(j).copy_from_slice(&x);
    }
    Ok(out)
}

/// Pseudoinverse computed on the column-equilibrated matrix `K S^{-1}` and
/// mapped back, `K† = S^{-1} (K S^{-1})†`.
pub fn pseudoinverse_scaled(k: &DenseMatrix) -> Result<DenseMatrix> {
    let scales: Vec<f64> = (0..k.cols())
        .map(|j| super::matrix::norm2(k.col(j)))
        .collect();
    if let Some(j) = scales.iter().position(|&s| s == 0.0) {
        return Err(Error::RankDeficient {
            rank: j,
            cols: k.cols(),
        });
    }
    let ks = DenseMatrix::from_fn(k.rows(), k.cols(), |i, j| k[(i, j)] / scales[j]);
    let mut p = pseudoinverse(&ks)?;
    for j in 0..p.cols() {
        for (i, s) in scales.iter().enumerate() {
            p[(i, j)] /= *s;
        }
    }
    Ok(p)
}

/// Least squares on the column-equilibrated matrix; the solution is mapped
/// back to the original column scaling.
pub fn least_squares_scaled(a: &DenseMatrix, b: &DenseVector) -> Result<DenseVector> {
    let scales: Vec<f64> = (0..a.cols())
        .map(|j| super::matrix::norm2(a.col(j)))
        .collect();
    if let Some(j) = scales.iter().position(|&s| s == 0.0) {
        return Err(Error::RankDeficient {
            rank: j,
            cols: a.cols(),
        });
    }
    let scaled = DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] / scales[j]);
    let mut x = least_squares(&scaled, b)?;
    for (xi, s) in x.iter_mut().zip(&scales) {
        *xi /= *s;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::matrix::{C64, ZERO};
    use crate::gen::SeededRng;

    /// Gaussian elimination with partial pivoting on a small dense system.
    fn solve_dense(mut a: Vec<Vec<C64>>, mut b: Vec<C64>) -> Vec<C64> {
        let n = b.len();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
                .unwrap();
            a.swap(k, p);
            b.swap(k, p);
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    let t = a[k][j];
                    a[i][j] -= f * t;
                }
                let t = b[k];
                b[i] -= f * t;
            }
        }
        let mut x = vec![ZERO; n];
        for i in (0..n).rev() {
            let s: C64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
            x[i] = (b[i] - s) / a[i][i];
        }
        x
    }

    #[test]
    fn consistent_square_system() {
        let mut rng = SeededRng::new(3);
        let a = rng.gaussian_matrix(5, 5);
        let xs = rng.gaussian_vector(5);
        let b = a.matvec(&xs).unwrap();
        let x = least_squares(&a, &b).unwrap();
        assert!(x.sub(&xs).unwrap().norm() <= 1e-12 * xs.norm());
    }

    #[test]
    fn scalar_mean() {
        let a = DenseMatrix::from_real_rows(&[&[1.0], &[1.0]]);
        let x = least_squares(&a, &DenseVector::from_real(&[0.0, 2.0])).unwrap();
        assert!((x[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn overdetermined_matches_normal_equations() {
        let mut rng = SeededRng::new(11);
        let a = rng.gaussian_matrix(8, 3);
        let b = rng.gaussian_vector(8);
        let x = least_squares(&a, &b).unwrap();

        let ah = a.adjoint();
        let g = ah.matmul(&a).unwrap();
        let rhs = ah.matvec(&b).unwrap();
        let gram: Vec<Vec<C64>> = (0..3)
            .map(|i| (0..3).map(|j| g[(i, j)]).collect())
            .collect();
        let oracle = solve_dense(gram, rhs.to_vec());
        for (u, v) in x.iter().zip(&oracle) {
            assert!((u - v).norm() <= 1e-12 * x.norm());
        }
        // Residual orthogonal to range(A).
        let r = b.sub(&a.matvec(&x).unwrap()).unwrap();
        let proj = ah.matvec(&r).unwrap();
        assert!(proj.norm() <= 1e-12 * b.norm() * a.norm_fro());
    }

    #[test]
    fn rank_deficiency_reports_rank() {
        let a = DenseMatrix::from_real_rows(&[
            &[1.0, 2.0, 0.0],
            &[2.0, 4.0, 1.0],
            &[3.0, 6.0, 0.0],
            &[0.0, 0.0, 1.0],
        ]);
        match least_squares(&a, &DenseVector::zeros(4)) {
            Err(Error::RankDeficient { rank, cols }) => assert_eq!((rank, cols), (2, 3)),
            other => panic!("expected rank deficiency, got {other:?}"),
        }
    }

    #[test]
    fn pinv_of_isometry_is_adjoint() {
        let mut rng = SeededRng::new(5);
        let q = householder_qr(&rng.gaussian_matrix(6, 3)).unwrap().q;
        let p = pseudoinverse(&q).unwrap();
        assert!(p.sub(&q.adjoint()).unwrap().norm_fro() < 1e-14);
    }

    #[test]
    fn pinv_of_single_column() {
        let v = DenseVector::new(vec![
            C64::new(1.0, 1.0),
            C64::new(0.0, -2.0),
            C64::new(3.0, 0.0),
        ])
        .unwrap();
        let k = DenseMatrix::from_columns(&[v.clone()]).unwrap();
        let p = pseudoinverse(&k).unwrap();
        let nn = v.norm().powi(2);
        for i in 0..3 {
            assert!((p[(0, i)] - v[i].conj() / nn).norm() < 1e-15);
        }
    }

    #[test]
    fn pinv_projector_split() {
        let mut rng = SeededRng::new(9);
        let k = rng.gaussian_matrix(6, 3);
        let p = pseudoinverse(&k).unwrap();
        let pk = p.matmul(&k).unwrap();
        assert!(pk.sub(&DenseMatrix::identity(3)).unwrap().norm_fro() <= 1e-10);
        // b = K K† b + (I − K K†) b with orthogonal parts.
        let b = rng.gaussian_vector(6);
        let range = k.matvec(&p.matvec(&b).unwrap()).unwrap();
        let null = b.sub(&range).unwrap();
        let pyth = (b.norm().powi(2) - range.norm().powi(2) - null.norm().powi(2)).abs();
        assert!(pyth <= 1e-12 * b.norm().powi(2));
        assert!(k.adjoint().matvec(&null).unwrap().norm() <= 1e-12 * k.norm_fro() * b.norm());
    }

    #[test]
    fn scaled_pinv_matches_plain() {
        let mut rng = SeededRng::new(19);
        let mut k = rng.gaussian_matrix(7, 4);
        for i in 0..7 {
            k[(i, 3)] *= 1e6;
        }
        let p1 = pseudoinverse(&k).unwrap();
        let p2 = pseudoinverse_scaled(&k).unwrap();
        assert!(p1.sub(&p2).unwrap().norm_fro() <= 1e-9 * p1.norm_fro());
    }
}
