use super::matrix::{DenseMatrix, DenseVector, ONE};

/// `Z = [e, Λe, …, Λ^m e]`, an `n x (m+1)` matrix with `Z_ij = λ_i^j`.
///
/// Powers are formed by repeated multiplication, column by column.
pub fn vandermonde(lambda: &DenseVector, m: usize) -> DenseMatrix {
    let n = lambda.dim();
    let mut z = DenseMatrix::zeros(n, m + 1);
    z.col_mut(0).iter_mut().for_each(|x| *x = ONE);
    for j in 1..=m {
        for i in 0..n {
            z[(i, j)] = z[(i, j - 1)] * lambda[i];
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::matrix::C64;

    #[test]
    fn degree_zero_is_ones() {
        let l = DenseVector::new(vec![C64::new(2.0, 1.0), C64::new(-3.0, 0.5)]).unwrap();
        let z = vandermonde(&l, 0);
        assert_eq!((z.rows(), z.cols()), (2, 1));
        assert!(z.col(0).iter().all(|&x| x == ONE));
    }

    #[test]
    fn small_powers() {
        let z = vandermonde(&DenseVector::from_real(&[1.0, 2.0]), 2);
        assert_eq!(
            z,
            DenseMatrix::from_real_rows(&[&[1.0, 1.0, 1.0], &[1.0, 2.0, 4.0]])
        );
    }
}
