use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::dense::{householder_qr, phase, DenseMatrix, DenseVector, C64};

/// Seeded source of every random quantity in the generators.
///
/// The stream is ChaCha20 (a counter-based cipher generator) keyed through
/// `ChaCha20Rng::seed_from_u64`, so a `u64` seed pins the whole instance.
/// Gaussians come from `rand_distr::StandardNormal`; a complex Gaussian draws
/// its real part first, then its imaginary part, each with unit variance.
pub struct SeededRng(ChaCha20Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha20Rng::seed_from_u64(seed))
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.0.random::<f64>()
    }

    pub fn gaussian(&mut self) -> f64 {
        self.0.sample(StandardNormal)
    }

    pub fn complex_gaussian(&mut self) -> C64 {
        let re = self.gaussian();
        let im = self.gaussian();
        C64::new(re, im)
    }

    /// Entries drawn column by column.
    pub fn gaussian_matrix(&mut self, rows: usize, cols: usize) -> DenseMatrix {
        let data = (0..rows * cols).map(|_| self.complex_gaussian()).collect();
        DenseMatrix::from_col_major(rows, cols, data).expect("finite gaussian entries")
    }

    pub fn gaussian_vector(&mut self, n: usize) -> DenseVector {
        DenseVector::from((0..n).map(|_| self.complex_gaussian()).collect::<Vec<_>>())
    }

    pub fn unit_vector(&mut self, n: usize) -> DenseVector {
        let v = self.gaussian_vector(n);
        let nv = v.norm();
        v.scaled(C64::new(1.0 / nv, 0.0))
    }

    /// Haar-distributed unitary matrix: Q from the QR of a complex Gaussian
    /// matrix, with column phases chosen so that `diag(R)` is positive real.
    pub fn haar_unitary(&mut self, n: usize) -> DenseMatrix {
        let g = self.gaussian_matrix(n, n);
        let f = householder_qr(&g).expect("square input");
        let mut q = f.q;
        for j in 0..n {
            let ph = phase(f.r[(j, j)]);
            for x in q.col_mut(j) {
                *x *= ph;
            }
        }
        q
    }
}
