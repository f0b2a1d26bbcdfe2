//! Column-major complex matrices and vectors.

use std::ops::{Deref, DerefMut, Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DenseVector(Vec<C64>);

impl DenseVector {
    pub fn zeros(dim: usize) -> Self {
        Self(vec![ZERO; dim])
    }

    /// Wraps `entries`, rejecting NaN or infinite components.
    pub fn new(entries: Vec<C64>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { row: i, col: 0 });
        }
        Ok(Self(entries))
    }

    pub fn from_real(entries: &[f64]) -> Self {
        Self(entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<C64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.0)
    }

    /// `self^H other`
    pub fn dot(&self, other: &DenseVector) -> C64 {
        dotc(&self.0, &other.0)
    }

    pub fn scaled(&self, alpha: C64) -> DenseVector {
        Self(self.0.iter().map(|&z| alpha * z).collect())
    }

    pub fn conj(&self) -> DenseVector {
        Self(self.0.iter().map(|z| z.conj()).collect())
    }

    /// `self + alpha * x`
    pub fn axpy(&self, alpha: C64, x: &DenseVector) -> Result<DenseVector> {
        check_len(self.dim(), x.dim())?;
        Ok(Self(
            self.0
                .iter()
                .zip(&x.0)
                .map(|(&a, &b)| a + alpha * b)
                .collect(),
        ))
    }

    pub fn sub(&self, x: &DenseVector) -> Result<DenseVector> {
        self.axpy(-ONE, x)
    }

    pub fn add(&self, x: &DenseVector) -> Result<DenseVector> {
        self.axpy(ONE, x)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.is_finite())
    }
}

impl Deref for DenseVector {
    type Target = [C64];
    fn deref(&self) -> &[C64] {
        &self.0
    }
}

impl DerefMut for DenseVector {
    fn deref_mut(&mut self) -> &mut [C64] {
        &mut self.0
    }
}

impl From<Vec<C64>> for DenseVector {
    fn from(v: Vec<C64>) -> Self {
        Self(v)
    }
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(format!(
            "vector lengths {a} and {b}"
        )));
    }
    Ok(())
}

pub(crate) fn norm2(x: &[C64]) -> f64 {
    // Scaled accumulation so that tiny residuals do not underflow.
    let scale = x
        .iter()
        .fold(0.0f64, |m, z| m.max(z.re.abs()).max(z.im.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 = x
        .iter()
        .map(|z| {
            let (a, b) = (z.re / scale, z.im / scale);
            a * a + b * b
        })
        .sum();
    scale * sum.sqrt()
}

pub(crate) fn dotc(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).fold(ZERO, |acc, (a, b)| acc + a.conj() * b)
}

/// Dense complex matrix stored column-major: entry `(i, j)` lives at
/// `data[i + j * rows]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_col_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite {
                row: k % rows,
                col: k / rows,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from real row slices; handy in tests and examples.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Self::from_fn(rows.len(), ncols, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Self::from_fn(rows.len(), ncols, |i, j| rows[i][j])
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_columns(columns: &[DenseVector]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.dim());
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            check_len(rows, c.dim())?;
            data.extend_from_slice(c);
        }
        Ok(Self {
            rows,
            cols: columns.len(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_col_major(&self) -> &[C64] {
        &self.data
    }

    pub fn col(&self, j: usize) -> &[C64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [C64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn column(&self, j: usize) -> DenseVector {
        DenseVector(self.col(j).to_vec())
    }

    /// Leading `ncols` columns.
    pub fn leading_columns(&self, ncols: usize) -> DenseMatrix {
        assert!(ncols <= self.cols);
        Self {
            rows: self.rows,
            cols: ncols,
            data: self.data[..ncols * self.rows].to_vec(),
        }
    }

    /// `y = A x` written into `out`. Panics on mismatched lengths.
    pub(crate) fn apply_into(&self, x: &[C64], out: &mut [C64]) {
        assert_eq!(x.len(), self.cols);
        assert_eq!(out.len(), self.rows);
        out.iter_mut().for_each(|o| *o = ZERO);
        for (j, &xj) in x.iter().enumerate() {
            if xj == ZERO {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.col(j)) {
                *o += a * xj;
            }
        }
    }

    pub(crate) fn apply(&self, x: &[C64]) -> DenseVector {
        let mut out = vec![ZERO; self.rows];
        self.apply_into(x, &mut out);
        DenseVector(out)
    }

    pub fn matvec(&self, x: &DenseVector) -> Result<DenseVector> {
        matvec(self, x)
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let (src, dst) = (other.col(j), j * self.rows);
            let mut tmp = vec![ZERO; self.rows];
            self.apply_into(src, &mut tmp);
            out.data[dst..dst + self.rows].copy_from_slice(&tmp);
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> DenseMatrix {
        hermitian_transpose(self)
    }

    pub fn scaled(&self, alpha: C64) -> DenseMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| alpha * z).collect(),
        }
    }

    /// `self + alpha * other`
    pub fn axpy(&self, alpha: C64, other: &DenseMatrix) -> Result<DenseMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a + alpha * b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.axpy(-ONE, other)
    }

    pub fn norm_fro(&self) -> f64 {
        norm2(&self.data)
    }

    /// Spectral norm (largest singular value).
    pub fn norm_2(&self) -> Result<f64> {
        Ok(crate::dense::svd(self)?
            .sigma
            .first()
            .copied()
            .unwrap_or(0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    /// `‖A^H A − I‖_F`, the orthonormality defect of the columns.
    pub fn orthonormality_defect(&self) -> f64 {
        let gram = self.adjoint().matmul(self).expect("square Gram product");
        gram.sub(&DenseMatrix::identity(self.cols))
            .expect("same shape")
            .norm_fro()
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i + j * self.rows]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i + j * self.rows]
    }
}

/// `y = A x`.
pub fn matvec(a: &DenseMatrix, x: &DenseVector) -> Result<DenseVector> {
    if a.cols != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix applied to a vector of length {}",
            a.rows,
            a.cols,
            x.dim()
        )));
    }
    Ok(a.apply(x))
}

/// `A^H`, entrywise `conj(A_ji)`.
pub fn hermitian_transpose(a: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(a.cols, a.rows, |i, j| a[(j, i)].conj())
}
