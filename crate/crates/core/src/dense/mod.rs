//! Dense complex linear-algebra kernels.

mod lstsq;
mod matrix;
mod qr;
mod svd;
mod vandermonde;

pub use lstsq::{
    least_squares, least_squares_scaled, pseudoinverse, pseudoinverse_scaled, RANK_TOL,
};
pub use matrix::{hermitian_transpose, matvec, DenseMatrix, DenseVector, C64};
pub use qr::{householder_qr, QrFactors};
pub use svd::{svd, SvdResult, MAX_SWEEPS};
pub use vandermonde::vandermonde;

pub(crate) use matrix::{dotc, norm2, ONE, ZERO};
pub(crate) use qr::{phase, solve_upper};
