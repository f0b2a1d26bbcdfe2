//! Restarted GMRES for dense complex systems, plus numerical checks of the
//! cycle-convergence theory of GMRES(m) for normal and diagonalizable
//! matrices.
//!
//! * [`dense`]: matrices, Householder QR, SVD, least squares, pseudoinverse.
//! * [`gmres`]: Arnoldi, GMRES cycles, the restarted driver and residual
//!   polynomials, plus an Arnoldi-free spectral oracle.
//! * [`theory`]: Krylov-matrix identities, ratio monotonicity, the
//!   equality case `m = n − 1` and the nonnormal bound.
//! * [`gen`] and [`mtx`]: seeded instances and Matrix Market I/O.

pub mod dense;
pub mod error;
pub mod gen;
pub mod gmres;
pub mod instance;
pub mod mtx;
pub mod theory;

pub use error::{Error, Result};
pub use instance::{MatrixClass, SpectralForm, SystemInstance};
