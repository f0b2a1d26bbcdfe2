//! GMRES cycles, the restarted driver and residual polynomials.

mod arnoldi;
mod cycle;
mod oracle;
mod polynomial;
mod restart;

pub use arnoldi::{arnoldi, ArnoldiDecomposition, BREAKDOWN_TOL};
pub use cycle::{gmres_cycle, CycleRecord};
pub use oracle::{oracle_min_residual, OracleMinimum};
pub use polynomial::{
    apply_polynomial, extract_polynomial, ResidualPolynomial, POLY_CHECK_TOL, POLY_DEGREE_CAP,
};
pub use restart::{
    restarted_gmres, ConvergenceReport, RestartConfig, StopReason, SystemDescriptor, EXACT_FLOOR,
};
