//! Reproducible test instances.

mod generators;
mod rng;
mod spectrum;

pub use generators::{
    gen_diagonalizable, gen_hermitian, gen_normal, gen_skew_hermitian, CLASS_DEFECT_TOL, MAX_KAPPA,
};
pub use rng::SeededRng;
pub use spectrum::{parse_complex, SpectrumSpec};
