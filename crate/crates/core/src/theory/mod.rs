//! Numerical checks of the Krylov-matrix identities and the cycle-convergence
//! bounds of GMRES(m).

mod bounds;
mod krylov;
mod lemmas;

pub use bounds::{
    corollary_alt_check, corollary_n1_check, lemma4_check, log_convexity, null_space_chain,
    theorem1_check, usable_norms, AlternatingResiduals, BoundReport, RATIO_TOL, UNITARY_BOUND_TOL,
    USABLE_FLOOR,
};
pub use krylov::{build_krylov_matrix, KrylovBundle, KrylovFactors};
pub use lemmas::{
    lemma1_check, lemma2_check, lemma3_check, undersys_check, ConjugateRuns, NullSpaceSplit,
    PseudoinverseIdentity,
};
