use serde::{Deserialize, Serialize};

use super::polynomial::{extract_polynomial, ResidualPolynomial};
use super::{arnoldi, ArnoldiDecomposition};
use crate::dense::{solve_upper, DenseMatrix, DenseVector, C64, ZERO};
use crate::error::{Error, Result};

/// One GMRES(m) cycle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleRecord {
    /// 1-based cycle index.
    pub index: usize,
    pub entry_norm: f64,
    /// `‖r_exit‖` of the explicitly formed residual `r_entry − A u`.
    pub exit_norm: f64,
    /// `‖r_entry‖`, the least-squares residual norms after inner steps
    /// `1, …, j−1`, and finally `exit_norm`.
    pub iteration_norms: Vec<f64>,
    /// `None` when `m` exceeds the extraction cap or extraction was
    /// ill-conditioned.
    pub polynomial: Option<ResidualPolynomial>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exit_residual: Option<DenseVector>,
    /// Arnoldi found an invariant subspace, so the cycle solved the
    /// projected system exactly.
    pub exact_convergence: bool,
    pub steps: usize,
}

impl CycleRecord {
    pub fn ratio(&self) -> f64 {
        self.exit_norm / self.entry_norm
    }
}

/// Cycle outcome including the correction `u` (`r_exit = r_entry − A u`).
pub(crate) struct CycleOutcome {
    pub record: CycleRecord,
    pub correction: DenseVector,
    pub exit_residual: DenseVector,
}

/// Minimizes `‖r_entry − A u‖` over `u ∈ K_m(A, r_entry)`.
///
/// `m = n` is accepted so that full GMRES can be exercised; the restarted
/// driver itself requires `m ≤ n − 1`.
pub fn gmres_cycle(a: &DenseMatrix, r_entry: &DenseVector, m: usize) -> Result<CycleRecord> {
    let mut out = run_cycle(a, r_entry, m, 1)?;
    out.record.exit_residual = Some(out.exit_residual);
    Ok(out.record)
}

pub(crate) fn run_cycle(
    a: &DenseMatrix,
    r_entry: &DenseVector,
    m: usize,
    index: usize,
) -> Result<CycleOutcome> {
    let entry_norm = r_entry.norm();
    if entry_norm == 0.0 {
        return Err(Error::ContractViolation(
            "GMRES cycle started from a zero residual".into(),
        ));
    }
    let decomposition = arnoldi(a, r_entry, m)?;
    let (y, ls_norms) = hessenberg_least_squares(&decomposition);
    let steps = decomposition.steps;

    let q_j = decomposition.basis.leading_columns(steps);
    let correction = q_j.apply(&y);
    let exit_residual = r_entry.sub(&a.apply(&correction))?;
    let exit_norm = exit_residual.norm();

    let mut iteration_norms = Vec::with_capacity(steps + 1);
    iteration_norms.push(entry_norm);
    iteration_norms.extend_from_slice(&ls_norms[..steps - 1]);
    iteration_norms.push(exit_norm);

    let polynomial = extract_polynomial(a, r_entry, &decomposition, &y, &exit_residual).ok();
    let record = CycleRecord {
        index,
        entry_norm,
        exit_norm,
        iteration_norms,
        polynomial,
        exit_residual: None,
        exact_convergence: decomposition.breakdown.is_some(),
        steps,
    };
    Ok(CycleOutcome {
        record,
        correction,
        exit_residual,
    })
}

/// Solves `min ‖β e_1 − H y‖` with Givens rotations. Returns `y` and the
/// residual norms after each inner step.
fn hessenberg_least_squares(d: &ArnoldiDecomposition) -> (Vec<C64>, Vec<f64>) {
    let j = d.steps;
    let mut r = d.hessenberg.clone();
    let rows = r.rows();
    let mut g = vec![ZERO; rows];
    g[0] = C64::new(d.beta, 0.0);
    let mut norms = Vec::with_capacity(j);
    for k in 0..j {
        if k + 1 < rows {
            let (x, z) = (r[(k, k)], r[(k + 1, k)]);
            let rho = x.norm().hypot(z.norm());
            if rho > 0.0 {
                // G = [c̄ s̄; −s c] with c = x/ρ, s = z/ρ maps (x, z) to (ρ, 0).
                let (c, s) = (x / rho, z / rho);
                for col in k..j {
                    let (u, v) = (r[(k, col)], r[(k + 1, col)]);
                    r[(k, col)] = c.conj() * u + s.conj() * v;
                    r[(k + 1, col)] = -s * u + c * v;
                }
                let (u, v) = (g[k], g[k + 1]);
                g[k] = c.conj() * u + s.conj() * v;
                g[k + 1] = -s * u + c * v;
            }
            norms.push(g[k + 1].norm());
        } else {
            // Square (breakdown) case: the last equation is solved exactly.
            norms.push(0.0);
        }
    }
    let upper = DenseMatrix::from_fn(j, j, |i, c| r[(i, c)]);
    (solve_upper(&upper, &g[..j]), norms)
}
