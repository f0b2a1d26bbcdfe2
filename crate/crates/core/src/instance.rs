//! Linear systems `A x = b` together with what is known about `A`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dense::{DenseMatrix, DenseVector, C64};
use crate::error::{Error, Result};
use crate::gen::SpectrumSpec;

/// Structural class of a system matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixClass {
    Normal,
    Hermitian,
    SkewHermitian,
    DiagonalizableNonnormal,
    General,
}

impl MatrixClass {
    /// Hermitian and skew-Hermitian matrices are normal too.
    pub fn is_normal(self) -> bool {
        matches!(self, Self::Normal | Self::Hermitian | Self::SkewHermitian)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Normal => "normal",
            Self::Hermitian => "hermitian",
            Self::SkewHermitian => "skew-hermitian",
            Self::DiagonalizableNonnormal => "diagonalizable-nonnormal",
            Self::General => "general",
        }
    }
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for MatrixClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "normal" => Self::Normal,
            "hermitian" => Self::Hermitian,
            "skew-hermitian" | "skew" => Self::SkewHermitian,
            "diagonalizable-nonnormal" | "diagonalizable" => Self::DiagonalizableNonnormal,
            "general" => Self::General,
            other => {
                return Err(Error::ContractViolation(format!(
                    "unknown matrix class `{other}`"
                )))
            }
        })
    }
}

/// Eigendecomposition `A = V Λ V^{-1}` known by construction.
#[derive(Clone, Debug)]
pub struct SpectralForm {
    pub v: DenseMatrix,
    /// Inverse of `v`; equals `v^H` for the normal classes.
    pub v_inv: DenseMatrix,
    pub lambda: DenseVector,
    pub class: MatrixClass,
    /// `κ(V) = σ_max(V) / σ_min(V)`.
    pub kappa: f64,
    pub sigma_min: f64,
}

impl SpectralForm {
    /// Upper bound on `‖A − V Λ V^{-1}‖_F / ‖A‖_F`, computed as
    /// `‖A V − V Λ‖_F / (σ_min(V) ‖A‖_F)`.
    pub fn reconstruction_defect(&self, a: &DenseMatrix) -> f64 {
        let av = a.matmul(&self.v).expect("square factors");
        let vl = DenseMatrix::from_fn(self.v.rows(), self.v.cols(), |i, j| {
            self.v[(i, j)] * self.lambda[j]
        });
        let anorm = a.norm_fro();
        if anorm == 0.0 {
            return 0.0;
        }
        av.sub(&vl).expect("same shape").norm_fro() / (self.sigma_min * anorm)
    }

    /// `V^{-1} r`, or `V^H r` for the normal classes.
    pub fn coordinates(&self, r: &DenseVector) -> Result<DenseVector> {
        self.v_inv.matvec(r)
    }
}

/// Reconstruction tolerance attached to [`SystemInstance`] spectral forms.
pub const SPECTRAL_RECONSTRUCTION_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct SystemInstance {
    pub a: DenseMatrix,
    pub b: DenseVector,
    pub x0: DenseVector,
    pub class: MatrixClass,
    pub spectral: Option<SpectralForm>,
    pub seed: Option<u64>,
    pub spectrum: Option<SpectrumSpec>,
}

impl SystemInstance {
    pub fn new(
        a: DenseMatrix,
        b: DenseVector,
        x0: DenseVector,
        class: MatrixClass,
    ) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::ContractViolation(format!(
                "system matrix is {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if b.dim() != a.rows() || x0.dim() != a.rows() {
            return Err(Error::DimensionMismatch(format!(
                "n = {} but b has length {} and x0 has length {}",
                a.rows(),
                b.dim(),
                x0.dim()
            )));
        }
        Ok(Self {
            a,
            b,
            x0,
            class,
            spectral: None,
            seed: None,
            spectrum: None,
        })
    }

    pub fn with_spectral(mut self, form: SpectralForm) -> Result<Self> {
        let defect = form.reconstruction_defect(&self.a);
        if defect > SPECTRAL_RECONSTRUCTION_TOL {
            return Err(Error::Conditioning(format!(
                "spectral form reconstructs A only to {defect:.3e} relative"
            )));
        }
        self.spectral = Some(form);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// `r_0 = b − A x_0`.
    pub fn initial_residual(&self) -> DenseVector {
        let ax = self.a.apply(&self.x0);
        self.b.sub(&ax).expect("dimensions checked at construction")
    }

    /// Replaces the right-hand side (and resets `x0` to zero).
    pub fn with_rhs(mut self, b: DenseVector) -> Result<Self> {
        if b.dim() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "rhs of length {} for n = {}",
                b.dim(),
                self.n()
            )));
        }
        self.x0 = DenseVector::zeros(self.n());
        self.b = b;
        Ok(self)
    }
}

/// Hermitian defect `‖A − A^H‖_F / ‖A‖_F`.
pub fn hermitian_defect(a: &DenseMatrix) -> f64 {
    relative(a.sub(&a.adjoint()).expect("square"), a)
}

/// Skew-Hermitian defect `‖A + A^H‖_F / ‖A‖_F`.
pub fn skew_hermitian_defect(a: &DenseMatrix) -> f64 {
    relative(a.axpy(C64::new(1.0, 0.0), &a.adjoint()).expect("square"), a)
}

/// Normality defect `‖A A^H − A^H A‖_F / ‖A‖_F^2`.
pub fn normality_defect(a: &DenseMatrix) -> f64 {
    let ah = a.adjoint();
    let c = a
        .matmul(&ah)
        .expect("square")
        .sub(&ah.matmul(a).expect("square"))
        .expect("square");
    let an = a.norm_fro();
    if an == 0.0 {
        0.0
    } else {
        c.norm_fro() / (an * an)
    }
}

fn relative(diff: DenseMatrix, a: &DenseMatrix) -> f64 {
    let an = a.norm_fro();
    if an == 0.0 {
        0.0
    } else {
        diff.norm_fro() / an
    }
}
