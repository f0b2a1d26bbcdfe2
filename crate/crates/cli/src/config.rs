//! Flag, config-file and environment resolution into a [`RunConfig`].

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use krylov_sublab::gen::SpectrumSpec;
use krylov_sublab::MatrixClass;
use serde::{Deserialize, Serialize};

pub const SEED_ENV: &str = "KRYLOV_SUBLAB_SEED";
pub const DEFAULT_SEED: u64 = 42;

/// Flags shared by every subcommand. Each may also come from the JSON file
/// given by `--config` (same names, `-` or `_`); flags win.
#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    /// Problem size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Restart length, 1 <= m <= n - 1.
    #[arg(long)]
    pub m: Option<usize>,
    /// normal | hermitian | skew-hermitian | diagonalizable.
    #[arg(long)]
    pub class: Option<String>,
    /// annulus:RMIN,RMAX | interval:A,B | pm:LO,HI | imag:LO,HI | circle:RE,IM,R | list:Z1,Z2,...
    #[arg(long)]
    pub spectrum: Option<String>,
    /// Instance seed (or base seed of a pool). Defaults to $KRYLOV_SUBLAB_SEED, then 42.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Target condition number of the eigenvector matrix.
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    #[serde(alias = "max-cycles")]
    pub max_cycles: Option<usize>,
    /// Stop when ||r_k|| <= rtol ||r_0||.
    #[arg(long)]
    pub rtol: Option<f64>,
    /// Cycles with ||r_k|| <= floor ||r_0|| are excluded from ratio checks.
    #[arg(long)]
    pub floor: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of seeds tried by the figure 2 search.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Verification suite.
    #[arg(long)]
    pub suite: Option<String>,
    /// Instance directory written by `gen` (solve only).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Adds a nonnormal instance to the pools of normal-only suites.
    #[arg(long)]
    #[serde(alias = "inject-nonnormal")]
    pub inject_nonnormal: bool,
    /// JSON file supplying defaults for the flags above.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Params {
    /// Fills unset fields from `other`.
    fn or(self, other: Params) -> Params {
        Params {
            n: self.n.or(other.n),
            m: self.m.or(other.m),
            class: self.class.or(other.class),
            spectrum: self.spectrum.or(other.spectrum),
            seed: self.seed.or(other.seed),
            kappa: self.kappa.or(other.kappa),
            max_cycles: self.max_cycles.or(other.max_cycles),
            rtol: self.rtol.or(other.rtol),
            floor: self.floor.or(other.floor),
            out: self.out.or(other.out),
            budget: self.budget.or(other.budget),
            suite: self.suite.or(other.suite),
            input: self.input.or(other.input),
            inject_nonnormal: self.inject_nonnormal || other.inject_nonnormal,
            config: self.config,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Gen,
    Solve,
    Verify,
    Figure1,
    Figure2,
}

/// Fully resolved settings. `out` and `input` are not echoed into output
/// documents so that reruns in different directories stay byte-identical.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub m: usize,
    pub class: MatrixClass,
    pub spectrum: SpectrumSpec,
    pub seed: u64,
    pub kappa: f64,
    pub max_cycles: usize,
    pub rtol: f64,
    pub floor: f64,
    pub budget: usize,
    pub suite: String,
    pub inject_nonnormal: bool,
    #[serde(skip)]
    pub out: PathBuf,
    #[serde(skip)]
    pub input: Option<PathBuf>,
}

fn default_spectrum(class: MatrixClass, command: Command) -> SpectrumSpec {
    match (class, command) {
        (_, Command::Figure2) => SpectrumSpec::RealInterval { a: 1.0, b: 10.0 },
        (MatrixClass::Hermitian, _) => SpectrumSpec::RealInterval { a: 1.0, b: 100.0 },
        (MatrixClass::SkewHermitian, _) => SpectrumSpec::ImaginaryPairs { lo: 1.0, hi: 2.0 },
        _ => SpectrumSpec::Annulus {
            r_min: 1.0,
            r_max: 2.0,
        },
    }
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) => Ok(Some(s.trim().parse().with_context(|| {
            format!("{SEED_ENV}={s} is not an unsigned integer")
        })?)),
        Err(_) => Ok(None),
    }
}

fn read_config(path: &Path) -> Result<Params> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

pub fn resolve(command: Command, flags: Params) -> Result<RunConfig> {
    let file = match &flags.config {
        Some(p) => read_config(p)?,
        None => Params::default(),
    };
    let p = flags.or(file);

    let class = match &p.class {
        Some(s) => s.parse::<MatrixClass>()?,
        None if command == Command::Figure2 => MatrixClass::DiagonalizableNonnormal,
        None => MatrixClass::Normal,
    };
    let spectrum = match &p.spectrum {
        Some(s) => s.parse::<SpectrumSpec>()?,
        None => default_spectrum(class, command),
    };
    let kappa_default = match (command, class) {
        (Command::Figure2, _) => 100.0,
        (_, MatrixClass::DiagonalizableNonnormal) => 10.0,
        _ => 1.0,
    };
    let seed = match p.seed {
        Some(s) => s,
        None => env_seed()?.unwrap_or(DEFAULT_SEED),
    };
    let cfg = RunConfig {
        command,
        n: p.n.unwrap_or(100),
        m: p.m.unwrap_or(5),
        class,
        spectrum,
        seed,
        kappa: p.kappa.unwrap_or(kappa_default),
        max_cycles: p.max_cycles.unwrap_or(30),
        rtol: p.rtol.unwrap_or(1e-12),
        floor: p.floor.unwrap_or(krylov_sublab::theory::USABLE_FLOOR),
        budget: p.budget.unwrap_or(64),
        suite: p.suite.unwrap_or_else(|| "all".into()),
        inject_nonnormal: p.inject_nonnormal,
        out: p.out.unwrap_or_else(|| PathBuf::from("out")),
        input: p.input,
    };
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if self.n < 2 && self.input.is_none() {
            bail!("--n must be at least 2, got {}", self.n);
        }
        let uses_m = matches!(
            self.command,
            Command::Solve | Command::Figure1 | Command::Figure2
        );
        if uses_m && self.input.is_none() && (self.m == 0 || self.m >= self.n) {
            bail!(
                "restart length must satisfy 1 <= m <= n - 1, got m = {} for n = {}",
                self.m,
                self.n
            );
        }
        if self.max_cycles == 0 {
            bail!("--max-cycles must be at least 1");
        }
        if !(self.rtol >= 0.0) || !(self.floor >= 0.0) {
            bail!("--rtol and --floor must be nonnegative");
        }
        if !(self.kappa >= 1.0) {
            bail!("--kappa must be >= 1, got {}", self.kappa);
        }
        if self.command == Command::Figure2 && self.kappa < 100.0 {
            bail!("figure 2 searches at kappa >= 100, got {}", self.kappa);
        }
        if self.command == Command::Figure2 && self.budget == 0 {
            bail!("--budget must be at least 1");
        }
        Ok(())
    }

    /// Creates the output directory and checks that it accepts files.
    pub fn prepare_out(&self) -> Result<&Path> {
        fs::create_dir_all(&self.out)
            .with_context(|| format!("creating {}", self.out.display()))?;
        let meta = fs::metadata(&self.out)?;
        if meta.permissions().readonly() {
            bail!("output directory {} is not writable", self.out.display());
        }
        Ok(&self.out)
    }
}
