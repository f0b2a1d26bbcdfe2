//! Verification suites: instance pools, per-check records and the verdict
//! document.

use anyhow::{bail, Result};
use krylov_sublab::gen::{
    gen_diagonalizable, gen_hermitian, gen_normal, gen_skew_hermitian, SpectrumSpec,
};
use krylov_sublab::gmres::{
    gmres_cycle, oracle_min_residual, restarted_gmres, ConvergenceReport, RestartConfig,
};
use krylov_sublab::theory::{
    build_krylov_matrix, corollary_alt_check, corollary_n1_check, lemma1_check, lemma2_check,
    lemma3_check, lemma4_check, log_convexity, null_space_chain, theorem1_check, usable_norms,
    RATIO_TOL, UNITARY_BOUND_TOL,
};
use krylov_sublab::{Error, MatrixClass, SystemInstance};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::TOOL_VERSION;

pub const VERDICT_SCHEMA: &str = "krylov-sublab/verdict/v1";

/// Suites in the order `all` runs them.
pub const SUITES: [&str; 9] = [
    "lemma1",
    "lemma2",
    "undersys",
    "lemma3",
    "theorem1",
    "corollary-n1",
    "corollary-alt",
    "lemma4",
    "oracle",
];

const KRYLOV_TOL: f64 = 1e-8;
const FACTORIZATION_TOL: f64 = 1e-10;
const NORM_EQUALITY_TOL: f64 = 1e-10;
const PREDICTION_TOL: f64 = 1e-6;
const ORACLE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct InstanceDescriptor {
    pub id: usize,
    pub n: usize,
    pub m: usize,
    pub class: MatrixClass,
    pub spectrum: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
}

impl InstanceDescriptor {
    fn build(&self) -> Result<SystemInstance> {
        let spec: SpectrumSpec = self.spectrum.parse()?;
        Ok(match (self.class, self.kappa) {
            (_, Some(kappa)) => gen_diagonalizable(self.n, &spec, kappa, self.seed)?,
            (MatrixClass::Normal, None) => gen_normal(self.n, &spec, self.seed)?,
            (MatrixClass::Hermitian, None) => gen_hermitian(self.n, &spec, self.seed)?,
            (MatrixClass::SkewHermitian, None) => gen_skew_hermitian(self.n, &spec, self.seed)?,
            (other, None) => bail!("no generator for class {other} without a target kappa"),
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub enum Bound {
    /// Passes when `measured <= tolerance`.
    #[serde(rename = "measured <= tolerance")]
    Upper,
    /// Passes when `measured >= -tolerance`.
    #[serde(rename = "measured >= -tolerance")]
    Lower,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub instance: InstanceDescriptor,
    pub measured: Option<f64>,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
    /// Number of inequalities or identities behind `measured`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    fn of<'a>(records: impl Iterator<Item = &'a CheckRecord>) -> Self {
        let mut s = Summary::default();
        for r in records {
            s.total += 1;
            if r.pass {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub name: String,
    #[serde(flatten)]
    pub counts: Summary,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictDocument {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub suite: String,
    pub config: RunConfig,
    pub summary: Summary,
    pub suites: Vec<SuiteSummary>,
    pub records: Vec<CheckRecord>,
}

impl VerdictDocument {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }
}

struct Recorder<'a> {
    suite: &'a str,
    instance: &'a InstanceDescriptor,
    out: Vec<CheckRecord>,
}

impl<'a> Recorder<'a> {
    fn new(suite: &'a str, instance: &'a InstanceDescriptor) -> Self {
        Self {
            suite,
            instance,
            out: Vec::new(),
        }
    }

    fn push(
        &mut self,
        check: &str,
        measured: Option<f64>,
        tolerance: f64,
        bound: Bound,
        note: Option<String>,
    ) {
        let pass = match (measured, bound) {
            (Some(x), Bound::Upper) => x <= tolerance,
            (Some(x), Bound::Lower) => x >= -tolerance,
            (None, _) => false,
        };
        self.out.push(CheckRecord {
            suite: self.suite.into(),
            check: format!("{}/{check}", self.suite),
            instance: self.instance.clone(),
            measured,
            tolerance,
            bound,
            pass,
            samples: None,
            note,
        });
    }

    /// Attaches a sample count to the most recent record.
    fn samples(&mut self, count: usize) {
        if let Some(r) = self.out.last_mut() {
            r.samples = Some(count);
        }
    }

    fn value(&mut self, check: &str, measured: f64, tolerance: f64, bound: Bound) {
        self.push(check, Some(measured), tolerance, bound, None);
    }

    fn error(&mut self, check: &str, tolerance: f64, bound: Bound, err: impl std::fmt::Display) {
        self.push(check, None, tolerance, bound, Some(err.to_string()));
    }

    /// A check with nothing to measure on this instance.
    fn vacuous(&mut self, check: &str, tolerance: f64, bound: Bound, note: &str) {
        self.out.push(CheckRecord {
            suite: self.suite.into(),
            check: format!("{}/{check}", self.suite),
            instance: self.instance.clone(),
            measured: None,
            tolerance,
            bound,
            pass: true,
            samples: Some(0),
            note: Some(note.into()),
        });
    }
}

fn descriptor(
    id: usize,
    n: usize,
    m: usize,
    class: MatrixClass,
    spectrum: &SpectrumSpec,
    seed: u64,
) -> InstanceDescriptor {
    InstanceDescriptor {
        id,
        n,
        m,
        class,
        spectrum: spectrum.to_string(),
        seed,
        kappa: None,
    }
}

fn annulus() -> SpectrumSpec {
    SpectrumSpec::Annulus {
        r_min: 1.0,
        r_max: 2.0,
    }
}

/// 200 normal instances for the ratio and conjugate-run suites.
pub fn theorem_pool(base: u64) -> Vec<InstanceDescriptor> {
    let wide = SpectrumSpec::RealInterval { a: 1.0, b: 100.0 };
    (0..200)
        .map(|i| {
            let n = [20, 50, 100][i % 3];
            let m = [1, 3, 5, 10][(i / 3) % 4];
            let (class, spec) = if (i / 12) % 2 == 0 {
                (MatrixClass::Normal, annulus())
            } else {
                (MatrixClass::Hermitian, wide.clone())
            };
            descriptor(i, n, m, class, &spec, base + i as u64)
        })
        .collect()
}

/// 50 small normal instances for the explicit Krylov-matrix identities.
pub fn krylov_pool(base: u64) -> Vec<InstanceDescriptor> {
    (0..50)
        .map(|i| {
            descriptor(
                i,
                6 + 2 * (i % 8),
                1 + (i / 8) % 5,
                MatrixClass::Normal,
                &annulus(),
                base + i as u64,
            )
        })
        .collect()
}

/// 20 Hermitian indefinite instances, n = 12, m = 11.
pub fn equality_pool(base: u64) -> Vec<InstanceDescriptor> {
    let spec = SpectrumSpec::integer_pairs(12, false);
    (0..20)
        .map(|i| descriptor(i, 12, 11, MatrixClass::Hermitian, &spec, base + i as u64))
        .collect()
}

/// 20 Hermitian and 20 skew-Hermitian instances, n ∈ 6..=12, m = n − 1.
pub fn alternating_pool(base: u64) -> Vec<InstanceDescriptor> {
    (0..40)
        .map(|i| {
            let n = 6 + i % 7;
            let skew = i >= 20;
            let class = if skew {
                MatrixClass::SkewHermitian
            } else {
                MatrixClass::Hermitian
            };
            descriptor(
                i,
                n,
                n - 1,
                class,
                &SpectrumSpec::integer_pairs(n, skew),
                base + i as u64,
            )
        })
        .collect()
}

/// 50 diagonalizable instances with κ(V) ∈ {1, 10, 100}, m = 5.
pub fn bound_pool(base: u64) -> Vec<InstanceDescriptor> {
    (0..50)
        .map(|i| {
            let kappa = [1.0, 10.0, 100.0][i % 3];
            let n = [10, 20, 30, 40, 50][(i / 3) % 5];
            let class = if kappa == 1.0 {
                MatrixClass::Normal
            } else {
                MatrixClass::DiagonalizableNonnormal
            };
            InstanceDescriptor {
                kappa: Some(kappa),
                ..descriptor(i, n, 5, class, &annulus(), base + i as u64)
            }
        })
        .collect()
}

/// 100 normal instances with n ≤ 30, m ≤ 5.
pub fn oracle_pool(base: u64) -> Vec<InstanceDescriptor> {
    let interval = SpectrumSpec::RealInterval { a: 1.0, b: 10.0 };
    (0..100)
        .map(|i| {
            let spec = if i % 2 == 0 {
                annulus()
            } else {
                interval.clone()
            };
            descriptor(
                i,
                5 + i % 26,
                1 + (i / 26) % 5,
                MatrixClass::Normal,
                &spec,
                base + i as u64,
            )
        })
        .collect()
}

fn injected(id: usize, base: u64) -> InstanceDescriptor {
    InstanceDescriptor {
        kappa: Some(10.0),
        ..descriptor(
            id,
            20,
            3,
            MatrixClass::DiagonalizableNonnormal,
            &annulus(),
            base + id as u64,
        )
    }
}

fn run(
    sys: &SystemInstance,
    m: usize,
    cfg: &RunConfig,
    keep: bool,
) -> krylov_sublab::Result<ConvergenceReport> {
    restarted_gmres(
        sys,
        &RestartConfig::new(m, cfg.max_cycles, cfg.rtol).keep_residuals(keep),
    )
}

fn max(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn check_lemma1(d: &InstanceDescriptor, sys: &SystemInstance, rec: &mut Recorder) {
    let r = sys.initial_residual();
    let outcome = build_krylov_matrix(&sys.a, &r, d.m).and_then(|bundle| {
        let exit = gmres_cycle(&sys.a, &r, d.m)?
            .exit_residual
            .expect("cycle keeps its exit residual");
        lemma1_check(&bundle, &exit)
    });
    match outcome {
        Ok(out) => rec.value(
            "pseudoinverse-identity",
            out.defect,
            KRYLOV_TOL,
            Bound::Upper,
        ),
        Err(e) => rec.error("pseudoinverse-identity", KRYLOV_TOL, Bound::Upper, e),
    }
}

fn check_lemma2(d: &InstanceDescriptor, sys: &SystemInstance, rec: &mut Recorder) {
    let spectral = sys
        .spectral
        .as_ref()
        .expect("generated instances carry their spectral form");
    match lemma2_check(&sys.a, spectral, &sys.initial_residual(), d.m) {
        Ok(defect) => rec.value(
            "spectral-factorization",
            defect,
            FACTORIZATION_TOL,
            Bound::Upper,
        ),
        Err(e) => rec.error("spectral-factorization", FACTORIZATION_TOL, Bound::Upper, e),
    }
}

fn check_undersys(
    d: &InstanceDescriptor,
    sys: &SystemInstance,
    cfg: &RunConfig,
    rec: &mut Recorder,
) {
    let cfg = RunConfig {
        max_cycles: cfg.max_cycles.min(4),
        rtol: 0.0,
        ..cfg.clone()
    };
    match run(sys, d.m, &cfg, true).and_then(|rep| null_space_chain(&sys.a, &rep)) {
        Ok(chain) if chain.is_empty() => {
            rec.vacuous(
                "e1-identity",
                KRYLOV_TOL,
                Bound::Upper,
                "no consecutive pair above the floor",
            );
            rec.vacuous(
                "pythagoras",
                KRYLOV_TOL,
                Bound::Upper,
                "no consecutive pair above the floor",
            );
        }
        Ok(chain) => {
            rec.value(
                "e1-identity",
                max(chain.iter().map(|s| s.e1_defect)),
                KRYLOV_TOL,
                Bound::Upper,
            );
            rec.value(
                "pythagoras",
                max(chain.iter().map(|s| s.pythagoras_defect)),
                KRYLOV_TOL,
                Bound::Upper,
            );
        }
        Err(e) => {
            rec.error("e1-identity", KRYLOV_TOL, Bound::Upper, &e);
            rec.error("pythagoras", KRYLOV_TOL, Bound::Upper, &e);
        }
    }
}

fn check_lemma3(d: &InstanceDescriptor, sys: &SystemInstance, rec: &mut Recorder) {
    let r0 = sys.initial_residual();
    match lemma3_check(&sys.a, sys.class, &r0, d.m) {
        Ok(out) => {
            rec.value(
                "norm-equality",
                (out.norm_a - out.norm_ah).abs() / r0.norm(),
                NORM_EQUALITY_TOL,
                Bound::Upper,
            );
            rec.value(
                "polynomial-conjugation",
                out.conjugation_defect,
                KRYLOV_TOL,
                Bound::Upper,
            );
        }
        Err(e) => {
            rec.error("norm-equality", NORM_EQUALITY_TOL, Bound::Upper, &e);
            rec.error("polynomial-conjugation", KRYLOV_TOL, Bound::Upper, &e);
        }
    }
}

fn check_theorem1(
    d: &InstanceDescriptor,
    sys: &SystemInstance,
    cfg: &RunConfig,
    rec: &mut Recorder,
) {
    let outcome = run(sys, d.m, cfg, false).and_then(|rep| {
        let bound = theorem1_check(&rep, cfg.floor)?;
        Ok((bound, log_convexity(&usable_norms(&rep, cfg.floor))))
    });
    match outcome {
        Ok((bound, convexity)) => {
            let min_slack = bound.min_slack().expect("at least one ratio pair");
            rec.value("ratio-monotonicity", min_slack, RATIO_TOL, Bound::Lower);
            rec.samples(bound.slacks.len());
            let min_curv = convexity.iter().copied().fold(f64::INFINITY, f64::min);
            rec.value("log-convexity", min_curv, RATIO_TOL, Bound::Lower);
            rec.samples(convexity.len());
        }
        // A run that drops below the floor within one cycle has no ratio
        // pair, hence nothing that could violate monotonicity.
        Err(Error::InsufficientData(why)) => {
            rec.vacuous(
                "ratio-monotonicity",
                RATIO_TOL,
                Bound::Lower,
                &format!("no ratio pair: {why}"),
            );
            rec.vacuous(
                "log-convexity",
                RATIO_TOL,
                Bound::Lower,
                &format!("no ratio pair: {why}"),
            );
        }
        Err(e) => {
            rec.error("ratio-monotonicity", RATIO_TOL, Bound::Lower, &e);
            rec.error("log-convexity", RATIO_TOL, Bound::Lower, &e);
        }
    }
}

fn check_corollary_n1(
    d: &InstanceDescriptor,
    sys: &SystemInstance,
    cfg: &RunConfig,
    rec: &mut Recorder,
) {
    let rep = match run(sys, d.m, cfg, true) {
        Ok(rep) => rep,
        Err(e) => {
            for (check, tol) in [
                ("null-space", KRYLOV_TOL),
                ("ratio-slack", RATIO_TOL),
                ("prediction", PREDICTION_TOL),
            ] {
                rec.error(check, tol, Bound::Upper, &e);
            }
            return;
        }
    };
    match null_space_chain(&sys.a, &rep) {
        Ok(chain) if chain.is_empty() => rec.error(
            "null-space",
            KRYLOV_TOL,
            Bound::Upper,
            "no consecutive pair above the floor",
        ),
        Ok(chain) => {
            let res = rep.residuals().expect("residuals kept");
            let rel = chain
                .iter()
                .enumerate()
                .map(|(k, s)| s.w_norm / res[k].norm());
            rec.value("null-space", max(rel), KRYLOV_TOL, Bound::Upper);
        }
        Err(e) => rec.error("null-space", KRYLOV_TOL, Bound::Upper, e),
    }
    match theorem1_check(&rep, cfg.floor) {
        Ok(b) => rec.value(
            "ratio-slack",
            max(b.slacks.iter().map(|s| s.abs())),
            RATIO_TOL,
            Bound::Upper,
        ),
        Err(e) => rec.error("ratio-slack", RATIO_TOL, Bound::Upper, e),
    }
    match corollary_n1_check(&rep) {
        Ok(err) => rec.value("prediction", err, PREDICTION_TOL, Bound::Upper),
        Err(e) => rec.error("prediction", PREDICTION_TOL, Bound::Upper, e),
    }
}

fn check_corollary_alt(
    d: &InstanceDescriptor,
    sys: &SystemInstance,
    cfg: &RunConfig,
    rec: &mut Recorder,
) {
    match run(sys, d.m, cfg, true).and_then(|rep| corollary_alt_check(&rep)) {
        Ok(alt) if alt.alphas.is_empty() => {
            rec.vacuous(
                "collinearity",
                KRYLOV_TOL,
                Bound::Upper,
                "no cycle triple above the floor",
            );
            rec.vacuous(
                "alpha-range",
                1.0,
                Bound::Upper,
                "no cycle triple above the floor",
            );
        }
        Ok(alt) => {
            rec.value("collinearity", alt.max_defect, KRYLOV_TOL, Bound::Upper);
            let top = max(alt.alphas.iter().copied());
            if alt.alphas_in_unit_interval() {
                rec.value("alpha-range", top, 1.0, Bound::Upper);
            } else {
                rec.push(
                    "alpha-range",
                    Some(top),
                    1.0,
                    Bound::Upper,
                    Some("an alpha lies outside (0, 1]".into()),
                );
                rec.out.last_mut().expect("just pushed").pass = false;
            }
        }
        Err(e) => {
            rec.error("collinearity", KRYLOV_TOL, Bound::Upper, &e);
            rec.error("alpha-range", 1.0, Bound::Upper, &e);
        }
    }
}

fn check_lemma4(d: &InstanceDescriptor, sys: &SystemInstance, cfg: &RunConfig, rec: &mut Recorder) {
    let unitary = d.kappa == Some(1.0);
    let outcome =
        run(sys, d.m, cfg, true).and_then(|rep| Ok((lemma4_check(sys, &rep)?, rep.norms())));
    match outcome {
        Ok((b, norms)) => {
            match b.bound_slacks.iter().copied().reduce(f64::min) {
                Some(s) => rec.value("bound", s, RATIO_TOL, Bound::Lower),
                None => rec.vacuous(
                    "bound",
                    RATIO_TOL,
                    Bound::Lower,
                    "no cycle pair above the floor",
                ),
            }
            if unitary {
                rec.value(
                    "alpha",
                    b.alpha.expect("alpha recorded") - 1.0,
                    UNITARY_BOUND_TOL,
                    Bound::Upper,
                );
                let rel = b
                    .betas
                    .iter()
                    .enumerate()
                    .map(|(j, beta)| beta / norms[j + 1]);
                rec.value("beta", max(rel), UNITARY_BOUND_TOL, Bound::Upper);
            }
        }
        Err(e) => {
            rec.error("bound", RATIO_TOL, Bound::Lower, &e);
            if unitary {
                rec.error("alpha", UNITARY_BOUND_TOL, Bound::Upper, &e);
                rec.error("beta", UNITARY_BOUND_TOL, Bound::Upper, &e);
            }
        }
    }
}

fn check_oracle(d: &InstanceDescriptor, sys: &SystemInstance, rec: &mut Recorder) {
    let r = sys.initial_residual();
    let spectral = sys
        .spectral
        .as_ref()
        .expect("generated instances carry their spectral form");
    let outcome = gmres_cycle(&sys.a, &r, d.m)
        .and_then(|c| Ok((c.exit_norm, oracle_min_residual(spectral, &r, d.m)?.norm)));
    match outcome {
        Ok((gmres, oracle)) => rec.value(
            "minimum-residual",
            (gmres - oracle).abs() / r.norm(),
            ORACLE_TOL,
            Bound::Upper,
        ),
        Err(e) => rec.error("minimum-residual", ORACLE_TOL, Bound::Upper, e),
    }
}

fn pool_for(suite: &str, cfg: &RunConfig) -> Vec<InstanceDescriptor> {
    let base = cfg.seed;
    let mut pool = match suite {
        "lemma1" | "lemma2" | "undersys" => krylov_pool(base),
        "lemma3" | "theorem1" => theorem_pool(base),
        "corollary-n1" => equality_pool(base),
        "corollary-alt" => alternating_pool(base),
        "lemma4" => bound_pool(base),
        "oracle" => oracle_pool(base),
        _ => unreachable!("suite names are validated first"),
    };
    if cfg.inject_nonnormal && matches!(suite, "lemma3" | "theorem1" | "corollary-n1" | "oracle") {
        pool.push(injected(pool.len(), base));
    }
    pool
}

fn check_instance(suite: &str, d: &InstanceDescriptor, cfg: &RunConfig) -> Vec<CheckRecord> {
    let mut rec = Recorder::new(suite, d);
    let sys = match d.build() {
        Ok(sys) => sys,
        Err(e) => {
            rec.error("generate", 0.0, Bound::Upper, e);
            return rec.out;
        }
    };
    match suite {
        "lemma1" => check_lemma1(d, &sys, &mut rec),
        "lemma2" => check_lemma2(d, &sys, &mut rec),
        "undersys" => check_undersys(d, &sys, cfg, &mut rec),
        "lemma3" => check_lemma3(d, &sys, &mut rec),
        "theorem1" => check_theorem1(d, &sys, cfg, &mut rec),
        "corollary-n1" => check_corollary_n1(d, &sys, cfg, &mut rec),
        "corollary-alt" => check_corollary_alt(d, &sys, cfg, &mut rec),
        "lemma4" => check_lemma4(d, &sys, cfg, &mut rec),
        "oracle" => check_oracle(d, &sys, &mut rec),
        _ => unreachable!("suite names are validated first"),
    }
    rec.out
}

/// Suite names selected by `--suite`.
pub fn select(suite: &str) -> Result<Vec<&'static str>> {
    if suite == "all" {
        return Ok(SUITES.to_vec());
    }
    match SUITES.iter().find(|s| **s == suite) {
        Some(s) => Ok(vec![*s]),
        None => bail!(
            "unknown suite `{suite}`; expected one of all, {}",
            SUITES.join(", ")
        ),
    }
}

/// Runs the selected suites. Instances run in parallel; records are
/// assembled in suite then instance order.
pub fn run_suites(cfg: &RunConfig) -> Result<VerdictDocument> {
    let names = select(&cfg.suite)?;
    let mut records = Vec::new();
    let mut suites = Vec::new();
    for name in names {
        let pool = pool_for(name, cfg);
        let per_instance: Vec<Vec<CheckRecord>> = pool
            .par_iter()
            .map(|d| check_instance(name, d, cfg))
            .collect();
        let suite_records: Vec<CheckRecord> = per_instance.into_iter().flatten().collect();
        suites.push(SuiteSummary {
            name: name.into(),
            counts: Summary::of(suite_records.iter()),
        });
        records.extend(suite_records);
    }
    Ok(VerdictDocument {
        schema: VERDICT_SCHEMA,
        tool_version: TOOL_VERSION,
        suite: cfg.suite.clone(),
        config: cfg.clone(),
        summary: Summary::of(records.iter()),
        suites,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pools_have_documented_sizes_and_ranges() {
        let t = theorem_pool(0);
        assert_eq!(t.len(), 200);
        assert!(t
            .iter()
            .all(|d| [20, 50, 100].contains(&d.n) && [1, 3, 5, 10].contains(&d.m)));
        assert!(krylov_pool(0).iter().all(|d| d.n <= 20 && d.m <= 5));
        assert!(equality_pool(0).iter().all(|d| d.n == 12 && d.m == 11));
        let alt = alternating_pool(0);
        assert_eq!(
            alt.iter()
                .filter(|d| d.class == MatrixClass::SkewHermitian)
                .count(),
            20
        );
        assert!(alt.iter().all(|d| d.n <= 12 && d.m + 1 == d.n));
        assert!(bound_pool(0).iter().all(|d| d.n <= 50 && d.m == 5));
        assert!(oracle_pool(0).iter().all(|d| d.n <= 30 && d.m <= 5));
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(select("lemma9").is_err());
        assert_eq!(select("all").unwrap().len(), SUITES.len());
    }
}
