//! Named verification suites.
//!
//! Each suite bundles a group of end-to-end checks: exhaustive oracle
//! recounts against the stratified counting route, census pins with
//! dimension and leading-coefficient bands, component decompositions,
//! the truncated seventh-power criterion, and the odd-characteristic
//! pins. Every check reports a name, a pass flag, and a human-readable
//! detail line; computations are deterministic in the configured seed.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ff::{Elem, Field};
use crate::matff::{enumerate_affine, EnumOpts, Mat, MatError, DEFAULT_BUDGET};
use crate::modvar::{decompose, DecomposeOpts, IndecClass, ModvarError, PairModule, W_FINGERPRINT};
use crate::nilpotent::{NilpotentError, Partition};
use crate::variety::char7::seventh_power_check;
use crate::variety::count::{census, count_cent_nil, count_nullcone_in_span, gl_basis, max_second_rank};
use crate::variety::grading::grading_report;
use crate::variety::{
    component_rep, gl2_act, is_comm_pair, random_pair, ComponentId, VarietyError,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}; expected one of main-theorem, equid2, components, remark-p7, gl5-p3, all")]
    UnknownSuite(String),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Modvar(#[from] ModvarError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Nilpotent(#[from] NilpotentError),
    #[error(transparent)]
    Field(#[from] crate::ff::FieldError),
}

impl VerifyError {
    /// Whether the underlying failure is an enumeration budget overrun.
    pub fn is_budget_exceeded(&self) -> bool {
        fn mat(e: &MatError) -> bool {
            matches!(e, MatError::BudgetExceeded { .. })
        }
        fn variety(e: &VarietyError) -> bool {
            matches!(e, VarietyError::Mat(m) if mat(m))
        }
        match self {
            VerifyError::Mat(m) => mat(m),
            VerifyError::Variety(v) => variety(v),
            VerifyError::Modvar(ModvarError::Mat(m)) => mat(m),
            VerifyError::Modvar(ModvarError::Variety(v)) => variety(v),
            _ => false,
        }
    }
}

/// Knobs shared by every suite. `workers = 0` means one worker per
/// available CPU; `samples` scales the randomized checks.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub budget: u64,
    pub seed: u64,
    pub samples: usize,
    pub workers: usize,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            budget: DEFAULT_BUDGET,
            seed: 0,
            samples: 10_000,
            workers: 0,
            timings: false,
        }
    }
}

impl SuiteConfig {
    fn opts(&self) -> EnumOpts {
        let mut o = EnumOpts::with_budget(self.budget);
        if self.workers > 0 {
            o.workers = self.workers;
        }
        o
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_secs: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "main-theorem",
    "equid2",
    "components",
    "remark-p7",
    "gl5-p3",
    "all",
];

/// Runs the named suite. Comparison failures land in the report;
/// infrastructure failures (bad parameters, blown budgets) are errors.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, VerifyError> {
    let mut checks = Vec::new();
    match name {
        "main-theorem" => suite_main_theorem(cfg, &mut checks)?,
        "equid2" => suite_equid2(cfg, &mut checks)?,
        "components" => suite_components(cfg, &mut checks)?,
        "remark-p7" => suite_remark_p7(cfg, &mut checks)?,
        "gl5-p3" => suite_gl5_p3(cfg, &mut checks)?,
        "all" => {
            suite_main_theorem(cfg, &mut checks)?;
            suite_equid2(cfg, &mut checks)?;
            suite_components(cfg, &mut checks)?;
            suite_remark_p7(cfg, &mut checks)?;
            suite_gl5_p3(cfg, &mut checks)?;
        }
        other => return Err(VerifyError::UnknownSuite(other.to_string())),
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        checks,
    })
}

fn run_check<F>(
    checks: &mut Vec<CheckResult>,
    timings: bool,
    name: &str,
    f: F,
) -> Result<(), VerifyError>
where
    F: FnOnce() -> Result<(bool, String), VerifyError>,
{
    let start = Instant::now();
    let (passed, detail) = f()?;
    checks.push(CheckResult {
        name: name.to_string(),
        passed,
        detail,
        elapsed_secs: timings.then(|| start.elapsed().as_secs_f64()),
    });
    Ok(())
}

/// All matrices in the span of `basis` whose p-th power vanishes.
fn collect_nilcone(basis: &[Mat], opts: &EnumOpts) -> Result<Vec<Mat>, VerifyError> {
    Ok(enumerate_affine(
        basis,
        opts,
        Vec::new,
        |acc: &mut Vec<Mat>, _, m| {
            if m.is_pth_power_zero() {
                acc.push(m.clone());
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )?)
}

/// Pair count by raw filtering: list every matrix with vanishing p-th
/// power, then count commuting ordered pairs. No orbit data involved.
fn oracle_pair_count(n: usize, q: u64, opts: &EnumOpts) -> Result<u64, VerifyError> {
    let field = Field::from_order(q)?;
    let cone = collect_nilcone(&gl_basis(&field, n)?, opts)?;
    let mut count = 0u64;
    for a in &cone {
        for b in &cone {
            if a.commutes_with(b)? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Basis of the centralizer of `x` in gl(n), read off from the kernel of
/// the vectorized commutator map.
fn centralizer_span(x: &Mat) -> Result<Vec<Mat>, VerifyError> {
    let n = x.rows();
    let field = x.field();
    let mut op = Mat::zeros(field, n * n, n * n)?;
    for col in 0..n * n {
        let unit = Mat::unit(field, n, n, col / n, col % n)?;
        let comm = x.commutator(&unit)?;
        for r in 0..n {
            for c in 0..n {
                op.set(r * n + c, col, comm.at(r, c));
            }
        }
    }
    let (_, kernel) = op.rank_kernel();
    let mut basis = Vec::with_capacity(kernel.len());
    for v in kernel {
        let mut m = Mat::zeros(field, n, n)?;
        for (idx, &e) in v.iter().enumerate() {
            if e != 0 {
                m.set(idx / n, idx % n, e);
            }
        }
        basis.push(m);
    }
    Ok(basis)
}

/// Pair count grouped by the first coordinate: every first coordinate is
/// enumerated raw, and its partners counted inside its centralizer. An
/// independent middle route between raw filtering and orbit counting.
fn pair_count_by_first_coordinate(
    n: usize,
    q: u64,
    opts: &EnumOpts,
) -> Result<BigUint, VerifyError> {
    let field = Field::from_order(q)?;
    let firsts = collect_nilcone(&gl_basis(&field, n)?, opts)?;
    let inner = EnumOpts {
        budget: opts.budget,
        workers: 1,
    };
    let mut total = BigUint::ZERO;
    for x in &firsts {
        let cent = centralizer_span(x)?;
        total += count_nullcone_in_span(&cent, &inner)?;
    }
    Ok(total)
}

fn suite_main_theorem(
    cfg: &SuiteConfig,
    checks: &mut Vec<CheckResult>,
) -> Result<(), VerifyError> {
    use crate::variety::count::count_pairs;
    let opts = cfg.opts();

    run_check(checks, cfg.timings, "oracle-pairs-n2", || {
        let mut detail = String::new();
        let mut ok = true;
        for q in [2u64, 3, 4, 5] {
            let raw = oracle_pair_count(2, q, &opts)?;
            let strat = count_pairs(2, q, &opts)?;
            ok &= BigUint::from(raw) == strat;
            detail.push_str(&format!("q={}: raw {} vs stratified {}; ", q, raw, strat));
        }
        Ok((ok, detail.trim_end_matches("; ").to_string()))
    })?;

    run_check(checks, cfg.timings, "oracle-pairs-n3-q2", || {
        let raw = oracle_pair_count(3, 2, &opts)?;
        let strat = count_pairs(3, 2, &opts)?;
        let ok = BigUint::from(raw) == strat && raw == 148;
        Ok((ok, format!("raw {} vs stratified {}, pinned 148", raw, strat)))
    })?;

    run_check(checks, cfg.timings, "oracle-pairs-n4-q2", || {
        let grouped = pair_count_by_first_coordinate(4, 2, &opts)?;
        let strat = count_pairs(4, 2, &opts)?;
        let ok = grouped == strat && grouped == BigUint::from(10816u32);
        Ok((
            ok,
            format!(
                "first-coordinate grouping {} vs stratified {}, pinned 10816",
                grouped, strat
            ),
        ))
    })?;

    run_check(checks, cfg.timings, "full-census-n4", || {
        let report = census(4, None, &[2, 4, 8], &opts, false)?;
        let est = report.estimate.as_ref().expect("two sizes");
        let ok = report.rows[0].count == BigUint::from(10816u32)
            && (est.dim - 12.0).abs() <= 0.35
            && est.leading_rounded == 2;
        let counts: Vec<String> = report.rows.iter().map(|r| r.count.to_string()).collect();
        Ok((
            ok,
            format!(
                "counts [{}], dim {:.3} (want 12 +/- 0.35), lead {:.3} -> {}",
                counts.join(", "),
                est.dim,
                est.leading,
                est.leading_rounded
            ),
        ))
    })?;

    for n in 2..=5usize {
        let name = format!("rank-profile-n{}", n);
        run_check(checks, cfg.timings, &name, || {
            let mut detail = String::new();
            let mut ok = true;
            for i in 0..=n / 2 {
                let r = max_second_rank(n, i, 2, &opts)?;
                let fine = if n >= 2 * i + 2 { r > i } else { r == i };
                ok &= fine;
                detail.push_str(&format!("i={}: max rank {}; ", i, r));
            }
            Ok((ok, detail.trim_end_matches("; ").to_string()))
        })?;
    }

    for n in 2..=6usize {
        for q in [2u64, 4] {
            let name = format!("closure-n{}-q{}", n, q);
            run_check(checks, cfg.timings, &name, || {
                let field = Field::from_order(q)?;
                let mut rng =
                    ChaCha8Rng::seed_from_u64(cfg.seed ^ ((n as u64) << 32) ^ (q << 8) ^ 0xc1);
                let qe = field.q();
                let mut failures = 0usize;
                for _ in 0..cfg.samples {
                    let pair = random_pair(&field, n, &mut rng)?;
                    let coeffs = loop {
                        let v: Vec<Elem> =
                            (0..4).map(|_| rng.gen_range(0..qe) as Elem).collect();
                        let det = field.sub(field.mul(v[0], v[3]), field.mul(v[1], v[2]));
                        if det != 0 {
                            break [[v[0], v[1]], [v[2], v[3]]];
                        }
                    };
                    match gl2_act(coeffs, &pair) {
                        Ok(out) => {
                            if out.n() != n || !is_comm_pair(out.first(), out.second()) {
                                failures += 1;
                            }
                        }
                        Err(_) => failures += 1,
                    }
                }
                Ok((
                    failures == 0,
                    format!("{} trials, {} closure failures", cfg.samples, failures),
                ))
            })?;
        }
    }
    Ok(())
}

fn suite_equid2(cfg: &SuiteConfig, checks: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    let opts = cfg.opts();

    run_check(checks, cfg.timings, "cent-nil-census-4-2", || {
        let report = census(4, Some(2), &[2, 4, 8], &opts, false)?;
        let est = report.estimate.as_ref().expect("two sizes");
        let pinned: Vec<BigUint> = [28u32, 496, 8128].iter().map(|&v| v.into()).collect();
        let got: Vec<BigUint> = report.rows.iter().map(|r| r.count.clone()).collect();
        let ok = got == pinned && (est.dim - 4.0).abs() <= 0.35 && est.leading_rounded == 2;
        Ok((
            ok,
            format!(
                "counts {:?} (want [28, 496, 8128]), dim {:.3} (want 4 +/- 0.35), lead {:.3} -> {}",
                got.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                est.dim,
                est.leading,
                est.leading_rounded
            ),
        ))
    })?;

    run_check(checks, cfg.timings, "cent-nil-census-5-2", || {
        let report = census(5, Some(2), &[2, 4], &opts, false)?;
        let est = report.estimate.as_ref().expect("two sizes");
        let pinned: Vec<BigUint> = [160u32, 11776].iter().map(|&v| v.into()).collect();
        let got: Vec<BigUint> = report.rows.iter().map(|r| r.count.clone()).collect();
        let ok = got == pinned && (est.dim - 6.0).abs() <= 0.6 && est.leading_rounded == 3;
        Ok((
            ok,
            format!(
                "counts {:?} (want [160, 11776]), dim {:.3} (want 6 +/- 0.6), lead {:.3} -> {}",
                got.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                est.dim,
                est.leading,
                est.leading_rounded
            ),
        ))
    })?;

    run_check(checks, cfg.timings, "cent-nil-stability-6-3", || {
        let mut counts = Vec::new();
        for workers in [1usize, 1, 2, 4] {
            let o = EnumOpts {
                budget: cfg.budget,
                workers,
            };
            counts.push(count_cent_nil(6, 3, 2, &o)?);
        }
        let ok = counts.iter().all(|c| *c == BigUint::from(1184u32));
        Ok((
            ok,
            format!(
                "counts across reruns and 1/2/4 workers: {:?} (want all 1184)",
                counts.iter().map(|c| c.to_string()).collect::<Vec<_>>()
            ),
        ))
    })?;
    Ok(())
}

fn suite_components(cfg: &SuiteConfig, checks: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    let field = Field::from_order(2)?;
    let dopts = DecomposeOpts::default();

    run_check(checks, cfg.timings, "w-indecomposable", || {
        let module = PairModule::new(crate::variety::w_pair(&field)?);
        let dec = decompose(&module, &dopts)?;
        let ok = dec.summands.len() == 1
            && dec.summands[0].certified
            && dec.summands[0].class == IndecClass::W
            && dec.summands[0].fingerprint == W_FINGERPRINT;
        Ok((
            ok,
            format!(
                "{} summand(s), class {}, certified {}",
                dec.summands.len(),
                dec.summands[0].class.label(),
                dec.summands[0].certified
            ),
        ))
    })?;

    run_check(checks, cfg.timings, "even-component-split-n4", || {
        let rep = component_rep(&field, 4, &ComponentId::X(0))?;
        let dec = decompose(&PairModule::new(rep), &dopts)?;
        let labels = dec.labels();
        let ok = dec.dims() == vec![2, 2]
            && labels == vec!["U(1:0)".to_string(), "U(1:1)".to_string()]
            && dec.all_certified();
        Ok((ok, format!("summands {:?}", labels)))
    })?;

    run_check(checks, cfg.timings, "odd-plus-n5", || {
        let rep = component_rep(&field, 5, &ComponentId::XPlus(0))?;
        let dec = decompose(&PairModule::new(rep), &dopts)?;
        let s = &dec.summands[0];
        let ok = dec.summands.len() == 1
            && s.certified
            && s.class == (IndecClass::ZPlus { n: 5 })
            && s.fingerprint.end_dim == 7;
        Ok((
            ok,
            format!(
                "{} summand(s), class {}, endomorphism dim {}",
                dec.summands.len(),
                s.class.label(),
                s.fingerprint.end_dim
            ),
        ))
    })?;

    run_check(checks, cfg.timings, "odd-minus-dual-n5", || {
        let rep = component_rep(&field, 5, &ComponentId::XPlus(0))?;
        let dual = PairModule::new(rep).dualize()?;
        let dec = decompose(&dual, &dopts)?;
        let s = &dec.summands[0];
        let ok = dec.summands.len() == 1
            && s.certified
            && s.class == (IndecClass::ZMinus { n: 5 })
            && s.fingerprint.dim_rad == 3;
        Ok((
            ok,
            format!(
                "{} summand(s), class {}, radical dim {}",
                dec.summands.len(),
                s.class.label(),
                s.fingerprint.dim_rad
            ),
        ))
    })?;

    run_check(checks, cfg.timings, "half-component-n5", || {
        let rep = component_rep(&field, 5, &ComponentId::XHalf)?;
        let dec = decompose(&PairModule::new(rep), &dopts)?;
        let labels = dec.labels();
        let ok = dec.dims().iter().sum::<usize>() == 5
            && labels == vec!["TRIV".to_string(), "W".to_string()]
            && dec.all_certified();
        let pairs: Vec<String> = dec
            .summands
            .iter()
            .map(|s| format!("{}:{}", s.class.label(), s.module.dim()))
            .collect();
        Ok((ok, format!("summands {:?}", pairs)))
    })?;
    Ok(())
}

fn suite_remark_p7(cfg: &SuiteConfig, checks: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    run_check(checks, cfg.timings, "seventh-power-branches", || {
        let trials = cfg.samples.clamp(300, 5_000);
        let report = seventh_power_check(trials, cfg.seed)?;
        let ok = report.mismatches == 0
            && report.zero_head_trials == trials
            && report.e12_head_trials == trials;
        Ok((
            ok,
            format!(
                "{} + {} trials, {} mismatches between direct power and closed form",
                report.zero_head_trials, report.e12_head_trials, report.mismatches
            ),
        ))
    })?;

    run_check(checks, cfg.timings, "grading-pieces-14-7", || {
        let lambda = Partition::new(vec![7, 5, 2])?;
        let r = grading_report(&lambda, 7, cfg.samples.clamp(100, 2_000), cfg.seed)?;
        let ok = r.centralizer_dim == 32
            && r.deg0_dim == 3
            && r.deg0_commutative
            && r.deg0_toral
            && r.deg1_dim == 0
            && r.positive_dim == 29
            && r.positive_violations == 0
            && r.piece_dims.iter().all(|&(d, _)| d >= 0);
        Ok((
            ok,
            format!(
                "centralizer dim {}, deg0 {} (toral {}), deg1 {}, positive {} with {}/{} violations",
                r.centralizer_dim,
                r.deg0_dim,
                r.deg0_toral,
                r.deg1_dim,
                r.positive_dim,
                r.positive_violations,
                r.positive_samples
            ),
        ))
    })?;
    Ok(())
}

fn suite_gl5_p3(cfg: &SuiteConfig, checks: &mut Vec<CheckResult>) -> Result<(), VerifyError> {
    let opts = cfg.opts();
    run_check(checks, cfg.timings, "cent-nil-5-2-q3", || {
        let count = count_cent_nil(5, 2, 3, &opts)?;
        let ratio = count.to_f64().unwrap_or(f64::NAN) / 3f64.powi(8);
        let ok = count == BigUint::from(16281u32) && (1.0..=9.0).contains(&ratio);
        Ok((
            ok,
            format!(
                "count {} (want 16281), count / 3^8 = {:.3} (want within [1, 9])",
                count, ratio
            ),
        ))
    })?;
    Ok(())
}
