//! Monte Carlo studies of the estimators: replicated sampling, fitting by
//! MLE / bias-corrected MLE / conditional-mean estimation, and tabulation
//! of mean, bias, MSE/RMSE, and confidence-interval coverage.
//!
//! Replications run in parallel but the result is bitwise deterministic:
//! every replication owns a private ChaCha stream seeded by
//! [`replication_seed`], results are collected in replication order, and
//! aggregation folds them sequentially.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimation::{
    bcmle_theta, cme_theta, mle_inflated, mle_zoi, ModelKind, ProportionSample,
};
use crate::inflated::{Inflated, InflationPoint, ZeroOneInflated};
use crate::special::inverse_normal_cdf;

/// The data-generating model of a study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SimModel {
    Inflated(Inflated),
    ZeroOneInflated(ZeroOneInflated),
}

impl SimModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            SimModel::Inflated(m) => match m.point() {
                InflationPoint::Zero => ModelKind::Ulzi,
                InflationPoint::One => ModelKind::Uloi,
            },
            SimModel::ZeroOneInflated(_) => ModelKind::Ulzoi,
        }
    }

    /// True parameter values, in report order.
    pub fn truth(&self) -> Vec<(&'static str, f64)> {
        match self {
            SimModel::Inflated(m) => vec![("alpha", m.alpha()), ("theta", m.theta())],
            SimModel::ZeroOneInflated(m) => {
                vec![("alpha", m.alpha()), ("p", m.p()), ("theta", m.theta())]
            }
        }
    }

    fn sample_n(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
        match self {
            SimModel::Inflated(m) => m.sample_n(n, rng),
            SimModel::ZeroOneInflated(m) => m.sample_n(n, rng),
        }
    }
}

/// Configuration of a Monte Carlo run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSpec {
    pub model: SimModel,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub base_seed: u64,
    pub ci_levels: Vec<f64>,
}

impl SimulationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.replications < 1 {
            return Err(Error::InvalidSpec("replications must be >= 1".into()));
        }
        if self.sample_sizes.is_empty() || self.sample_sizes.iter().any(|&n| n < 2) {
            return Err(Error::InvalidSpec("sample sizes must all be >= 2".into()));
        }
        if self.ci_levels.iter().any(|&l| !(l > 0.5 && l < 1.0)) {
            return Err(Error::InvalidSpec(
                "confidence levels must lie in (0.5, 1)".into(),
            ));
        }
        Ok(())
    }
}

/// Estimator tags for the bias study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    Mle,
    Bcmle,
    Cme,
}

impl Estimator {
    pub fn as_str(&self) -> &'static str {
        match self {
            Estimator::Mle => "MLE",
            Estimator::Bcmle => "BCMLE",
            Estimator::Cme => "CME",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "MLE" => Ok(Estimator::Mle),
            "BCMLE" => Ok(Estimator::Bcmle),
            "CME" => Ok(Estimator::Cme),
            other => Err(Error::ParseValue {
                row: 0,
                content: other.to_string(),
            }),
        }
    }
}

/// One (parameter, n, estimator) aggregate of the bias study.
#[derive(Debug, Clone, PartialEq)]
pub struct BiasCell {
    pub param: &'static str,
    pub n: usize,
    pub estimator: Estimator,
    pub mean: f64,
    pub bias: f64,
    pub mse: f64,
    pub rmse: f64,
}

/// One (parameter, n, level) aggregate of the coverage study.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageCell {
    pub param: &'static str,
    pub n: usize,
    pub level: f64,
    pub coverage: f64,
    pub mean_lo: f64,
    pub mean_hi: f64,
}

/// Tabulated results of a study.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationTable {
    pub model: ModelKind,
    pub truth: Vec<(&'static str, f64)>,
    pub replications: usize,
    pub bias: Vec<BiasCell>,
    pub coverage: Vec<CoverageCell>,
    /// Per sample size: replications excluded for violating fit
    /// preconditions (boundary samples).
    pub failures: Vec<(usize, usize)>,
}

// splitmix64 finalizer, used as a 64-bit avalanche.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `rep` at sample size `n`:
/// `mix64(base_seed XOR mix64(n·0x9E3779B97F4A7C15 + rep + 1))` with the
/// splitmix64 finalizer as `mix64`. Pairwise distinct across (n, rep) and
/// independent of execution order, so parallel runs reproduce sequential
/// ones bit for bit.
pub fn replication_seed(base_seed: u64, n: usize, rep: usize) -> u64 {
    let pair = (n as u64)
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(rep as u64)
        .wrapping_add(1);
    mix64(base_seed ^ mix64(pair))
}

// Per-replication fit results.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RepFit {
    pub alpha: f64,
    pub se_alpha: f64,
    pub p: Option<(f64, f64)>,
    pub theta: f64,
    pub se_theta: f64,
    pub theta_bcmle: f64,
    pub theta_cme: f64,
}

fn run_one(model: &SimModel, n: usize, seed: u64) -> Option<RepFit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = model.sample_n(n, &mut rng);
    let sample = ProportionSample::from_values(values).expect("sampler stays in [0,1]");
    let report = match model {
        SimModel::Inflated(m) => mle_inflated(&sample, m.point()).ok()?,
        SimModel::ZeroOneInflated(_) => mle_zoi(&sample).ok()?,
    };
    let bc = bcmle_theta(&sample).ok()?;
    let cme = cme_theta(&sample).ok()?;
    let get = |name: &str| {
        report
            .param(name)
            .map(|p| (p.estimate, p.std_error.unwrap()))
    };
    let (alpha, se_alpha) = get("alpha")?;
    let (theta, se_theta) = get("theta")?;
    Some(RepFit {
        alpha,
        se_alpha,
        p: get("p"),
        theta,
        se_theta,
        theta_bcmle: bc.theta,
        theta_cme: cme,
    })
}

pub(crate) fn run_replications(spec: &SimulationSpec, n: usize) -> Vec<Option<RepFit>> {
    (0..spec.replications)
        .into_par_iter()
        .map(|rep| run_one(&spec.model, n, replication_seed(spec.base_seed, n, rep)))
        .collect()
}

fn aggregate_bias(
    cells: &mut Vec<BiasCell>,
    fits: &[RepFit],
    param: &'static str,
    estimator: Estimator,
    n: usize,
    truth: f64,
    pick: impl Fn(&RepFit) -> f64,
) {
    let count = fits.len() as f64;
    let mut sum = 0.0;
    let mut sq = 0.0;
    for fit in fits {
        let est = pick(fit);
        sum += est;
        sq += (est - truth) * (est - truth);
    }
    let mean = sum / count;
    let mse = sq / count;
    cells.push(BiasCell {
        param,
        n,
        estimator,
        mean,
        bias: mean - truth,
        mse,
        rmse: mse.sqrt(),
    });
}

/// Bias study: for each sample size, draw `replications` samples, fit by
/// MLE (all parameters), BCMLE and CME (θ only), and tabulate mean, bias,
/// MSE, and RMSE against the true values. Boundary samples are excluded
/// and counted, never retried.
pub fn run_bias_study(spec: &SimulationSpec) -> Result<SimulationTable> {
    spec.validate()?;
    let truth = spec.model.truth();
    let theta_truth = truth.iter().find(|(k, _)| *k == "theta").unwrap().1;
    let alpha_truth = truth.iter().find(|(k, _)| *k == "alpha").unwrap().1;
    let p_truth = truth.iter().find(|(k, _)| *k == "p").map(|&(_, v)| v);

    let mut bias = Vec::new();
    let mut failures = Vec::new();
    for &n in &spec.sample_sizes {
        let reps = run_replications(spec, n);
        let fits: Vec<RepFit> = reps.iter().flatten().copied().collect();
        failures.push((n, spec.replications - fits.len()));
        if fits.is_empty() {
            return Err(Error::AllReplicationsFailed {
                n,
                replications: spec.replications,
            });
        }
        aggregate_bias(
            &mut bias,
            &fits,
            "theta",
            Estimator::Mle,
            n,
            theta_truth,
            |f| f.theta,
        );
        aggregate_bias(
            &mut bias,
            &fits,
            "theta",
            Estimator::Bcmle,
            n,
            theta_truth,
            |f| f.theta_bcmle,
        );
        aggregate_bias(
            &mut bias,
            &fits,
            "theta",
            Estimator::Cme,
            n,
            theta_truth,
            |f| f.theta_cme,
        );
        aggregate_bias(
            &mut bias,
            &fits,
            "alpha",
            Estimator::Mle,
            n,
            alpha_truth,
            |f| f.alpha,
        );
        if let Some(pt) = p_truth {
            aggregate_bias(&mut bias, &fits, "p", Estimator::Mle, n, pt, |f| {
                f.p.unwrap().0
            });
        }
    }
    Ok(SimulationTable {
        model: spec.model.kind(),
        truth,
        replications: spec.replications,
        bias,
        coverage: Vec::new(),
        failures,
    })
}

/// Coverage study: per parameter and confidence level, the fraction of
/// replications whose Wald interval (MLE ± z·SE) contains the truth, plus
/// the average interval endpoints.
pub fn run_coverage_study(spec: &SimulationSpec) -> Result<SimulationTable> {
    spec.validate()?;
    let truth = spec.model.truth();
    let mut coverage = Vec::new();
    let mut failures = Vec::new();
    for &n in &spec.sample_sizes {
        let reps = run_replications(spec, n);
        let fits: Vec<RepFit> = reps.iter().flatten().copied().collect();
        failures.push((n, spec.replications - fits.len()));
        if fits.is_empty() {
            return Err(Error::AllReplicationsFailed {
                n,
                replications: spec.replications,
            });
        }
        for &level in &spec.ci_levels {
            let z = inverse_normal_cdf(0.5 + level / 2.0)?;
            for &(param, true_value) in &truth {
                let pick = |f: &RepFit| -> (f64, f64) {
                    match param {
                        "alpha" => (f.alpha, f.se_alpha),
                        "p" => f.p.expect("p present for this model"),
                        _ => (f.theta, f.se_theta),
                    }
                };
                let mut covered = 0usize;
                let mut lo_sum = 0.0;
                let mut hi_sum = 0.0;
                for fit in &fits {
                    let (est, se) = pick(fit);
                    let lo = est - z * se;
                    let hi = est + z * se;
                    if lo <= true_value && true_value <= hi {
                        covered += 1;
                    }
                    lo_sum += lo;
                    hi_sum += hi;
                }
                let count = fits.len() as f64;
                coverage.push(CoverageCell {
                    param,
                    n,
                    level,
                    coverage: covered as f64 / count,
                    mean_lo: lo_sum / count,
                    mean_hi: hi_sum / count,
                });
            }
        }
    }
    Ok(SimulationTable {
        model: spec.model.kind(),
        truth,
        replications: spec.replications,
        bias: Vec::new(),
        coverage,
        failures,
    })
}

/// θ estimates per replication, for external density plots:
/// (n, estimator, estimates in replication order).
pub fn collect_theta_estimates(spec: &SimulationSpec) -> Result<Vec<(usize, Estimator, Vec<f64>)>> {
    spec.validate()?;
    let mut out = Vec::new();
    for &n in &spec.sample_sizes {
        let reps = run_replications(spec, n);
        let fits: Vec<RepFit> = reps.iter().flatten().copied().collect();
        out.push((n, Estimator::Mle, fits.iter().map(|f| f.theta).collect()));
        out.push((
            n,
            Estimator::Bcmle,
            fits.iter().map(|f| f.theta_bcmle).collect(),
        ));
        out.push((
            n,
            Estimator::Cme,
            fits.iter().map(|f| f.theta_cme).collect(),
        ));
    }
    Ok(out)
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_model_kind(s: &str) -> Result<ModelKind> {
    match s {
        "ULZI" => Ok(ModelKind::Ulzi),
        "ULOI" => Ok(ModelKind::Uloi),
        "ULZOI" => Ok(ModelKind::Ulzoi),
        "ZIB" => Ok(ModelKind::Zib),
        "ZOIB" => Ok(ModelKind::Zoib),
        other => Err(Error::ParseValue {
            row: 0,
            content: other.to_string(),
        }),
    }
}

fn intern_param(s: &str) -> Result<&'static str> {
    match s {
        "alpha" => Ok("alpha"),
        "p" => Ok("p"),
        "theta" => Ok("theta"),
        "mu" => Ok("mu"),
        "phi" => Ok("phi"),
        other => Err(Error::ParseValue {
            row: 0,
            content: other.to_string(),
        }),
    }
}

impl SimulationTable {
    fn failures_for(&self, n: usize) -> usize {
        self.failures
            .iter()
            .find(|(size, _)| *size == n)
            .map(|&(_, f)| f)
            .unwrap_or(0)
    }

    /// Machine-readable CSV with one row per aggregate, floating point at
    /// 17 significant digits. Columns:
    /// `model,param,n,estimator,mean,bias,mse,rmse,coverage_level,coverage,failures`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "model,param,n,estimator,mean,bias,mse,rmse,coverage_level,coverage,failures\n",
        );
        for c in &self.bias {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},,,{}\n",
                self.model.as_str(),
                c.param,
                c.n,
                c.estimator.as_str(),
                fmt17(c.mean),
                fmt17(c.bias),
                fmt17(c.mse),
                fmt17(c.rmse),
                self.failures_for(c.n),
            ));
        }
        for c in &self.coverage {
            out.push_str(&format!(
                "{},{},{},MLE,,,,,{},{},{}\n",
                self.model.as_str(),
                c.param,
                c.n,
                fmt17(c.level),
                fmt17(c.coverage),
                self.failures_for(c.n),
            ));
        }
        out
    }

    /// Parses a table back from [`Self::to_csv`] output. Mean-CI columns and
    /// run metadata (truth, replication count) are not part of the CSV
    /// schema, so they come back empty.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let mut model = None;
        let mut bias = Vec::new();
        let mut coverage = Vec::new();
        let mut failures: Vec<(usize, usize)> = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let row = i + 2;
            let record = record?;
            let field = |idx: usize| record.get(idx).unwrap_or("").trim().to_string();
            let num = |idx: usize| -> Result<f64> {
                field(idx).parse().map_err(|_| Error::ParseValue {
                    row,
                    content: field(idx),
                })
            };
            let kind = parse_model_kind(&field(0))?;
            model.get_or_insert(kind);
            let param = intern_param(&field(1))?;
            let n: usize = field(2).parse().map_err(|_| Error::ParseValue {
                row,
                content: field(2),
            })?;
            let fails: usize = field(10).parse().map_err(|_| Error::ParseValue {
                row,
                content: field(10),
            })?;
            if !failures.iter().any(|(size, _)| *size == n) {
                failures.push((n, fails));
            }
            if field(8).is_empty() {
                bias.push(BiasCell {
                    param,
                    n,
                    estimator: Estimator::parse(&field(3))?,
                    mean: num(4)?,
                    bias: num(5)?,
                    mse: num(6)?,
                    rmse: num(7)?,
                });
            } else {
                coverage.push(CoverageCell {
                    param,
                    n,
                    level: num(8)?,
                    coverage: num(9)?,
                    mean_lo: f64::NAN,
                    mean_hi: f64::NAN,
                });
            }
        }
        Ok(SimulationTable {
            model: model.ok_or(Error::EmptySample)?,
            truth: Vec::new(),
            replications: 0,
            bias,
            coverage,
            failures,
        })
    }

    /// Aligned text rendering: per-parameter blocks with estimator column
    /// groups for the bias study and per-level coverage rows.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let truth_str = self
            .truth
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "model {}   truth: {}   replications: {}\n",
            self.model.as_str(),
            truth_str,
            self.replications
        ));
        if !self.bias.is_empty() {
            let params: Vec<&str> = dedup_params(self.bias.iter().map(|c| c.param));
            for param in params {
                let truth = self
                    .truth
                    .iter()
                    .find(|(k, _)| *k == param)
                    .map(|&(_, v)| v);
                out.push_str(&format!(
                    "\n{param}{}\n",
                    truth
                        .map(|v| format!("  (true {v:.4})"))
                        .unwrap_or_default()
                ));
                let ests: Vec<Estimator> = dedup_estimators(
                    self.bias
                        .iter()
                        .filter(|c| c.param == param)
                        .map(|c| c.estimator),
                );
                let group = |label: &str| {
                    let mut s = format!("{label:>9}:");
                    for e in &ests {
                        s.push_str(&format!("{:>9}", e.as_str()));
                    }
                    s
                };
                out.push_str(&format!(
                    "{:>6} |{} |{} |{} |{}\n",
                    "n",
                    group("mean"),
                    group("bias"),
                    group("mse"),
                    group("rmse")
                ));
                let sizes: Vec<usize> =
                    dedup_sizes(self.bias.iter().filter(|c| c.param == param).map(|c| c.n));
                for n in sizes {
                    let cell = |e: Estimator| {
                        self.bias
                            .iter()
                            .find(|c| c.param == param && c.n == n && c.estimator == e)
                            .expect("cell present")
                    };
                    let cols = |pick: &dyn Fn(&BiasCell) -> f64| {
                        let mut s = String::from("          ");
                        for &e in &ests {
                            s.push_str(&format!("{:>9.4}", pick(cell(e))));
                        }
                        s
                    };
                    out.push_str(&format!(
                        "{n:>6} |{} |{} |{} |{}\n",
                        cols(&|c| c.mean),
                        cols(&|c| c.bias),
                        cols(&|c| c.mse),
                        cols(&|c| c.rmse)
                    ));
                }
            }
        }
        if !self.coverage.is_empty() {
            let params: Vec<&str> = dedup_params(self.coverage.iter().map(|c| c.param));
            for param in params {
                let truth = self
                    .truth
                    .iter()
                    .find(|(k, _)| *k == param)
                    .map(|&(_, v)| v);
                out.push_str(&format!(
                    "\ncoverage of {param}{}\n",
                    truth
                        .map(|v| format!("  (true {v:.4})"))
                        .unwrap_or_default()
                ));
                out.push_str(&format!(
                    "{:>7} {:>6} {:>10} {:>22}\n",
                    "level", "n", "coverage", "mean CI"
                ));
                for c in self.coverage.iter().filter(|c| c.param == param) {
                    out.push_str(&format!(
                        "{:>7.3} {:>6} {:>10.4} ({:>9.4}, {:>9.4})\n",
                        c.level, c.n, c.coverage, c.mean_lo, c.mean_hi
                    ));
                }
            }
        }
        out.push_str("\nfailed replications:");
        for (n, f) in &self.failures {
            out.push_str(&format!(" n={n}: {f}"));
        }
        out.push('\n');
        out
    }
}

fn dedup_params<'a>(iter: impl Iterator<Item = &'a str>) -> Vec<&'a str> {
    let mut seen = Vec::new();
    for p in iter {
        if !seen.contains(&p) {
            seen.push(p);
        }
    }
    seen
}

fn dedup_estimators(iter: impl Iterator<Item = Estimator>) -> Vec<Estimator> {
    let mut seen = Vec::new();
    for e in iter {
        if !seen.contains(&e) {
            seen.push(e);
        }
    }
    seen
}

fn dedup_sizes(iter: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut seen = Vec::new();
    for n in iter {
        if !seen.contains(&n) {
            seen.push(n);
        }
    }
    seen
}
