//! Command-line surface: CSV ingestion and the `fit`, `compare`, `sample`,
//! `simulate`, and `gof` subcommands.
//!
//! Exit codes: 0 success, 2 usage error, 3 data validation error,
//! 4 estimation error, 5 non-convergence. Text output prints floating
//! point at 4 decimals; CSV output at 17 significant digits so values
//! round-trip exactly.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::beta::{fit_beta_inflated, BetaKind, InflatedBeta};
use crate::error::{Error, Result};
use crate::estimation::{
    bcmle_theta, cme_theta, confidence_intervals, fisher_inflated, fisher_zoi, mle_inflated,
    mle_zoi, FitReport, Method, ModelKind, ParamFit, ProportionSample,
};
use crate::gof::{empirical_cdf, ks_statistic, KsResult, KsSide, MixedCdf};
use crate::inflated::{Inflated, InflationPoint, ZeroOneInflated};
use crate::simulation::{
    collect_theta_estimates, run_bias_study, run_coverage_study, SimModel, SimulationSpec,
    SimulationTable,
};

/// Input scale of the proportion column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    /// Values already in [0, 1].
    Unit,
    /// Percentages in [0, 100]; divided by 100 before validation.
    Percent,
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Ulzi,
    Uloi,
    Ulzoi,
    Zib,
    Zoib,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Mle,
    Bcmle,
    Cme,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StudyArg {
    Bias,
    Coverage,
    Both,
}

#[derive(Parser, Debug)]
#[command(
    name = "unit-lindley",
    version,
    about = "Inflated unit Lindley models for proportion data: fitting, comparison, sampling, simulation, goodness of fit"
)]
pub struct Cli {
    /// RNG seed (sampling and simulation)
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Confidence level for intervals
    #[arg(long, global = true, default_value_t = 0.95)]
    pub level: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct InputArgs {
    /// CSV file with a header row; "-" reads standard input
    #[arg(long)]
    pub input: String,

    /// Column holding the proportions: name or 0-based index
    #[arg(long, default_value = "0")]
    pub column: String,

    /// Field delimiter
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,

    /// Input scale
    #[arg(long, value_enum, default_value_t = Scale::Unit)]
    pub scale: Scale,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit one model to a CSV column of proportions
    Fit {
        #[command(flatten)]
        input: InputArgs,
        /// Model family
        #[arg(long, value_enum)]
        model: ModelArg,
        /// Estimation method (CME and BCMLE re-estimate theta only)
        #[arg(long, value_enum, default_value_t = MethodArg::Mle)]
        method: MethodArg,
    },
    /// Fit the unit Lindley and inflated beta variants matching the data
    /// pattern and compare them by KS statistic
    Compare {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Draw from a model and write one value per row
    Sample {
        /// Model family
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        theta: f64,
        /// Conditional mass at 1 (zero-and-one-inflated model only)
        #[arg(long)]
        p: Option<f64>,
        /// Number of draws
        #[arg(short = 'n', long)]
        count: usize,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<String>,
    },
    /// Monte Carlo study of the estimators: bias/MSE tables and
    /// confidence-interval coverage
    Simulate {
        /// Data-generating model
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        p: Option<f64>,
        /// Sample sizes, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Monte Carlo replications per sample size
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        /// Coverage levels, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [0.9, 0.95])]
        levels: Vec<f64>,
        /// Which study to run
        #[arg(long, value_enum, default_value_t = StudyArg::Both)]
        study: StudyArg,
        /// Also write the results CSV to this file
        #[arg(long)]
        out: Option<String>,
        /// Write per-replication theta estimates (for density plots) to
        /// this CSV file
        #[arg(long)]
        estimates_out: Option<String>,
    },
    /// Kolmogorov–Smirnov distance between the data and a model
    /// (fitted by MLE unless parameters are given)
    Gof {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        phi: Option<f64>,
        /// Write (x, empirical cdf, model cdf) triples to this CSV file
        #[arg(long)]
        plot_out: Option<String>,
    },
}

/// A validated dataset loaded from delimiter-separated text.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub source: String,
    pub column: String,
    pub scale: Scale,
    pub sample: ProportionSample,
}

/// Loads one numeric column from a CSV file (header row required).
/// `column` is a header name or a 0-based index. Percent-scaled input is
/// divided by 100 before validation, so "100" becomes exactly 1.0.
pub fn load_csv(path: &str, column: &str, scale: Scale, delimiter: char) -> Result<Dataset> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(path)?
    };
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter as u8)
        .has_headers(true)
        .from_reader(text.as_bytes());

    let headers = reader.headers()?.clone();
    let col_idx = match column.parse::<usize>() {
        Ok(idx) if idx < headers.len() => idx,
        Ok(_) => return Err(Error::MissingColumn(column.to_string())),
        Err(_) => headers
            .iter()
            .position(|h| h.trim() == column)
            .ok_or_else(|| Error::MissingColumn(column.to_string()))?,
    };

    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2; // 1-based, after the header row
        let record = record?;
        let cell = record.get(col_idx).ok_or_else(|| Error::ParseValue {
            row,
            content: String::from("<missing field>"),
        })?;
        let cell = cell.trim();
        let mut value: f64 = cell.parse().map_err(|_| Error::ParseValue {
            row,
            content: cell.to_string(),
        })?;
        if scale == Scale::Percent {
            value /= 100.0;
        }
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::RowOutOfRange { row, value });
        }
        values.push(value);
    }
    Ok(Dataset {
        source: path.to_string(),
        column: column.to_string(),
        scale,
        sample: ProportionSample::from_values(values)?,
    })
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn side_str(side: KsSide) -> &'static str {
    match side {
        KsSide::LeftLimit => "left limit",
        KsSide::RightValue => "right value",
    }
}

// The fitted model as a mixed cdf, reconstructed from report estimates.
fn model_from_report(report: &FitReport) -> Result<Box<dyn MixedCdf>> {
    let get = |name: &str| {
        report
            .estimate(name)
            .ok_or_else(|| Error::Usage(format!("report lacks parameter {name}")))
    };
    Ok(match report.model {
        ModelKind::Ulzi => Box::new(Inflated::new(
            get("alpha")?,
            get("theta")?,
            InflationPoint::Zero,
        )?),
        ModelKind::Uloi => Box::new(Inflated::new(
            get("alpha")?,
            get("theta")?,
            InflationPoint::One,
        )?),
        ModelKind::Ulzoi => Box::new(ZeroOneInflated::new(
            get("alpha")?,
            get("p")?,
            get("theta")?,
        )?) as Box<dyn MixedCdf>,
        ModelKind::Zib => Box::new(InflatedBeta::new_zib(
            get("alpha")?,
            get("mu")?,
            get("phi")?,
        )?),
        ModelKind::Zoib => Box::new(InflatedBeta::new_zoib(
            get("alpha")?,
            get("p")?,
            get("mu")?,
            get("phi")?,
        )?),
    })
}

// Rebuild a unit Lindley family report around a different theta estimate
// (bias-corrected or conditional-mean), refreshing log-likelihood, Fisher
// matrix, and the theta standard error from the closed forms.
fn rebuild_ul_report(
    base: &FitReport,
    sample: &ProportionSample,
    theta: f64,
    method: Method,
    theta_se: Option<f64>,
) -> Result<FitReport> {
    let alpha = base.estimate("alpha").expect("alpha present");
    let mut report = base.clone();
    report.method = method;
    let (log_lik, fisher): (f64, Vec<Vec<f64>>) = match base.model {
        ModelKind::Ulzoi => {
            let model = ZeroOneInflated::new(alpha, base.estimate("p").unwrap(), theta)?;
            (
                model.log_likelihood(sample)?,
                fisher_zoi(&model, base.n)
                    .iter()
                    .map(|r| r.to_vec())
                    .collect(),
            )
        }
        _ => {
            let point = if base.model == ModelKind::Uloi {
                InflationPoint::One
            } else {
                InflationPoint::Zero
            };
            let model = Inflated::new(alpha, theta, point)?;
            (
                model.log_likelihood(sample)?,
                fisher_inflated(&model, base.n)
                    .iter()
                    .map(|r| r.to_vec())
                    .collect(),
            )
        }
    };
    report.log_lik = log_lik;
    report.fisher = fisher;
    let theta_idx = report
        .params
        .iter()
        .position(|p| p.name == "theta")
        .unwrap();
    report.params[theta_idx] = ParamFit {
        name: "theta",
        estimate: theta,
        std_error: theta_se,
        ci: None,
    };
    Ok(report)
}

fn fit_model(
    sample: &ProportionSample,
    model: ModelArg,
    method: MethodArg,
    level: f64,
) -> Result<(FitReport, Vec<String>)> {
    let mut warnings = Vec::new();
    let base = match model {
        ModelArg::Ulzi => mle_inflated(sample, InflationPoint::Zero)?,
        ModelArg::Uloi => mle_inflated(sample, InflationPoint::One)?,
        ModelArg::Ulzoi => mle_zoi(sample)?,
        ModelArg::Zib | ModelArg::Zoib => {
            if method != MethodArg::Mle {
                return Err(Error::Usage(
                    "the inflated beta models support --method mle only".into(),
                ));
            }
            let kind = if model == ModelArg::Zib {
                BetaKind::Zib
            } else {
                BetaKind::Zoib
            };
            fit_beta_inflated(sample, kind)?
        }
    };
    let report = match (model, method) {
        (ModelArg::Zib | ModelArg::Zoib, _) | (_, MethodArg::Mle) => base,
        (_, MethodArg::Bcmle) => {
            let bc = bcmle_theta(sample)?;
            if bc.fell_back_to_mle {
                warnings.push(
                    "bias correction produced a non-positive theta; reporting the uncorrected MLE"
                        .into(),
                );
            }
            // theta SE re-evaluated at the corrected estimate via the
            // Fisher closed form (theta is the last row of the matrix)
            let mut rebuilt = rebuild_ul_report(&base, sample, bc.theta, Method::BcMle, None)?;
            let k_theta = *rebuilt.fisher.last().and_then(|row| row.last()).unwrap();
            let theta_idx = rebuilt
                .params
                .iter()
                .position(|p| p.name == "theta")
                .unwrap();
            rebuilt.params[theta_idx].std_error = Some(1.0 / k_theta.sqrt());
            rebuilt
        }
        (_, MethodArg::Cme) => {
            let theta = cme_theta(sample)?;
            rebuild_ul_report(&base, sample, theta, Method::Cme, None)?
        }
    };
    Ok((confidence_intervals(&report, level)?, warnings))
}

fn render_fit_text(report: &FitReport, ks: &KsResult, level: f64, warnings: &[String]) -> String {
    let mut out = format!(
        "fit: model {}, method {}, n = {}\n",
        report.model.as_str(),
        report.method.as_str(),
        report.n
    );
    out.push_str(&format!(
        "{:>10} {:>10} {:>9} {:>22}\n",
        "parameter",
        "estimate",
        "std.err",
        format!("{:.1}% CI", level * 100.0)
    ));
    for p in &report.params {
        let se = p
            .std_error
            .map(|s| format!("{s:>9.4}"))
            .unwrap_or_else(|| format!("{:>9}", "-"));
        let ci =
            p.ci.map(|c| {
                format!(
                    "({:>9.4}, {:>9.4}){}",
                    c.lo,
                    c.hi,
                    if c.outside_domain { " *" } else { "" }
                )
            })
            .unwrap_or_else(|| format!("{:>22}", "-"));
        out.push_str(&format!(
            "{:>10} {:>10.4} {} {}\n",
            p.name, p.estimate, se, ci
        ));
    }
    if report
        .params
        .iter()
        .any(|p| p.ci.is_some_and(|c| c.outside_domain))
    {
        out.push_str("  * interval exits the parameter space (reported untruncated)\n");
    }
    out.push_str(&format!("log-likelihood: {:.4}\n", report.log_lik));
    out.push_str(&format!(
        "KS statistic: {:.4} (at y = {:.4}, {})\n",
        ks.statistic,
        ks.at,
        side_str(ks.side)
    ));
    for w in warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

fn render_fit_csv(report: &FitReport, ks: &KsResult) -> String {
    let mut out =
        String::from("model,method,param,estimate,std_error,ci_lo,ci_hi,ci_level,log_lik,ks\n");
    for p in &report.params {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            report.model.as_str(),
            report.method.as_str(),
            p.name,
            fmt17(p.estimate),
            p.std_error.map(fmt17).unwrap_or_default(),
            p.ci.map(|c| fmt17(c.lo)).unwrap_or_default(),
            p.ci.map(|c| fmt17(c.hi)).unwrap_or_default(),
            p.ci.map(|c| fmt17(c.level)).unwrap_or_default(),
            fmt17(report.log_lik),
            fmt17(ks.statistic),
        ));
    }
    out
}

fn cmd_fit(
    input: &InputArgs,
    model: ModelArg,
    method: MethodArg,
    level: f64,
    format: Format,
) -> Result<String> {
    let dataset = load_csv(&input.input, &input.column, input.scale, input.delimiter)?;
    let (report, warnings) = fit_model(&dataset.sample, model, method, level)?;
    let cdf = model_from_report(&report)?;
    let ks = ks_statistic(&dataset.sample, cdf.as_ref())?;
    Ok(match format {
        Format::Text => render_fit_text(&report, &ks, level, &warnings),
        Format::Csv => render_fit_csv(&report, &ks),
    })
}

fn cmd_compare(input: &InputArgs, level: f64, format: Format) -> Result<String> {
    let dataset = load_csv(&input.input, &input.column, input.scale, input.delimiter)?;
    let sample = &dataset.sample;
    let (candidates, note): (Vec<ModelArg>, Option<&str>) =
        match (sample.n_zero() > 0, sample.n_one() > 0) {
            (true, true) => (vec![ModelArg::Ulzoi, ModelArg::Zoib], None),
            (true, false) => (vec![ModelArg::Ulzi, ModelArg::Zib], None),
            (false, true) => (
                vec![ModelArg::Uloi],
                Some("no inflated-beta competitor is implemented for one-only inflation"),
            ),
            (false, false) => {
                return Err(Error::BoundarySample(
                    "no endpoint observations; there is no inflated model to compare".into(),
                ))
            }
        };

    let mut rows: Vec<(ModelArg, Result<(FitReport, KsResult)>)> = Vec::new();
    for &m in &candidates {
        let outcome = fit_model(sample, m, MethodArg::Mle, level).and_then(|(report, _)| {
            let cdf = model_from_report(&report)?;
            let ks = ks_statistic(sample, cdf.as_ref())?;
            Ok((report, ks))
        });
        rows.push((m, outcome));
    }
    if rows.iter().all(|(_, r)| r.is_err()) {
        let (_, first) = rows.into_iter().next().unwrap();
        return Err(first.unwrap_err());
    }

    match format {
        Format::Csv => {
            let mut out = String::from("model,param,estimate,std_error,log_lik,ks\n");
            for (_, outcome) in &rows {
                if let Ok((report, ks)) = outcome {
                    for p in &report.params {
                        out.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            report.model.as_str(),
                            p.name,
                            fmt17(p.estimate),
                            p.std_error.map(fmt17).unwrap_or_default(),
                            fmt17(report.log_lik),
                            fmt17(ks.statistic),
                        ));
                    }
                }
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = format!(
                "model comparison on {} (n = {}, zeros = {}, ones = {})\n\n",
                dataset.source,
                sample.len(),
                sample.n_zero(),
                sample.n_one()
            );
            let mut fitted: Vec<(&FitReport, &KsResult)> = Vec::new();
            for (m, outcome) in &rows {
                match outcome {
                    Ok((report, ks)) => {
                        let params = report
                            .params
                            .iter()
                            .map(|p| {
                                format!(
                                    "{}={:.4} ({})",
                                    p.name,
                                    p.estimate,
                                    p.std_error
                                        .map(|s| format!("{s:.4}"))
                                        .unwrap_or_else(|| "-".into())
                                )
                            })
                            .collect::<Vec<_>>()
                            .join("  ");
                        out.push_str(&format!(
                            "{:>6}: {}\n        log-lik = {:.4}, KS = {:.4}\n",
                            report.model.as_str(),
                            params,
                            report.log_lik,
                            ks.statistic
                        ));
                        fitted.push((report, ks));
                    }
                    Err(e) => {
                        out.push_str(&format!("{:>6}: failed ({e})\n", model_name(*m)));
                    }
                }
            }
            if let Some(n) = note {
                out.push_str(&format!("note: {n}\n"));
            }
            if fitted.len() >= 2 {
                let best = fitted
                    .iter()
                    .min_by(|a, b| a.1.statistic.partial_cmp(&b.1.statistic).unwrap())
                    .unwrap();
                out.push_str(&format!(
                    "\nsmaller KS: {} ({:.4})\n",
                    best.0.model.as_str(),
                    best.1.statistic
                ));
            }
            Ok(out)
        }
    }
}

fn build_sampling_model(
    model: ModelArg,
    alpha: f64,
    theta: f64,
    p: Option<f64>,
) -> Result<SimModel> {
    match model {
        ModelArg::Ulzi => Ok(SimModel::Inflated(Inflated::new(
            alpha,
            theta,
            InflationPoint::Zero,
        )?)),
        ModelArg::Uloi => Ok(SimModel::Inflated(Inflated::new(
            alpha,
            theta,
            InflationPoint::One,
        )?)),
        ModelArg::Ulzoi => {
            let p = p.ok_or_else(|| Error::Usage("--p is required for the ULZOI model".into()))?;
            Ok(SimModel::ZeroOneInflated(ZeroOneInflated::new(
                alpha, p, theta,
            )?))
        }
        _ => Err(Error::Usage(
            "sampling and simulation support the unit Lindley families only".into(),
        )),
    }
}

fn cmd_sample(
    model: ModelArg,
    alpha: f64,
    theta: f64,
    p: Option<f64>,
    count: usize,
    seed: u64,
    out: Option<&str>,
) -> Result<String> {
    let model = build_sampling_model(model, alpha, theta, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = match &model {
        SimModel::Inflated(m) => m.sample_n(count, &mut rng),
        SimModel::ZeroOneInflated(m) => m.sample_n(count, &mut rng),
    };
    let mut csv = String::from("value\n");
    for d in &draws {
        csv.push_str(&fmt17(*d));
        csv.push('\n');
    }
    match out {
        Some(path) => {
            fs::write(path, &csv)?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    model: ModelArg,
    alpha: f64,
    theta: f64,
    p: Option<f64>,
    sizes: &[usize],
    reps: usize,
    levels: &[f64],
    study: StudyArg,
    seed: u64,
    format: Format,
    out: Option<&str>,
    estimates_out: Option<&str>,
) -> Result<String> {
    let spec = SimulationSpec {
        model: build_sampling_model(model, alpha, theta, p)?,
        sample_sizes: sizes.to_vec(),
        replications: reps,
        base_seed: seed,
        ci_levels: levels.to_vec(),
    };
    let table: SimulationTable = match study {
        StudyArg::Bias => run_bias_study(&spec)?,
        StudyArg::Coverage => run_coverage_study(&spec)?,
        StudyArg::Both => {
            let mut t = run_bias_study(&spec)?;
            t.coverage = run_coverage_study(&spec)?.coverage;
            t
        }
    };
    if let Some(path) = out {
        fs::write(path, table.to_csv())?;
    }
    if let Some(path) = estimates_out {
        let mut csv = String::from("n,estimator,replication,theta_hat\n");
        for (n, estimator, estimates) in collect_theta_estimates(&spec)? {
            for (rep, est) in estimates.iter().enumerate() {
                csv.push_str(&format!(
                    "{n},{},{rep},{}\n",
                    estimator.as_str(),
                    fmt17(*est)
                ));
            }
        }
        fs::write(path, csv)?;
    }
    Ok(match format {
        Format::Text => table.render_text(),
        Format::Csv => table.to_csv(),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_gof(
    input: &InputArgs,
    model: ModelArg,
    alpha: Option<f64>,
    theta: Option<f64>,
    p: Option<f64>,
    mu: Option<f64>,
    phi: Option<f64>,
    level: f64,
    format: Format,
    plot_out: Option<&str>,
) -> Result<String> {
    let dataset = load_csv(&input.input, &input.column, input.scale, input.delimiter)?;
    let sample = &dataset.sample;

    // explicit parameters when fully given, otherwise an MLE fit
    let explicit: Option<Box<dyn MixedCdf>> = match model {
        ModelArg::Ulzi => match (alpha, theta) {
            (Some(a), Some(t)) => Some(Box::new(Inflated::new(a, t, InflationPoint::Zero)?)),
            _ => None,
        },
        ModelArg::Uloi => match (alpha, theta) {
            (Some(a), Some(t)) => Some(Box::new(Inflated::new(a, t, InflationPoint::One)?)),
            _ => None,
        },
        ModelArg::Ulzoi => match (alpha, theta, p) {
            (Some(a), Some(t), Some(pp)) => {
                Some(Box::new(ZeroOneInflated::new(a, pp, t)?) as Box<dyn MixedCdf>)
            }
            _ => None,
        },
        ModelArg::Zib => match (alpha, mu, phi) {
            (Some(a), Some(m), Some(f)) => Some(Box::new(InflatedBeta::new_zib(a, m, f)?)),
            _ => None,
        },
        ModelArg::Zoib => match (alpha, p, mu, phi) {
            (Some(a), Some(pp), Some(m), Some(f)) => {
                Some(Box::new(InflatedBeta::new_zoib(a, pp, m, f)?))
            }
            _ => None,
        },
    };
    let (cdf, fitted): (Box<dyn MixedCdf>, bool) = match explicit {
        Some(c) => (c, false),
        None => {
            let (report, _) = fit_model(sample, model, MethodArg::Mle, level)?;
            (model_from_report(&report)?, true)
        }
    };
    let ks = ks_statistic(sample, cdf.as_ref())?;

    if let Some(path) = plot_out {
        let mut xs: Vec<f64> = sample.values().to_vec();
        xs.push(0.0);
        xs.push(1.0);
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup();
        let mut csv = String::from("x,empirical_cdf,model_cdf\n");
        for &x in &xs {
            csv.push_str(&format!(
                "{},{},{}\n",
                fmt17(x),
                fmt17(empirical_cdf(sample, x)),
                fmt17(cdf.cdf(x))
            ));
        }
        fs::write(path, csv)?;
    }

    Ok(match format {
        Format::Csv => format!(
            "model,ks,at,side,parameters\n{},{},{},{},{}\n",
            model_name(model),
            fmt17(ks.statistic),
            fmt17(ks.at),
            side_str(ks.side).replace(' ', "_"),
            if fitted { "fitted" } else { "given" },
        ),
        Format::Text => format!(
            "KS statistic for {} ({} parameters): {:.4} at y = {:.4} ({})\n",
            model_name(model),
            if fitted { "fitted" } else { "given" },
            ks.statistic,
            ks.at,
            side_str(ks.side)
        ),
    })
}

fn model_name(model: ModelArg) -> &'static str {
    match model {
        ModelArg::Ulzi => "ULZI",
        ModelArg::Uloi => "ULOI",
        ModelArg::Ulzoi => "ULZOI",
        ModelArg::Zib => "ZIB",
        ModelArg::Zoib => "ZOIB",
    }
}

/// Dispatches a parsed command line and returns the stdout payload.
pub fn run(cli: Cli) -> Result<String> {
    match &cli.command {
        Command::Fit {
            input,
            model,
            method,
        } => cmd_fit(input, *model, *method, cli.level, cli.format),
        Command::Compare { input } => cmd_compare(input, cli.level, cli.format),
        Command::Sample {
            model,
            alpha,
            theta,
            p,
            count,
            out,
        } => cmd_sample(*model, *alpha, *theta, *p, *count, cli.seed, out.as_deref()),
        Command::Simulate {
            model,
            alpha,
            theta,
            p,
            sizes,
            reps,
            levels,
            study,
            out,
            estimates_out,
        } => cmd_simulate(
            *model,
            *alpha,
            *theta,
            *p,
            sizes,
            *reps,
            levels,
            *study,
            cli.seed,
            cli.format,
            out.as_deref(),
            estimates_out.as_deref(),
        ),
        Command::Gof {
            input,
            model,
            alpha,
            theta,
            p,
            mu,
            phi,
            plot_out,
        } => cmd_gof(
            input,
            *model,
            *alpha,
            *theta,
            *p,
            *mu,
            *phi,
            cli.level,
            cli.format,
            plot_out.as_deref(),
        ),
    }
}

/// Binary entry point: parse, run, map errors to exit codes.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
