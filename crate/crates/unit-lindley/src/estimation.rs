//! Parameter estimation for the inflated unit Lindley families.
//!
//! The likelihood factorizes, so the endpoint masses have counting MLEs and
//! θ has a closed-form MLE: the positive root of
//!
//! ```text
//! U_θ(θ) = m(2+θ)/(θ(1+θ)) − S = 0,   S = Σ y/(1−y) over interior values,
//! ```
//!
//! which is θ̂ = [(m−S) + √((m−S)² + 8mS)] / (2S). Every fit re-verifies the
//! stationarity |U_θ(θ̂)| ≤ 1e-8·m before returning.
//!
//! Also provided: a first-order bias-corrected MLE for θ (conditional on the
//! interior count), the conditional-mean estimator, closed-form Fisher
//! matrices, and Wald confidence intervals.

use crate::error::{Error, Result};
use crate::inflated::{Inflated, InflationPoint, ZeroOneInflated};
use crate::special::inverse_normal_cdf;

/// A validated dataset of proportions in [0, 1] with cached counts of exact
/// zeros and ones and the interior sufficient statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct ProportionSample {
    values: Vec<f64>,
    n_zero: usize,
    n_one: usize,
    odds_sum: f64,
    ln_complement_sum: f64,
    interior_sum: f64,
    interior_ln_sum: f64,
}

impl ProportionSample {
    /// Validates every value into [0, 1] (endpoint membership is exact
    /// bitwise comparison against 0.0 and 1.0) and caches the statistics
    /// the estimators need.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        let mut n_zero = 0;
        let mut n_one = 0;
        let mut odds_sum = 0.0;
        let mut ln_complement_sum = 0.0;
        let mut interior_sum = 0.0;
        let mut interior_ln_sum = 0.0;
        for (index, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::ValueOutOfRange { index, value: v });
            }
            if v == 0.0 {
                n_zero += 1;
            } else if v == 1.0 {
                n_one += 1;
            } else {
                odds_sum += v / (1.0 - v);
                ln_complement_sum += (1.0 - v).ln();
                interior_sum += v;
                interior_ln_sum += v.ln();
            }
        }
        Ok(Self {
            values,
            n_zero,
            n_one,
            odds_sum,
            ln_complement_sum,
            interior_sum,
            interior_ln_sum,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty samples
    }

    /// Count of exact zeros.
    pub fn n_zero(&self) -> usize {
        self.n_zero
    }

    /// Count of exact ones.
    pub fn n_one(&self) -> usize {
        self.n_one
    }

    /// Count of interior values, m = n − n0 − n1.
    pub fn interior_count(&self) -> usize {
        self.values.len() - self.n_zero - self.n_one
    }

    /// S = Σ y/(1−y) over interior values.
    pub fn odds_sum(&self) -> f64 {
        self.odds_sum
    }

    /// L = Σ log(1−y) over interior values.
    pub fn ln_complement_sum(&self) -> f64 {
        self.ln_complement_sum
    }

    /// Σ y over interior values.
    pub fn interior_sum(&self) -> f64 {
        self.interior_sum
    }

    /// Σ log y over interior values.
    pub fn interior_ln_sum(&self) -> f64 {
        self.interior_ln_sum
    }

    /// Mean of the interior values.
    pub fn interior_mean(&self) -> Option<f64> {
        let m = self.interior_count();
        (m > 0).then(|| self.interior_sum / m as f64)
    }
}

/// Which model a [`FitReport`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Ulzi,
    Uloi,
    Ulzoi,
    Zib,
    Zoib,
}

impl ModelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::Ulzi => "ULZI",
            ModelKind::Uloi => "ULOI",
            ModelKind::Ulzoi => "ULZOI",
            ModelKind::Zib => "ZIB",
            ModelKind::Zoib => "ZOIB",
        }
    }
}

/// Estimation method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Mle,
    BcMle,
    Cme,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Mle => "MLE",
            Method::BcMle => "BCMLE",
            Method::Cme => "CME",
        }
    }
}

/// A symmetric Wald interval. `outside_domain` flags bounds that exit the
/// parameter space; intervals are reported untruncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceInterval {
    pub lo: f64,
    pub hi: f64,
    pub level: f64,
    pub outside_domain: bool,
}

/// One estimated parameter inside a [`FitReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct ParamFit {
    pub name: &'static str,
    pub estimate: f64,
    pub std_error: Option<f64>,
    pub ci: Option<ConfidenceInterval>,
}

/// Estimates, standard errors, confidence intervals, log-likelihood, and
/// Fisher matrix for one fitted model.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub model: ModelKind,
    pub method: Method,
    pub n: usize,
    pub params: Vec<ParamFit>,
    pub log_lik: f64,
    /// Information matrix at the estimates, row order matching `params`.
    pub fisher: Vec<Vec<f64>>,
}

impl FitReport {
    pub fn param(&self, name: &str) -> Option<&ParamFit> {
        self.params.iter().find(|p| p.name == name)
    }

    pub fn estimate(&self, name: &str) -> Option<f64> {
        self.param(name).map(|p| p.estimate)
    }
}

/// Score function of θ given interior count m and S = Σ y/(1−y):
/// U_θ(θ) = m(2+θ)/(θ(1+θ)) − S.
pub fn theta_score(interior_count: f64, odds_sum: f64, theta: f64) -> f64 {
    interior_count * (2.0 + theta) / (theta * (1.0 + theta)) - odds_sum
}

/// Closed-form MLE of θ: the positive root of U_θ(θ) = 0,
/// θ̂ = [(m−S) + √((m−S)² + 8mS)] / (2S). Requires m ≥ 1 and S > 0.
pub fn theta_mle(interior_count: f64, odds_sum: f64) -> f64 {
    let d = interior_count - odds_sum;
    (d + (d * d + 8.0 * interior_count * odds_sum).sqrt()) / (2.0 * odds_sum)
}

const SCORE_TOL_PER_OBS: f64 = 1e-8;

fn checked_theta_mle(m: usize, s: f64) -> Result<f64> {
    let mf = m as f64;
    let theta = theta_mle(mf, s);
    let residual = theta_score(mf, s, theta).abs();
    if residual > SCORE_TOL_PER_OBS * mf {
        return Err(Error::ScoreCheck { theta, residual });
    }
    Ok(theta)
}

/// MLE of the zero- or one-inflated model: α̂ is the proportion of values at
/// the inflation point, θ̂ the closed-form score root.
pub fn mle_inflated(sample: &ProportionSample, point: InflationPoint) -> Result<FitReport> {
    let n = sample.len();
    let (n_c, n_opp) = match point {
        InflationPoint::Zero => (sample.n_zero(), sample.n_one()),
        InflationPoint::One => (sample.n_one(), sample.n_zero()),
    };
    if n_opp > 0 {
        let (found, instead) = match point {
            InflationPoint::Zero => ("ones", "zero-and-one-inflated (ULZOI)"),
            InflationPoint::One => ("zeros", "zero-and-one-inflated (ULZOI)"),
        };
        return Err(Error::ModelMismatch(format!(
            "sample contains exact {found}; fit the {instead} model instead"
        )));
    }
    if n_c == 0 {
        return Err(Error::BoundarySample(format!(
            "no observations at {}; alpha would sit on the boundary",
            point.value()
        )));
    }
    if n_c == n {
        return Err(Error::BoundarySample(
            "every observation is at the inflation point; theta is not estimable".into(),
        ));
    }
    let m = sample.interior_count();
    if m == 0 {
        return Err(Error::NoInteriorData);
    }
    let alpha = n_c as f64 / n as f64;
    let theta = checked_theta_mle(m, sample.odds_sum())?;

    let model = Inflated::new(alpha, theta, point)?;
    let log_lik = model.log_likelihood(sample)?;
    let fisher = fisher_inflated(&model, n);
    let se_alpha = (alpha * (1.0 - alpha) / n as f64).sqrt();
    let se_theta = se_theta_closed_form(theta, alpha, n);
    Ok(FitReport {
        model: match point {
            InflationPoint::Zero => ModelKind::Ulzi,
            InflationPoint::One => ModelKind::Uloi,
        },
        method: Method::Mle,
        n,
        params: vec![
            ParamFit {
                name: "alpha",
                estimate: alpha,
                std_error: Some(se_alpha),
                ci: None,
            },
            ParamFit {
                name: "theta",
                estimate: theta,
                std_error: Some(se_theta),
                ci: None,
            },
        ],
        log_lik,
        fisher: fisher.iter().map(|r| r.to_vec()).collect(),
    })
}

/// MLE of the zero-and-one-inflated model: α̂ = (n0+n1)/n, p̂ = n1/(n0+n1),
/// θ̂ the same closed-form score root over the interior values.
pub fn mle_zoi(sample: &ProportionSample) -> Result<FitReport> {
    let n = sample.len();
    let n0 = sample.n_zero();
    let n1 = sample.n_one();
    if n0 + n1 == 0 {
        return Err(Error::BoundarySample(
            "no endpoint observations; alpha would sit on the boundary".into(),
        ));
    }
    if n0 + n1 == n {
        return Err(Error::BoundarySample(
            "no interior observations; theta is not estimable".into(),
        ));
    }
    if n1 == 0 {
        return Err(Error::BoundarySample(
            "no ones in the sample (p would be 0); fit the zero-inflated (ULZI) model instead"
                .into(),
        ));
    }
    if n0 == 0 {
        return Err(Error::BoundarySample(
            "no zeros in the sample (p would be 1); fit the one-inflated (ULOI) model instead"
                .into(),
        ));
    }
    let m = sample.interior_count();
    let alpha = (n0 + n1) as f64 / n as f64;
    let p = n1 as f64 / (n0 + n1) as f64;
    let theta = checked_theta_mle(m, sample.odds_sum())?;

    let model = ZeroOneInflated::new(alpha, p, theta)?;
    let log_lik = model.log_likelihood(sample)?;
    let fisher = fisher_zoi(&model, n);
    Ok(FitReport {
        model: ModelKind::Ulzoi,
        method: Method::Mle,
        n,
        params: vec![
            ParamFit {
                name: "alpha",
                estimate: alpha,
                std_error: Some((alpha * (1.0 - alpha) / n as f64).sqrt()),
                ci: None,
            },
            ParamFit {
                name: "p",
                estimate: p,
                std_error: Some((p * (1.0 - p) / (n as f64 * alpha)).sqrt()),
                ci: None,
            },
            ParamFit {
                name: "theta",
                estimate: theta,
                std_error: Some(se_theta_closed_form(theta, alpha, n)),
                ci: None,
            },
        ],
        log_lik,
        fisher: fisher.iter().map(|r| r.to_vec()).collect(),
    })
}

fn se_theta_closed_form(theta: f64, alpha: f64, n: usize) -> f64 {
    (theta * theta * (1.0 + theta) * (1.0 + theta)
        / (n as f64 * (1.0 - alpha) * (theta * theta + 4.0 * theta + 2.0)))
        .sqrt()
}

/// Conditional-mean estimate of θ: the interior component has
/// E(Y | y interior) = 1/(1+θ), independent of the inflation masses, so
/// θ̂ = 1/ȳ − 1 with ȳ the interior sample mean.
pub fn cme_theta(sample: &ProportionSample) -> Result<f64> {
    let ybar = sample.interior_mean().ok_or(Error::NoInteriorData)?;
    Ok(1.0 / ybar - 1.0)
}

/// First-order bias of θ̂ conditional on the interior count m. The interior
/// log-likelihood l(θ) = m·log(θ²/(1+θ)) − θS has non-random second and
/// third derivatives given m, so the one-parameter bias expansion reduces to
/// l′′′(θ) / (2·l′′(θ)²).
pub fn cox_snell_bias(theta: f64, interior_count: f64) -> f64 {
    let l2 = interior_count * (-2.0 / (theta * theta) + 1.0 / ((1.0 + theta) * (1.0 + theta)));
    let l3 = interior_count * (4.0 / theta.powi(3) - 2.0 / (1.0 + theta).powi(3));
    l3 / (2.0 * l2 * l2)
}

/// Bias-corrected MLE of θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcmleTheta {
    pub theta: f64,
    /// Set when the corrected value would be non-positive and the
    /// uncorrected MLE is returned instead.
    pub fell_back_to_mle: bool,
}

/// Cox–Snell bias-corrected MLE: θ̃ = θ̂ − b̂(θ̂) with the correction
/// evaluated at the MLE, conditional on the interior count. The correction
/// sign is pinned by a parametric-bootstrap regression test.
pub fn bcmle_theta(sample: &ProportionSample) -> Result<BcmleTheta> {
    let m = sample.interior_count();
    if m == 0 {
        return Err(Error::NoInteriorData);
    }
    let theta = checked_theta_mle(m, sample.odds_sum())?;
    let corrected = theta - cox_snell_bias(theta, m as f64);
    if corrected <= 0.0 {
        Ok(BcmleTheta {
            theta,
            fell_back_to_mle: true,
        })
    } else {
        Ok(BcmleTheta {
            theta: corrected,
            fell_back_to_mle: false,
        })
    }
}

/// Closed-form Fisher information of the zero- or one-inflated model for a
/// sample of size n: diagonal with k_αα = n/(α(1−α)) and
/// k_θθ = n(1−α)(θ²+4θ+2)/(θ²(1+θ)²).
pub fn fisher_inflated(model: &Inflated, n: usize) -> [[f64; 2]; 2] {
    let a = model.alpha();
    let th = model.theta();
    let nf = n as f64;
    [
        [nf / (a * (1.0 - a)), 0.0],
        [
            0.0,
            nf * (1.0 - a) * (th * th + 4.0 * th + 2.0) / (th * th * (1.0 + th) * (1.0 + th)),
        ],
    ]
}

/// Closed-form Fisher information of the zero-and-one-inflated model:
/// diagonal with k_αα = n/(α(1−α)), k_pp = nα/(p(1−p)), k_θθ as in the
/// singly-inflated case. Row order (α, p, θ).
pub fn fisher_zoi(model: &ZeroOneInflated, n: usize) -> [[f64; 3]; 3] {
    let a = model.alpha();
    let p = model.p();
    let th = model.theta();
    let nf = n as f64;
    [
        [nf / (a * (1.0 - a)), 0.0, 0.0],
        [0.0, nf * a / (p * (1.0 - p)), 0.0],
        [
            0.0,
            0.0,
            nf * (1.0 - a) * (th * th + 4.0 * th + 2.0) / (th * th * (1.0 + th) * (1.0 + th)),
        ],
    ]
}

fn param_domain(name: &str) -> (f64, f64) {
    match name {
        "alpha" | "p" | "mu" => (0.0, 1.0),
        _ => (0.0, f64::INFINITY),
    }
}

/// Populates symmetric Wald intervals, estimate ± z·SE, for every parameter
/// that carries a standard error. Intervals are not truncated to the
/// parameter space; bounds that exit it are flagged.
pub fn confidence_intervals(report: &FitReport, level: f64) -> Result<FitReport> {
    if !(level > 0.5 && level < 1.0) {
        return Err(Error::InvalidLevel(level));
    }
    let z = inverse_normal_cdf(0.5 + level / 2.0)?;
    let mut out = report.clone();
    for p in &mut out.params {
        if let Some(se) = p.std_error {
            let lo = p.estimate - z * se;
            let hi = p.estimate + z * se;
            let (dlo, dhi) = param_domain(p.name);
            p.ci = Some(ConfidenceInterval {
                lo,
                hi,
                level,
                outside_domain: lo <= dlo || hi >= dhi,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn suff_stats_counting() {
        let s = ProportionSample::from_values(vec![0.0, 0.5, 1.0]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.n_zero(), 1);
        assert_eq!(s.n_one(), 1);
        assert_eq!(s.interior_count(), 1);
        assert_relative_eq!(s.odds_sum(), 1.0, max_relative = 1e-15);

        let s = ProportionSample::from_values(vec![0.2, 0.8]).unwrap();
        assert_eq!(s.n_zero() + s.n_one(), 0);
        assert_relative_eq!(s.odds_sum(), 4.25, max_relative = 1e-14);
    }

    #[test]
    fn suff_stats_errors() {
        assert!(matches!(
            ProportionSample::from_values(vec![]).unwrap_err(),
            Error::EmptySample
        ));
        match ProportionSample::from_values(vec![0.5, 1.2]).unwrap_err() {
            Error::ValueOutOfRange { index, value } => {
                assert_eq!(index, 1);
                assert_eq!(value, 1.2);
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(ProportionSample::from_values(vec![f64::NAN]).is_err());
        assert!(ProportionSample::from_values(vec![-0.1]).is_err());
    }

    #[test]
    fn suff_stats_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = ZeroOneInflated::new(0.3, 0.4, 1.0).unwrap();
        let values = d.sample_n(500, &mut rng);
        let s = ProportionSample::from_values(values.clone()).unwrap();
        // recompute in the same order
        let mut odds = 0.0;
        let mut lnc = 0.0;
        let (mut n0, mut n1) = (0usize, 0usize);
        for &v in &values {
            if v == 0.0 {
                n0 += 1;
            } else if v == 1.0 {
                n1 += 1;
            } else {
                odds += v / (1.0 - v);
                lnc += (1.0 - v).ln();
            }
        }
        assert_eq!(s.n_zero(), n0);
        assert_eq!(s.n_one(), n1);
        assert_eq!(s.odds_sum(), odds);
        assert_eq!(s.ln_complement_sum(), lnc);
    }

    #[test]
    fn theta_mle_closed_form_and_score_root() {
        let th = theta_mle(80.0, 40.0);
        assert_relative_eq!(th, 2.5615528128088303, max_relative = 1e-12);
        assert!(theta_score(80.0, 40.0, th).abs() <= 1e-8 * 80.0);
        // independent bracketed root of the score
        let root =
            crate::special::solve_bracketed(|t| theta_score(80.0, 40.0, t), 1e-8, 1e8, 1e-12)
                .unwrap();
        assert_relative_eq!(th, root, max_relative = 1e-8);
    }

    #[test]
    fn mle_inflated_closed_forms() {
        let mut values = vec![0.0; 20];
        values.extend(std::iter::repeat_n(0.5, 80));
        let s = ProportionSample::from_values(values).unwrap();
        let fit = mle_inflated(&s, InflationPoint::Zero).unwrap();
        assert_eq!(fit.model, ModelKind::Ulzi);
        assert_relative_eq!(fit.estimate("alpha").unwrap(), 0.2, max_relative = 1e-15);
        // m = 80, S = 80 gives theta = sqrt(2)
        assert_relative_eq!(
            fit.estimate("theta").unwrap(),
            std::f64::consts::SQRT_2,
            max_relative = 1e-12
        );
        assert!(fit.log_lik.is_finite());
        // fisher symmetric, positive diagonal, zero off-diagonal
        assert_eq!(fit.fisher[0][1], 0.0);
        assert_eq!(fit.fisher[1][0], 0.0);
        assert!(fit.fisher[0][0] > 0.0 && fit.fisher[1][1] > 0.0);
    }

    #[test]
    fn mle_boundary_and_mismatch_errors() {
        let s = ProportionSample::from_values(vec![0.2, 0.5, 0.7]).unwrap();
        assert!(matches!(
            mle_inflated(&s, InflationPoint::Zero).unwrap_err(),
            Error::BoundarySample(_)
        ));
        let s = ProportionSample::from_values(vec![0.0, 0.0]).unwrap();
        assert!(matches!(
            mle_inflated(&s, InflationPoint::Zero).unwrap_err(),
            Error::BoundarySample(_)
        ));
        let s = ProportionSample::from_values(vec![0.0, 0.5, 1.0]).unwrap();
        assert!(matches!(
            mle_inflated(&s, InflationPoint::Zero).unwrap_err(),
            Error::ModelMismatch(_)
        ));
    }

    #[test]
    fn mle_consistency_under_resampling() {
        let truth = Inflated::new(0.2, 7.0, InflationPoint::Zero).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let s = ProportionSample::from_values(truth.sample_n(10_000, &mut rng)).unwrap();
        let fit = mle_inflated(&s, InflationPoint::Zero).unwrap();
        let th = fit.param("theta").unwrap();
        assert!((th.estimate - 7.0).abs() <= 3.0 * th.std_error.unwrap());
        let al = fit.param("alpha").unwrap();
        assert!((al.estimate - 0.2).abs() <= 3.0 * al.std_error.unwrap());
    }

    #[test]
    fn mle_zoi_counting_and_consistency() {
        let mut values = vec![0.0; 35];
        values.extend(vec![1.0; 15]);
        values.extend(std::iter::repeat_n(0.4, 50));
        let s = ProportionSample::from_values(values).unwrap();
        let fit = mle_zoi(&s).unwrap();
        assert_relative_eq!(fit.estimate("alpha").unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(fit.estimate("p").unwrap(), 0.3, max_relative = 1e-15);

        let truth = ZeroOneInflated::new(0.5, 0.3, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let s = ProportionSample::from_values(truth.sample_n(10_000, &mut rng)).unwrap();
        let fit = mle_zoi(&s).unwrap();
        for (name, want) in [("alpha", 0.5), ("p", 0.3), ("theta", 1.0)] {
            let p = fit.param(name).unwrap();
            assert!(
                (p.estimate - want).abs() <= 3.0 * p.std_error.unwrap(),
                "{name}: {} vs {want}",
                p.estimate
            );
        }
    }

    #[test]
    fn mle_zoi_boundary_errors_with_hints() {
        let s = ProportionSample::from_values(vec![0.0, 0.0, 0.5, 0.7]).unwrap();
        match mle_zoi(&s).unwrap_err() {
            Error::BoundarySample(msg) => assert!(msg.contains("ULZI"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let s = ProportionSample::from_values(vec![1.0, 0.5, 0.7]).unwrap();
        match mle_zoi(&s).unwrap_err() {
            Error::BoundarySample(msg) => assert!(msg.contains("ULOI"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let s = ProportionSample::from_values(vec![0.5, 0.7]).unwrap();
        assert!(mle_zoi(&s).is_err());
    }

    #[test]
    fn cme_arithmetic() {
        let s = ProportionSample::from_values(vec![0.5, 0.5, 0.5]).unwrap();
        assert_relative_eq!(cme_theta(&s).unwrap(), 1.0, max_relative = 1e-14);
        let s = ProportionSample::from_values(vec![0.0, 0.2, 0.3]).unwrap();
        assert_relative_eq!(cme_theta(&s).unwrap(), 3.0, max_relative = 1e-12);
        let s = ProportionSample::from_values(vec![0.0, 1.0]).unwrap();
        assert!(matches!(cme_theta(&s).unwrap_err(), Error::NoInteriorData));
    }

    #[test]
    fn cme_law_of_large_numbers() {
        let base = crate::lindley::UnitLindley::new(0.25).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = ProportionSample::from_values(base.sample_n(1_000_000, &mut rng)).unwrap();
        assert!((cme_theta(&s).unwrap() - 0.25).abs() < 0.005);
    }

    #[test]
    fn cme_and_mle_agree_at_large_m() {
        let base = crate::lindley::UnitLindley::new(1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut values = vec![0.0]; // one atom so the inflated fit is valid
        values.extend(base.sample_n(100_000, &mut rng));
        let s = ProportionSample::from_values(values).unwrap();
        let mle = mle_inflated(&s, InflationPoint::Zero)
            .unwrap()
            .estimate("theta")
            .unwrap();
        let cme = cme_theta(&s).unwrap();
        assert!((cme - mle).abs() / mle < 0.02, "cme={cme} mle={mle}");
    }

    #[test]
    fn bcmle_frozen_value_and_sign() {
        // m=80, S=40: theta_hat = 2.5615528128..., correction 0.0237104494...
        let mut values = vec![0.0; 20];
        // 80 interior values with odds sum 40: y/(1-y) = 0.5 each
        values.extend(std::iter::repeat_n(1.0 / 3.0, 80));
        let s = ProportionSample::from_values(values).unwrap();
        assert_relative_eq!(s.odds_sum(), 40.0, max_relative = 1e-12);
        let bc = bcmle_theta(&s).unwrap();
        assert!(!bc.fell_back_to_mle);
        // mpmath: 2.5378423633593925388; the correction is subtracted (the
        // MLE overshoots), pinned by the bootstrap oracle below
        assert_relative_eq!(bc.theta, 2.5378423633593925, max_relative = 1e-12);
        assert!(bc.theta < theta_mle(80.0, 40.0));
    }

    #[test]
    fn bcmle_correction_shrinks_like_one_over_m() {
        // matched S/m = 0.5 so theta_hat is identical
        let c_small = cox_snell_bias(theta_mle(25.0, 12.5), 25.0).abs();
        let c_large = cox_snell_bias(theta_mle(100_000.0, 50_000.0), 100_000.0).abs();
        assert!(c_large < 0.01 * c_small);
    }

    #[test]
    fn bcmle_bootstrap_oracle() {
        // Estimate E(theta_hat) - theta at theta = theta_hat by parametric
        // resampling conditional on m = 80; the analytic correction must
        // agree within 2 bootstrap standard errors.
        let theta_hat = theta_mle(80.0, 40.0);
        let base = crate::lindley::UnitLindley::new(theta_hat).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(20260810);
        let reps = 10_000;
        let mut estimates = Vec::with_capacity(reps);
        for _ in 0..reps {
            let draws = base.sample_n(80, &mut rng);
            let s: f64 = draws.iter().map(|y| y / (1.0 - y)).sum();
            estimates.push(theta_mle(80.0, s));
        }
        let mean = estimates.iter().sum::<f64>() / reps as f64;
        let var = estimates.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;
        let boot_bias = mean - theta_hat;
        let se_boot = (var / reps as f64).sqrt();
        let analytic = cox_snell_bias(theta_hat, 80.0);
        assert!(
            (analytic - boot_bias).abs() <= 2.0 * se_boot,
            "analytic {analytic} vs bootstrap {boot_bias} (2se = {})",
            2.0 * se_boot
        );
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn fisher_closed_forms() {
        let m = Inflated::new(0.5, 1.0, InflationPoint::Zero).unwrap();
        assert_relative_eq!(fisher_inflated(&m, 100)[0][0], 400.0, max_relative = 1e-14);

        let m = Inflated::new(0.2, 7.0, InflationPoint::Zero).unwrap();
        let k = fisher_inflated(&m, 1);
        assert_relative_eq!(k[1][1], 0.020153061224489796, max_relative = 1e-12);
        assert_eq!(k[0][1], 0.0);
        assert_eq!(k[1][0], 0.0);

        let z = ZeroOneInflated::new(0.5, 0.3, 1.0).unwrap();
        let k = fisher_zoi(&z, 100);
        assert_relative_eq!(k[1][1], 238.09523809523807, max_relative = 1e-12);
        for i in 0..3 {
            assert!(k[i][i] > 0.0);
            for j in 0..3 {
                if i != j {
                    assert_eq!(k[i][j], 0.0);
                }
            }
        }
    }

    #[test]
    fn confidence_interval_arithmetic() {
        let mut values = vec![0.0; 20];
        values.extend(std::iter::repeat_n(0.5, 80));
        let s = ProportionSample::from_values(values).unwrap();
        let fit = mle_inflated(&s, InflationPoint::Zero).unwrap();
        let with_ci = confidence_intervals(&fit, 0.95).unwrap();
        let a = with_ci.param("alpha").unwrap();
        let ci = a.ci.unwrap();
        // 0.2 ± z * 0.04
        assert_relative_eq!(ci.lo, 0.2 - 1.9599639845400542 * 0.04, max_relative = 1e-12);
        assert_relative_eq!(ci.hi, 0.2 + 1.9599639845400542 * 0.04, max_relative = 1e-12);
        assert!(ci.lo < a.estimate && a.estimate < ci.hi);
        assert!(!ci.outside_domain);

        assert!(confidence_intervals(&fit, 0.4).is_err());
        assert!(confidence_intervals(&fit, 1.0).is_err());
    }

    #[test]
    fn confidence_interval_width_scaling() {
        // SE ∝ 1/sqrt(n): width at n vs 4n has ratio exactly 2
        let mut v1 = vec![0.0; 25];
        v1.extend(std::iter::repeat_n(0.5, 75));
        let mut v4 = vec![0.0; 100];
        v4.extend(std::iter::repeat_n(0.5, 300));
        let f1 = confidence_intervals(
            &mle_inflated(
                &ProportionSample::from_values(v1).unwrap(),
                InflationPoint::Zero,
            )
            .unwrap(),
            0.95,
        )
        .unwrap();
        let f4 = confidence_intervals(
            &mle_inflated(
                &ProportionSample::from_values(v4).unwrap(),
                InflationPoint::Zero,
            )
            .unwrap(),
            0.95,
        )
        .unwrap();
        for name in ["alpha", "theta"] {
            let c1 = f1.param(name).unwrap().ci.unwrap();
            let c4 = f4.param(name).unwrap().ci.unwrap();
            let ratio = (c1.hi - c1.lo) / (c4.hi - c4.lo);
            assert_relative_eq!(ratio, 2.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn ci_untruncated_with_flag() {
        // tiny sample with large theta-hat pushes the lower bound below 0
        let s = ProportionSample::from_values(vec![0.0, 0.01, 0.02]).unwrap();
        let fit =
            confidence_intervals(&mle_inflated(&s, InflationPoint::Zero).unwrap(), 0.95).unwrap();
        let ci = fit.param("theta").unwrap().ci.unwrap();
        assert!(ci.lo < 0.0, "expected an untruncated bound, got {}", ci.lo);
        assert!(ci.outside_domain);
    }

    #[test]
    fn profile_likelihood_argmax_on_grid() {
        let truth = Inflated::new(0.3, 2.0, InflationPoint::Zero).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let s = ProportionSample::from_values(truth.sample_n(2000, &mut rng)).unwrap();
        let fit = mle_inflated(&s, InflationPoint::Zero).unwrap();
        let theta_hat = fit.estimate("theta").unwrap();
        let alpha_hat = fit.estimate("alpha").unwrap();
        let m = s.interior_count() as f64;

        // theta: 2000-point log grid on [theta_hat/10, 10 theta_hat]
        let l2 = |t: f64| m * (2.0 * t.ln() - t.ln_1p()) - t * s.odds_sum();
        let lo = (theta_hat / 10.0).ln();
        let hi = (theta_hat * 10.0).ln();
        let grid: Vec<f64> = (0..2000)
            .map(|i| (lo + (hi - lo) * i as f64 / 1999.0).exp())
            .collect();
        let argmax = grid
            .iter()
            .enumerate()
            .max_by(|a, b| l2(*a.1).partial_cmp(&l2(*b.1)).unwrap())
            .unwrap()
            .0;
        let nearest = grid
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1 - theta_hat)
                    .abs()
                    .partial_cmp(&(b.1 - theta_hat).abs())
                    .unwrap()
            })
            .unwrap()
            .0;
        assert_eq!(argmax, nearest);

        // alpha: uniform grid over (0,1)
        let nc = s.n_zero() as f64;
        let n = s.len() as f64;
        let l1 = |a: f64| nc * a.ln() + (n - nc) * (1.0 - a).ln();
        let agrid: Vec<f64> = (1..2000).map(|i| i as f64 / 2000.0).collect();
        let argmax = agrid
            .iter()
            .enumerate()
            .max_by(|a, b| l1(*a.1).partial_cmp(&l1(*b.1)).unwrap())
            .unwrap()
            .0;
        let nearest = agrid
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1 - alpha_hat)
                    .abs()
                    .partial_cmp(&(b.1 - alpha_hat).abs())
                    .unwrap()
            })
            .unwrap()
            .0;
        assert_eq!(argmax, nearest);
    }

    #[test]
    fn alpha_theta_empirically_uncorrelated() {
        // consequence of the zero off-diagonal Fisher entries
        let truth = Inflated::new(0.2, 7.0, InflationPoint::Zero).unwrap();
        let mut alphas = Vec::new();
        let mut thetas = Vec::new();
        for rep in 0..1000u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(100_000 + rep);
            let s = ProportionSample::from_values(truth.sample_n(500, &mut rng)).unwrap();
            if let Ok(fit) = mle_inflated(&s, InflationPoint::Zero) {
                alphas.push(fit.estimate("alpha").unwrap());
                thetas.push(fit.estimate("theta").unwrap());
            }
        }
        let n = alphas.len() as f64;
        let ma = alphas.iter().sum::<f64>() / n;
        let mt = thetas.iter().sum::<f64>() / n;
        let cov: f64 = alphas
            .iter()
            .zip(&thetas)
            .map(|(a, t)| (a - ma) * (t - mt))
            .sum::<f64>()
            / n;
        let va: f64 = alphas.iter().map(|a| (a - ma).powi(2)).sum::<f64>() / n;
        let vt: f64 = thetas.iter().map(|t| (t - mt).powi(2)).sum::<f64>() / n;
        let rho = cov / (va * vt).sqrt();
        assert!(rho.abs() < 0.1, "correlation {rho}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn score_zero_at_closed_form(m in 1u32..10_000, log_ratio in -5.0f64..5.0) {
                let mf = m as f64;
                let s = mf * log_ratio.exp();
                let th = theta_mle(mf, s);
                prop_assert!(th > 0.0);
                prop_assert!(theta_score(mf, s, th).abs() <= 1e-8 * mf);
            }
        }
    }
}
