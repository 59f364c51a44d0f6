//! Inflated unit Lindley models: point mass at one endpoint (zero- or
//! one-inflated) or a Bernoulli component over both endpoints
//! (zero-and-one-inflated), mixed with the continuous unit Lindley on (0, 1).
//!
//! Both families are full-rank exponential families; the testable content of
//! that statement — log-density differences across parameters depend on the
//! observation only through the sufficient statistics — is exposed through
//! [`Inflated::exp_family_check`] and [`ZeroOneInflated::exp_family_check`].

use rand::Rng;

use crate::error::{Error, Result};
use crate::estimation::ProportionSample;
use crate::lindley::UnitLindley;
use crate::special::exp_integral_e1_scaled;

/// Endpoint carrying the degenerate mass of a singly-inflated model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InflationPoint {
    Zero,
    One,
}

impl InflationPoint {
    pub fn value(&self) -> f64 {
        match self {
            InflationPoint::Zero => 0.0,
            InflationPoint::One => 1.0,
        }
    }

    pub fn opposite(&self) -> InflationPoint {
        match self {
            InflationPoint::Zero => InflationPoint::One,
            InflationPoint::One => InflationPoint::Zero,
        }
    }
}

/// Result of an exponential-family identity check: the natural parameters
/// η of the model, the sufficient statistics T(y), and the residual of
/// the identity at a caller-supplied comparison point.
#[derive(Debug, Clone, Copy)]
pub struct ExpFamilyCheck<const K: usize> {
    pub eta: [f64; K],
    pub stats: [f64; K],
    pub residual: f64,
}

/// Zero- or one-inflated unit Lindley: mass α at the inflation point c,
/// density (1−α)f(y;θ) on the interior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inflated {
    alpha: f64,
    base: UnitLindley,
    point: InflationPoint,
}

impl Inflated {
    /// α must lie strictly inside (0, 1); boundary values are estimation
    /// failures, not parameters.
    pub fn new(alpha: f64, theta: f64, point: InflationPoint) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                constraint: "0 < alpha < 1",
            });
        }
        Ok(Self {
            alpha,
            base: UnitLindley::new(theta)?,
            point,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.base.theta()
    }

    pub fn point(&self) -> InflationPoint {
        self.point
    }

    pub fn base(&self) -> &UnitLindley {
        &self.base
    }

    /// Mixed density/mass: α at the inflation point, (1−α)f(y;θ) on (0, 1),
    /// and 0 at the opposite endpoint.
    pub fn density(&self, y: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&y) {
            return Err(Error::Domain {
                name: "y",
                value: y,
                domain: "[0, 1]",
            });
        }
        if y == self.point.value() {
            Ok(self.alpha)
        } else if y == 0.0 || y == 1.0 {
            Ok(0.0)
        } else {
            Ok((1.0 - self.alpha) * self.base.pdf(y)?)
        }
    }

    fn log_density(&self, y: f64) -> Result<f64> {
        if y == self.point.value() {
            Ok(self.alpha.ln())
        } else if y > 0.0 && y < 1.0 {
            Ok((1.0 - self.alpha).ln() + self.base.log_pdf(y)?)
        } else {
            Err(Error::Domain {
                name: "y",
                value: y,
                domain: "support (atom or interior)",
            })
        }
    }

    /// Right-continuous mixed cdf with a jump of size α at the inflation
    /// point; reaches 1 at y = 1.
    pub fn cdf(&self, y: f64) -> f64 {
        let step = if y >= self.point.value() {
            self.alpha
        } else {
            0.0
        };
        step + (1.0 - self.alpha) * self.base.cdf(y)
    }

    /// E(Y) = αc + (1−α)/(1+θ).
    pub fn mean(&self) -> f64 {
        let c = self.point.value();
        self.alpha * c + (1.0 - self.alpha) / (1.0 + self.theta())
    }

    /// Var(Y) = αc(1−αc) + (1−α)/(1+θ)·[{θ²e^θE1(θ) − θ + 1} − 2αc − (1−α)/(1+θ)].
    pub fn variance(&self) -> f64 {
        let th = self.theta();
        let ac = self.alpha * self.point.value();
        let m = th * th * exp_integral_e1_scaled(th).expect("theta > 0") - th + 1.0;
        ac * (1.0 - ac)
            + (1.0 - self.alpha) / (1.0 + th) * (m - 2.0 * ac - (1.0 - self.alpha) / (1.0 + th))
    }

    /// Log-likelihood over a sample, computed through the factorized form
    /// l1(α) + l2(θ). The sample must not carry mass at the endpoint the
    /// model assigns probability zero.
    pub fn log_likelihood(&self, sample: &ProportionSample) -> Result<f64> {
        let (n_c, n_opp) = match self.point {
            InflationPoint::Zero => (sample.n_zero(), sample.n_one()),
            InflationPoint::One => (sample.n_one(), sample.n_zero()),
        };
        if n_opp > 0 {
            return Err(Error::ModelMismatch(format!(
                "{n_opp} observation(s) at {} have zero probability under this model; \
                 use the zero-and-one-inflated model instead",
                self.point.opposite().value()
            )));
        }
        let th = self.theta();
        let n = sample.len() as f64;
        let l1 = n_c as f64 * self.alpha.ln() + (n - n_c as f64) * (1.0 - self.alpha).ln();
        let l2 = sample.interior_count() as f64 * (2.0 * th.ln() - th.ln_1p())
            - 3.0 * sample.ln_complement_sum()
            - th * sample.odds_sum();
        Ok(l1 + l2)
    }

    /// One draw: with probability α the inflation point, otherwise a unit
    /// Lindley variate.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        if u < self.alpha {
            self.point.value()
        } else {
            self.base.sample(rng)
        }
    }

    pub fn sample_n<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    /// Natural parameters η = (log(α/(1−α)) + log((1+θ)/θ²), −θ) paired with
    /// the sufficient statistics of [`Self::sufficient_stats`].
    pub fn natural_params(&self) -> [f64; 2] {
        let th = self.theta();
        [
            (self.alpha / (1.0 - self.alpha)).ln() + (th.ln_1p() - 2.0 * th.ln()),
            -th,
        ]
    }

    /// T(y) = (1{y = c}, y/(1−y)·1{y interior}).
    pub fn sufficient_stats(point: InflationPoint, y: f64) -> [f64; 2] {
        if y == point.value() {
            [1.0, 0.0]
        } else if y > 0.0 && y < 1.0 {
            [0.0, y / (1.0 - y)]
        } else {
            [0.0, 0.0]
        }
    }

    /// Verifies the exponential-family identity against `other` (same
    /// inflation point): the log-density difference between the two
    /// parameter vectors, relative to the same difference at `y_ref`,
    /// equals Δη · (T(y) − T(y_ref)).
    pub fn exp_family_check(
        &self,
        other: &Inflated,
        y: f64,
        y_ref: f64,
    ) -> Result<ExpFamilyCheck<2>> {
        if self.point != other.point {
            return Err(Error::Usage("models must share the inflation point".into()));
        }
        let d_y = self.log_density(y)? - other.log_density(y)?;
        let d_ref = self.log_density(y_ref)? - other.log_density(y_ref)?;
        let eta = self.natural_params();
        let eta_o = other.natural_params();
        let t_y = Self::sufficient_stats(self.point, y);
        let t_ref = Self::sufficient_stats(self.point, y_ref);
        let mut dot = 0.0;
        for k in 0..2 {
            dot += (eta[k] - eta_o[k]) * (t_y[k] - t_ref[k]);
        }
        Ok(ExpFamilyCheck {
            eta,
            stats: t_y,
            residual: ((d_y - d_ref) - dot).abs(),
        })
    }
}

/// Zero-and-one-inflated unit Lindley: Bernoulli(p) component carrying total
/// discrete mass α (so P(Y=1) = αp, P(Y=0) = α(1−p)) mixed with the unit
/// Lindley on the interior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroOneInflated {
    alpha: f64,
    p: f64,
    base: UnitLindley,
}

impl ZeroOneInflated {
    pub fn new(alpha: f64, p: f64, theta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                constraint: "0 < alpha < 1",
            });
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                constraint: "0 < p < 1",
            });
        }
        Ok(Self {
            alpha,
            p,
            base: UnitLindley::new(theta)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn theta(&self) -> f64 {
        self.base.theta()
    }

    pub fn base(&self) -> &UnitLindley {
        &self.base
    }

    /// P(Y = 0) = α(1−p).
    pub fn mass_at_zero(&self) -> f64 {
        self.alpha * (1.0 - self.p)
    }

    /// P(Y = 1) = αp.
    pub fn mass_at_one(&self) -> f64 {
        self.alpha * self.p
    }

    /// Mixed density: αp at 1, α(1−p) at 0, (1−α)f(y;θ) on the interior.
    pub fn density(&self, y: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&y) {
            return Err(Error::Domain {
                name: "y",
                value: y,
                domain: "[0, 1]",
            });
        }
        if y == 1.0 {
            Ok(self.mass_at_one())
        } else if y == 0.0 {
            Ok(self.mass_at_zero())
        } else {
            Ok((1.0 - self.alpha) * self.base.pdf(y)?)
        }
    }

    fn log_density(&self, y: f64) -> Result<f64> {
        Ok(self.density(y)?.ln())
    }

    /// Right-continuous mixed cdf: jumps α(1−p) at 0 and αp at 1.
    pub fn cdf(&self, y: f64) -> f64 {
        if y < 0.0 {
            0.0
        } else if y >= 1.0 {
            1.0
        } else {
            self.mass_at_zero() + (1.0 - self.alpha) * self.base.cdf(y)
        }
    }

    /// E(Y) = αp + (1−α)/(1+θ).
    pub fn mean(&self) -> f64 {
        self.alpha * self.p + (1.0 - self.alpha) / (1.0 + self.theta())
    }

    /// Same structure as the singly-inflated variance with c replaced by p.
    pub fn variance(&self) -> f64 {
        let th = self.theta();
        let ap = self.alpha * self.p;
        let m = th * th * exp_integral_e1_scaled(th).expect("theta > 0") - th + 1.0;
        ap * (1.0 - ap)
            + (1.0 - self.alpha) / (1.0 + th) * (m - 2.0 * ap - (1.0 - self.alpha) / (1.0 + th))
    }

    /// Log-likelihood through the factorized form l1(α) + l2(p) + l3(θ).
    pub fn log_likelihood(&self, sample: &ProportionSample) -> Result<f64> {
        let n0 = sample.n_zero() as f64;
        let n1 = sample.n_one() as f64;
        let m = sample.interior_count() as f64;
        let th = self.theta();
        let l1 = (n0 + n1) * self.alpha.ln() + m * (1.0 - self.alpha).ln();
        let l2 = n1 * self.p.ln() + n0 * (1.0 - self.p).ln();
        let l3 = m * (2.0 * th.ln() - th.ln_1p())
            - 3.0 * sample.ln_complement_sum()
            - th * sample.odds_sum();
        Ok(l1 + l2 + l3)
    }

    /// Composition draw consistent with the density masses: u ≤ α(1−p) gives
    /// 0, α(1−p) < u ≤ α gives 1, otherwise a unit Lindley variate.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        if u <= self.mass_at_zero() {
            0.0
        } else if u <= self.alpha {
            1.0
        } else {
            self.base.sample(rng)
        }
    }

    pub fn sample_n<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    /// η = (log(α/(1−α)) + log((1+θ)/θ²) + log(1−p), logit(p), −θ).
    pub fn natural_params(&self) -> [f64; 3] {
        let th = self.theta();
        [
            (self.alpha / (1.0 - self.alpha)).ln() + th.ln_1p() - 2.0 * th.ln()
                + (1.0 - self.p).ln(),
            (self.p / (1.0 - self.p)).ln(),
            -th,
        ]
    }

    /// T(y) = (1{y ∈ {0,1}}, y·1{y ∈ {0,1}}, y/(1−y)·1{y interior}).
    pub fn sufficient_stats(y: f64) -> [f64; 3] {
        if y == 0.0 || y == 1.0 {
            [1.0, y, 0.0]
        } else {
            [0.0, 0.0, y / (1.0 - y)]
        }
    }

    /// Exponential-family identity check, as for [`Inflated::exp_family_check`].
    pub fn exp_family_check(
        &self,
        other: &ZeroOneInflated,
        y: f64,
        y_ref: f64,
    ) -> Result<ExpFamilyCheck<3>> {
        let d_y = self.log_density(y)? - other.log_density(y)?;
        let d_ref = self.log_density(y_ref)? - other.log_density(y_ref)?;
        let eta = self.natural_params();
        let eta_o = other.natural_params();
        let t_y = Self::sufficient_stats(y);
        let t_ref = Self::sufficient_stats(y_ref);
        let mut dot = 0.0;
        for k in 0..3 {
            dot += (eta[k] - eta_o[k]) * (t_y[k] - t_ref[k]);
        }
        Ok(ExpFamilyCheck {
            eta,
            stats: t_y,
            residual: ((d_y - d_ref) - dot).abs(),
        })
    }
}
