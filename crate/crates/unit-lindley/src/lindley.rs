//! The unit Lindley distribution on (0, 1).
//!
//! A one-parameter continuous distribution obtained from the Lindley
//! distribution through the transformation y = x/(1+x). Density:
//!
//! ```text
//! f(x|θ) = θ²/(1+θ) · (1−x)^−3 · exp(−θx/(1−x)),   θ > 0, x ∈ (0, 1)
//! ```
//!
//! The cdf follows from the Lindley cdf under the same transformation:
//! F(x;θ) = 1 − [1 + θt/(1+θ)]·e^(−θt) with t = x/(1−x). This closed form
//! is validated against quadrature of the density in the test suite.

use rand::Rng;

use crate::error::{Error, Result};
use crate::special::{exp_integral_e1_scaled, integrate, solve_bracketed};

/// Unit Lindley distribution with shape parameter θ > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitLindley {
    theta: f64,
}

impl UnitLindley {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                constraint: "theta > 0",
            });
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Log density at interior x. Evaluated in log space so the density
    /// stays finite as x → 1 where the naive form overflows.
    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain {
                name: "x",
                value: x,
                domain: "(0, 1)",
            });
        }
        let th = self.theta;
        Ok(2.0 * th.ln() - th.ln_1p() - 3.0 * (1.0 - x).ln() - th * x / (1.0 - x))
    }

    /// Density at interior x.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        Ok(self.log_pdf(x)?.exp())
    }

    /// Cumulative distribution function, total on the reals: 0 for x ≤ 0,
    /// 1 for x ≥ 1.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        let th = self.theta;
        let t = x / (1.0 - x);
        // 1 - (1 + θt/(1+θ))e^(-θt), rearranged through expm1/ln1p so the
        // result keeps full relative precision for small x.
        -((th * t / (1.0 + th)).ln_1p() - th * t).exp_m1()
    }

    /// Quantile by numeric inversion of the cdf; u ∈ (0, 1).
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Domain {
                name: "u",
                value: u,
                domain: "(0, 1)",
            });
        }
        solve_bracketed(|x| self.cdf(x) - u, 0.0, 1.0, 1e-15)
    }

    /// r-th raw moment. r = 1 and r = 2 use closed forms (the second moment
    /// involves e^θ·E1(θ)); larger r integrates x^r·pdf adaptively.
    pub fn raw_moment(&self, r: u32) -> f64 {
        let th = self.theta;
        match r {
            0 => 1.0,
            1 => 1.0 / (1.0 + th),
            2 => {
                let scaled = exp_integral_e1_scaled(th).expect("theta > 0");
                (th * th * scaled - th + 1.0) / (1.0 + th)
            }
            _ => {
                let f = |x: f64| {
                    if x <= 0.0 || x >= 1.0 {
                        0.0
                    } else {
                        x.powi(r as i32) * self.log_pdf(x).expect("interior x").exp()
                    }
                };
                integrate(f, 0.0, 1.0, 1e-12)
            }
        }
    }

    pub fn mean(&self) -> f64 {
        self.raw_moment(1)
    }

    pub fn variance(&self) -> f64 {
        let m1 = self.raw_moment(1);
        self.raw_moment(2) - m1 * m1
    }

    /// Exact draw via the Lindley mixture: with probability θ/(1+θ) an
    /// exponential with rate θ, otherwise the sum of two, then y = x/(1+x).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let th = self.theta;
        let u: f64 = rng.random();
        let x = if u < th / (1.0 + th) {
            exponential(th, rng)
        } else {
            exponential(th, rng) + exponential(th, rng)
        };
        x / (1.0 + x)
    }

    pub fn sample_n<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }
}

/// Exponential(rate) draw by inversion, strictly positive.
pub(crate) fn exponential<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return -u.ln() / rate;
        }
    }
}
