//! Empirical distribution functions and the Kolmogorov–Smirnov statistic
//! for mixed discrete-continuous models on [0, 1].
//!
//! Both the empirical cdf and the model cdf may jump (the models carry
//! atoms at 0 and/or 1), so D = sup |F_n − F| has to be evaluated on both
//! sides of every jump. The supremum over each interval between candidate
//! points is approached at its endpoints, so checking right values and
//! left limits at the sorted sample values plus {0, 1} is exact.
//!
//! No p-values: with estimated parameters and atoms the classical KS null
//! distribution does not apply; D serves as a comparative index.

use crate::beta::InflatedBeta;
use crate::error::{Error, Result};
use crate::estimation::ProportionSample;
use crate::inflated::{Inflated, ZeroOneInflated};
use crate::lindley::UnitLindley;

/// A right-continuous cdf on [0, 1], possibly with point masses at the
/// endpoints.
pub trait MixedCdf {
    fn cdf(&self, x: f64) -> f64;

    /// Point mass at x; zero everywhere except at atoms.
    fn atom(&self, x: f64) -> f64 {
        let _ = x;
        0.0
    }

    /// Left limit of the cdf at x.
    fn cdf_left(&self, x: f64) -> f64 {
        self.cdf(x) - self.atom(x)
    }
}

impl MixedCdf for UnitLindley {
    fn cdf(&self, x: f64) -> f64 {
        UnitLindley::cdf(self, x)
    }
}

impl MixedCdf for Inflated {
    fn cdf(&self, x: f64) -> f64 {
        Inflated::cdf(self, x)
    }

    fn atom(&self, x: f64) -> f64 {
        if x == self.point().value() {
            self.alpha()
        } else {
            0.0
        }
    }
}

impl MixedCdf for ZeroOneInflated {
    fn cdf(&self, x: f64) -> f64 {
        ZeroOneInflated::cdf(self, x)
    }

    fn atom(&self, x: f64) -> f64 {
        if x == 0.0 {
            self.mass_at_zero()
        } else if x == 1.0 {
            self.mass_at_one()
        } else {
            0.0
        }
    }
}

impl MixedCdf for InflatedBeta {
    fn cdf(&self, x: f64) -> f64 {
        InflatedBeta::cdf(self, x)
    }

    fn atom(&self, x: f64) -> f64 {
        if x == 0.0 {
            self.mass_at_zero()
        } else if x == 1.0 {
            self.mass_at_one()
        } else {
            0.0
        }
    }
}

/// Which side of a jump the KS supremum was attained on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsSide {
    LeftLimit,
    RightValue,
}

/// KS statistic with the location of the supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    pub at: f64,
    pub side: KsSide,
}

/// Empirical cdf F_n(x) = #{values ≤ x}/n, right-continuous.
pub fn empirical_cdf(sample: &ProportionSample, x: f64) -> f64 {
    let count = sample.values().iter().filter(|&&v| v <= x).count();
    count as f64 / sample.len() as f64
}

/// D = sup |F_n − F| over the sorted unique sample values plus {0, 1},
/// checking both the right value and the left limit at every candidate.
///
/// Errors if the model cdf is observed non-monotone along the candidates.
pub fn ks_statistic<M: MixedCdf + ?Sized>(
    sample: &ProportionSample,
    model: &M,
) -> Result<KsResult> {
    let n = sample.len() as f64;
    let mut sorted = sample.values().to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("values validated finite"));

    // candidate evaluation points
    let mut candidates = Vec::with_capacity(sorted.len() + 2);
    candidates.push(0.0);
    candidates.extend(sorted.iter().copied());
    candidates.push(1.0);
    candidates.dedup();

    let mut best = KsResult {
        statistic: -1.0,
        at: 0.0,
        side: KsSide::RightValue,
    };
    let mut prev_right = 0.0_f64;
    const MONO_SLACK: f64 = 1e-12;
    for &u in &candidates {
        // counts by binary search over the sorted copy
        let below = sorted.partition_point(|&v| v < u) as f64;
        let upto = sorted.partition_point(|&v| v <= u) as f64;
        let f_right = model.cdf(u);
        let f_left = model.cdf_left(u);
        if f_left < prev_right - MONO_SLACK || f_right < f_left - MONO_SLACK {
            return Err(Error::InvalidCdf { at: u });
        }
        prev_right = f_right;

        let gap_left = (below / n - f_left).abs();
        if gap_left > best.statistic {
            best = KsResult {
                statistic: gap_left,
                at: u,
                side: KsSide::LeftLimit,
            };
        }
        let gap_right = (upto / n - f_right).abs();
        if gap_right > best.statistic {
            best = KsResult {
                statistic: gap_right,
                at: u,
                side: KsSide::RightValue,
            };
        }
    }
    Ok(best)
}
