//! Inflated beta competitor in the mean–precision parameterization:
//! interior Beta(a, b) with a = μφ, b = (1−μ)φ, plus the same endpoint
//! masses as the inflated unit Lindley families (α at zero for ZIB;
//! α(1−p) and αp for ZOIB).
//!
//! The endpoint masses keep their counting MLEs; (μ, φ) are fitted by
//! Newton iterations on the interior score (digamma gradient, trigamma
//! Hessian) from a method-of-moments start.

use crate::error::{Error, Result};
use crate::estimation::{
    confidence_intervals, FitReport, Method, ModelKind, ParamFit, ProportionSample,
};
use crate::special::{digamma, trigamma};

/// Which inflated beta variant to fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaKind {
    /// Zero-inflated beta: mass α at 0.
    Zib,
    /// Zero-and-one-inflated beta: masses α(1−p) at 0 and αp at 1.
    Zoib,
}

/// Inflated beta distribution. `p` is present only for the
/// zero-and-one-inflated variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InflatedBeta {
    alpha: f64,
    mu: f64,
    phi: f64,
    p: Option<f64>,
}

impl InflatedBeta {
    pub fn new_zib(alpha: f64, mu: f64, phi: f64) -> Result<Self> {
        Self::validate(alpha, mu, phi)?;
        Ok(Self {
            alpha,
            mu,
            phi,
            p: None,
        })
    }

    pub fn new_zoib(alpha: f64, p: f64, mu: f64, phi: f64) -> Result<Self> {
        Self::validate(alpha, mu, phi)?;
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                constraint: "0 < p < 1",
            });
        }
        Ok(Self {
            alpha,
            mu,
            phi,
            p: Some(p),
        })
    }

    fn validate(alpha: f64, mu: f64, phi: f64) -> Result<()> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                constraint: "0 < alpha < 1",
            });
        }
        // both beta shapes a = μφ and b = (1−μ)φ must be positive
        if !(mu > 0.0 && mu < 1.0) {
            return Err(Error::InvalidParameter {
                name: "mu",
                value: mu,
                constraint: "0 < mu < 1",
            });
        }
        if !(phi > 0.0 && phi.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "phi",
                value: phi,
                constraint: "phi > 0",
            });
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn p(&self) -> Option<f64> {
        self.p
    }

    pub fn shape_a(&self) -> f64 {
        self.mu * self.phi
    }

    pub fn shape_b(&self) -> f64 {
        (1.0 - self.mu) * self.phi
    }

    pub fn mass_at_zero(&self) -> f64 {
        match self.p {
            None => self.alpha,
            Some(p) => self.alpha * (1.0 - p),
        }
    }

    pub fn mass_at_one(&self) -> f64 {
        match self.p {
            None => 0.0,
            Some(p) => self.alpha * p,
        }
    }

    /// Mixed density: endpoint masses plus (1−α)·Beta(a, b) pdf interior.
    pub fn density(&self, y: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&y) {
            return Err(Error::Domain {
                name: "y",
                value: y,
                domain: "[0, 1]",
            });
        }
        if y == 0.0 {
            Ok(self.mass_at_zero())
        } else if y == 1.0 {
            Ok(self.mass_at_one())
        } else {
            Ok((1.0 - self.alpha) * beta_log_pdf(y, self.shape_a(), self.shape_b()).exp())
        }
    }

    /// Right-continuous mixed cdf using the regularized incomplete beta
    /// function for the interior component.
    pub fn cdf(&self, y: f64) -> f64 {
        if y < 0.0 {
            0.0
        } else if y >= 1.0 {
            1.0
        } else {
            self.mass_at_zero()
                + (1.0 - self.alpha) * reg_inc_beta(self.shape_a(), self.shape_b(), y)
        }
    }

    /// Log-likelihood of a sample under the mixed density.
    pub fn log_likelihood(&self, sample: &ProportionSample) -> Result<f64> {
        if self.p.is_none() && sample.n_one() > 0 {
            return Err(Error::ModelMismatch(
                "sample contains exact ones; fit the zero-and-one-inflated beta instead".into(),
            ));
        }
        let n0 = sample.n_zero() as f64;
        let n1 = sample.n_one() as f64;
        let m = sample.interior_count() as f64;
        let atoms = match self.p {
            None => n0 * self.alpha.ln(),
            Some(p) => (n0 + n1) * self.alpha.ln() + n1 * p.ln() + n0 * (1.0 - p).ln(),
        };
        let (a, b) = (self.shape_a(), self.shape_b());
        let interior = m * (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b))
            + (a - 1.0) * sample.interior_ln_sum()
            + (b - 1.0) * sample.ln_complement_sum();
        Ok(atoms + m * (1.0 - self.alpha).ln() + interior)
    }
}

/// Log of the Beta(a, b) density at interior y.
pub fn beta_log_pdf(y: f64, a: f64, b: f64) -> f64 {
    ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + (a - 1.0) * y.ln() + (b - 1.0) * (1.0 - y).ln()
}

// Lanczos approximation, g = 7, n = 9 (Godfrey/Boost coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the Lanczos argument away from the poles
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS[1..].iter().enumerate() {
        acc += c / (x + (i + 1) as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized incomplete beta function I_x(a, b).
pub fn reg_inc_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_bt = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let bt = ln_bt.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        bt * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - bt * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

// Continued fraction for the incomplete beta (modified Lentz).
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const FPMIN: f64 = 1e-300;
    const EPS: f64 = 1e-15;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=200 {
        let mf = m as f64;
        let m2 = 2.0 * mf;
        let aa = mf * (b - mf) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + mf) * (qab + mf) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

// Interior beta log-likelihood and derivatives from the sufficient sums.
struct InteriorSums {
    m: f64,
    ln_y: f64,
    ln_1my: f64,
}

impl InteriorSums {
    fn log_lik(&self, mu: f64, phi: f64) -> f64 {
        let (a, b) = (mu * phi, (1.0 - mu) * phi);
        self.m * (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b))
            + (a - 1.0) * self.ln_y
            + (b - 1.0) * self.ln_1my
    }

    fn gradient(&self, mu: f64, phi: f64) -> [f64; 2] {
        let (a, b) = (mu * phi, (1.0 - mu) * phi);
        let (da, db) = (digamma(a).unwrap(), digamma(b).unwrap());
        let g = self.m * (db - da) + self.ln_y - self.ln_1my;
        [
            phi * g,
            self.m * (digamma(phi).unwrap() - mu * da - (1.0 - mu) * db)
                + mu * self.ln_y
                + (1.0 - mu) * self.ln_1my,
        ]
    }

    fn hessian(&self, mu: f64, phi: f64) -> [[f64; 2]; 2] {
        let (a, b) = (mu * phi, (1.0 - mu) * phi);
        let (ta, tb) = (trigamma(a).unwrap(), trigamma(b).unwrap());
        let g = self.m * (digamma(b).unwrap() - digamma(a).unwrap()) + self.ln_y - self.ln_1my;
        let h_mm = -self.m * phi * phi * (ta + tb);
        let h_mp = g - self.m * phi * (mu * ta - (1.0 - mu) * tb);
        let h_pp = self.m * (trigamma(phi).unwrap() - mu * mu * ta - (1.0 - mu) * (1.0 - mu) * tb);
        [[h_mm, h_mp], [h_mp, h_pp]]
    }
}

const NEWTON_MAX_ITER: usize = 100;
const GRAD_TOL: f64 = 1e-8;
const EDGE: f64 = 1e-8;

fn grad_norm(g: &[f64; 2]) -> f64 {
    (g[0] * g[0] + g[1] * g[1]).sqrt()
}

// Newton with step-halving from a method-of-moments start; golden-section
// coordinate fallback guarantees termination.
fn fit_interior_beta(values: &[f64], sums: &InteriorSums) -> Result<(f64, f64, [[f64; 2]; 2])> {
    let interior: Vec<f64> = values
        .iter()
        .copied()
        .filter(|&y| y > 0.0 && y < 1.0)
        .collect();
    let m = interior.len() as f64;
    let ybar = interior.iter().sum::<f64>() / m;
    let var = interior.iter().map(|y| (y - ybar).powi(2)).sum::<f64>() / m;
    let mut mu = ybar.clamp(1e-3, 1.0 - 1e-3);
    let mut phi = if var > 0.0 {
        (ybar * (1.0 - ybar) / var - 1.0).clamp(1e-2, 1e6)
    } else {
        1.0
    };

    let mut ll = sums.log_lik(mu, phi);
    let mut converged = false;
    for _ in 0..NEWTON_MAX_ITER {
        let g = sums.gradient(mu, phi);
        if grad_norm(&g) < GRAD_TOL {
            converged = true;
            break;
        }
        let h = sums.hessian(mu, phi);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if det.abs() < 1e-300 || !det.is_finite() {
            break;
        }
        // Newton step: delta = -H^{-1} g
        let d_mu = -(h[1][1] * g[0] - h[0][1] * g[1]) / det;
        let d_phi = -(-h[1][0] * g[0] + h[0][0] * g[1]) / det;
        let mut lambda = 1.0;
        let mut stepped = false;
        for _ in 0..50 {
            let mu_try = mu + lambda * d_mu;
            let phi_try = phi + lambda * d_phi;
            if mu_try > EDGE && mu_try < 1.0 - EDGE && phi_try > EDGE {
                let ll_try = sums.log_lik(mu_try, phi_try);
                if ll_try.is_finite() && ll_try >= ll {
                    mu = mu_try;
                    phi = phi_try;
                    ll = ll_try;
                    stepped = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !stepped {
            break;
        }
    }

    if !converged && grad_norm(&sums.gradient(mu, phi)) >= GRAD_TOL {
        (mu, phi) = golden_fallback(sums, mu, phi);
        for _ in 0..NEWTON_MAX_ITER {
            let g = sums.gradient(mu, phi);
            if grad_norm(&g) < GRAD_TOL {
                break;
            }
            let h = sums.hessian(mu, phi);
            let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
            if det.abs() < 1e-300 {
                break;
            }
            let d_mu = -(h[1][1] * g[0] - h[0][1] * g[1]) / det;
            let d_phi = -(-h[1][0] * g[0] + h[0][0] * g[1]) / det;
            let mu_try = (mu + d_mu).clamp(EDGE, 1.0 - EDGE);
            let phi_try = (phi + d_phi).max(EDGE);
            if !sums.log_lik(mu_try, phi_try).is_finite() {
                break;
            }
            mu = mu_try;
            phi = phi_try;
        }
    }

    let g = sums.gradient(mu, phi);
    if grad_norm(&g) >= GRAD_TOL {
        return Err(Error::NonConvergence {
            iterations: NEWTON_MAX_ITER,
            context: format!(
                "interior beta fit stalled at mu={mu:.6}, phi={phi:.6}, |grad|={:.3e}",
                grad_norm(&g)
            ),
        });
    }
    Ok((mu, phi, sums.hessian(mu, phi)))
}

// 200 rounds of coordinate-wise golden-section ascent.
fn golden_fallback(sums: &InteriorSums, mut mu: f64, mut phi: f64) -> (f64, f64) {
    for _ in 0..200 {
        mu = golden_max(|m| sums.log_lik(m, phi), EDGE, 1.0 - EDGE);
        phi = golden_max(|p| sums.log_lik(mu, p), EDGE, 1e7);
    }
    (mu, phi)
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Fit a zero-inflated or zero-and-one-inflated beta by maximum likelihood.
///
/// Endpoint masses take the counting closed forms; (μ, φ) maximize the
/// interior beta log-likelihood by Newton iterations with backtracking,
/// converged when the gradient norm drops below 1e-8. Standard errors for
/// (μ, φ) come from the observed information at the optimum.
pub fn fit_beta_inflated(sample: &ProportionSample, kind: BetaKind) -> Result<FitReport> {
    let n = sample.len();
    let n0 = sample.n_zero();
    let n1 = sample.n_one();
    let m = sample.interior_count();
    match kind {
        BetaKind::Zib => {
            if n1 > 0 {
                return Err(Error::ModelMismatch(
                    "sample contains exact ones; fit the zero-and-one-inflated beta (ZOIB) instead"
                        .into(),
                ));
            }
            if n0 == 0 {
                return Err(Error::BoundarySample(
                    "no zeros; alpha would sit on the boundary".into(),
                ));
            }
            if n0 == n {
                return Err(Error::BoundarySample("no interior observations".into()));
            }
        }
        BetaKind::Zoib => {
            if n0 + n1 == 0 || n0 + n1 == n {
                return Err(Error::BoundarySample(
                    "endpoint counts must be strictly between 0 and n".into(),
                ));
            }
            if n1 == 0 {
                return Err(Error::BoundarySample(
                    "no ones in the sample; fit the zero-inflated beta (ZIB) instead".into(),
                ));
            }
            if n0 == 0 {
                return Err(Error::BoundarySample("no zeros in the sample".into()));
            }
        }
    }
    if m < 2 {
        return Err(Error::BoundarySample(
            "need at least two interior observations to fit the beta component".into(),
        ));
    }

    let sums = InteriorSums {
        m: m as f64,
        ln_y: sample.interior_ln_sum(),
        ln_1my: sample.ln_complement_sum(),
    };
    let (mu, phi, hessian) = fit_interior_beta(sample.values(), &sums)?;

    // observed information for (mu, phi): inverse of -H
    let obs = [
        [-hessian[0][0], -hessian[0][1]],
        [-hessian[1][0], -hessian[1][1]],
    ];
    let det = obs[0][0] * obs[1][1] - obs[0][1] * obs[1][0];
    let (se_mu, se_phi) = if det > 0.0 && obs[0][0] > 0.0 {
        ((obs[1][1] / det).sqrt(), (obs[0][0] / det).sqrt())
    } else {
        (f64::NAN, f64::NAN)
    };

    let nf = n as f64;
    let (model, dist, params, fisher) = match kind {
        BetaKind::Zib => {
            let alpha = n0 as f64 / nf;
            let dist = InflatedBeta::new_zib(alpha, mu, phi)?;
            let params = vec![
                ParamFit {
                    name: "alpha",
                    estimate: alpha,
                    std_error: Some((alpha * (1.0 - alpha) / nf).sqrt()),
                    ci: None,
                },
                ParamFit {
                    name: "mu",
                    estimate: mu,
                    std_error: Some(se_mu),
                    ci: None,
                },
                ParamFit {
                    name: "phi",
                    estimate: phi,
                    std_error: Some(se_phi),
                    ci: None,
                },
            ];
            let fisher = vec![
                vec![nf / (alpha * (1.0 - alpha)), 0.0, 0.0],
                vec![0.0, obs[0][0], obs[0][1]],
                vec![0.0, obs[1][0], obs[1][1]],
            ];
            (ModelKind::Zib, dist, params, fisher)
        }
        BetaKind::Zoib => {
            let alpha = (n0 + n1) as f64 / nf;
            let p = n1 as f64 / (n0 + n1) as f64;
            let dist = InflatedBeta::new_zoib(alpha, p, mu, phi)?;
            let params = vec![
                ParamFit {
                    name: "alpha",
                    estimate: alpha,
                    std_error: Some((alpha * (1.0 - alpha) / nf).sqrt()),
                    ci: None,
                },
                ParamFit {
                    name: "p",
                    estimate: p,
                    std_error: Some((p * (1.0 - p) / (nf * alpha)).sqrt()),
                    ci: None,
                },
                ParamFit {
                    name: "mu",
                    estimate: mu,
                    std_error: Some(se_mu),
                    ci: None,
                },
                ParamFit {
                    name: "phi",
                    estimate: phi,
                    std_error: Some(se_phi),
                    ci: None,
                },
            ];
            let fisher = vec![
                vec![nf / (alpha * (1.0 - alpha)), 0.0, 0.0, 0.0],
                vec![0.0, nf * alpha / (p * (1.0 - p)), 0.0, 0.0],
                vec![0.0, 0.0, obs[0][0], obs[0][1]],
                vec![0.0, 0.0, obs[1][0], obs[1][1]],
            ];
            (ModelKind::Zoib, dist, params, fisher)
        }
    };
    let log_lik = dist.log_likelihood(sample)?;
    Ok(FitReport {
        model,
        method: Method::Mle,
        n,
        params,
        log_lik,
        fisher,
    })
}

/// Fit and attach Wald intervals in one call.
pub fn fit_beta_inflated_with_ci(
    sample: &ProportionSample,
    kind: BetaKind,
    level: f64,
) -> Result<FitReport> {
    confidence_intervals(&fit_beta_inflated(sample, kind)?, level)
}
