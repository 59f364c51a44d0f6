//! Fit the bundled pass-rate data by maximum likelihood, bias-corrected
//! maximum likelihood, and the conditional-mean estimator.
//!
//! ```bash
//! cargo run --example fitting
//! ```

use unit_lindley::cli::{load_csv, Scale};
use unit_lindley::estimation::{bcmle_theta, cme_theta, confidence_intervals, mle_inflated};
use unit_lindley::InflationPoint;

fn main() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/pass_rates_zero_inflated.csv"
    );
    let dataset = load_csv(path, "value", Scale::Unit, ',').unwrap();
    let sample = &dataset.sample;
    println!(
        "loaded {} proportions ({} zeros, {} ones, {} interior)",
        sample.len(),
        sample.n_zero(),
        sample.n_one(),
        sample.interior_count()
    );

    let fit =
        confidence_intervals(&mle_inflated(sample, InflationPoint::Zero).unwrap(), 0.95).unwrap();
    println!("\nmaximum likelihood fit of the zero-inflated unit Lindley:");
    for p in &fit.params {
        let ci = p.ci.unwrap();
        println!(
            "  {:>5} = {:.4} ± {:.4}   95% CI ({:.4}, {:.4})",
            p.name,
            p.estimate,
            p.std_error.unwrap(),
            ci.lo,
            ci.hi
        );
    }
    println!("  log-likelihood = {:.4}", fit.log_lik);

    // theta alone, by the two alternative estimators
    let bc = bcmle_theta(sample).unwrap();
    let cme = cme_theta(sample).unwrap();
    println!("\ntheta by estimator:");
    println!("  MLE   = {:.4}", fit.estimate("theta").unwrap());
    println!("  BCMLE = {:.4}  (first-order bias removed)", bc.theta);
    println!("  CME   = {:.4}  (from the interior mean)", cme);
}
