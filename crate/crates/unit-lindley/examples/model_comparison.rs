//! Fit the zero-inflated unit Lindley and the zero-inflated beta to the same
//! data and compare them by log-likelihood and KS distance.
//!
//! ```bash
//! cargo run --example model_comparison
//! ```

use unit_lindley::beta::{fit_beta_inflated, BetaKind, InflatedBeta};
use unit_lindley::cli::{load_csv, Scale};
use unit_lindley::estimation::mle_inflated;
use unit_lindley::gof::ks_statistic;
use unit_lindley::{Inflated, InflationPoint};

fn main() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/pass_rates_zero_inflated.csv"
    );
    let dataset = load_csv(path, "value", Scale::Unit, ',').unwrap();
    let sample = &dataset.sample;

    let ul = mle_inflated(sample, InflationPoint::Zero).unwrap();
    let ul_model = Inflated::new(
        ul.estimate("alpha").unwrap(),
        ul.estimate("theta").unwrap(),
        InflationPoint::Zero,
    )
    .unwrap();
    let ul_ks = ks_statistic(sample, &ul_model).unwrap().statistic;

    let zib = fit_beta_inflated(sample, BetaKind::Zib).unwrap();
    let zib_model = InflatedBeta::new_zib(
        zib.estimate("alpha").unwrap(),
        zib.estimate("mu").unwrap(),
        zib.estimate("phi").unwrap(),
    )
    .unwrap();
    let zib_ks = ks_statistic(sample, &zib_model).unwrap().statistic;

    println!("zero-inflated unit Lindley:");
    println!(
        "  alpha = {:.4}, theta = {:.4}",
        ul.estimate("alpha").unwrap(),
        ul.estimate("theta").unwrap()
    );
    println!("  log-lik = {:.4}, KS = {:.4}", ul.log_lik, ul_ks);

    println!("zero-inflated beta (mean-precision):");
    println!(
        "  alpha = {:.4}, mu = {:.4}, phi = {:.4}",
        zib.estimate("alpha").unwrap(),
        zib.estimate("mu").unwrap(),
        zib.estimate("phi").unwrap()
    );
    println!("  log-lik = {:.4}, KS = {:.4}", zib.log_lik, zib_ks);

    let winner = if ul_ks < zib_ks {
        "unit Lindley"
    } else {
        "beta"
    };
    println!("\nsmaller KS distance: the {winner} variant");
}
