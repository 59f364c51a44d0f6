//! Kolmogorov–Smirnov distance between data and a fitted mixed model.
//!
//! The model cdf jumps at the endpoints, so the supremum is evaluated on
//! both sides of every jump.
//!
//! ```bash
//! cargo run --example goodness_of_fit
//! ```

use unit_lindley::cli::{load_csv, Scale};
use unit_lindley::estimation::mle_inflated;
use unit_lindley::gof::{empirical_cdf, ks_statistic, KsSide};
use unit_lindley::{Inflated, InflationPoint};

fn main() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/pass_rates_zero_inflated.csv"
    );
    let dataset = load_csv(path, "value", Scale::Unit, ',').unwrap();
    let sample = &dataset.sample;

    let fit = mle_inflated(sample, InflationPoint::Zero).unwrap();
    let model = Inflated::new(
        fit.estimate("alpha").unwrap(),
        fit.estimate("theta").unwrap(),
        InflationPoint::Zero,
    )
    .unwrap();

    let ks = ks_statistic(sample, &model).unwrap();
    println!(
        "KS distance of the fitted model: {:.4} at y = {:.4} ({})",
        ks.statistic,
        ks.at,
        match ks.side {
            KsSide::LeftLimit => "left limit",
            KsSide::RightValue => "right value",
        }
    );

    // observed vs fitted distribution function on a coarse grid, the same
    // triples `gof --plot-out` writes for external plotting
    println!("\n     x    F_n(x)   F_fit(x)");
    for i in 0..=10 {
        let x = i as f64 / 10.0;
        println!(
            "  {x:.2}    {:.4}    {:.4}",
            empirical_cdf(sample, x),
            model.cdf(x)
        );
    }
}
