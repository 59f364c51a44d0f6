//! Evaluate densities, cdfs, quantiles, and moments of the three model
//! families.
//!
//! ```bash
//! cargo run --example evaluate
//! ```

use unit_lindley::{Inflated, InflationPoint, UnitLindley, ZeroOneInflated};

fn main() {
    let base = UnitLindley::new(0.7617).unwrap();
    println!("unit Lindley, theta = {}", base.theta());
    println!("  pdf(0.25)      = {:.6}", base.pdf(0.25).unwrap());
    println!("  cdf(0.25)      = {:.6}", base.cdf(0.25));
    println!(
        "  quantile(0.5)  = {:.6}  (median)",
        base.quantile(0.5).unwrap()
    );
    println!("  mean           = {:.6}", base.mean());
    println!("  variance       = {:.6}", base.variance());
    println!("  3rd raw moment = {:.6}", base.raw_moment(3));

    let zi = Inflated::new(0.2438, 0.7617, InflationPoint::Zero).unwrap();
    println!("\nzero-inflated, alpha = {}", zi.alpha());
    println!("  mass at 0      = {:.6}", zi.density(0.0).unwrap());
    println!("  density(0.25)  = {:.6}", zi.density(0.25).unwrap());
    println!(
        "  cdf(0)         = {:.6}  (jump of size alpha)",
        zi.cdf(0.0)
    );
    println!("  cdf(0.25)      = {:.6}", zi.cdf(0.25));
    println!("  mean, variance = {:.6}, {:.6}", zi.mean(), zi.variance());

    let zoi = ZeroOneInflated::new(0.2984, 0.2416, 0.7617).unwrap();
    println!(
        "\nzero-and-one-inflated, alpha = {}, p = {}",
        zoi.alpha(),
        zoi.p()
    );
    println!(
        "  P(Y=0) = {:.6}, P(Y=1) = {:.6}",
        zoi.mass_at_zero(),
        zoi.mass_at_one()
    );
    println!("  cdf just below 1 = {:.6}", zoi.cdf(1.0 - 1e-12));
    println!(
        "  mean, variance   = {:.6}, {:.6}",
        zoi.mean(),
        zoi.variance()
    );

    // the models form exponential families; the log-density difference
    // between two parameter vectors depends on y only through the
    // sufficient statistics
    let other = ZeroOneInflated::new(0.4, 0.5, 1.3).unwrap();
    let check = zoi.exp_family_check(&other, 0.37, 0.81).unwrap();
    println!(
        "\nexponential-family identity residual: {:.3e}",
        check.residual
    );
    println!("natural parameters: {:?}", check.eta);
}
