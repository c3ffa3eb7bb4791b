//! The classical cut-off pipeline: scan candidate x_min values, fit the tail
//! exponent above each by maximum likelihood, and keep the cut-off with the
//! smallest KS distance.

use heavytail::csn::csn_scan;
use heavytail::{csn_fit, CompositeModel, CountData, DeviationFamily, TailFamily};

fn main() {
    // Pure power law: the scan should settle on a small cut-off.
    let pure = CompositeModel::new(TailFamily::power_law(2.5).unwrap(), DeviationFamily::None)
        .unwrap();
    let data = CountData::from_observations(&pure.sample(10_000, 11)).unwrap();
    let fit = csn_fit(&data).unwrap();
    println!(
        "pure power law (theta = 2.5): xmin_hat = {}, alpha_hat = {:.3}, ks = {:.4}",
        fit.xmin, fit.alpha, fit.ks
    );

    // With a deviation bending the head, the scan discards the bent part.
    let bent = CompositeModel::new(
        TailFamily::power_law(2.5).unwrap(),
        DeviationFamily::unit_exp_cdf(vec![0.01, 0.1, 0.0]).unwrap(),
    )
    .unwrap();
    let data = CountData::from_observations(&bent.sample(10_000, 12)).unwrap();
    let fit = csn_fit(&data).unwrap();
    println!(
        "bent head: xmin_hat = {}, alpha_hat = {:.3}, discarding {:.0}% of the data",
        fit.xmin,
        fit.alpha,
        100.0 * fit.frac_below
    );

    println!("\nfirst candidates of the scan:");
    println!("{:>6} {:>9} {:>9}", "xmin", "alpha", "ks");
    for cand in csn_scan(&data).unwrap().iter().take(12) {
        println!("{:>6} {:>9.3} {:>9.4}", cand.xmin, cand.alpha, cand.ks);
    }
}
