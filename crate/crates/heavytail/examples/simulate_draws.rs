//! Draw from a composite model and compare the empirical head of the sample
//! against the exact pmf.

use heavytail::{CompositeModel, DeviationFamily, TailFamily};

fn main() {
    let model = CompositeModel::new(
        TailFamily::power_law(2.5).unwrap(),
        DeviationFamily::unit_exp_cdf(vec![0.1, 0.05, 0.0]).unwrap(),
    )
    .unwrap();

    let n = 200_000;
    let draws = model.sample(n, 7);

    println!("normalizing constant C = {:.6}", model.normalizer().value);
    println!("{:>4} {:>12} {:>12}", "x", "empirical", "exact pmf");
    for x in 1..=12u64 {
        let count = draws.iter().filter(|&&d| d == x).count();
        println!(
            "{x:>4} {:>12.6} {:>12.6}",
            count as f64 / n as f64,
            model.pmf(x).unwrap()
        );
    }
    let max = draws.iter().max().unwrap();
    println!("largest of {n} draws: {max}");
}
