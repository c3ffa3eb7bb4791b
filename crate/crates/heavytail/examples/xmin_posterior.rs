//! The classical cut-off x_min as a posterior quantity: where the fitted
//! deviation function first exceeds a saturation threshold.

use heavytail::xmin::DEFAULT_TAU;
use heavytail::{
    run_mcmc, xmin_from_phi, xmin_posterior, CountData, DeviationFamily, ModelSpec, ParamPoint,
    PriorSpec, TuningConfig,
};

fn main() {
    let spec = ModelSpec::m1();
    let truth = ParamPoint::new(vec![2.5], vec![0.1, 0.05, 0.0]);
    let model = spec.model(&truth).unwrap();
    let data = CountData::from_observations(&model.sample(8_000, 3)).unwrap();

    let chain = run_mcmc(&data, &spec, &PriorSpec::default(), &TuningConfig::quick(2)).unwrap();
    let posterior = xmin_posterior(&chain, DEFAULT_TAU).unwrap();

    let true_dev = DeviationFamily::unit_exp_cdf(vec![0.1, 0.05, 0.0]).unwrap();
    println!("x_min at the true deviation: {:?}", xmin_from_phi(&true_dev, DEFAULT_TAU).unwrap());
    println!(
        "posterior median {} with 95% interval [{}, {}] at tau = {}",
        posterior.median, posterior.interval.0, posterior.interval.1, posterior.tau
    );
    println!("histogram (value: share of draws):");
    let total: u64 = posterior.histogram.iter().map(|(_, c)| c).sum();
    for (value, count) in posterior.histogram.iter().take(20) {
        let bar = "#".repeat((60 * count / total.max(1)) as usize);
        println!("{value:>5}: {bar}");
    }
}
