//! Simulate data from a power law with a small-x deviation, then recover the
//! parameters by random-walk Metropolis.

use heavytail::{
    posterior_summary, run_mcmc, CountData, ModelSpec, ParamPoint, PriorSpec, TuningConfig,
};

fn main() {
    let spec = ModelSpec::m1();
    let truth = ParamPoint::new(vec![2.5], vec![0.3, 0.1, 0.01]);
    let model = spec.model(&truth).unwrap();
    let data = CountData::from_observations(&model.sample(5_000, 42)).unwrap();
    println!("simulated n = {}, distinct values = {}", data.n(), data.distinct());

    let tuning = TuningConfig::quick(1);
    let chain = run_mcmc(&data, &spec, &PriorSpec::default(), &tuning).unwrap();
    println!("acceptance rate {:.2}", chain.acceptance_rate);
    println!("{:>6} {:>9} {:>9} {:>9} {:>9}", "param", "mean", "sd", "2.5%", "97.5%");
    for s in posterior_summary(&chain) {
        println!(
            "{:>6} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
            s.name, s.mean, s.sd, s.q025, s.q975
        );
    }
    println!("truth: theta = 2.5, phi = (0.3, 0.1, 0.01)");
}
