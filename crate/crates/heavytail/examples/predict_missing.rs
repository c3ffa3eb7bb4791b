//! Treat the deviation as a recording probability: events arise from the
//! backbone, small ones often go unrecorded, and the fitted model predicts
//! how many are missing.

use heavytail::{
    impute_missing, run_mcmc, CountData, ModelSpec, ParamPoint, PriorSpec, TuningConfig,
};
use rand::{Rng, SeedableRng};

fn main() {
    // Ground truth: 2000 events from a power law, each recorded with
    // probability D(x).
    let spec = ModelSpec::m1();
    let truth = ParamPoint::new(vec![2.5], vec![0.3, 0.1, 0.0]);
    let model = spec.model(&truth).unwrap();
    let true_events = 2_000usize;
    let all = model.tail().sample(true_events, 7).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    let mut recorded = Vec::new();
    for &x in &all {
        if rng.gen::<f64>() < model.deviation().eval(x) {
            recorded.push(x);
        }
    }
    let data = CountData::from_observations(&recorded).unwrap();
    println!(
        "true events: {true_events}, recorded: {} (rate {:.2})",
        data.n(),
        data.n() as f64 / true_events as f64
    );

    let chain = run_mcmc(&data, &spec, &PriorSpec::default(), &TuningConfig::quick(4)).unwrap();
    let total = impute_missing(&chain, &data, 1, 123).unwrap();
    println!(
        "predicted true event count: mean {:.0}, 90% interval [{:.0}, {:.0}]",
        total.mean_events(),
        total.event_quantile(0.05),
        total.event_quantile(0.95)
    );
    println!(
        "predicted true casualty sum: mean {:.0} (observed {})",
        total.mean_sum(),
        total.observed_sum
    );
}
