//! Rank competing model structures by BIC on the same dataset.

use heavytail::{compare_models, CountData, ModelSpec, ParamPoint, PriorSpec, TuningConfig};

fn main() {
    // Data from a discrete lognormal: the lognormal-backbone models should
    // beat the power-law one.
    let gen = ModelSpec::m3();
    let truth = ParamPoint::new(vec![1.0, 1.0], vec![]);
    let model = gen.model(&truth).unwrap();
    let data = CountData::from_observations(&model.sample(10_000, 5)).unwrap();
    println!("data: n = {}, distinct = {}", data.n(), data.distinct());

    let specs = [ModelSpec::m1(), ModelSpec::m2(), ModelSpec::m3()];
    let comparison =
        compare_models(&data, &specs, &PriorSpec::default(), &TuningConfig::quick(9)).unwrap();
    print!("{}", comparison.render_text());
    println!("winner: {}", comparison.winner.as_deref().unwrap_or("none"));
}
