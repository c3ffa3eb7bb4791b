//! Plot-ready empirical survival table for a dataset.

use heavytail::{ecdf_export, CompositeModel, CountData, DeviationFamily, TailFamily};

fn main() {
    let model = CompositeModel::new(
        TailFamily::power_law(2.2).unwrap(),
        DeviationFamily::unit_exp_cdf(vec![0.2, 0.1, 0.0]).unwrap(),
    )
    .unwrap();
    let data = CountData::from_observations(&model.sample(2_000, 31)).unwrap();

    println!("x,survival");
    for row in ecdf_export(&data) {
        println!("{},{}", row.x, row.survival);
    }
}
