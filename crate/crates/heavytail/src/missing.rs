//! Missing-count prediction. Reading D(x; φ) as the probability that an
//! event of size x is recorded, events arise from the backbone g and are
//! independently thinned; the observed sizes then follow the composite
//! model exactly, and the overall recording probability is the normalising
//! constant C(θ, φ).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::data::CountData;
use crate::error::{Error, Result};
use crate::mcmc::{quantile_sorted, PosteriorChain};
use crate::model::{CompositeModel, ParamPoint};

/// Overall probability that an event is recorded: Σ_x g(x)·D(x) = C(θ, φ).
pub fn recording_rate(model: &CompositeModel) -> f64 {
    model.normalizer().value
}

/// Posterior-predictive distribution of the true totals behind an observed
/// dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TotalPosterior {
    pub observed_events: u64,
    pub observed_sum: u64,
    /// Predictive draws of the true number of events (observed + missing).
    pub event_draws: Vec<u64>,
    /// Predictive draws of the true total size (observed sum + missing sum).
    pub sum_draws: Vec<u64>,
    pub draws_per_sample: usize,
    pub seed: u64,
}

impl TotalPosterior {
    pub fn mean_events(&self) -> f64 {
        self.event_draws.iter().map(|&v| v as f64).sum::<f64>() / self.event_draws.len() as f64
    }

    pub fn mean_sum(&self) -> f64 {
        self.sum_draws.iter().map(|&v| v as f64).sum::<f64>() / self.sum_draws.len() as f64
    }

    /// Quantile of the event-count draws (linear interpolation).
    pub fn event_quantile(&self, p: f64) -> f64 {
        let mut sorted: Vec<f64> = self.event_draws.iter().map(|&v| v as f64).collect();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        quantile_sorted(&sorted, p)
    }

    pub fn sum_quantile(&self, p: f64) -> f64 {
        let mut sorted: Vec<f64> = self.sum_draws.iter().map(|&v| v as f64).collect();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        quantile_sorted(&sorted, p)
    }
}

/// For each posterior draw: sample how many events went unrecorded
/// (negative binomial with `n_obs` successes at success probability C),
/// then sample each missing event's size from the complement model
/// pmf ∝ g(x)·(1 − D(x)). Deterministic under the seed.
pub fn impute_missing(
    chain: &PosteriorChain,
    data: &CountData,
    draws_per_sample: usize,
    seed: u64,
) -> Result<TotalPosterior> {
    if chain.is_empty() {
        return Err(Error::invalid("empty chain"));
    }
    if draws_per_sample == 0 {
        return Err(Error::invalid("draws_per_sample must be >= 1"));
    }
    if chain.paired {
        return Err(Error::invalid(
            "imputation expects a single-dataset chain; fit the dataset on its own",
        ));
    }
    let observed_events = data.n();
    let observed_sum = data.sum();
    let spec = &chain.spec;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut event_draws = Vec::with_capacity(chain.len() * draws_per_sample);
    let mut sum_draws = Vec::with_capacity(chain.len() * draws_per_sample);
    for row in chain.draws.rows() {
        let point = ParamPoint::from_flat(spec, row)?;
        let model = spec.model(&point)?;
        let c = recording_rate(&model);
        for _ in 0..draws_per_sample {
            let missing = sample_negative_binomial(observed_events, c, &mut rng)?;
            let mut missing_sum = 0u64;
            for _ in 0..missing {
                missing_sum += model.sample_complement_one(&mut rng);
            }
            event_draws.push(observed_events + missing);
            sum_draws.push(observed_sum + missing_sum);
        }
    }
    Ok(TotalPosterior {
        observed_events,
        observed_sum,
        event_draws,
        sum_draws,
        draws_per_sample,
        seed,
    })
}

/// Number of failures before the `successes`-th success in Bernoulli(p)
/// trials, via the gamma–Poisson mixture.
pub(crate) fn sample_negative_binomial<R: Rng + ?Sized>(
    successes: u64,
    p: f64,
    rng: &mut R,
) -> Result<u64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::numerical(format!("recording probability {p} outside (0, 1]")));
    }
    if p == 1.0 || successes == 0 {
        return Ok(0);
    }
    let shape = successes as f64;
    let scale = (1.0 - p) / p;
    let gamma = rand_distr::Gamma::new(shape, scale)
        .map_err(|e| Error::numerical(format!("gamma sampler: {e}")))?;
    let lambda: f64 = gamma.sample(rng);
    if lambda <= 0.0 {
        return Ok(0);
    }
    let poisson = rand_distr::Poisson::new(lambda)
        .map_err(|e| Error::numerical(format!("poisson sampler: {e}")))?;
    Ok(poisson.sample(rng) as u64)
}
