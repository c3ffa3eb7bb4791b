//! The classical cut-off x_min as a posterior quantity: the smallest x at
//! which the deviation function exceeds a saturation threshold.

use serde::{Deserialize, Serialize};

use crate::deviation::DeviationFamily;
use crate::error::{Error, Result};
use crate::mcmc::PosteriorChain;

/// Outcome of the threshold search for one deviation function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum XminOutcome {
    /// Smallest integer x ≥ 1 with D(x) > τ.
    At(u64),
    /// sup_x D(x) ≤ τ, so no finite x qualifies (possible only for
    /// deviation families that never saturate).
    Unbounded,
}

/// Smallest integer x ≥ 1 with D(x; φ) > τ, by exponential then binary
/// search over the nondecreasing deviation.
pub fn xmin_from_phi(dev: &DeviationFamily, tau: f64) -> Result<XminOutcome> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::invalid(format!("threshold tau must lie in (0, 1), got {tau}")));
    }
    if dev.sup() <= tau {
        return Ok(XminOutcome::Unbounded);
    }
    if dev.eval(1) > tau {
        return Ok(XminOutcome::At(1));
    }
    // Exponential search for an upper bracket. sup D > tau guarantees
    // termination; in floating point D saturates to exactly 1 well before
    // any overflow concern.
    let mut lo = 1u64; // D(lo) <= tau
    let mut hi = 2u64;
    while dev.eval(hi) <= tau {
        lo = hi;
        hi = hi.saturating_mul(2);
        if hi >= 1 << 62 {
            return Ok(XminOutcome::Unbounded);
        }
    }
    // Invariant: D(lo) <= tau < D(hi).
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if dev.eval(mid) > tau {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(XminOutcome::At(hi))
}

/// Marginal posterior for x_min.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XminPosterior {
    /// One outcome per kept posterior draw.
    pub samples: Vec<XminOutcome>,
    /// Threshold used.
    pub tau: f64,
    /// (value, frequency) pairs over the bounded samples, ascending.
    pub histogram: Vec<(u64, u64)>,
    /// Number of draws whose deviation never crossed the threshold.
    pub unbounded: u64,
    /// Central 95% interval (2.5%, 97.5%) over bounded samples; endpoints
    /// are attained sample values.
    pub interval: (u64, u64),
    pub median: u64,
}

/// Default saturation threshold.
pub const DEFAULT_TAU: f64 = 0.95;

/// Apply [`xmin_from_phi`] to the deviation block of every kept draw.
pub fn xmin_posterior(chain: &PosteriorChain, tau: f64) -> Result<XminPosterior> {
    if chain.is_empty() {
        return Err(Error::invalid("empty chain"));
    }
    let phi_cols = chain.phi_columns();
    if phi_cols.is_empty() {
        return Err(Error::invalid(format!(
            "model {} has no deviation block, so x_min is undefined",
            chain.spec.name
        )));
    }
    let mut samples = Vec::with_capacity(chain.len());
    let mut bounded: Vec<u64> = Vec::with_capacity(chain.len());
    let mut unbounded = 0u64;
    for row in chain.draws.rows() {
        let dev = deviation_from_row(chain, row)?;
        let outcome = xmin_from_phi(&dev, tau)?;
        if let XminOutcome::At(x) = outcome {
            bounded.push(x);
        } else {
            unbounded += 1;
        }
        samples.push(outcome);
    }
    if bounded.is_empty() {
        return Err(Error::numerical(
            "deviation never saturates: every posterior draw is unbounded at this threshold",
        ));
    }
    bounded.sort_unstable();
    let mut histogram: Vec<(u64, u64)> = Vec::new();
    for &x in &bounded {
        match histogram.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => histogram.push((x, 1)),
        }
    }
    let interval = (nearest_rank(&bounded, 0.025), nearest_rank(&bounded, 0.975));
    let median = nearest_rank(&bounded, 0.5);
    Ok(XminPosterior { samples, tau, histogram, unbounded, interval, median })
}

fn deviation_from_row(chain: &PosteriorChain, row: &[f64]) -> Result<DeviationFamily> {
    let phi: Vec<f64> = chain.phi_columns().map(|j| row[j]).collect();
    match chain.spec.deviation {
        crate::model::DeviationKind::UnitExpCdf { .. } => DeviationFamily::unit_exp_cdf(phi),
        crate::model::DeviationKind::InverseLogistic => {
            DeviationFamily::inverse_logistic(phi[0], phi[1])
        }
        crate::model::DeviationKind::None => Ok(DeviationFamily::None),
    }
}

/// Nearest-rank quantile: always an attained sample value.
fn nearest_rank(sorted: &[u64], p: f64) -> u64 {
    let n = sorted.len();
    let rank = ((p * n as f64).ceil() as usize).clamp(1, n);
    sorted[rank - 1]
}

/// Brute-force reference: scan x = 1.. up to `limit`.
pub fn xmin_linear_scan(dev: &DeviationFamily, tau: f64, limit: u64) -> XminOutcome {
    for x in 1..=limit {
        if dev.eval(x) > tau {
            return XminOutcome::At(x);
        }
    }
    XminOutcome::Unbounded
}
