//! Log-likelihood and log-posterior evaluation for the composite model.

use crate::data::CountData;
use crate::error::{Error, Result};
use crate::model::{CompositeModel, ModelSpec, ParamPoint};
use crate::prior::PriorSpec;

/// Σ_v count(v) · ln f(v) for an already-normalised model. Finite for every
/// valid model since the composite pmf is strictly positive on the support.
pub fn log_likelihood_model(data: &CountData, model: &CompositeModel) -> Result<f64> {
    let mut total = 0.0;
    for (v, c) in data.iter() {
        total += c as f64 * model.ln_pmf(v)?;
    }
    Ok(total)
}

/// Log-likelihood of the data at a natural-scale parameter point. Invalid
/// points are a constraint error.
pub fn log_likelihood(data: &CountData, point: &ParamPoint, spec: &ModelSpec) -> Result<f64> {
    let model = spec.model(point)?;
    log_likelihood_model(data, &model)
}

/// Natural-scale log-posterior (up to the evidence constant):
/// log-likelihood plus per-parameter log prior densities. Points outside the
/// constrained support evaluate to −∞ rather than erroring, so callers can
/// treat them as rejected.
pub fn log_posterior(
    data: &CountData,
    point: &ParamPoint,
    spec: &ModelSpec,
    prior: &PriorSpec,
) -> Result<f64> {
    let values = point.flat();
    let model = match spec.families(&values) {
        Ok((tail, dev)) => match CompositeModel::new(tail, dev) {
            Ok(m) => m,
            Err(Error::InvalidParameter(_)) => return Ok(f64::NEG_INFINITY),
            Err(e) => return Err(e),
        },
        Err(Error::InvalidParameter(_)) => return Ok(f64::NEG_INFINITY),
        Err(e) => return Err(e),
    };
    let mut lp = log_likelihood_model(data, &model)?;
    for (prior, &v) in prior.param_priors(spec).iter().zip(&values) {
        lp += prior.ln_pdf(v);
    }
    Ok(lp)
}

/// The sampler target: log-posterior evaluated on the unconstrained scale,
/// including the log-Jacobian of the constraining transform. Any parameter
/// point whose model cannot be evaluated maps to −∞ (such points sit at
/// astronomically negative posterior density and are simply rejected).
pub fn log_posterior_unconstrained(
    data: &CountData,
    spec: &ModelSpec,
    prior: &PriorSpec,
    z: &[f64],
) -> f64 {
    let transforms = spec.transforms();
    debug_assert_eq!(z.len(), transforms.len());
    let mut values = Vec::with_capacity(z.len());
    let mut jacobian = 0.0;
    for (t, &zi) in transforms.iter().zip(z) {
        values.push(t.constrain(zi));
        jacobian += t.log_jacobian(zi);
    }
    let Ok((tail, dev)) = spec.families(&values) else {
        return f64::NEG_INFINITY;
    };
    let Ok(model) = CompositeModel::new(tail, dev) else {
        return f64::NEG_INFINITY;
    };
    let Ok(mut lp) = log_likelihood_model(data, &model) else {
        return f64::NEG_INFINITY;
    };
    for (p, &v) in prior.param_priors(spec).iter().zip(&values) {
        lp += p.ln_pdf(v);
    }
    lp + jacobian
}
