//! Self-contained fit reports: everything needed to reproduce a fit
//! (model, prior, tuning, seed, data fingerprint) plus its results.

use serde::{Deserialize, Serialize};

use crate::compare::{aic, bic};
use crate::csn::CsnFit;
use crate::data::CountData;
use crate::error::Result;
use crate::likelihood::log_likelihood;
use crate::mcmc::{
    posterior_summary, run_mcmc_with_progress, ParamSummary, PosteriorChain, ProgressFn,
    TuningConfig,
};
use crate::model::{ModelSpec, ParamPoint};
use crate::prior::PriorSpec;
use crate::xmin::{xmin_posterior, XminPosterior};

pub const SCHEMA_VERSION: u32 = 1;

/// Identity of the dataset a report was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataFingerprint {
    pub sha256: String,
    pub n: u64,
    pub distinct_values: usize,
    pub observed_sum: u64,
}

impl DataFingerprint {
    pub fn of(data: &CountData) -> Self {
        DataFingerprint {
            sha256: data.fingerprint(),
            n: data.n(),
            distinct_values: data.distinct(),
            observed_sum: data.sum(),
        }
    }
}

/// x_min posterior block embedded in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XminReport {
    pub tau: f64,
    pub median: u64,
    pub interval: (u64, u64),
    pub unbounded: u64,
    pub histogram: Vec<(u64, u64)>,
}

impl From<&XminPosterior> for XminReport {
    fn from(p: &XminPosterior) -> Self {
        XminReport {
            tau: p.tau,
            median: p.median,
            interval: p.interval,
            unbounded: p.unbounded,
            histogram: p.histogram.clone(),
        }
    }
}

/// One complete fit: provenance, posterior summaries, information criteria,
/// the x_min posterior, and (optionally) the classical baseline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub data: DataFingerprint,
    pub model: ModelSpec,
    pub prior: PriorSpec,
    pub tuning: TuningConfig,
    pub seed: u64,
    pub posterior: Vec<ParamSummary>,
    pub acceptance_rate: f64,
    pub loglik_at_posterior_mean: f64,
    pub bic: f64,
    pub aic: f64,
    pub xmin: Option<XminReport>,
    pub baseline_csn: Option<CsnFit>,
}

impl FitReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Fit a model and assemble the report (returning the chain as well so
/// callers can export it or continue with imputation).
pub fn build_fit_report(
    data: &CountData,
    spec: &ModelSpec,
    prior: &PriorSpec,
    tuning: &TuningConfig,
    tau: f64,
    baseline_csn: Option<CsnFit>,
    progress: Option<ProgressFn<'_>>,
) -> Result<(FitReport, PosteriorChain)> {
    let chain = run_mcmc_with_progress(data, spec, prior, tuning, progress)?;
    let summaries = posterior_summary(&chain);
    let means: Vec<f64> = summaries.iter().map(|s| s.mean).collect();
    let point = ParamPoint::from_flat(spec, &means)?;
    let loglik = log_likelihood(data, &point, spec)?;
    let k = spec.param_count();
    let xmin = if spec.deviation_param_count() > 0 {
        Some(XminReport::from(&xmin_posterior(&chain, tau)?))
    } else {
        None
    };
    let report = FitReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        data: DataFingerprint::of(data),
        model: spec.clone(),
        prior: *prior,
        tuning: *tuning,
        seed: tuning.seed,
        posterior: summaries,
        acceptance_rate: chain.acceptance_rate,
        loglik_at_posterior_mean: loglik,
        bic: bic(loglik, k, data.n())?,
        aic: aic(loglik, k),
        xmin,
        baseline_csn,
    };
    Ok((report, chain))
}
