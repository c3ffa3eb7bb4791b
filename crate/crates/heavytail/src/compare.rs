//! Information-criterion comparison of candidate model structures fitted to
//! the same dataset.

use serde::{Deserialize, Serialize};

use crate::data::CountData;
use crate::error::{Error, Result};
use crate::likelihood::log_likelihood;
use crate::mcmc::{posterior_summary, ParamSummary, ProgressFn, TuningConfig};
use crate::model::{ModelSpec, ParamPoint};
use crate::prior::PriorSpec;

/// Bayesian information criterion k·ln n − 2·loglik; lower is better.
pub fn bic(loglik: f64, k: usize, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("BIC is undefined for n = 0"));
    }
    Ok(k as f64 * (n as f64).ln() - 2.0 * loglik)
}

/// Akaike information criterion 2k − 2·loglik.
pub fn aic(loglik: f64, k: usize) -> f64 {
    2.0 * k as f64 - 2.0 * loglik
}

/// One fitted model in a comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFit {
    pub spec: ModelSpec,
    pub k: usize,
    /// Posterior means on the natural scale.
    pub posterior_mean: Vec<f64>,
    pub summaries: Vec<ParamSummary>,
    /// Log-likelihood recomputed at the posterior means.
    pub loglik_at_mean: f64,
    pub bic: f64,
    pub aic: f64,
    pub acceptance_rate: f64,
}

/// Comparison row: a fit, or the error that prevented one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub name: String,
    pub fit: Option<ModelFit>,
    pub error: Option<String>,
}

/// Ranked comparison table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelComparison {
    /// Rows sorted by ascending BIC; failed fits go last in input order.
    pub rows: Vec<ComparisonRow>,
    /// Name of the winning (smallest-BIC) model, if any fit succeeded.
    pub winner: Option<String>,
    pub n: u64,
    pub seed: u64,
}

impl ModelComparison {
    /// Aligned plain-text rendering of the ranking.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<12} {:>3} {:>16} {:>16} {:>16}\n",
            "model", "k", "loglik@mean", "BIC", "AIC"
        ));
        for row in &self.rows {
            match (&row.fit, &row.error) {
                (Some(fit), _) => {
                    let marker =
                        if self.winner.as_deref() == Some(row.name.as_str()) { " *" } else { "" };
                    out.push_str(&format!(
                        "{:<12} {:>3} {:>16.3} {:>16.3} {:>16.3}{marker}\n",
                        row.name, fit.k, fit.loglik_at_mean, fit.bic, fit.aic
                    ));
                }
                (None, Some(err)) => {
                    out.push_str(&format!("{:<12} failed: {err}\n", row.name));
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }
}

/// Fit one model and evaluate its criteria at the posterior means
/// (natural scale).
pub fn fit_and_score(
    data: &CountData,
    spec: &ModelSpec,
    prior: &PriorSpec,
    tuning: &TuningConfig,
    progress: Option<ProgressFn<'_>>,
) -> Result<ModelFit> {
    let chain = crate::mcmc::run_mcmc_with_progress(data, spec, prior, tuning, progress)?;
    let summaries = posterior_summary(&chain);
    let posterior_mean: Vec<f64> = summaries.iter().map(|s| s.mean).collect();
    let point = ParamPoint::from_flat(spec, &posterior_mean)?;
    let loglik_at_mean = log_likelihood(data, &point, spec)?;
    let k = spec.param_count();
    Ok(ModelFit {
        spec: spec.clone(),
        k,
        posterior_mean,
        summaries,
        loglik_at_mean,
        bic: bic(loglik_at_mean, k, data.n())?,
        aic: aic(loglik_at_mean, k),
        acceptance_rate: chain.acceptance_rate,
    })
}

/// Fit every candidate spec with the same data, prior, and tuning (all
/// models share the seed, so duplicate entries produce identical rows) and
/// rank by ascending BIC. Individual fit failures become error rows rather
/// than aborting the table.
pub fn compare_models(
    data: &CountData,
    specs: &[ModelSpec],
    prior: &PriorSpec,
    tuning: &TuningConfig,
) -> Result<ModelComparison> {
    if specs.len() < 2 {
        return Err(Error::invalid("model comparison needs at least 2 candidate specs"));
    }
    let mut rows: Vec<ComparisonRow> = Vec::with_capacity(specs.len());
    for spec in specs {
        match fit_and_score(data, spec, prior, tuning, None) {
            Ok(fit) => {
                rows.push(ComparisonRow { name: spec.name.clone(), fit: Some(fit), error: None })
            }
            Err(e) => rows.push(ComparisonRow {
                name: spec.name.clone(),
                fit: None,
                error: Some(e.to_string()),
            }),
        }
    }
    rows.sort_by(|a, b| match (&a.fit, &b.fit) {
        (Some(fa), Some(fb)) => fa.bic.partial_cmp(&fb.bic).unwrap_or(std::cmp::Ordering::Equal),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    let winner = rows.first().and_then(|r| r.fit.as_ref().map(|_| r.name.clone()));
    Ok(ModelComparison { rows, winner, n: data.n(), seed: tuning.seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ParamPoint;

    #[test]
    fn bic_closed_form() {
        // 2·ln 100 + 1000
        let b = bic(-500.0, 2, 100).unwrap();
        assert!((b - 1_009.210_340_371_976_2).abs() < 1e-9, "bic = {b}");
    }

    #[test]
    fn bic_without_parameters_is_deviance() {
        assert_eq!(bic(-123.0, 0, 50).unwrap(), 246.0);
    }

    #[test]
    fn bic_rejects_empty_sample() {
        assert!(bic(-1.0, 2, 0).is_err());
    }

    #[test]
    fn bic_monotone_in_k_and_loglik() {
        let base = bic(-100.0, 2, 500).unwrap();
        assert!(bic(-100.0, 3, 500).unwrap() > base);
        assert!(bic(-99.0, 2, 500).unwrap() < base);
    }

    #[test]
    fn aic_closed_form() {
        assert_eq!(aic(-10.0, 3), 26.0);
    }

    #[test]
    fn duplicate_specs_produce_identical_rows() {
        let point = ParamPoint::new(vec![2.5], vec![0.2, 0.1, 0.01]);
        let model = ModelSpec::m1().model(&point).unwrap();
        let data = CountData::from_observations(&model.sample(800, 77)).unwrap();
        let tuning = TuningConfig {
            pilot_iters: 400,
            main_iters: 1_200,
            burnin: 400,
            thin: 1,
            proposal_scale_override: None,
            seed: 9,
        };
        let cmp = compare_models(
            &data,
            &[ModelSpec::m1(), ModelSpec::m1()],
            &PriorSpec::default(),
            &tuning,
        )
        .unwrap();
        let bics: Vec<f64> = cmp.rows.iter().map(|r| r.fit.as_ref().unwrap().bic).collect();
        assert_eq!(bics[0], bics[1]);
    }

    #[test]
    fn loglik_at_mean_is_recomputable() {
        let point = ParamPoint::new(vec![2.3], vec![0.3, 0.1, 0.005]);
        let model = ModelSpec::m1().model(&point).unwrap();
        let data = CountData::from_observations(&model.sample(600, 5)).unwrap();
        let tuning = TuningConfig {
            pilot_iters: 400,
            main_iters: 1_000,
            burnin: 300,
            thin: 1,
            proposal_scale_override: None,
            seed: 3,
        };
        let fit =
            fit_and_score(&data, &ModelSpec::m1(), &PriorSpec::default(), &tuning, None).unwrap();
        let point = ParamPoint::from_flat(&fit.spec, &fit.posterior_mean).unwrap();
        let fresh = log_likelihood(&data, &point, &fit.spec).unwrap();
        assert!((fresh - fit.loglik_at_mean).abs() <= 1e-10);
        assert!((bic(fresh, fit.k, data.n()).unwrap() - fit.bic).abs() <= 1e-10);
    }

    #[test]
    fn comparison_requires_two_specs() {
        let data = CountData::from_observations(&[1, 2, 3]).unwrap();
        assert!(compare_models(
            &data,
            &[ModelSpec::m1()],
            &PriorSpec::default(),
            &TuningConfig::quick(0)
        )
        .is_err());
    }

    #[test]
    fn per_model_failures_become_error_rows() {
        // Every fit fails on an empty dataset, but the table still comes
        // back with one error record per model.
        let cmp = compare_models(
            &CountData::empty(),
            &[ModelSpec::m1(), ModelSpec::m3()],
            &PriorSpec::default(),
            &TuningConfig::quick(0),
        )
        .unwrap();
        assert_eq!(cmp.rows.len(), 2);
        assert!(cmp.winner.is_none());
        for row in &cmp.rows {
            assert!(row.fit.is_none());
            assert!(row.error.is_some());
        }
        assert!(cmp.render_text().contains("failed:"));
    }

    #[test]
    fn render_text_marks_winner() {
        let data_model = ModelSpec::m3();
        let point = ParamPoint::new(vec![1.0, 1.0], vec![]);
        let model = data_model.model(&point).unwrap();
        let data = CountData::from_observations(&model.sample(1_000, 123)).unwrap();
        let cmp = compare_models(
            &data,
            &[ModelSpec::m3(), ModelSpec::m1()],
            &PriorSpec::default(),
            &TuningConfig {
                pilot_iters: 400,
                main_iters: 1_500,
                burnin: 500,
                thin: 1,
                proposal_scale_override: None,
                seed: 1,
            },
        )
        .unwrap();
        let text = cmp.render_text();
        assert!(text.contains('*'));
        assert!(text.contains("BIC"));
    }
}
