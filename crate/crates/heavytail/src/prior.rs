//! Prior specification. Weakly informative defaults that respect the hard
//! parameter constraints: shifted exponentials for lower-bounded scale-type
//! parameters, normals for unbounded ones.

use serde::{Deserialize, Serialize};

use crate::model::{ModelSpec, TailKind};

/// Hyperparameters for the per-parameter prior families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorSpec {
    /// θ − 1 ~ Exponential(rate).
    pub theta_shift_rate: f64,
    /// μ ~ Normal(mean, sd²).
    pub mu_mean: f64,
    pub mu_sd: f64,
    /// σ ~ Exponential(rate).
    pub sigma_rate: f64,
    /// Each deviation coefficient φᵢ ~ Exponential(rate). The unbounded
    /// inverse-logistic intercept gets Normal(0, offset_sd²) instead.
    pub phi_rate: f64,
    /// Degree scaling for the polynomial deviation: the coefficient of
    /// (x−1)^k gets rate `phi_rate · phi_rate_growth^k`, matching the
    /// growth of its regressor.
    pub phi_rate_growth: f64,
    /// Paired-model offsets ~ Normal(0, offset_sd²), truncated by the joint
    /// constraints (enforced by rejection).
    pub offset_sd: f64,
    /// When set, all prior terms are dropped (improper flat prior); for
    /// diagnostics only.
    pub flat: bool,
}

impl Default for PriorSpec {
    fn default() -> Self {
        PriorSpec {
            theta_shift_rate: 0.1,
            mu_mean: 0.0,
            mu_sd: 10.0,
            sigma_rate: 0.1,
            phi_rate: 3.0,
            phi_rate_growth: 10.0,
            offset_sd: 10.0,
            flat: false,
        }
    }
}

impl PriorSpec {
    /// Improper flat prior: log-posterior reduces to the log-likelihood.
    pub fn flat() -> Self {
        PriorSpec { flat: true, ..PriorSpec::default() }
    }

    /// Per-parameter prior distributions for a model, aligned with
    /// `spec.param_names()`.
    pub(crate) fn param_priors(&self, spec: &ModelSpec) -> Vec<ParamPrior> {
        if self.flat {
            return vec![ParamPrior::Flat; spec.param_count()];
        }

        let mut priors = match spec.tail {
            TailKind::PowerLaw => {
                vec![ParamPrior::ShiftedExponential { shift: 1.0, rate: self.theta_shift_rate }]
            }
            TailKind::DiscreteLogNormal => vec![
                ParamPrior::Normal { mean: self.mu_mean, sd: self.mu_sd },
                ParamPrior::Exponential { rate: self.sigma_rate },
            ],
        };
        match spec.deviation {
            crate::model::DeviationKind::UnitExpCdf { degree } => {
                priors.extend((0..=degree).map(|k| ParamPrior::Exponential {
                    rate: self.phi_rate * self.phi_rate_growth.powi(k as i32),
                }));
            }
            crate::model::DeviationKind::InverseLogistic => {
                priors.push(ParamPrior::Normal { mean: 0.0, sd: self.offset_sd });
                priors.push(ParamPrior::Exponential { rate: self.phi_rate });
            }
            crate::model::DeviationKind::None => {}
        }
        priors
    }

    /// Prior for one paired-model offset.
    pub(crate) fn offset_prior(&self) -> ParamPrior {
        if self.flat {
            ParamPrior::Flat
        } else {
            ParamPrior::Normal { mean: 0.0, sd: self.offset_sd }
        }
    }
}

/// One-dimensional prior densities on the natural scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum ParamPrior {
    /// v − shift ~ Exponential(rate), support v > shift.
    ShiftedExponential { shift: f64, rate: f64 },
    /// v ~ Exponential(rate), support v ≥ 0.
    Exponential { rate: f64 },
    Normal { mean: f64, sd: f64 },
    Flat,
}

impl ParamPrior {
    /// Log density at v; −∞ outside the support.
    pub(crate) fn ln_pdf(&self, v: f64) -> f64 {
        match *self {
            ParamPrior::ShiftedExponential { shift, rate } => {
                if v > shift {
                    rate.ln() - rate * (v - shift)
                } else {
                    f64::NEG_INFINITY
                }
            }
            ParamPrior::Exponential { rate } => {
                if v >= 0.0 {
                    rate.ln() - rate * v
                } else {
                    f64::NEG_INFINITY
                }
            }
            ParamPrior::Normal { mean, sd } => {
                let z = (v - mean) / sd;
                -0.5 * z * z - sd.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln()
            }
            ParamPrior::Flat => 0.0,
        }
    }

    /// Quantile function (used by the sampler smoke tests).
    #[cfg(test)]
    pub(crate) fn quantile(&self, p: f64) -> f64 {
        debug_assert!((0.0..1.0).contains(&p));
        match *self {
            ParamPrior::ShiftedExponential { shift, rate } => shift - (1.0 - p).ln() / rate,
            ParamPrior::Exponential { rate } => -(1.0 - p).ln() / rate,
            ParamPrior::Normal { mean, sd } => mean + sd * inverse_normal_cdf(p),
            ParamPrior::Flat => panic!("flat prior has no quantiles"),
        }
    }
}

/// Acklam's rational approximation to Φ⁻¹, |relative error| < 1.15e-9.
#[cfg(test)]
fn inverse_normal_cdf(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.38357751867269e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    let p_low = 0.02425;
    if p < p_low {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - p_low {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelSpec;

    #[test]
    fn default_priors_align_with_params() {
        let prior = PriorSpec::default();
        assert_eq!(prior.param_priors(&ModelSpec::m1()).len(), 4);
        assert_eq!(prior.param_priors(&ModelSpec::m2()).len(), 5);
        assert_eq!(prior.param_priors(&ModelSpec::m3()).len(), 2);
    }

    #[test]
    fn shifted_exponential_density() {
        let p = ParamPrior::ShiftedExponential { shift: 1.0, rate: 0.1 };
        // Hand-evaluated: ln(0.1) − 0.1·(2.5 − 1).
        let expected = 0.1f64.ln() - 0.15;
        assert!((p.ln_pdf(2.5) - expected).abs() < 1e-14);
        assert_eq!(p.ln_pdf(1.0), f64::NEG_INFINITY);
    }

    #[test]
    fn normal_density_hand_checked() {
        let p = ParamPrior::Normal { mean: 0.0, sd: 10.0 };
        let expected = -0.5 * (0.3f64).powi(2) - 10f64.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln();
        assert!((p.ln_pdf(3.0) - expected).abs() < 1e-14);
    }

    #[test]
    fn exponential_quantiles_invert_cdf() {
        let p = ParamPrior::Exponential { rate: 0.01 };
        for &q in &[0.1, 0.5, 0.9] {
            let v = p.quantile(q);
            // CDF(v) = 1 − e^{−rate·v}
            let cdf = 1.0 - (-0.01 * v).exp();
            assert!((cdf - q).abs() < 1e-12);
        }
    }

    #[test]
    fn normal_quantile_reference() {
        let p = ParamPrior::Normal { mean: 0.0, sd: 1.0 };
        assert!((p.quantile(0.975) - 1.959963984540054).abs() < 1e-7);
        assert!(p.quantile(0.5).abs() < 1e-8);
    }

    #[test]
    fn flat_prior_contributes_nothing() {
        let priors = PriorSpec::flat().param_priors(&ModelSpec::m1());
        assert!(priors.iter().all(|p| p.ln_pdf(123.0) == 0.0));
    }
}
