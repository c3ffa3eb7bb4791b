//! Deviation functions D(x; φ): multiplicative corrections in (0, 1] that
//! describe how the data departs from the backbone at small x and saturate
//! to 1 in the tail.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A deviation function family with its parameter values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DeviationFamily {
    /// D(x) = 1 − exp(−Σ_k φ_k (x−1)^k) with every φ_k ≥ 0 and not all zero.
    /// The polynomial degree is `coeffs.len() - 1`.
    UnitExpCdf { coeffs: Vec<f64> },
    /// D(x) = 1 / (1 + exp(−(φ₀ + φ₁(x−1)))) with φ₁ > 0.
    InverseLogistic { phi0: f64, phi1: f64 },
    /// D ≡ 1: the backbone alone.
    None,
}

impl DeviationFamily {
    /// Unit-exponential-CDF deviation; rejects negative coefficients and the
    /// degenerate all-zero case (which would make the composite pmf
    /// identically zero).
    pub fn unit_exp_cdf(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("unit exponential CDF needs at least one coefficient"));
        }
        for (i, &c) in coeffs.iter().enumerate() {
            if !(c >= 0.0) {
                return Err(Error::invalid(format!(
                    "unit exponential CDF coefficient phi{i} must be >= 0, got {c}"
                )));
            }
        }
        if coeffs.iter().all(|&c| c == 0.0) {
            return Err(Error::invalid(
                "unit exponential CDF with all coefficients zero is identically 0",
            ));
        }
        Ok(DeviationFamily::UnitExpCdf { coeffs })
    }

    /// Inverse-logistic deviation; φ₁ must be strictly positive so that
    /// D(x) → 1 as x → ∞.
    pub fn inverse_logistic(phi0: f64, phi1: f64) -> Result<Self> {
        if !phi0.is_finite() {
            return Err(Error::invalid(format!("inverse logistic phi0 must be finite, got {phi0}")));
        }
        if !(phi1 > 0.0) {
            return Err(Error::invalid(format!(
                "inverse logistic requires phi1 > 0 (so the deviation saturates), got {phi1}"
            )));
        }
        Ok(DeviationFamily::InverseLogistic { phi0, phi1 })
    }

    /// Number of free parameters.
    pub fn param_count(&self) -> usize {
        match self {
            DeviationFamily::UnitExpCdf { coeffs } => coeffs.len(),
            DeviationFamily::InverseLogistic { .. } => 2,
            DeviationFamily::None => 0,
        }
    }

    /// Parameter values in declaration order.
    pub fn params(&self) -> Vec<f64> {
        match self {
            DeviationFamily::UnitExpCdf { coeffs } => coeffs.clone(),
            DeviationFamily::InverseLogistic { phi0, phi1 } => vec![*phi0, *phi1],
            DeviationFamily::None => vec![],
        }
    }

    /// Exponent u(x) = Σ_k φ_k (x−1)^k for the unit-exponential family, the
    /// logistic argument for the inverse-logistic family.
    fn argument(&self, x: u64) -> f64 {
        let t = (x - 1) as f64;
        match self {
            DeviationFamily::UnitExpCdf { coeffs } => {
                // Horner evaluation of Σ φ_k t^k.
                coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
            }
            DeviationFamily::InverseLogistic { phi0, phi1 } => phi0 + phi1 * t,
            DeviationFamily::None => 0.0,
        }
    }

    /// D(x; φ) for integer x ≥ 1. Always in (0, 1].
    pub fn eval(&self, x: u64) -> f64 {
        debug_assert!(x >= 1);
        match self {
            DeviationFamily::UnitExpCdf { .. } => -(-self.argument(x)).exp_m1(),
            DeviationFamily::InverseLogistic { .. } => {
                let t = self.argument(x);
                1.0 / (1.0 + (-t).exp())
            }
            DeviationFamily::None => 1.0,
        }
    }

    /// ln D(x; φ), stable for both near-zero and near-one deviations.
    pub fn ln_eval(&self, x: u64) -> f64 {
        match self {
            DeviationFamily::UnitExpCdf { .. } => {
                let u = self.argument(x);
                if u < std::f64::consts::LN_2 {
                    // D = -expm1(-u) is accurate when D is small.
                    (-(-u).exp_m1()).ln()
                } else {
                    // D close to 1: ln(1 - e^{-u}).
                    (-(-u).exp()).ln_1p()
                }
            }
            DeviationFamily::InverseLogistic { .. } => {
                let t = self.argument(x);
                // ln sigmoid(t) = -softplus(-t)
                if t > 0.0 {
                    -(-t).exp().ln_1p()
                } else {
                    t - t.exp().ln_1p()
                }
            }
            DeviationFamily::None => 0.0,
        }
    }

    /// 1 − D(x; φ), computed without cancellation.
    pub fn one_minus(&self, x: u64) -> f64 {
        match self {
            DeviationFamily::UnitExpCdf { .. } => (-self.argument(x)).exp(),
            DeviationFamily::InverseLogistic { .. } => {
                let t = self.argument(x);
                1.0 / (1.0 + t.exp())
            }
            DeviationFamily::None => 0.0,
        }
    }

    /// Supremum of D over x ≥ 1 (its limit as x → ∞, since D is
    /// nondecreasing). 1 unless the family is constant in x.
    pub fn sup(&self) -> f64 {
        match self {
            DeviationFamily::UnitExpCdf { coeffs } => {
                if coeffs.iter().skip(1).any(|&c| c > 0.0) {
                    1.0
                } else {
                    // Constant deviation 1 - e^{-phi0}.
                    -(-coeffs[0]).exp_m1()
                }
            }
            // phi1 > 0 is enforced at construction.
            DeviationFamily::InverseLogistic { .. } => 1.0,
            DeviationFamily::None => 1.0,
        }
    }

    /// True when D does not depend on x (None, or unit-exponential with all
    /// growth coefficients zero).
    pub fn is_constant(&self) -> bool {
        match self {
            DeviationFamily::UnitExpCdf { coeffs } => coeffs.iter().skip(1).all(|&c| c == 0.0),
            DeviationFamily::InverseLogistic { .. } => false,
            DeviationFamily::None => true,
        }
    }
}
