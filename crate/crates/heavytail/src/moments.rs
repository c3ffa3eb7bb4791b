//! Raw moments of the continuous power law on [xmin, ∞).

use crate::error::{Error, Result};

/// Value of a raw moment, which may fail to exist for heavy tails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Moment {
    Finite(f64),
    Divergent,
}

impl Moment {
    pub fn is_divergent(&self) -> bool {
        matches!(self, Moment::Divergent)
    }
}

/// m-th raw moment of the continuous power law with density ∝ x^{-alpha} on
/// x ≥ xmin: E[X^m] = (alpha − 1)/(alpha − 1 − m) · xmin^m, finite only when
/// m < alpha − 1.
pub fn moment_continuous_pl(m: u32, alpha: f64, xmin: f64) -> Result<Moment> {
    if !(alpha > 1.0) {
        return Err(Error::invalid(format!("power law moment requires alpha > 1, got {alpha}")));
    }
    if !(xmin > 0.0) {
        return Err(Error::invalid(format!("power law moment requires xmin > 0, got {xmin}")));
    }
    let m = m as f64;
    if m < alpha - 1.0 {
        Ok(Moment::Finite((alpha - 1.0) / (alpha - 1.0 - m) * xmin.powf(m)))
    } else {
        Ok(Moment::Divergent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_moment_alpha_three() {
        let m = moment_continuous_pl(1, 3.0, 1.0).unwrap();
        assert_eq!(m, Moment::Finite(2.0));
    }

    #[test]
    fn mean_diverges_at_alpha_two() {
        assert!(moment_continuous_pl(1, 2.0, 1.0).unwrap().is_divergent());
    }

    #[test]
    fn second_moment_diverges_below_three() {
        assert!(moment_continuous_pl(2, 2.5, 1.0).unwrap().is_divergent());
    }

    #[test]
    fn divergence_boundary_cases() {
        // 1 < alpha <= 2: every moment diverges.
        for &alpha in &[1.2, 1.9, 2.0] {
            for m in 1..=4 {
                assert!(moment_continuous_pl(m, alpha, 1.0).unwrap().is_divergent());
            }
        }
        // 2 < alpha <= 3: mean finite, second and higher diverge.
        for &alpha in &[2.3, 3.0] {
            assert!(!moment_continuous_pl(1, alpha, 1.0).unwrap().is_divergent());
            assert!(moment_continuous_pl(2, alpha, 1.0).unwrap().is_divergent());
            assert!(moment_continuous_pl(3, alpha, 1.0).unwrap().is_divergent());
        }
        // 3 < alpha <= m + 1: m-th and higher diverge.
        assert!(!moment_continuous_pl(2, 3.5, 1.0).unwrap().is_divergent());
        assert!(moment_continuous_pl(3, 3.5, 1.0).unwrap().is_divergent());
        assert!(moment_continuous_pl(3, 4.0, 1.0).unwrap().is_divergent());
    }

    #[test]
    fn xmin_scaling() {
        let Moment::Finite(v) = moment_continuous_pl(2, 4.0, 3.0).unwrap() else {
            panic!("expected finite moment");
        };
        assert!((v - 3.0 * 9.0).abs() < 1e-12); // (3/1)·3² = 27
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(moment_continuous_pl(1, 1.0, 1.0).is_err());
        assert!(moment_continuous_pl(1, 2.5, 0.0).is_err());
    }
}
