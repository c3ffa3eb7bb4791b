//! Heavy-tailed backbone distributions g(x; θ) on the positive integers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{hurwitz_zeta_real, ln_normal_sf, normal_cdf, zeta};

/// A backbone family with its parameter values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TailFamily {
    /// g(x) = x^{-θ} / ζ(θ) for x = 1, 2, ... and θ > 1.
    PowerLaw { theta: f64 },
    /// Lognormal CDF differenced over half-integer bins and renormalised to
    /// x ≥ 1: g(x) = (F(x+½) − F(x−½)) / (1 − F(½)).
    DiscreteLogNormal { mu: f64, sigma: f64 },
}

impl TailFamily {
    pub fn power_law(theta: f64) -> Result<Self> {
        if !(theta > 1.0) {
            return Err(Error::invalid(format!(
                "power law requires theta > 1 (zeta diverges otherwise), got {theta}"
            )));
        }
        Ok(TailFamily::PowerLaw { theta })
    }

    pub fn discrete_log_normal(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::invalid(format!("lognormal mu must be finite, got {mu}")));
        }
        if !(sigma > 0.0) {
            return Err(Error::invalid(format!("lognormal requires sigma > 0, got {sigma}")));
        }
        Ok(TailFamily::DiscreteLogNormal { mu, sigma })
    }

    pub fn param_count(&self) -> usize {
        match self {
            TailFamily::PowerLaw { .. } => 1,
            TailFamily::DiscreteLogNormal { .. } => 2,
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match self {
            TailFamily::PowerLaw { theta } => vec![*theta],
            TailFamily::DiscreteLogNormal { mu, sigma } => vec![*mu, *sigma],
        }
    }

    /// Precompute the normalising pieces used by repeated pmf evaluations.
    pub(crate) fn cache(&self) -> Result<TailCache> {
        match self {
            TailFamily::PowerLaw { theta } => {
                let z = zeta(*theta)?;
                Ok(TailCache::PowerLaw { theta: *theta, zeta: z, ln_zeta: z.ln() })
            }
            TailFamily::DiscreteLogNormal { mu, sigma } => {
                // Mass of the continuous lognormal below the first bin edge.
                let head = normal_cdf(((0.5f64).ln() - mu) / sigma);
                let denom = 1.0 - head;
                if !(denom > 0.0) {
                    return Err(Error::numerical(
                        "lognormal mass above x = 0.5 underflowed to zero",
                    ));
                }
                Ok(TailCache::LogNormal { mu: *mu, sigma: *sigma, denom, ln_denom: denom.ln() })
            }
        }
    }

    /// g(x) for integer x ≥ 1.
    pub fn pmf(&self, x: u64) -> Result<f64> {
        self.cache()?.pmf(x)
    }

    /// Backbone CDF G(x) = Σ_{k≤x} g(k). Exact closed form for the
    /// lognormal, Hurwitz-zeta complement for the power law.
    pub fn cdf(&self, x: u64) -> Result<f64> {
        Ok(1.0 - self.cache()?.sf(x))
    }

    /// Backbone survival 1 − G(x) = Σ_{k>x} g(k).
    pub fn sf(&self, x: u64) -> Result<f64> {
        Ok(self.cache()?.sf(x))
    }

    /// n exact draws from the backbone alone.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<u64>> {
        let cache = self.cache()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok((0..n).map(|_| cache.sample(&mut rng)).collect())
    }

    /// One exact draw using the given generator.
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u64> {
        Ok(self.cache()?.sample(rng))
    }
}

/// Cached normalisation for one parameter value of a tail family.
#[derive(Debug, Clone)]
pub(crate) enum TailCache {
    PowerLaw { theta: f64, zeta: f64, ln_zeta: f64 },
    LogNormal { mu: f64, sigma: f64, denom: f64, ln_denom: f64 },
}

impl TailCache {
    pub(crate) fn pmf(&self, x: u64) -> Result<f64> {
        if x < 1 {
            return Err(Error::invalid(format!("pmf support starts at x = 1, got {x}")));
        }
        match self {
            TailCache::PowerLaw { theta, zeta, .. } => Ok((x as f64).powf(-theta) / zeta),
            TailCache::LogNormal { mu, sigma, denom, .. } => {
                let lo = ((x as f64 - 0.5).ln() - mu) / sigma;
                let hi = ((x as f64 + 0.5).ln() - mu) / sigma;
                // Difference of survival functions avoids cancellation in
                // the far upper tail.
                let p = crate::special::normal_sf(lo) - crate::special::normal_sf(hi);
                Ok((p / denom).max(0.0))
            }
        }
    }

    pub(crate) fn ln_pmf(&self, x: u64) -> Result<f64> {
        if x < 1 {
            return Err(Error::invalid(format!("pmf support starts at x = 1, got {x}")));
        }
        match self {
            TailCache::PowerLaw { theta, ln_zeta, .. } => Ok(-theta * (x as f64).ln() - ln_zeta),
            TailCache::LogNormal { mu, sigma, denom: _, ln_denom } => {
                let lo = ((x as f64 - 0.5).ln() - mu) / sigma;
                let hi = ((x as f64 + 0.5).ln() - mu) / sigma;
                let p = crate::special::normal_sf(lo) - crate::special::normal_sf(hi);
                if p > 0.0 {
                    Ok(p.ln() - ln_denom)
                } else {
                    // Deep in the tail the survival values underflow or agree
                    // to the last ulp; ln(S(lo) − S(hi)) = ln S(lo) +
                    // ln(1 − exp(δ)) with δ = ln S(hi) − ln S(lo) ≤ 0.
                    let ln_lo = ln_normal_sf(lo);
                    let delta = ln_normal_sf(hi) - ln_lo;
                    if delta < -1e-8 {
                        Ok(ln_lo + (-delta.exp()).ln_1p() - ln_denom)
                    } else {
                        // Bin narrower than the log-survival resolution:
                        // midpoint-density approximation
                        // S(lo) − S(hi) ≈ φ(z_mid)·(hi − lo).
                        let zm = 0.5 * (lo + hi);
                        let width = (1.0 / (x as f64 - 0.5)).ln_1p() / sigma;
                        Ok(-0.5 * zm * zm
                            - 0.5 * (2.0 * std::f64::consts::PI).ln()
                            + width.ln()
                            - ln_denom)
                    }
                }
            }
        }
    }

    /// 1 − G(x), the backbone mass strictly above x (x ≥ 0; sf(0) = 1).
    pub(crate) fn sf(&self, x: u64) -> f64 {
        match self {
            TailCache::PowerLaw { theta, zeta, .. } => {
                if x == 0 {
                    1.0
                } else {
                    // Σ_{k>x} k^{-θ} = ζ(θ, x+1)
                    hurwitz_zeta_real(*theta, (x + 1) as f64).map(|h| h / zeta).unwrap_or(0.0)
                }
            }
            TailCache::LogNormal { mu, sigma, denom, .. } => {
                let z = ((x as f64 + 0.5).ln() - mu) / sigma;
                crate::special::normal_sf(z) / denom
            }
        }
    }

    /// Exact draw from the backbone.
    pub(crate) fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match self {
            TailCache::PowerLaw { theta, .. } => sample_zeta(*theta, rng),
            TailCache::LogNormal { mu, sigma, .. } => {
                // Round a continuous lognormal to the nearest integer and
                // condition on x >= 1; this reproduces the half-integer
                // CDF-differenced pmf exactly.
                loop {
                    let z: f64 = rng.sample(rand_distr::StandardNormal);
                    let y = (mu + sigma * z).exp();
                    let k = y.round();
                    if (1.0..9.0e18).contains(&k) {
                        return k as u64;
                    }
                }
            }
        }
    }
}

/// Exact sampler for the discrete power law (zeta distribution) with
/// pmf ∝ x^{-theta}: draw a continuous Pareto variate, floor it, then do an
/// exact ratio rejection (Devroye, ch. IX.6.1). O(1) expected cost.
fn sample_zeta<R: Rng + ?Sized>(theta: f64, rng: &mut R) -> u64 {
    let s1 = theta - 1.0;
    let b = 2.0_f64.powf(s1);
    loop {
        let u: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
        let v: f64 = rng.gen();
        let x = u.powf(-1.0 / s1).floor();
        if !(x >= 1.0) || x >= 9.0e18 {
            // Astronomically far tail; the acceptance ratio there is
            // negligible, so retrying does not bias the draw.
            continue;
        }
        let t = (1.0 + 1.0 / x).powf(s1);
        if v * x * (t - 1.0) * b <= t * (b - 1.0) {
            return x as u64;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn power_law_pmf_reference_values() {
        let g = TailFamily::power_law(2.0).unwrap();
        // x = 2: (1/4)/(π²/6) = 3/(2π²)
        let expected = 3.0 / (2.0 * PI * PI);
        assert!((g.pmf(2).unwrap() - expected).abs() < 1e-14);
        // x = 1 is 1/ζ(θ) for any θ.
        for &theta in &[1.5, 2.0, 3.7] {
            let g = TailFamily::power_law(theta).unwrap();
            let z = zeta(theta).unwrap();
            assert!((g.pmf(1).unwrap() - 1.0 / z).abs() < 1e-14);
        }
    }

    #[test]
    fn power_law_pmf_sums_to_one() {
        let g = TailFamily::power_law(2.5).unwrap().cache().unwrap();
        let head: f64 = (1..=200_000u64).map(|x| g.pmf(x).unwrap()).sum();
        let total = head + g.sf(200_000);
        assert!((total - 1.0).abs() < 1e-10, "total = {total}");
    }

    #[test]
    fn lognormal_pmf_sums_to_one() {
        let g = TailFamily::discrete_log_normal(0.0, 1.0).unwrap().cache().unwrap();
        let head: f64 = (1..=1_000_000u64).map(|x| g.pmf(x).unwrap()).sum();
        assert!((head - 1.0).abs() < 1e-9, "head = {head}");
    }

    #[test]
    fn lognormal_sf_consistent_with_pmf_sum() {
        let g = TailFamily::discrete_log_normal(1.0, 0.8).unwrap().cache().unwrap();
        let head: f64 = (1..=50u64).map(|x| g.pmf(x).unwrap()).sum();
        assert!((head + g.sf(50) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ln_pmf_matches_log_of_pmf() {
        let fams = [
            TailFamily::power_law(2.5).unwrap(),
            TailFamily::discrete_log_normal(0.5, 1.2).unwrap(),
        ];
        for fam in &fams {
            let cache = fam.cache().unwrap();
            for &x in &[1u64, 2, 17, 400, 120_000] {
                let a = cache.pmf(x).unwrap().ln();
                let b = cache.ln_pmf(x).unwrap();
                assert!((a - b).abs() < 1e-10 * (1.0 + a.abs()), "{fam:?} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn lognormal_ln_pmf_finite_deep_in_tail() {
        let cache = TailFamily::discrete_log_normal(0.0, 1.0).unwrap().cache().unwrap();
        // ln x = 41.4 sits ~41 sigma out; the plain pmf underflows to 0.
        let lp = cache.ln_pmf(1_000_000_000_000_000_000).unwrap();
        assert!(lp.is_finite() && lp < -500.0, "lp = {lp}");
    }

    #[test]
    fn pmf_rejects_x_below_support() {
        assert!(TailFamily::power_law(2.0).unwrap().pmf(0).is_err());
    }

    #[test]
    fn constructors_validate() {
        assert!(TailFamily::power_law(1.0).is_err());
        assert!(TailFamily::power_law(0.3).is_err());
        assert!(TailFamily::discrete_log_normal(0.0, 0.0).is_err());
        assert!(TailFamily::discrete_log_normal(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn zeta_sampler_matches_pmf() {
        let cache = TailFamily::power_law(2.5).unwrap().cache().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 200_000usize;
        let mut freq = [0u64; 21];
        for _ in 0..n {
            let x = cache.sample(&mut rng);
            if x <= 20 {
                freq[x as usize] += 1;
            }
        }
        for x in 1..=10u64 {
            let p = cache.pmf(x).unwrap();
            let observed = freq[x as usize] as f64 / n as f64;
            let se = (p * (1.0 - p) / n as f64).sqrt();
            assert!(
                (observed - p).abs() < 5.0 * se + 1e-4,
                "x={x}: observed {observed}, expected {p}"
            );
        }
    }

    #[test]
    fn lognormal_sampler_matches_pmf() {
        let cache = TailFamily::discrete_log_normal(1.0, 1.0).unwrap().cache().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 200_000usize;
        let mut freq = [0u64; 31];
        for _ in 0..n {
            let x = cache.sample(&mut rng);
            if x <= 30 {
                freq[x as usize] += 1;
            }
        }
        for x in 1..=12u64 {
            let p = cache.pmf(x).unwrap();
            let observed = freq[x as usize] as f64 / n as f64;
            let se = (p * (1.0 - p) / n as f64).sqrt();
            assert!(
                (observed - p).abs() < 5.0 * se + 1e-4,
                "x={x}: observed {observed}, expected {p}"
            );
        }
    }
}
