//! The composite count model f(x) = g(x; θ) · D(x; φ) / C(θ, φ) on
//! x = 1, 2, ..., together with its adaptive normalising constant, exact
//! sampler, and the parameter-layout plumbing shared by the fitting code.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::deviation::DeviationFamily;
use crate::error::{Error, Result};
use crate::tail::{TailCache, TailFamily};

/// Default absolute tolerance for the normalising constant.
pub const DEFAULT_NORM_TOL: f64 = 1e-10;

/// Truncation cap for the adaptive normaliser sum.
const MAX_TRUNCATION: u64 = 100_000_000;

/// Choice of backbone family (parameter values live in [`TailFamily`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailKind {
    PowerLaw,
    DiscreteLogNormal,
}

/// Choice of deviation family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeviationKind {
    /// Polynomial-exponent unit exponential CDF; `degree` is the highest
    /// power of (x−1), so the family has `degree + 1` coefficients.
    UnitExpCdf { degree: usize },
    InverseLogistic,
    None,
}

/// A named model structure: which families are combined and how many free
/// parameters that entails. Parameter values are carried separately in
/// [`ParamPoint`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub name: String,
    pub tail: TailKind,
    pub deviation: DeviationKind,
}

impl ModelSpec {
    pub fn new(name: impl Into<String>, tail: TailKind, deviation: DeviationKind) -> Self {
        ModelSpec { name: name.into(), tail, deviation }
    }

    /// Power law with a degree-2 unit-exponential deviation (4 parameters).
    pub fn m1() -> Self {
        ModelSpec::new("m1", TailKind::PowerLaw, DeviationKind::UnitExpCdf { degree: 2 })
    }

    /// Discrete lognormal with a degree-2 unit-exponential deviation
    /// (5 parameters).
    pub fn m2() -> Self {
        ModelSpec::new("m2", TailKind::DiscreteLogNormal, DeviationKind::UnitExpCdf { degree: 2 })
    }

    /// Plain discrete lognormal (2 parameters).
    pub fn m3() -> Self {
        ModelSpec::new("m3", TailKind::DiscreteLogNormal, DeviationKind::None)
    }

    pub fn tail_param_count(&self) -> usize {
        match self.tail {
            TailKind::PowerLaw => 1,
            TailKind::DiscreteLogNormal => 2,
        }
    }

    pub fn deviation_param_count(&self) -> usize {
        match self.deviation {
            DeviationKind::UnitExpCdf { degree } => degree + 1,
            DeviationKind::InverseLogistic => 2,
            DeviationKind::None => 0,
        }
    }

    /// Number of free parameters k.
    pub fn param_count(&self) -> usize {
        self.tail_param_count() + self.deviation_param_count()
    }

    pub fn param_names(&self) -> Vec<String> {
        let mut names = match self.tail {
            TailKind::PowerLaw => vec!["theta".to_string()],
            TailKind::DiscreteLogNormal => vec!["mu".to_string(), "sigma".to_string()],
        };
        match self.deviation {
            DeviationKind::UnitExpCdf { degree } => {
                names.extend((0..=degree).map(|i| format!("phi{i}")));
            }
            DeviationKind::InverseLogistic => {
                names.push("phi0".to_string());
                names.push("phi1".to_string());
            }
            DeviationKind::None => {}
        }
        names
    }

    /// Per-parameter map between the constrained (natural) scale and the
    /// unconstrained scale the sampler walks on.
    pub(crate) fn transforms(&self) -> Vec<Transform> {
        let mut t = match self.tail {
            TailKind::PowerLaw => vec![Transform::LogShift(1.0)],
            TailKind::DiscreteLogNormal => vec![Transform::Identity, Transform::Log],
        };
        match self.deviation {
            DeviationKind::UnitExpCdf { degree } => {
                t.extend(vec![Transform::Log; degree + 1]);
            }
            DeviationKind::InverseLogistic => {
                t.push(Transform::Identity);
                t.push(Transform::Log);
            }
            DeviationKind::None => {}
        }
        t
    }

    /// Build the concrete families from natural-scale parameter values,
    /// validating every constraint.
    pub fn families(&self, values: &[f64]) -> Result<(TailFamily, DeviationFamily)> {
        if values.len() != self.param_count() {
            return Err(Error::invalid(format!(
                "model {} expects {} parameters, got {}",
                self.name,
                self.param_count(),
                values.len()
            )));
        }
        let (tail_vals, dev_vals) = values.split_at(self.tail_param_count());
        let tail = match self.tail {
            TailKind::PowerLaw => TailFamily::power_law(tail_vals[0])?,
            TailKind::DiscreteLogNormal => {
                TailFamily::discrete_log_normal(tail_vals[0], tail_vals[1])?
            }
        };
        let dev = match self.deviation {
            DeviationKind::UnitExpCdf { .. } => DeviationFamily::unit_exp_cdf(dev_vals.to_vec())?,
            DeviationKind::InverseLogistic => {
                DeviationFamily::inverse_logistic(dev_vals[0], dev_vals[1])?
            }
            DeviationKind::None => DeviationFamily::None,
        };
        Ok((tail, dev))
    }

    /// Convenience: build the composite model at a parameter point.
    pub fn model(&self, point: &ParamPoint) -> Result<CompositeModel> {
        let (tail, dev) = self.families(&point.flat())?;
        CompositeModel::new(tail, dev)
    }
}

/// One natural-scale parameter value, split into the backbone block and the
/// deviation block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub theta_block: Vec<f64>,
    pub phi_block: Vec<f64>,
}

impl ParamPoint {
    pub fn new(theta_block: Vec<f64>, phi_block: Vec<f64>) -> Self {
        ParamPoint { theta_block, phi_block }
    }

    /// All parameters as one flat vector (backbone first).
    pub fn flat(&self) -> Vec<f64> {
        let mut v = self.theta_block.clone();
        v.extend_from_slice(&self.phi_block);
        v
    }

    pub fn from_flat(spec: &ModelSpec, values: &[f64]) -> Result<Self> {
        if values.len() != spec.param_count() {
            return Err(Error::invalid(format!(
                "model {} expects {} parameters, got {}",
                spec.name,
                spec.param_count(),
                values.len()
            )));
        }
        let (t, p) = values.split_at(spec.tail_param_count());
        Ok(ParamPoint::new(t.to_vec(), p.to_vec()))
    }
}

/// Scalar reparametrisations used by the sampler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Transform {
    /// v = z
    Identity,
    /// v = e^z (positivity)
    Log,
    /// v = shift + e^z (lower bound)
    LogShift(f64),
}

impl Transform {
    pub(crate) fn constrain(self, z: f64) -> f64 {
        match self {
            Transform::Identity => z,
            Transform::Log => z.exp(),
            Transform::LogShift(s) => s + z.exp(),
        }
    }

    pub(crate) fn unconstrain(self, v: f64) -> f64 {
        match self {
            Transform::Identity => v,
            Transform::Log => v.ln(),
            Transform::LogShift(s) => (v - s).ln(),
        }
    }

    /// ln |dv/dz|.
    pub(crate) fn log_jacobian(self, z: f64) -> f64 {
        match self {
            Transform::Identity => 0.0,
            Transform::Log | Transform::LogShift(_) => z,
        }
    }
}

/// Adaptive evaluation of the normalising constant C(θ, φ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizerResult {
    /// Estimated C(θ, φ).
    pub value: f64,
    /// Largest x summed explicitly (0 when the sum collapses analytically).
    pub truncation_point: u64,
    /// Guaranteed bound on |value − C|.
    pub error_bound: f64,
    /// Tolerance the truncation was grown to meet.
    pub tolerance_used: f64,
}

/// C(θ, φ) = Σ_{x≥1} g(x)·D(x), computed as
/// 1 − Σ_{x≤T} g(x)(1 − D(x)) − R(T) with the remainder bracketed by
/// 0 ≤ R(T) ≤ (1 − D(T+1))·(1 − G(T)); T grows until the bracket is within
/// `tol`, then the midpoint is reported.
pub fn norm_const(tail: &TailFamily, dev: &DeviationFamily, tol: f64) -> Result<NormalizerResult> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("normalizer tolerance must be > 0, got {tol}")));
    }
    let cache = tail.cache()?;
    norm_const_cached(&cache, dev, tol)
}

pub(crate) fn norm_const_cached(
    cache: &TailCache,
    dev: &DeviationFamily,
    tol: f64,
) -> Result<NormalizerResult> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("normalizer tolerance must be > 0, got {tol}")));
    }
    // A deviation constant in x factors out of the sum, so C is exact.
    if dev.is_constant() {
        return Ok(NormalizerResult {
            value: dev.eval(1),
            truncation_point: 0,
            error_bound: 0.0,
            tolerance_used: tol,
        });
    }

    let mut defect = 0.0; // Σ_{x≤T} g(x)(1 − D(x))
    let mut x = 1u64;
    let mut t = 16u64;
    loop {
        while x <= t {
            defect += cache.pmf(x)? * dev.one_minus(x);
            x += 1;
        }
        let bound = dev.one_minus(t + 1) * cache.sf(t);
        if bound <= tol {
            let value = 1.0 - defect - bound / 2.0;
            if !(value > 0.0) {
                return Err(Error::numerical(format!(
                    "normalizing constant vanished (defect sum {defect:.3e} at T = {t})"
                )));
            }
            return Ok(NormalizerResult {
                value,
                truncation_point: t,
                error_bound: bound / 2.0,
                tolerance_used: tol,
            });
        }
        if t >= MAX_TRUNCATION {
            return Err(Error::numerical(format!(
                "normalizer truncation bound {bound:.3e} still above tolerance {tol:.1e} \
                 at T = {t}; the deviation saturates too slowly"
            )));
        }
        t = (t * 2).min(MAX_TRUNCATION);
    }
}

/// A backbone + deviation pair with its normaliser evaluated and cached.
#[derive(Debug, Clone)]
pub struct CompositeModel {
    tail: TailFamily,
    dev: DeviationFamily,
    tail_cache: TailCache,
    norm: NormalizerResult,
    ln_norm: f64,
}

impl CompositeModel {
    pub fn new(tail: TailFamily, dev: DeviationFamily) -> Result<Self> {
        Self::with_tolerance(tail, dev, DEFAULT_NORM_TOL)
    }

    pub fn with_tolerance(tail: TailFamily, dev: DeviationFamily, tol: f64) -> Result<Self> {
        let tail_cache = tail.cache()?;
        let norm = norm_const_cached(&tail_cache, &dev, tol)?;
        Ok(CompositeModel { tail, dev, tail_cache, norm, ln_norm: norm.value.ln() })
    }

    pub fn tail(&self) -> &TailFamily {
        &self.tail
    }

    pub fn deviation(&self) -> &DeviationFamily {
        &self.dev
    }

    /// The cached normalising constant; under the thinning reading this is
    /// also the overall probability that an event is recorded.
    pub fn normalizer(&self) -> &NormalizerResult {
        &self.norm
    }

    /// f(x) = g(x)·D(x)/C.
    pub fn pmf(&self, x: u64) -> Result<f64> {
        Ok(self.tail_cache.pmf(x)? * self.dev.eval(x) / self.norm.value)
    }

    /// ln f(x); finite for every x ≥ 1 whenever D(x) > 0.
    pub fn ln_pmf(&self, x: u64) -> Result<f64> {
        Ok(self.tail_cache.ln_pmf(x)? + self.dev.ln_eval(x) - self.ln_norm)
    }

    /// Mass of the composite model strictly above x, bracketed by the same
    /// truncation argument the normaliser uses. Returns (lower, upper); the
    /// bounds coincide when the deviation is constant in x (the tail mass is
    /// then exact).
    pub fn sf_bracket(&self, x: u64) -> (f64, f64) {
        let g_tail = self.tail_cache.sf(x);
        if self.dev.is_constant() {
            // f = g exactly (C equals the constant deviation value).
            return (g_tail, g_tail);
        }
        let upper = g_tail / self.norm.value;
        let lower = g_tail * self.dev.eval(x + 1) / self.norm.value;
        (lower, upper.min(1.0))
    }

    /// One exact draw: sample the backbone, accept with probability D(x).
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        loop {
            let x = self.tail_cache.sample(rng);
            if rng.gen::<f64>() < self.dev.eval(x) {
                return x;
            }
        }
    }

    /// One exact draw from the complement model pmf ∝ g(x)·(1 − D(x)): the
    /// sizes of events the deviation would leave unrecorded. Callers must
    /// ensure D is not identically 1 (C < 1).
    pub fn sample_complement_one<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        debug_assert!(self.norm.value < 1.0, "complement of an identity deviation is empty");
        loop {
            let x = self.tail_cache.sample(rng);
            if rng.gen::<f64>() < self.dev.one_minus(x) {
                return x;
            }
        }
    }

    /// n exact draws using the given generator.
    pub fn sample_with<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<u64> {
        (0..n).map(|_| self.sample_one(rng)).collect()
    }

    /// n exact draws from a fresh deterministic stream; the same seed and
    /// parameters always reproduce the same sequence.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(n, &mut rng)
    }
}

/// f(x) at a parameter point under a model structure.
pub fn model_pmf(x: u64, point: &ParamPoint, spec: &ModelSpec) -> Result<f64> {
    spec.model(point)?.pmf(x)
}
