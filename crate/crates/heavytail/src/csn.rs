//! The classical comparison pipeline: discrete power-law MLE above a
//! cut-off, with the cut-off chosen by minimising the Kolmogorov–Smirnov
//! distance over candidate values.

use serde::{Deserialize, Serialize};

use crate::data::CountData;
use crate::error::{Error, Result};
use crate::special::hurwitz_zeta;

/// Search interval for the tail exponent.
const ALPHA_LO: f64 = 1.000_001;
const ALPHA_HI: f64 = 20.0;

/// Maximum-likelihood exponent for the discrete power law on x ≥ xmin,
/// pmf(x) = x^{-α} / ζ(α, xmin), maximised over α ∈ (1, 20] by Brent search.
pub fn pl_mle_discrete(data: &CountData, xmin: u64) -> Result<f64> {
    if xmin < 1 {
        return Err(Error::invalid("xmin must be >= 1"));
    }
    let n_tail: u64 = data.tail_n(xmin);
    if n_tail < 2 {
        return Err(Error::data(format!(
            "need at least 2 observations >= xmin = {xmin}, found {n_tail}"
        )));
    }
    let sum_ln: f64 = data.tail(xmin).map(|(v, c)| c as f64 * (v as f64).ln()).sum();
    let n_tail = n_tail as f64;
    // Negative log-likelihood per the tail pmf; strictly convex in alpha.
    let objective = |alpha: f64| match hurwitz_zeta(alpha, xmin) {
        Ok(z) => alpha * sum_ln + n_tail * z.ln(),
        Err(_) => f64::INFINITY,
    };
    Ok(brent_min(objective, ALPHA_LO, ALPHA_HI, 1e-8))
}

/// Kolmogorov–Smirnov distance between the empirical and model tail CDFs,
/// both conditioned on x ≥ xmin, evaluated over the observed tail support.
pub fn ks_distance(data: &CountData, xmin: u64, alpha: f64) -> Result<f64> {
    if !(alpha > 1.0) {
        return Err(Error::invalid(format!("ks_distance requires alpha > 1, got {alpha}")));
    }
    let n_tail = data.tail_n(xmin);
    if n_tail == 0 {
        return Err(Error::data(format!("no observations >= xmin = {xmin}")));
    }
    let denom = hurwitz_zeta(alpha, xmin)?;
    let mut cum = 0u64;
    let mut worst = 0.0f64;
    for (v, c) in data.tail(xmin) {
        cum += c;
        let empirical = cum as f64 / n_tail as f64;
        let model = 1.0 - hurwitz_zeta(alpha, v + 1)? / denom;
        worst = worst.max((empirical - model).abs());
    }
    Ok(worst)
}

/// One candidate cut-off in the scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CsnCandidate {
    pub xmin: u64,
    pub alpha: f64,
    pub ks: f64,
}

/// The selected fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CsnFit {
    pub xmin: u64,
    pub alpha: f64,
    pub ks: f64,
    /// Share of observations below the selected cut-off.
    pub frac_below: f64,
}

/// Evaluate every candidate cut-off: the distinct observed values, capped at
/// the largest value that still leaves at least 10 tail observations (at
/// least 2 when the dataset is too small for that rule).
pub fn csn_scan(data: &CountData) -> Result<Vec<CsnCandidate>> {
    if data.distinct() < 2 {
        return Err(Error::data("cut-off scan needs at least 2 distinct values"));
    }
    let min_tail = if data.values().iter().any(|&v| data.tail_n(v) >= 10) { 10 } else { 2 };
    let mut out = Vec::new();
    for &v in data.values() {
        if data.tail_n(v) < min_tail {
            break; // tail counts only shrink from here
        }
        let alpha = pl_mle_discrete(data, v)?;
        let ks = ks_distance(data, v, alpha)?;
        out.push(CsnCandidate { xmin: v, alpha, ks });
    }
    if out.is_empty() {
        return Err(Error::data("no candidate cut-off leaves enough tail observations"));
    }
    Ok(out)
}

/// Pick the cut-off minimising the KS distance (ties broken toward the
/// smallest xmin), then report the tail MLE at that cut-off.
pub fn csn_fit(data: &CountData) -> Result<CsnFit> {
    let scan = csn_scan(data)?;
    let mut best = &scan[0];
    for cand in &scan[1..] {
        if cand.ks < best.ks {
            best = cand;
        }
    }
    let below = data.n() - data.tail_n(best.xmin);
    Ok(CsnFit {
        xmin: best.xmin,
        alpha: best.alpha,
        ks: best.ks,
        frac_below: below as f64 / data.n() as f64,
    })
}

/// Brent's method for a one-dimensional minimum of a unimodal function on
/// [a, b].
fn brent_min(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    const GOLDEN: f64 = 0.381_966_011_250_105;
    const ZEPS: f64 = 1e-12;
    let (mut a, mut b) = (a, b);
    let mut x = a + GOLDEN * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let tol1 = tol * x.abs() + ZEPS;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            // Parabolic interpolation through (v, w, x).
            let r = (x - w) * (fx - fv);
            let q0 = (x - v) * (fx - fw);
            let mut p = (x - v) * q0 - (x - w) * r;
            let mut q = 2.0 * (q0 - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_old = e;
            e = d;
            if p.abs() < (0.5 * q * e_old).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if m > x { tol1 } else { -tol1 };
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x < m { b - x } else { a - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + if d > 0.0 { tol1 } else { -tol1 } };
        let fu = f(u);
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    x
}
