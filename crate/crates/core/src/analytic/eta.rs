//! Two independent evaluations of the Dirichlet eta function.
//!
//! `eta_series` accelerates the alternating series with Chebyshev-derived
//! weights; `eta_mellin_truncated` integrates s·ν(x)x^{-s-1} exactly piece by
//! piece up to a cutoff. Neither shares code with the other beyond the
//! complex power helper.

use num_complex::Complex64;
use serde::Serialize;

use super::gamma::ln_gamma_ratio;
use super::{pow_neg, ComplexPoint};
use crate::error::{Error, Result};
use crate::sum::{CompensatedSum, ComplexSum};

/// Smallest accepted target accuracy for [`eta_series`].
pub const MIN_ETA_TOL: f64 = 1e-14;
/// Upper limit on the number of accelerated terms.
pub const MAX_ETA_TERMS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaMethod {
    AcceleratedSeries,
    MellinTruncated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaEval {
    pub value: Complex64,
    /// First-order bound on |value − η(s)|, truncation plus rounding.
    pub abs_error_bound: f64,
    pub method: EtaMethod,
    pub terms: usize,
}

/// ln(3 + √8): each extra accelerated term gains this factor.
fn convergence_rate() -> f64 {
    (3.0 + 8f64.sqrt()).ln()
}

/// Weights w_k = (d_n − d_k)/d_n for the n-term accelerated sum, where
/// d_k = n Σ_{i ≤ k} (n+i−1)! 4^i / ((n−i)! (2i)!). Returns the weights and a
/// bound on their relative error.
///
/// d_n grows like (3 + √8)^n and overflows f64 well below the term cap, so
/// each term is carried as a mantissa and a count of 2^RESCALE_BITS factors;
/// the rescaling is exact.
fn accelerated_weights(n: usize) -> (Vec<f64>, f64) {
    const RESCALE_BITS: i32 = 512;
    let big = 2f64.powi(RESCALE_BITS);
    let small = 2f64.powi(-RESCALE_BITS);
    let nf = n as f64;
    let mut terms: Vec<(f64, i32)> = Vec::with_capacity(n + 1);
    let (mut mant, mut scale) = (1.0f64, 0i32);
    terms.push((mant, scale));
    for i in 0..n {
        let fi = i as f64;
        // Numerator and denominator are exact integers below 2^53.
        mant *= 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        if mant > big {
            mant *= small;
            scale += 1;
        }
        terms.push((mant, scale));
    }
    let top = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
    let scaled: Vec<f64> = terms
        .iter()
        .map(|&(m, e)| (0..top - e).fold(m, |acc, _| acc * small))
        .collect();

    // w_k = Σ_{i > k} t_i / Σ_i t_i
    let mut weights = vec![0.0; n];
    let mut suffix = CompensatedSum::new();
    for k in (0..n).rev() {
        suffix.add(scaled[k + 1]);
        weights[k] = suffix.value();
    }
    suffix.add(scaled[0]);
    let total = suffix.value();
    for w in &mut weights {
        *w /= total;
    }
    // Each term carries at most one rounding per recurrence step.
    let rel = f64::EPSILON * (n as f64 + 5.0);
    (weights, rel)
}

/// Truncation bound 2 (3+√8)^{-n} Γ(σ)/|Γ(s)| of the n-term accelerated sum.
fn truncation_bound(n: usize, log_measure: f64) -> f64 {
    (2f64.ln() + log_measure - n as f64 * convergence_rate()).exp()
}

/// η(s) = Σ_{k ≥ 1} (−1)^{k−1} k^{−s} by convergence acceleration, with the
/// number of terms chosen from `tol`.
pub fn eta_series(s: ComplexPoint, tol: f64) -> Result<EtaEval> {
    if !(tol.is_finite() && tol >= MIN_ETA_TOL) {
        return Err(Error::invalid(format!("tol must be at least {MIN_ETA_TOL:e}, got {tol}")));
    }
    let log_measure = ln_gamma_ratio(s.sigma, s.t);
    let wanted = ((2f64.ln() + log_measure - (0.5 * tol).ln()) / convergence_rate()).ceil();
    let n = (wanted.max(1.0) as usize).min(MAX_ETA_TERMS);
    let (value, abs_error_bound) = accelerated_sum(s, n, log_measure);
    if abs_error_bound > tol {
        return Err(Error::Accuracy {
            requested: tol,
            achieved: abs_error_bound,
        });
    }
    Ok(EtaEval {
        value,
        abs_error_bound,
        method: EtaMethod::AcceleratedSeries,
        terms: n,
    })
}

fn accelerated_sum(s: ComplexPoint, n: usize, log_measure: f64) -> (Complex64, f64) {
    let z = s.to_complex();
    let spread = s.sigma + s.t.abs();
    let (weights, weight_rel) = accelerated_weights(n);
    let mut acc = ComplexSum::new();
    let mut rounding = CompensatedSum::new();
    for (k, &w) in weights.iter().enumerate() {
        let base = (k + 1) as f64;
        let term = pow_neg(base, z) * w;
        let magnitude = term.norm();
        if k % 2 == 0 {
            acc.add(term);
        } else {
            acc.add(-term);
        }
        // exponent and phase errors, exp/cos/sin, weight, summation
        rounding.add(magnitude * (spread * base.ln() + 5.0 + weight_rel / f64::EPSILON));
    }
    let bound = truncation_bound(n, log_measure) + f64::EPSILON * rounding.value();
    (acc.value(), bound)
}

/// η(s) as the exact integral s∫_1^X ν(x) x^{−s−1} dx, piece by piece over
/// the intervals [2k−1, 2k) where ν = 1. The error bound covers the tail
/// beyond X (|ν| ≤ 1) and rounding.
pub fn eta_mellin_truncated(s: ComplexPoint, cutoff: u64) -> Result<EtaEval> {
    if cutoff < 2 || cutoff % 2 != 0 {
        return Err(Error::invalid(format!("cutoff X must be even and >= 2, got {cutoff}")));
    }
    let z = s.to_complex();
    let modulus = z.norm();
    let mut acc = ComplexSum::new();
    let mut magnitude = CompensatedSum::new();
    for k in 1..=cutoff / 2 {
        let lower = pow_neg((2 * k - 1) as f64, z);
        let upper = pow_neg((2 * k) as f64, z);
        acc.add(lower - upper);
        magnitude.add(lower.norm() + upper.norm());
    }
    let x = cutoff as f64;
    let tail = modulus / (s.sigma * x.powf(s.sigma));
    let rounding = f64::EPSILON * magnitude.value() * (2.0 * modulus * x.ln() + 8.0);
    Ok(EtaEval {
        value: acc.value(),
        abs_error_bound: tail + rounding,
        method: EtaMethod::MellinTruncated,
        terms: (cutoff / 2) as usize,
    })
}
