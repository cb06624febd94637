//! Complex-valued side: η(s), partial Möbius Dirichlet sums, the truncated
//! integral identity relating them, and its residual bound.

mod eta;
mod gamma;

pub use eta::{eta_mellin_truncated, eta_series, EtaEval, EtaMethod, MAX_ETA_TERMS, MIN_ETA_TOL};
pub use gamma::{ln_abs_gamma, ln_gamma_ratio};

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::MobiusTable;
use crate::error::{Error, Result};
use crate::stepfn::{f_profile_range, sup_scan, StepProfile};
use crate::sum::{CompensatedSum, ComplexSum};

/// Largest |t| accepted by analytic operations.
pub const MAX_ABS_T: f64 = 1e3;

/// s = σ + it with σ > 0 and |t| ≤ 1000.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Domain(format!("Re(s) must be positive, got {sigma}")));
        }
        if !(t.is_finite() && t.abs() <= MAX_ABS_T) {
            return Err(Error::Domain(format!("|Im(s)| must be at most {MAX_ABS_T}, got {t}")));
        }
        Ok(Self { sigma, t })
    }

    pub fn real(sigma: f64) -> Result<Self> {
        Self::new(sigma, 0.0)
    }

    #[inline]
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    pub fn conj(self) -> Self {
        Self {
            sigma: self.sigma,
            t: -self.t,
        }
    }
}

impl std::fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:+}i", self.sigma, self.t)
    }
}

/// base^{-s} = exp(−s ln base) for base > 0.
#[inline]
pub(crate) fn pow_neg(base: f64, s: Complex64) -> Complex64 {
    let l = base.ln();
    let magnitude = (-s.re * l).exp();
    let phase = -s.im * l;
    Complex64::new(magnitude * phase.cos(), magnitude * phase.sin())
}

/// 2^{1−s}, exact at s = 1.
fn two_pow_one_minus(s: Complex64) -> Complex64 {
    pow_neg(2.0, s - 1.0)
}

/// Σ_{k ≤ n} μ(k) k^{−s}, in ascending k.
pub fn mobius_partial_dirichlet(table: &MobiusTable, n: u64, s: ComplexPoint) -> Result<Complex64> {
    Ok(mobius_partial_dirichlet_at(table, &[n], s)?[0])
}

/// Partial sums at each checkpoint of an ascending list, from one pass.
/// Each entry is bit-identical to the corresponding single call.
pub fn mobius_partial_dirichlet_at(
    table: &MobiusTable,
    checkpoints: &[u64],
    s: ComplexPoint,
) -> Result<Vec<Complex64>> {
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("checkpoints must be ascending"));
    }
    for &n in checkpoints {
        table.check_n(n)?;
    }
    let z = s.to_complex();
    let mut acc = ComplexSum::new();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut k = 1u64;
    for &n in checkpoints {
        while k <= n {
            let mu = table.mu(k);
            if mu != 0 {
                let p = pow_neg(k as f64, z);
                acc.add(if mu > 0 { p } else { -p });
            }
            k += 1;
        }
        out.push(acc.value());
    }
    Ok(out)
}

/// 1/ζ(s) written as (1 − 2^{1−s}) / η(s), with η from the accelerated series.
///
/// Refuses to divide when |η(s)| ≤ 10·tol.
pub fn zeta_inverse_ref(s: ComplexPoint, tol: f64) -> Result<Complex64> {
    let eta = eta_series(s, tol)?;
    let magnitude = eta.value.norm();
    let threshold = 10.0 * tol;
    if magnitude <= threshold {
        return Err(Error::NearZeroDenominator {
            magnitude,
            threshold,
        });
    }
    Ok((1.0 - two_pow_one_minus(s.to_complex())) / eta.value)
}

/// η(s)/s · Σ_{k ≤ n} μ(k)k^{−s} − (1 − 2^{1−s})/s, from an η value and a
/// partial sum.
pub fn dirichlet_side(eta: Complex64, partial: Complex64, s: ComplexPoint) -> Complex64 {
    let z = s.to_complex();
    eta / z * partial - (1.0 - two_pow_one_minus(z)) / z
}

/// Value and tail bound of ∫_2^X (1 + f_n(x)) x^{−s−1} dx.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncatedIntegral {
    pub value: Complex64,
    /// (1 + Σ_{k ≤ n}|μ(k)|) / (σ X^σ): bounds the omitted integral over [X, ∞).
    pub tail_bound: f64,
}

/// Precomputed m^{−s} for m in [2, X], shared across several n.
pub struct StepIntegrator {
    s: ComplexPoint,
    cutoff: u64,
    powers: Vec<Complex64>,
}

impl StepIntegrator {
    pub fn new(s: ComplexPoint, cutoff: u64) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::invalid(format!("cutoff must be at least 2, got {cutoff}")));
        }
        let z = s.to_complex();
        let powers = (2..=cutoff).map(|m| pow_neg(m as f64, z)).collect();
        Ok(Self { s, cutoff, powers })
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    #[inline]
    fn power(&self, m: u64) -> Complex64 {
        self.powers[(m - 2) as usize]
    }

    /// ∫_{m}^{m+1} x^{−s−1} dx = (m^{−s} − (m+1)^{−s}) / s.
    pub fn piece(&self, m: u64) -> Complex64 {
        (self.power(m) - self.power(m + 1)) / self.s.to_complex()
    }

    /// Σ_{m=2}^{X−1} w(m) · piece(m) for an integer step weight w. Pieces
    /// with zero weight contribute nothing.
    fn integrate_weights(&self, weight: impl Fn(u64) -> i64) -> Complex64 {
        let mut acc = ComplexSum::new();
        for m in 2..self.cutoff {
            let w = weight(m);
            if w != 0 {
                acc.add((self.power(m) - self.power(m + 1)) * w as f64);
            }
        }
        acc.value() / self.s.to_complex()
    }

    /// ∫_2^X (1 + f_n) x^{−s−1} dx given f_n on a window covering [2, X).
    pub fn one_plus_integral(&self, profile: &StepProfile) -> Result<Complex64> {
        if profile.m_lo > 2 || profile.m_hi < self.cutoff {
            return Err(Error::invalid("profile must cover [2, X)"));
        }
        Ok(self.integrate_weights(|m| 1 + profile.get(m).expect("covered") as i64))
    }
}

/// Exact ∫_2^X (1 + f_n(x)) x^{−s−1} dx. f_n is constant on each [m, m+1),
/// so the integral is a finite sum of closed-form pieces.
pub fn truncated_integral_eq8(
    table: &MobiusTable,
    n: u64,
    s: ComplexPoint,
    cutoff: u64,
) -> Result<TruncatedIntegral> {
    table.check_n(n)?;
    if cutoff <= n {
        return Err(Error::invalid(format!("cutoff X = {cutoff} must exceed n = {n}")));
    }
    let integrator = StepIntegrator::new(s, cutoff)?;
    let profile = f_profile_range(table, n, 2, cutoff.max(3))?;
    let value = integrator.one_plus_integral(&profile)?;
    Ok(TruncatedIntegral {
        value,
        tail_bound: coefficient_bound(table, n)? / (s.sigma * (cutoff as f64).powf(s.sigma)),
    })
}

/// 1 + Σ_{k ≤ n}|μ(k)|, a bound on sup |1 + f_n|.
pub fn coefficient_bound(table: &MobiusTable, n: u64) -> Result<f64> {
    Ok(1.0 + table.squarefree_count(n)? as f64)
}

/// One row of the residual study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualRecord {
    pub n: u64,
    pub s: ComplexPoint,
    /// |η(s)/s · Σ μ(k)k^{−s} − (1 − 2^{1−s})/s|.
    pub lhs: f64,
    /// (1 + Σ|μ(k)|)/(σ n^σ).
    pub rigorous_bound: f64,
    /// Windowed sup|1 + f_n| / (σ n^σ). Exploratory; a lower estimate.
    pub windowed_bound: f64,
    pub x_max: u64,
    pub eta_error_bound: f64,
}

pub fn residual_eq9(
    table: &MobiusTable,
    n: u64,
    s: ComplexPoint,
    x_max: u64,
    tol: f64,
) -> Result<ResidualRecord> {
    let scan = sup_scan(table, n, x_max)?;
    let eta = eta_series(s, tol)?;
    let partial = mobius_partial_dirichlet(table, n, s)?;
    let lhs = dirichlet_side(eta.value, partial, s).norm();
    let denom = s.sigma * (n as f64).powf(s.sigma);
    Ok(ResidualRecord {
        n,
        s,
        lhs,
        rigorous_bound: coefficient_bound(table, n)? / denom,
        windowed_bound: scan.sup_one_plus as f64 / denom,
        x_max,
        eta_error_bound: eta.abs_error_bound,
    })
}

pub const RESIDUAL_CSV_HEADER: [&str; 7] =
    ["n", "sigma", "t", "lhs", "rigorous_bound", "windowed_bound", "x_max"];

/// CSV with header `n,sigma,t,lhs,rigorous_bound,windowed_bound,x_max`.
pub fn write_residual_csv<W: Write>(records: &[ResidualRecord], out: W) -> Result<()> {
    use crate::experiments::fmt_real;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESIDUAL_CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.n.to_string(),
            fmt_real(r.s.sigma),
            fmt_real(r.s.t),
            fmt_real(r.lhs),
            fmt_real(r.rigorous_bound),
            fmt_real(r.windowed_bound),
            r.x_max.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Both sides of ∫_0^1 ν(θ/x) x^{s−1} dx = θ^s η(s)/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledMellinCheck {
    /// Truncated left side, integrated over x ∈ [θ/X, 1].
    pub lhs: Complex64,
    /// θ^s η(s)/s.
    pub rhs: Complex64,
    /// θ^σ/(σ X^σ) tail, plus the η error carried into the right side.
    pub tolerance: f64,
}

/// ν(θ/x) = 1 exactly on x ∈ (θ/(2k), θ/(2k−1)], so the left side is a sum
/// of ∫ x^{s−1} dx over those intervals, evaluated in the x variable.
pub fn scaled_mellin_check(
    theta: f64,
    s: ComplexPoint,
    cutoff: u64,
    tol: f64,
) -> Result<ScaledMellinCheck> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::invalid(format!("theta must lie in (0, 1], got {theta}")));
    }
    if cutoff < 2 || cutoff % 2 != 0 {
        return Err(Error::invalid(format!("cutoff X must be even and >= 2, got {cutoff}")));
    }
    let z = s.to_complex();
    let mut acc = ComplexSum::new();
    let mut magnitude = CompensatedSum::new();
    for k in 1..=cutoff / 2 {
        let right = pow_neg(theta / (2 * k - 1) as f64, -z);
        let left = pow_neg(theta / (2 * k) as f64, -z);
        acc.add(right - left);
        magnitude.add(right.norm() + left.norm());
    }
    let lhs = acc.value() / z;
    let eta = eta_series(s, tol)?;
    let theta_s = pow_neg(theta, -z);
    let rhs = theta_s * eta.value / z;
    let theta_sigma = theta.powf(s.sigma);
    let x = cutoff as f64;
    let tail = theta_sigma / (s.sigma * x.powf(s.sigma));
    let rounding =
        f64::EPSILON * magnitude.value() * (2.0 * z.norm() * (x / theta).ln() + 8.0) / z.norm();
    Ok(ScaledMellinCheck {
        lhs,
        rhs,
        tolerance: tail + rounding + theta_sigma * eta.abs_error_bound / z.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mobius_sieve;
    use std::f64::consts::{LN_2, PI};

    fn pt(sigma: f64, t: f64) -> ComplexPoint {
        ComplexPoint::new(sigma, t).unwrap()
    }

    #[test]
    fn point_validation() {
        assert!(ComplexPoint::new(0.0, 1.0).is_err());
        assert!(ComplexPoint::new(-1.0, 1.0).is_err());
        assert!(ComplexPoint::new(0.5, 1001.0).is_err());
        assert!(ComplexPoint::new(0.5, f64::NAN).is_err());
        assert!(ComplexPoint::new(0.5, -1000.0).is_ok());
    }

    #[test]
    fn partial_dirichlet_small() {
        let t = mobius_sieve(10_000).unwrap();
        assert_eq!(mobius_partial_dirichlet(&t, 1, pt(0.7, 3.0)).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(mobius_partial_dirichlet(&t, 2, pt(1.0, 0.0)).unwrap().re, 0.5);
        let big = mobius_partial_dirichlet(&t, 10_000, pt(2.0, 0.0)).unwrap();
        assert!((big.re - 6.0 / (PI * PI)).abs() < 1e-3);
        assert!(mobius_partial_dirichlet(&t, 10_001, pt(2.0, 0.0)).is_err());
    }

    #[test]
    fn checkpoints_match_single_calls() {
        let t = mobius_sieve(2_000).unwrap();
        let s = pt(0.75, 5.0);
        let many = mobius_partial_dirichlet_at(&t, &[1, 10, 10, 999, 2_000], s).unwrap();
        for (i, n) in [1u64, 10, 10, 999, 2_000].into_iter().enumerate() {
            assert_eq!(many[i], mobius_partial_dirichlet(&t, n, s).unwrap());
        }
        assert!(mobius_partial_dirichlet_at(&t, &[10, 5], s).is_err());
    }

    #[test]
    fn zeta_inverse_values() {
        let r = zeta_inverse_ref(pt(2.0, 0.0), 1e-13).unwrap();
        assert!((r.re - 6.0 / (PI * PI)).abs() < 1e-13);
        let at_one = zeta_inverse_ref(pt(1.0, 0.0), 1e-13).unwrap();
        assert_eq!(at_one, Complex64::new(0.0, 0.0));
        assert!(zeta_inverse_ref(pt(0.75, 0.0), 1e-12).unwrap().re.is_finite());
        // η vanishes at the first nontrivial zero of ζ.
        assert!(matches!(
            zeta_inverse_ref(pt(0.5, 14.134_725_141_734_693), 1e-8),
            Err(Error::NearZeroDenominator { .. })
        ));
    }

    #[test]
    fn truncated_integral_by_hand() {
        let t = mobius_sieve(100).unwrap();
        // f_1(2) = 0, f_1(3) = 1: 1·(1/2 − 1/3) + 2·(1/3 − 1/4) = 1/3.
        let v = truncated_integral_eq8(&t, 1, pt(1.0, 0.0), 4).unwrap();
        assert!((v.value.re - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(v.value.im, 0.0);
        assert!((v.tail_bound - 2.0 / 4.0).abs() < 1e-15);
        assert!(truncated_integral_eq8(&t, 5, pt(1.0, 0.0), 5).is_err());
    }

    #[test]
    fn integrand_vanishes_below_n() {
        let t = mobius_sieve(1_000).unwrap();
        let s = pt(0.75, 2.0);
        let integrator = StepIntegrator::new(s, 2_000).unwrap();
        let profile = f_profile_range(&t, 1_000, 2, 2_000).unwrap();
        for m in 2..1_000 {
            assert_eq!(1 + profile.get(m).unwrap(), 0, "m = {m}");
        }
        // So the integral over [2, X) equals the one over [n, X).
        let full = integrator.one_plus_integral(&profile).unwrap();
        let mut from_n = ComplexSum::new();
        for m in 1_000..2_000u64 {
            from_n.add(integrator.piece(m) * (1 + profile.get(m).unwrap()) as f64);
        }
        assert!((full - from_n.value()).norm() < 1e-14);
    }

    #[test]
    fn identity_at_n_one_s_one() {
        // ∫_2^∞ (1 + ν(x)) x^{-2} dx = ln 2.
        let t = mobius_sieve(10).unwrap();
        let v = truncated_integral_eq8(&t, 1, pt(1.0, 0.0), 1_000_000).unwrap();
        assert!((v.value.re - LN_2).abs() <= v.tail_bound);
        let rhs = dirichlet_side(Complex64::new(LN_2, 0.0), Complex64::new(1.0, 0.0), pt(1.0, 0.0));
        assert!((rhs.re - LN_2).abs() < 1e-15);
    }

    #[test]
    fn residual_small_case() {
        let t = mobius_sieve(100).unwrap();
        let r = residual_eq9(&t, 2, pt(2.0, 0.0), 20, 1e-13).unwrap();
        let eta2 = PI * PI / 12.0;
        let by_hand = (eta2 / 2.0 * (1.0 - 0.25) - (1.0 - 0.5) / 2.0).abs();
        assert!((r.lhs - by_hand).abs() < 1e-14);
        assert!(r.lhs <= r.rigorous_bound);
        assert!(r.windowed_bound <= r.rigorous_bound);
        assert!(residual_eq9(&t, 10, pt(2.0, 0.0), 10, 1e-13).is_err());
    }

    #[test]
    fn residual_csv_header() {
        let t = mobius_sieve(100).unwrap();
        let r = residual_eq9(&t, 2, pt(2.0, 0.0), 20, 1e-13).unwrap();
        let mut buf = Vec::new();
        write_residual_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "n,sigma,t,lhs,rigorous_bound,windowed_bound,x_max");
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "2");
        assert_eq!(row[6], "20");
        assert_eq!(row[3].parse::<f64>().unwrap(), r.lhs);
    }

    #[test]
    fn scaled_mellin_cases() {
        let one = scaled_mellin_check(1.0, pt(1.5, 2.0), 10_000, 1e-12).unwrap();
        let eta = eta_series(pt(1.5, 2.0), 1e-12).unwrap();
        assert!((one.rhs - eta.value / Complex64::new(1.5, 2.0)).norm() < 1e-15);
        assert!((one.lhs - one.rhs).norm() <= one.tolerance);

        let half = scaled_mellin_check(0.5, pt(1.0, 0.0), 10_000, 1e-12).unwrap();
        assert!((half.lhs - half.rhs).norm() <= half.tolerance);
        assert!((half.rhs.re - 0.5 * LN_2).abs() < 1e-13);

        let third = scaled_mellin_check(1.0 / 3.0, pt(2.0, 0.0), 10_000, 1e-12).unwrap();
        assert!((third.rhs.re - PI * PI / 12.0 / 9.0 / 2.0).abs() < 1e-13);
        assert!((third.lhs - third.rhs).norm() <= third.tolerance);

        assert!(scaled_mellin_check(0.0, pt(1.0, 0.0), 10, 1e-12).is_err());
        assert!(scaled_mellin_check(1.5, pt(1.0, 0.0), 10, 1e-12).is_err());
    }

    #[test]
    fn conjugate_symmetry() {
        let t = mobius_sieve(500).unwrap();
        let s = pt(0.75, 7.5);
        let c = s.conj();
        let a = eta_series(s, 1e-12).unwrap().value;
        let b = eta_series(c, 1e-12).unwrap().value;
        assert_eq!(a.conj(), b);
        let a = eta_mellin_truncated(s, 1_000).unwrap().value;
        let b = eta_mellin_truncated(c, 1_000).unwrap().value;
        assert_eq!(a.conj(), b);
        let a = mobius_partial_dirichlet(&t, 500, s).unwrap();
        let b = mobius_partial_dirichlet(&t, 500, c).unwrap();
        assert_eq!(a.conj(), b);
        let a = zeta_inverse_ref(s, 1e-12).unwrap();
        let b = zeta_inverse_ref(c, 1e-12).unwrap();
        assert_eq!(a.conj(), b);
        let a = truncated_integral_eq8(&t, 10, s, 600).unwrap().value;
        let b = truncated_integral_eq8(&t, 10, c, 600).unwrap().value;
        assert_eq!(a.conj(), b);
        let a = scaled_mellin_check(0.5, s, 100, 1e-12).unwrap();
        let b = scaled_mellin_check(0.5, c, 100, 1e-12).unwrap();
        assert_eq!(a.lhs.conj(), b.lhs);
        assert_eq!(a.rhs.conj(), b.rhs);
    }
}
