//! Real part of log Γ for complex arguments in the right half-plane.

use num_complex::Complex64;

// B_{2j} / (2j (2j - 1)) for j = 1..=7.
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

const SHIFT_RADIUS: f64 = 15.0;

/// ln |Γ(σ + it)| for σ > 0, via upward recurrence and the Stirling series.
pub fn ln_abs_gamma(sigma: f64, t: f64) -> f64 {
    debug_assert!(sigma > 0.0);
    let mut z = Complex64::new(sigma, t.abs());
    let mut shift = 0.0;
    while z.norm() < SHIFT_RADIUS {
        shift += z.norm().ln();
        z.re += 1.0;
    }
    let half_ln_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let mut series = (z - 0.5) * z.ln() - z + half_ln_2pi;
    let z2_inv = (z * z).inv();
    let mut zk = z.inv();
    for c in STIRLING {
        series += zk * c;
        zk *= z2_inv;
    }
    series.re - shift
}

/// ln(Γ(σ) / |Γ(σ + it)|) ≥ 0, the log of the total variation of the measure
/// representing (k + 1)^{-s} on [0, 1].
pub fn ln_gamma_ratio(sigma: f64, t: f64) -> f64 {
    (ln_abs_gamma(sigma, 0.0) - ln_abs_gamma(sigma, t)).max(0.0)
}
