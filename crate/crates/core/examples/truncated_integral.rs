//! ∫_2^X (1 + f_n) x^{−s−1} dx computed from the step profile, against
//! η(s)/s · Σ_{k≤n} μ(k)k^{−s} − (1 − 2^{1−s})/s.

use mobius_nu::analytic::{dirichlet_side, eta_series, mobius_partial_dirichlet, truncated_integral_eq8};
use mobius_nu::experiments::{default_s_grid, verify_eq8_suite, DEFAULT_ETA_TOL};
use mobius_nu::{mobius_sieve, ComplexPoint};

fn main() -> mobius_nu::Result<()> {
    let table = mobius_sieve(1_000)?;
    let s = ComplexPoint::new(0.5, 14.134725)?;
    for x in [1_000u64, 10_000, 100_000, 1_000_000] {
        let lhs = truncated_integral_eq8(&table, 100, s, x)?;
        let rhs = dirichlet_side(eta_series(s, DEFAULT_ETA_TOL)?.value, mobius_partial_dirichlet(&table, 100, s)?, s);
        println!("X = {x:>8}: gap {:.3e}, tail bound {:.3e}", (lhs.value - rhs).norm(), lhs.tail_bound);
    }

    let report = verify_eq8_suite(&table, &[1, 5, 10, 100], &default_s_grid(), 100_000, DEFAULT_ETA_TOL)?;
    println!("suite over {} (n, s): pass = {}", report.rows.len(), report.pass());
    Ok(())
}
