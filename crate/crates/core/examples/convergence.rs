//! Σ_{k≤n} μ(k)k^{−s} against 1/ζ(s) as n grows.

use mobius_nu::experiments::{convergence_study, Cell, DEFAULT_ETA_TOL};
use mobius_nu::{mobius_sieve, ComplexPoint};

fn main() -> mobius_nu::Result<()> {
    let table = mobius_sieve(10_000_000)?;
    let grid = [10u64, 100, 1_000, 10_000, 100_000, 1_000_000, 10_000_000];
    for (sigma, t) in [(2.0, 0.0), (1.0, 0.0), (0.75, 0.0), (0.75, 10.0)] {
        let report = convergence_study(&table, ComplexPoint::new(sigma, t)?, &grid, DEFAULT_ETA_TOL)?;
        println!("s = {sigma} + {t}i");
        for row in &report.rows {
            if let (Cell::UInt(n), Cell::Real(r)) = (&row[0], &row[3]) {
                println!("  n = {n:>9}  residual {r:.3e}");
            }
        }
    }
    Ok(())
}
