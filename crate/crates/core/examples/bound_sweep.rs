//! Σ_{k≤n}|μ(k)|/k^σ against its closed-form bound, and the |f_n| Mellin bound.

use mobius_nu::arith::{abs_mobius_bound, abs_mobius_partial};
use mobius_nu::experiments::{add_eq12_all_n, bound_sweep_eq12_eq13, DEFAULT_ETA_TOL};
use mobius_nu::mobius_sieve;

fn main() -> mobius_nu::Result<()> {
    let table = mobius_sieve(100_000)?;
    for sigma in [0.6, 0.75, 0.9, 1.0] {
        let n = 100_000;
        println!(
            "sigma = {sigma}: sum = {:.6}, bound = {:.6}",
            abs_mobius_partial(&table, n, sigma)?,
            abs_mobius_bound(n, sigma)
        );
    }
    let sigmas = [0.6, 0.75, 0.9, 1.0];
    let mut report = bound_sweep_eq12_eq13(&table, &[10, 100, 1_000, 10_000], &sigmas, 100_000, DEFAULT_ETA_TOL)?;
    let sweeps = add_eq12_all_n(&mut report, &table, 100_000, &sigmas)?;
    for s in sweeps {
        println!("all n <= {}: worst excess at sigma = {} is {:.3e} (n = {})", s.n_max, s.sigma, s.worst_excess, s.worst_n);
    }
    println!("pass = {}", report.pass());
    Ok(())
}
