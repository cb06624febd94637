//! Sieve μ up to N and print Mertens values at powers of ten.
//!
//! `cargo run --release --example sieve_and_mertens -- 10000000`

use mobius_nu::arith::{mertens, mobius_sieve_with, SieveConfig, SieveMode};
use std::time::Instant;

fn main() -> mobius_nu::Result<()> {
    let n: u64 = std::env::args().nth(1).map_or(Ok(10_000_000), |a| a.parse()).expect("N must be an integer");
    let start = Instant::now();
    let table = mobius_sieve_with(n, &SieveConfig { mode: SieveMode::Auto, ..SieveConfig::default() })?;
    println!("sieved N = {n} in {:.3} s", start.elapsed().as_secs_f64());

    let mut p = 1u64;
    while p <= n {
        println!("M({p:>11}) = {:>6}   squarefree <= {p}: {}", mertens(&table, p)?, table.squarefree_count(p)?);
        p *= 10;
    }
    println!("first values: {:?}", &table.values()[..20]);
    Ok(())
}
