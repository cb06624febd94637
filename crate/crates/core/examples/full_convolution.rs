//! The full convolution Σ_k μ(k) ν(x/k) is 0, 1, −1 on [0,1), [1,2), [2,∞).

use mobius_nu::experiments::verify_theorem2;
use mobius_nu::mobius_sieve;

fn main() -> mobius_nu::Result<()> {
    let m_max = 100_000;
    let table = mobius_sieve(m_max)?;
    let report = verify_theorem2(&table, m_max, 10_000, 7)?;
    println!("{} rows checked, pass = {}", report.rows.len(), report.pass());
    for a in &report.assertions {
        println!("{}: {} {:?} {}", a.name, a.lhs, a.relation, a.rhs);
    }
    Ok(())
}
