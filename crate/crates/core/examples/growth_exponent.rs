//! Windowed sup |f_n| over a logarithmic n grid and the fitted exponent.

use mobius_nu::experiments::growth_study;
use mobius_nu::mobius_sieve;

fn main() -> mobius_nu::Result<()> {
    let grid = [10u64, 100, 1_000, 10_000, 100_000];
    let table = mobius_sieve(*grid.last().unwrap())?;
    let study = growth_study(&table, &grid, 10.0)?;
    for p in &study.points {
        println!("n = {:>6}  sup = {:>4} at m = {:>7}  wide window sup = {:?}", p.n, p.sup_abs, p.argmax, p.sup_abs_wide);
    }
    if let Some(fit) = &study.fit {
        println!("sup ~ {:.3} * n^{:.4}   R^2 = {:.4}", fit.intercept.exp(), fit.exponent, fit.r_squared);
    }
    Ok(())
}
