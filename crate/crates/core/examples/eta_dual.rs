//! η(s) from the accelerated alternating series and from the piecewise
//! Mellin sum, with their error bounds.

use mobius_nu::analytic::{eta_mellin_truncated, eta_series};
use mobius_nu::experiments::{default_s_grid, DEFAULT_ETA_TOL};
use mobius_nu::ComplexPoint;

fn main() -> mobius_nu::Result<()> {
    println!("{:>5} {:>5} {:>24} {:>24} {:>10} {:>10}", "sigma", "t", "series", "mellin", "gap", "allowed");
    for s in default_s_grid() {
        let a = eta_series(s, DEFAULT_ETA_TOL)?;
        let b = eta_mellin_truncated(s, 1_000_000)?;
        println!(
            "{:>5} {:>5} {:>11.8}{:+.8}i {:>11.8}{:+.8}i {:>10.2e} {:>10.2e}",
            s.sigma,
            s.t,
            a.value.re,
            a.value.im,
            b.value.re,
            b.value.im,
            (a.value - b.value).norm(),
            a.abs_error_bound + b.abs_error_bound
        );
    }

    let one = eta_series(ComplexPoint::real(1.0)?, 1e-13)?;
    println!("eta(1) = {:.15} (ln 2 = {:.15}), {} terms", one.value.re, std::f64::consts::LN_2, one.terms);
    match eta_series(ComplexPoint::real(1.0)?, 1e-14) {
        Ok(e) => println!("1e-14 reached: bound {:e}", e.abs_error_bound),
        Err(e) => println!("1e-14 refused: {e}"),
    }
    Ok(())
}
