//! ∫_0^1 ν(θ/x) x^{s−1} dx = θ^s η(s)/s for several θ.

use mobius_nu::analytic::scaled_mellin_check;
use mobius_nu::ComplexPoint;

fn main() -> mobius_nu::Result<()> {
    let s = ComplexPoint::new(0.75, 10.0)?;
    for theta in [1.0, 0.5, 0.3, 0.01] {
        let c = scaled_mellin_check(theta, s, 1_000_000, 1e-11)?;
        println!(
            "theta = {theta:<5} lhs = {:.10}{:+.10}i rhs = {:.10}{:+.10}i |diff| = {:.2e} <= {:.2e}",
            c.lhs.re,
            c.lhs.im,
            c.rhs.re,
            c.rhs.im,
            (c.lhs - c.rhs).norm(),
            c.tolerance
        );
    }
    Ok(())
}
