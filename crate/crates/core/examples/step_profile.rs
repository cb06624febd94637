//! f_n(x) = Σ_{k≤n} μ(k) ν(x/k) over a window, plus its windowed supremum.

use mobius_nu::arith::nu;
use mobius_nu::mobius_sieve;
use mobius_nu::stepfn::{f_profile_range, f_value, sup_scan};

fn main() -> mobius_nu::Result<()> {
    let table = mobius_sieve(100_000)?;

    for x in [0.5, 1.0, 2.5, 3.0, 7.9] {
        println!("nu({x}) = {}", nu(x)?.bit());
    }

    let n = 12;
    let profile = f_profile_range(&table, n, 0, 40)?;
    let line: Vec<String> = profile.iter().map(|(_, v)| format!("{v:>2}")).collect();
    println!("f_{n}(0..40) = {}", line.join(" "));
    println!("f_{n}(17.25) = {}", f_value(&table, n, 17.25)?);

    for n in [10u64, 100, 1000] {
        let scan = sup_scan(&table, n, 10 * n)?;
        println!(
            "n = {n:>5}: sup |f_n| on [1, {}) = {} at m = {}; sup |1 + f_n| = {}",
            scan.x_max, scan.sup_abs, scan.argmax_abs, scan.sup_one_plus
        );
    }
    profile.write_csv(std::io::stdout())?;
    Ok(())
}
