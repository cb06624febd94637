//! The Möbius–ν convolution f_n(x) = Σ_{k ≤ n} μ(k) ν(x/k).
//!
//! Every jump of f_n sits at an integer, so all evaluation goes through
//! m = ⌊x⌋ and is exact integer arithmetic.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::MobiusTable;
use crate::error::{Error, Result};

/// Window length processed by one task in profile and sup scans.
pub const SCAN_CHUNK: u64 = 1 << 15;

/// f_n(m) on the integer window `[m_lo, m_hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepProfile {
    pub n: u64,
    pub m_lo: u64,
    pub m_hi: u64,
    pub values: Vec<i32>,
}

impl StepProfile {
    /// f_n(m), or `None` outside the window.
    pub fn get(&self, m: u64) -> Option<i32> {
        if (self.m_lo..self.m_hi).contains(&m) {
            Some(self.values[(m - self.m_lo) as usize])
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i32)> + '_ {
        (self.m_lo..).zip(self.values.iter().copied())
    }

    /// CSV with header `m,f_n_of_m`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["m", "f_n_of_m"])?;
        for (m, v) in self.iter() {
            w.write_record([m.to_string(), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Windowed suprema of |f_n| and |1 + f_n|.
///
/// Both values are lower bounds for the suprema over all x ≥ 1: f_n has
/// period 2·lcm(1..n), far beyond any scan window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupScanResult {
    pub n: u64,
    pub x_max: u64,
    /// max |f_n(m)| over 1 ≤ m < x_max.
    pub sup_abs: u64,
    pub argmax_abs: u64,
    /// max |1 + f_n(m)| over max(2, n) ≤ m < x_max; 0 when that window is empty.
    pub sup_one_plus: u64,
    pub argmax_one_plus: Option<u64>,
    pub window_is_lower_bound: bool,
}

/// Which reading of `|sup f_n(x)|` the scan reports.
pub const SUP_READING: &str = "sup_of_abs";

pub(crate) fn floor_arg(x: f64) -> Result<u64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::invalid(format!("x must be finite and >= 0, got {x}")));
    }
    let m = x.floor();
    if m >= u64::MAX as f64 {
        return Err(Error::invalid(format!("x = {x} is too large")));
    }
    Ok(m as u64)
}

/// f_n(x) for real x ≥ 0.
pub fn f_value(table: &MobiusTable, n: u64, x: f64) -> Result<i64> {
    let m = floor_arg(x)?;
    f_value_at(table, n, m)
}

/// f_n(m) at an integer argument. Picks the direct sum or the block
/// decomposition, whichever is cheaper.
pub fn f_value_at(table: &MobiusTable, n: u64, m: u64) -> Result<i64> {
    table.check_n(n)?;
    Ok(f_unchecked(table, n, m))
}

fn f_unchecked(table: &MobiusTable, n: u64, m: u64) -> i64 {
    let kmax = n.min(m);
    if kmax <= 4 * m.isqrt() + 32 {
        direct(table, kmax, m)
    } else {
        blocked(table, kmax, m)
    }
}

/// Σ_{k ≤ n} μ(k)·(⌊m/k⌋ mod 2), one term at a time. O(min(n, m)).
pub fn f_value_naive(table: &MobiusTable, n: u64, m: u64) -> Result<i64> {
    table.check_n(n)?;
    Ok(direct(table, n.min(m), m))
}

/// Same sum grouped over runs of k with constant ⌊m/k⌋, using Mertens
/// differences. O(√m) table lookups.
pub fn f_value_blocked(table: &MobiusTable, n: u64, m: u64) -> Result<i64> {
    table.check_n(n)?;
    Ok(blocked(table, n.min(m), m))
}

fn direct(table: &MobiusTable, kmax: u64, m: u64) -> i64 {
    (1..=kmax)
        .filter(|&k| (m / k) & 1 == 1)
        .map(|k| table.mu(k) as i64)
        .sum()
}

fn blocked(table: &MobiusTable, kmax: u64, m: u64) -> i64 {
    let mut acc = 0i64;
    let mut k = 1u64;
    while k <= kmax {
        let q = m / k;
        let end = (m / q).min(kmax);
        if q & 1 == 1 {
            acc += table.mertens_raw(end) - table.mertens_raw(k - 1);
        }
        k = end + 1;
    }
    acc
}

/// Values of f_n on `[a, b)`. Starts from one point evaluation and walks the
/// window adding, for each squarefree k ≤ n dividing m, the change in the
/// parity of ⌊m/k⌋.
fn profile_chunk(table: &MobiusTable, n: u64, a: u64, b: u64) -> Vec<i32> {
    let len = (b - a) as usize;
    let mut out = vec![0i32; len];
    let kmax = n.min(b.saturating_sub(1));
    for k in 1..=kmax {
        let mu = table.mu(k) as i32;
        if mu == 0 {
            continue;
        }
        let mut q = a / k + 1;
        let mut m = q * k;
        while m < b {
            out[(m - a) as usize] += if q & 1 == 1 { mu } else { -mu };
            q += 1;
            m += k;
        }
    }
    out[0] = f_unchecked(table, n, a) as i32;
    for i in 1..len {
        out[i] += out[i - 1];
    }
    out
}

fn chunk_bounds(m_lo: u64, m_hi: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut a = m_lo;
    while a < m_hi {
        let b = (a + SCAN_CHUNK).min(m_hi);
        out.push((a, b));
        a = b;
    }
    out
}

/// f_n(m) for every integer m in `[m_lo, m_hi)`.
pub fn f_profile_range(table: &MobiusTable, n: u64, m_lo: u64, m_hi: u64) -> Result<StepProfile> {
    table.check_n(n)?;
    if m_lo >= m_hi {
        return Err(Error::invalid(format!("empty window [{m_lo}, {m_hi})")));
    }
    let chunks: Vec<Vec<i32>> = chunk_bounds(m_lo, m_hi)
        .into_par_iter()
        .map(|(a, b)| profile_chunk(table, n, a, b))
        .collect();
    Ok(StepProfile {
        n,
        m_lo,
        m_hi,
        values: chunks.concat(),
    })
}

/// The full series Σ_{k ≥ 1} μ(k)ν(x/k), as f_{⌊x⌋}(x): terms with k > x vanish.
pub fn f_limit(table: &MobiusTable, x: f64) -> Result<i64> {
    let m = floor_arg(x)?;
    f_limit_at(table, m)
}

pub fn f_limit_at(table: &MobiusTable, m: u64) -> Result<i64> {
    if m > table.limit() {
        return Err(Error::OutOfRange {
            what: "floor(x)",
            value: m,
            limit: table.limit(),
        });
    }
    Ok(f_unchecked(table, m, m))
}

#[derive(Clone, Copy)]
struct Best {
    value: u64,
    at: Option<u64>,
}

impl Best {
    const NONE: Best = Best { value: 0, at: None };

    fn offer(&mut self, value: u64, at: u64) {
        if self.at.is_none() || value > self.value {
            *self = Best { value, at: Some(at) };
        }
    }

    /// `other` covers later m, so ties keep `self`.
    fn merge(&mut self, other: Best) {
        if let Some(at) = other.at {
            self.offer(other.value, at);
        }
    }
}

/// Windowed sup of |f_n| on [1, x_max) and of |1 + f_n| on [max(2, n), x_max).
/// Ties resolve to the smallest m.
pub fn sup_scan(table: &MobiusTable, n: u64, x_max: u64) -> Result<SupScanResult> {
    table.check_n(n)?;
    if x_max <= n {
        return Err(Error::invalid(format!("x_max = {x_max} must exceed n = {n}")));
    }
    let tail_start = n.max(2);
    let per_chunk: Vec<(Best, Best)> = chunk_bounds(1, x_max)
        .into_par_iter()
        .map(|(a, b)| {
            let vals = profile_chunk(table, n, a, b);
            let mut abs = Best::NONE;
            let mut one_plus = Best::NONE;
            for (m, v) in (a..b).zip(vals) {
                abs.offer(v.unsigned_abs() as u64, m);
                if m >= tail_start {
                    one_plus.offer((1 + v).unsigned_abs() as u64, m);
                }
            }
            (abs, one_plus)
        })
        .collect();
    let mut abs = Best::NONE;
    let mut one_plus = Best::NONE;
    for (a, o) in per_chunk {
        abs.merge(a);
        one_plus.merge(o);
    }
    Ok(SupScanResult {
        n,
        x_max,
        sup_abs: abs.value,
        argmax_abs: abs.at.expect("window [1, x_max) is non-empty"),
        sup_one_plus: one_plus.value,
        argmax_one_plus: one_plus.at,
        window_is_lower_bound: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mobius_sieve;

    fn table() -> MobiusTable {
        mobius_sieve(20_000).unwrap()
    }

    #[test]
    fn point_values() {
        let t = table();
        // k=1: ⌊5⌋ odd, +1; k=2: ⌊2.5⌋ even; k=3: ⌊5/3⌋ odd, μ(3) = -1.
        assert_eq!(f_value(&t, 3, 5.0).unwrap(), 0);
        assert_eq!(f_value(&t, 5, 5.9).unwrap(), -1);
        assert_eq!(f_value(&t, 100, 0.7).unwrap(), 0);
        assert_eq!(f_value(&t, 1, 0.0).unwrap(), 0);
        assert_eq!(f_value(&t, 7, 1.0).unwrap(), 1);
    }

    #[test]
    fn point_errors() {
        let t = mobius_sieve(10).unwrap();
        assert!(f_value(&t, 11, 3.0).is_err());
        assert!(f_value(&t, 0, 3.0).is_err());
        assert!(f_value(&t, 3, -1.0).is_err());
        assert!(f_value(&t, 3, f64::NAN).is_err());
    }

    #[test]
    fn profiles() {
        let t = table();
        assert_eq!(f_profile_range(&t, 1, 0, 4).unwrap().values, vec![0, 1, 0, 1]);
        assert_eq!(f_profile_range(&t, 10, 2, 11).unwrap().values, vec![-1; 9]);
        assert_eq!(f_profile_range(&t, 3, 5, 6).unwrap().values, vec![0]);
        assert!(f_profile_range(&t, 3, 6, 6).is_err());
        assert!(f_profile_range(&t, 3, 7, 6).is_err());
    }

    #[test]
    fn profile_crosses_chunks() {
        let t = table();
        let lo = SCAN_CHUNK - 5;
        let p = f_profile_range(&t, 300, lo, 3 * SCAN_CHUNK + 11).unwrap();
        for (m, v) in p.iter().step_by(97) {
            assert_eq!(v as i64, f_value_naive(&t, 300, m).unwrap(), "m = {m}");
        }
        assert_eq!(p.get(lo - 1), None);
    }

    #[test]
    fn block_matches_direct_exhaustively() {
        let t = mobius_sieve(1_000).unwrap();
        for n in [1u64, 2, 3, 10, 37, 100, 999, 1000] {
            for m in 0..=10_000u64 {
                assert_eq!(
                    f_value_blocked(&t, n, m).unwrap(),
                    f_value_naive(&t, n, m).unwrap(),
                    "n = {n}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn limit_values() {
        let t = mobius_sieve(100_001).unwrap();
        assert_eq!(f_limit(&t, 0.3).unwrap(), 0);
        assert_eq!(f_limit(&t, 1.0).unwrap(), 1);
        assert_eq!(f_limit(&t, 1.99).unwrap(), 1);
        assert_eq!(f_limit(&t, 2.0).unwrap(), -1);
        assert_eq!(f_limit(&t, 100_000.5).unwrap(), -1);
        assert!(f_limit(&t, 100_002.0).is_err());
    }

    #[test]
    fn sup_scan_small_cases() {
        let t = table();
        let r = sup_scan(&t, 1, 10).unwrap();
        assert_eq!((r.sup_abs, r.argmax_abs), (1, 1));
        assert!(r.window_is_lower_bound);

        // f_2(m) = parity(m) - parity(⌊m/2⌋) on 1..10 by hand:
        // m: 1  2  3  4  5  6  7  8  9
        // f: 1 -1  0  0  1 -1  0  0  1
        let r = sup_scan(&t, 2, 10).unwrap();
        assert_eq!((r.sup_abs, r.argmax_abs), (1, 1));
        // |1 + f| on [2, 10): 0 1 1 2 0 1 1 2 → first 2 at m = 5.
        assert_eq!((r.sup_one_plus, r.argmax_one_plus), (2, Some(5)));

        assert!(sup_scan(&t, 10, 10).is_err());
        let r = sup_scan(&t, 1, 2).unwrap();
        assert_eq!((r.sup_one_plus, r.argmax_one_plus), (0, None));
    }

    #[test]
    fn sup_scan_matches_exhaustive() {
        let t = table();
        for (n, x_max) in [(10u64, 100u64), (57, 570), (300, 3 * SCAN_CHUNK + 7)] {
            let r = sup_scan(&t, n, x_max).unwrap();
            let vals: Vec<(u64, i64)> = (1..x_max)
                .map(|m| (m, f_value_naive(&t, n, m).unwrap()))
                .collect();
            let best_abs = vals.iter().map(|&(_, v)| v.unsigned_abs()).max().unwrap();
            let at_abs = vals.iter().find(|&&(_, v)| v.unsigned_abs() == best_abs).unwrap().0;
            let tail: Vec<_> = vals.iter().filter(|&&(m, _)| m >= n.max(2)).collect();
            let best_op = tail.iter().map(|&&(_, v)| (1 + v).unsigned_abs()).max().unwrap();
            let at_op = tail.iter().find(|&&&(_, v)| (1 + v).unsigned_abs() == best_op).unwrap().0;
            assert_eq!((r.sup_abs, r.argmax_abs), (best_abs, at_abs));
            assert_eq!((r.sup_one_plus, r.argmax_one_plus), (best_op, Some(at_op)));
        }
    }

    #[test]
    fn profile_csv() {
        let t = table();
        let p = f_profile_range(&t, 1, 0, 3).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "m,f_n_of_m\n0,0\n1,1\n2,0\n");
    }
}
