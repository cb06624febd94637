//! Exact integer arithmetic: the Möbius table, Mertens sums, the parity step
//! function ν, and absolute-coefficient partial sums.

mod cache;
mod sieve;

pub use cache::{load_cache, read_cache, save_cache, write_cache, CACHE_MAGIC};
pub use sieve::{mobius_sieve, mobius_sieve_with, SieveConfig, SieveMode, DEFAULT_SEGMENT_LEN};

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Largest supported table limit. Prefix sums are stored as `i32`.
pub const MAX_LIMIT: u64 = i32::MAX as u64;

/// Dense table of μ(1..=N) together with its Mertens prefix sums.
///
/// Immutable once built; share it freely across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct MobiusTable {
    // Index 0 is a placeholder so that `mu[k]` is μ(k).
    mu: Vec<i8>,
    prefix: Vec<i32>,
}

impl std::fmt::Debug for MobiusTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MobiusTable")
            .field("limit", &self.limit())
            .finish_non_exhaustive()
    }
}

impl MobiusTable {
    /// Builds a table from `values[k - 1] = μ(k)`. Entries are validated to
    /// lie in {-1, 0, 1} and `values[0]` must be 1.
    pub fn from_values(values: Vec<i8>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("table must contain at least mu(1)"));
        }
        if values.len() as u64 > MAX_LIMIT {
            return Err(Error::OutOfRange {
                what: "table limit",
                value: values.len() as u64,
                limit: MAX_LIMIT,
            });
        }
        if values[0] != 1 {
            return Err(Error::invalid("mu(1) must be 1"));
        }
        if let Some(pos) = values.iter().position(|v| !(-1..=1).contains(v)) {
            return Err(Error::invalid(format!(
                "mu({}) = {} is not in {{-1, 0, 1}}",
                pos + 1,
                values[pos]
            )));
        }
        let mut mu = Vec::with_capacity(values.len() + 1);
        mu.push(0);
        mu.extend_from_slice(&values);
        Ok(Self::from_indexed(mu))
    }

    /// `mu` must already carry the index-0 placeholder.
    pub(crate) fn from_indexed(mu: Vec<i8>) -> Self {
        let mut prefix = Vec::with_capacity(mu.len());
        let mut acc = 0i32;
        for &v in &mu {
            acc += v as i32;
            prefix.push(acc);
        }
        Self { mu, prefix }
    }

    #[inline]
    pub fn limit(&self) -> u64 {
        (self.mu.len() - 1) as u64
    }

    /// μ(1..=N), with μ(k) at position `k - 1`.
    pub fn values(&self) -> &[i8] {
        &self.mu[1..]
    }

    /// μ(k). Panics if `k == 0` or `k > limit`.
    #[inline]
    pub fn mu(&self, k: u64) -> i8 {
        assert!(k >= 1, "mu is defined for k >= 1");
        self.mu[k as usize]
    }

    /// Unchecked Mertens value M(n) for `n <= limit`; M(0) = 0.
    #[inline]
    pub(crate) fn mertens_raw(&self, n: u64) -> i64 {
        self.prefix[n as usize] as i64
    }

    pub(crate) fn check_n(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if n > self.limit() {
            return Err(Error::OutOfRange {
                what: "n",
                value: n,
                limit: self.limit(),
            });
        }
        Ok(())
    }

    /// Σ_{k ≤ n} |μ(k)|, the number of squarefree integers up to `n`.
    pub fn squarefree_count(&self, n: u64) -> Result<u64> {
        self.check_n(n)?;
        Ok(self.mu[1..=n as usize].iter().filter(|&&v| v != 0).count() as u64)
    }
}

/// μ(k) by trial division. Independent of the sieve; used to cross-check it.
pub fn mobius_oracle(k: u64) -> Result<i8> {
    if k == 0 {
        return Err(Error::invalid("mu is defined for k >= 1"));
    }
    let mut rest = k;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Mertens function M(n) = Σ_{k ≤ n} μ(k).
pub fn mertens(table: &MobiusTable, n: u64) -> Result<i64> {
    table.check_n(n)?;
    Ok(table.mertens_raw(n))
}

/// One bit of the step function ν(x) = 2{x/2} − {x}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NuValue(u8);

impl NuValue {
    pub const ZERO: NuValue = NuValue(0);
    pub const ONE: NuValue = NuValue(1);

    #[inline]
    pub fn bit(self) -> u8 {
        self.0
    }
}

impl From<NuValue> for i64 {
    fn from(v: NuValue) -> i64 {
        v.0 as i64
    }
}

/// ν(x) = ⌊x⌋ mod 2.
///
/// Evaluated by floor and parity, which is exact for every finite `f64`;
/// the fractional-part form loses the jump points under rounding.
pub fn nu(x: f64) -> Result<NuValue> {
    if !x.is_finite() {
        return Err(Error::invalid(format!("nu needs a finite argument, got {x}")));
    }
    if x < 0.0 {
        return Err(Error::invalid(format!("nu needs x >= 0, got {x}")));
    }
    let m = x.floor();
    // Both operations are exact: m/2 is a halving and floor of a float is exact.
    let bit = m - 2.0 * (m * 0.5).floor();
    Ok(if bit == 0.0 { NuValue::ZERO } else { NuValue::ONE })
}

/// ν at an integer argument.
#[inline]
pub fn nu_int(m: u64) -> NuValue {
    NuValue((m & 1) as u8)
}

/// Σ_{k ≤ n} |μ(k)| / k^σ, accumulated in ascending k.
pub fn abs_mobius_partial(table: &MobiusTable, n: u64, sigma: f64) -> Result<f64> {
    table.check_n(n)?;
    check_sigma(sigma)?;
    let mut acc = CompensatedSum::new();
    for k in 1..=n {
        if table.mu(k) != 0 {
            acc.add((k as f64).powf(-sigma));
        }
    }
    Ok(acc.value())
}

/// Running values of [`abs_mobius_partial`] for every n in `1..=n_max`.
///
/// Entry `n - 1` is bit-identical to `abs_mobius_partial(table, n, sigma)`.
pub fn abs_mobius_prefix(table: &MobiusTable, n_max: u64, sigma: f64) -> Result<Vec<f64>> {
    table.check_n(n_max)?;
    check_sigma(sigma)?;
    let mut acc = CompensatedSum::new();
    let mut out = Vec::with_capacity(n_max as usize);
    for k in 1..=n_max {
        if table.mu(k) != 0 {
            acc.add((k as f64).powf(-sigma));
        }
        out.push(acc.value());
    }
    Ok(out)
}

/// Right side of the geometric bound on [`abs_mobius_partial`]:
/// `n^{1-σ}/(1-σ) - 1/(1-σ) + 1` for σ ≠ 1 and `ln n + 1` at σ = 1.
pub fn abs_mobius_bound(n: u64, sigma: f64) -> f64 {
    let n = n as f64;
    if sigma == 1.0 {
        n.ln() + 1.0
    } else {
        let e = 1.0 - sigma;
        n.powf(e) / e - 1.0 / e + 1.0
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::invalid(format!("sigma must be positive, got {sigma}")));
    }
    Ok(())
}
