use rayon::prelude::*;

use super::{MobiusTable, MAX_LIMIT};
use crate::error::{Error, Result};

/// Default segment length for the segmented sieve.
pub const DEFAULT_SEGMENT_LEN: usize = 1 << 22;

/// Bytes per entry of a finished table (μ byte plus Mertens prefix).
const TABLE_BYTES_PER_ENTRY: u64 = 5;
/// Extra bytes per entry while the linear sieve runs (smallest prime factor).
const LINEAR_BYTES_PER_ENTRY: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieveMode {
    /// Linear sieve up to `linear_max` entries, segmented above.
    Auto,
    Linear,
    Segmented,
}

#[derive(Debug, Clone)]
pub struct SieveConfig {
    pub mode: SieveMode,
    /// Total memory a sieve run may use.
    pub memory_budget_bytes: u64,
    /// `Auto` switches to segmented sieving above this many entries.
    pub linear_max: u64,
    pub segment_len: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            mode: SieveMode::Auto,
            memory_budget_bytes: 4 << 30,
            linear_max: 1 << 24,
            segment_len: DEFAULT_SEGMENT_LEN,
        }
    }
}

impl SieveConfig {
    fn resolve_mode(&self, n: u64) -> SieveMode {
        match self.mode {
            SieveMode::Auto if n > self.linear_max => SieveMode::Segmented,
            SieveMode::Auto => SieveMode::Linear,
            m => m,
        }
    }

    fn estimate_bytes(&self, n: u64, mode: SieveMode) -> u64 {
        let table = n.saturating_add(1).saturating_mul(TABLE_BYTES_PER_ENTRY);
        let scratch = match mode {
            SieveMode::Linear => n.saturating_add(1).saturating_mul(LINEAR_BYTES_PER_ENTRY),
            // mu + residual per in-flight segment, one segment per worker.
            _ => (self.segment_len as u64 * 9).saturating_mul(rayon::current_num_threads() as u64),
        };
        table.saturating_add(scratch)
    }
}

/// μ(1..=n) with the default configuration.
pub fn mobius_sieve(n: u64) -> Result<MobiusTable> {
    mobius_sieve_with(n, &SieveConfig::default())
}

pub fn mobius_sieve_with(n: u64, config: &SieveConfig) -> Result<MobiusTable> {
    if n == 0 {
        return Err(Error::invalid("sieve limit must be at least 1"));
    }
    if n > MAX_LIMIT {
        return Err(Error::OutOfRange {
            what: "sieve limit",
            value: n,
            limit: MAX_LIMIT,
        });
    }
    if config.segment_len == 0 {
        return Err(Error::invalid("segment length must be positive"));
    }
    let mode = config.resolve_mode(n);
    let needed = config.estimate_bytes(n, mode);
    if needed > config.memory_budget_bytes {
        return Err(Error::ResourceLimit {
            needed_bytes: needed,
            budget_bytes: config.memory_budget_bytes,
        });
    }
    let mu = match mode {
        SieveMode::Segmented => segmented(n as usize, config.segment_len),
        _ => linear(n as usize),
    };
    Ok(MobiusTable::from_indexed(mu))
}

/// Linear (Euler) sieve over smallest prime factors; each composite is
/// visited exactly once.
fn linear(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            mu[i] = -1;
            primes.push(i as u32);
        }
        let lp = spf[i];
        for &p in &primes {
            let ip = i * p as usize;
            if p > lp || ip > n {
                break;
            }
            spf[ip] = p;
            mu[ip] = if p == lp { 0 } else { -mu[i] };
        }
    }
    mu
}

fn small_primes(limit: usize) -> Vec<usize> {
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Segmented sieve. Segments are independent and filled in parallel; the
/// output does not depend on the number of worker threads.
fn segmented(n: usize, segment_len: usize) -> Vec<i8> {
    let root = (n as f64).sqrt() as usize + 1;
    let primes = small_primes(root);
    let mut mu = vec![0i8; n + 1];
    mu[1..]
        .par_chunks_mut(segment_len)
        .enumerate()
        .for_each(|(idx, chunk)| {
            let lo = 1 + idx * segment_len;
            fill_segment(lo, chunk, &primes);
        });
    mu
}

/// Writes μ(lo..lo + out.len()) into `out`.
fn fill_segment(lo: usize, out: &mut [i8], primes: &[usize]) {
    let hi = lo + out.len();
    let mut residual: Vec<u64> = (lo..hi).map(|k| k as u64).collect();
    out.fill(1);
    for &p in primes {
        if p >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut k = first;
        while k < hi {
            let i = k - lo;
            out[i] = -out[i];
            residual[i] /= p as u64;
            k += p;
        }
        let pp = p * p;
        let mut k = lo.div_ceil(pp) * pp;
        while k < hi {
            out[k - lo] = 0;
            k += pp;
        }
    }
    for (v, r) in out.iter_mut().zip(residual) {
        if r > 1 {
            *v = -*v;
        }
    }
}
