//! Compensated summation.
//!
//! All real and complex partial sums in the crate go through these
//! accumulators in ascending index order, so a given sequence of terms
//! always produces the same bits.

use std::ops::AddAssign;

use num_complex::Complex64;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub const fn new() -> Self {
        Self {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another accumulator into this one. Merging chunk sums in a fixed
    /// order keeps chunked reductions reproducible.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Component-wise compensated sum of complex terms.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub const fn new() -> Self {
        Self {
            re: CompensatedSum::new(),
            im: CompensatedSum::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: Complex64) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    pub fn merge(&mut self, other: &ComplexSum) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl AddAssign<Complex64> for ComplexSum {
    fn add_assign(&mut self, rhs: Complex64) {
        self.add(rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms_lost_by_naive_sum() {
        let terms = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = terms.iter().sum();
        let compensated: CompensatedSum = terms.iter().copied().collect();
        assert_eq!(naive, 0.0);
        assert_eq!(compensated.value(), 2.0);
    }

    #[test]
    fn harmonic_sum_matches_reference() {
        // H_1000 = 7.485470860550344912656518...
        let acc: CompensatedSum = (1..=1000).map(|k| 1.0 / k as f64).collect();
        assert!((acc.value() - 7.485_470_860_550_345).abs() < 1e-15);
    }

    #[test]
    fn merge_in_order_is_reproducible() {
        let terms: Vec<f64> = (1..10_000).map(|k| (k as f64).sin() / k as f64).collect();
        let chunked = |size: usize| {
            let mut total = CompensatedSum::new();
            for chunk in terms.chunks(size) {
                let part: CompensatedSum = chunk.iter().copied().collect();
                total.merge(&part);
            }
            total.value()
        };
        assert_eq!(chunked(256), chunked(256));
        let serial: CompensatedSum = terms.iter().copied().collect();
        assert!((chunked(256) - serial.value()).abs() < 1e-15);
    }
}
