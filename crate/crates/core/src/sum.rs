//! Compensated (Neumaier) summation.
//!
//! Every reduction in the crate funnels through [`CompensatedSum`] in a fixed
//! order so that results are bit-reproducible regardless of how the terms
//! were produced.

use crate::scalar::Real;

/// Running Kahan–Babuška–Neumaier accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<S: Real> {
    sum: S,
    compensation: S,
}

impl<S: Real> CompensatedSum<S> {
    pub fn new() -> Self {
        Self {
            sum: S::zero(),
            compensation: S::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: S) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation = self.compensation + ((self.sum - t) + value);
        } else {
            self.compensation = self.compensation + ((value - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> S {
        self.sum + self.compensation
    }
}

impl<S: Real> Extend<S> for CompensatedSum<S> {
    fn extend<I: IntoIterator<Item = S>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn compensated_sum<S: Real, I: IntoIterator<Item = S>>(iter: I) -> S {
    let mut acc = CompensatedSum::new();
    acc.extend(iter);
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let terms = [1.0e16, 1.0, -1.0e16, 1.0];
        let naive: f64 = terms.iter().sum();
        assert_eq!(naive, 1.0);
        assert_eq!(compensated_sum(terms), 2.0);
    }

    #[test]
    fn f32_accumulates_many_tenths() {
        let s = compensated_sum(std::iter::repeat_n(0.1f32, 100_000));
        assert!((s - 10_000.0).abs() < 1e-2, "{s}");
    }

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(compensated_sum::<f64, _>(std::iter::empty()), 0.0);
    }
}
