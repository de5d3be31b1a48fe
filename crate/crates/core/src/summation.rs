//! Floating-point accumulation for long alternating series.

use serde::{Deserialize, Serialize};

/// How series terms are accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SummationMode {
    /// Naive left-to-right addition.
    Plain,
    /// Neumaier's improved Kahan summation.
    #[default]
    Compensated,
}

/// Running sum that honors a [`SummationMode`].
#[derive(Debug, Clone, Copy)]
pub struct Accumulator {
    mode: SummationMode,
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub fn new(mode: SummationMode) -> Self {
        Self {
            mode,
            sum: 0.0,
            comp: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        match self.mode {
            SummationMode::Plain => self.sum += x,
            SummationMode::Compensated => {
                let t = self.sum + x;
                if self.sum.abs() >= x.abs() {
                    self.comp += (self.sum - t) + x;
                } else {
                    self.comp += (x - t) + self.sum;
                }
                self.sum = t;
            }
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sums an iterator with the requested mode.
pub fn sum_with<I: IntoIterator<Item = f64>>(mode: SummationMode, terms: I) -> f64 {
    let mut acc = Accumulator::new(mode);
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_lost_digits() {
        let terms = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(sum_with(SummationMode::Compensated, terms), 2.0);
        assert_eq!(sum_with(SummationMode::Plain, terms), 0.0);
    }

    #[test]
    fn alternating_harmonic() {
        // ln 2 = 1 - 1/2 + 1/3 - ...; compare the two modes on a long partial sum
        let n = 1_000_000;
        let terms = (1..=n).map(|k| {
            if k % 2 == 1 {
                1.0 / k as f64
            } else {
                -1.0 / k as f64
            }
        });
        let exact_tail = 1.0 / (2.0 * n as f64); // leading tail term of the alternating series
        let comp = sum_with(SummationMode::Compensated, terms.clone());
        assert!((comp + exact_tail - std::f64::consts::LN_2).abs() < 1e-12);
        let plain = sum_with(SummationMode::Plain, terms);
        assert!((plain - comp).abs() < 1e-9);
    }
}
