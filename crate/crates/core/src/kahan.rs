//! Compensated (Kahan/Neumaier) accumulation for long sums.

/// Neumaier-compensated accumulator. The compensation term also protects
/// sums whose running total is smaller than the next addend.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if crate::fp::abs(self.sum) >= crate::fp::abs(v) {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

impl core::iter::FromIterator<f64> for Kahan {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Kahan::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_is_compensated() {
        let mut s = Kahan::new();
        for v in [1e16, 0.1, 0.2, 0.3, -1e16] {
            s.add(v);
        }
        assert!((s.value() - 0.6).abs() < 1e-15);
    }
}
