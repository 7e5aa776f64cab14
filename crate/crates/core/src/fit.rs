//! Unweighted least-squares slope on log-log axes, used for the empirical
//! rate checks (error orders in lambda, TV decay, residual decay in m).

use crate::fp;

/// Slope of ln(y) regressed on ln(x). All inputs must be positive.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mut sx = 0.0;
    let mut sy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sx += fp::ln(x);
        sy += fp::ln(y);
    }
    let (mx, my) = (sx / n, sy / n);
    let mut num = 0.0;
    let mut den = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = fp::ln(x) - mx;
        num += dx * (fp::ln(y) - my);
        den += dx * dx;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let xs = [10.0, 100.0, 1000.0, 10000.0];
        let mut ys = [0.0; 4];
        for (y, x) in ys.iter_mut().zip(xs) {
            *y = 3.0 * crate::fp::powf(x, -1.5);
        }
        assert!((loglog_slope(&xs, &ys) + 1.5).abs() < 1e-12);
    }
}
