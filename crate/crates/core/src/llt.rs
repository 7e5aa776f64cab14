//! Both bulk expansions of the Poisson-to-Gaussian log-ratio and an
//! empirical verification of their error orders.
//!
//! For each lambda the scan walks every lattice point of the bulk
//! `|delta_k| <= lambda^(1/6) B`, records actual vs predicted values of the
//! log-ratio (second-order polynomial expansion) and of the ratio itself,
//! and weights the errors by `1 + |delta|^5` resp. `1 + |delta|^9` -- the
//! delta-dependence the error terms carry. Across a lambda grid, the slope
//! of the weighted maximal error on log-log axes estimates the error order,
//! which should sit near -3/2.

use crate::error::{Error, Result};
use crate::fit::loglog_slope;
use crate::fp;
use crate::poisson::{self, PoissonParam};
use alloc::vec::Vec;

/// Bulk parameters of the expansions: eta from the one-sided condition
/// `delta_k / sqrt(lambda) >= eta - 1`, B from the two-sided bulk
/// `|delta_k| <= lambda^(1/6) B`.
#[derive(Clone, Copy, Debug)]
pub struct LltConfig {
    pub lambda: f64,
    pub eta: f64,
    pub bulk_b: f64,
}

impl LltConfig {
    pub fn new(lambda: f64, eta: f64, bulk_b: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::Domain("lambda must be finite and > 0"));
        }
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::Domain("eta must lie in (0,1)"));
        }
        if !(bulk_b > 0.0) || !bulk_b.is_finite() {
            return Err(Error::Domain("bulk constant B must be finite and > 0"));
        }
        Ok(Self { lambda, eta, bulk_b })
    }

    /// eta = 1/2 and B = 1, the values the total-variation proof works with.
    pub fn with_defaults(lambda: f64) -> Result<Self> {
        Self::new(lambda, 0.5, 1.0)
    }

    fn delta_limit(&self) -> f64 {
        fp::powf(self.lambda, 1.0 / 6.0) * self.bulk_b
    }
}

/// Grid used for the order fits: seven half-decade points over 1e2..1e5.
pub fn default_lambda_grid() -> [f64; 7] {
    [
        100.0,
        316.227_766_016_837_96,
        1_000.0,
        3_162.277_660_168_379_5,
        10_000.0,
        31_622.776_601_683_792,
        100_000.0,
    ]
}

/// One lattice point of a bulk scan.
#[derive(Clone, Copy, Debug)]
pub struct LltRow {
    pub k: u64,
    pub delta: f64,
    pub actual_log_ratio: f64,
    pub predicted_log_ratio: f64,
    /// actual_log_ratio - predicted_log_ratio
    pub error: f64,
    pub actual_ratio: f64,
    pub predicted_ratio: f64,
    pub ratio_error: f64,
}

/// Scan of one lambda: per-point errors plus their weighted maxima.
#[derive(Clone, Debug)]
pub struct LltReport {
    pub lambda: f64,
    pub eta: f64,
    pub bulk_b: f64,
    pub rows: Vec<LltRow>,
    /// max over rows of |error| * lambda^(3/2) / (1 + |delta|^5)
    pub max_scaled_error: f64,
    /// max over rows of |ratio_error| * lambda^(3/2) / (1 + |delta|^9)
    pub max_scaled_ratio_error: f64,
    pub max_abs_error: f64,
    pub max_abs_ratio_error: f64,
}

/// Scans aggregated over a lambda grid with fitted error orders.
#[derive(Clone, Debug)]
pub struct LltSweep {
    pub reports: Vec<LltReport>,
    /// Slope of ln(max weighted log-ratio error) against ln(lambda).
    pub fitted_exponent_log: f64,
    /// Same for the ratio expansion.
    pub fitted_exponent_ratio: f64,
}

/// Second-order prediction for the log-ratio (one-sided bulk `k >= eta lambda`).
pub fn predicted_log_ratio(cfg: &LltConfig, k: u64) -> Result<f64> {
    let lambda = cfg.lambda;
    let delta = (k as f64 - lambda) / fp::sqrt(lambda);
    if delta / fp::sqrt(lambda) < cfg.eta - 1.0 {
        return Err(Error::BulkViolation { k, delta, limit: (cfg.eta - 1.0) * fp::sqrt(lambda) });
    }
    Ok(log_expansion(lambda, delta))
}

#[inline]
fn log_expansion(lambda: f64, delta: f64) -> f64 {
    let d2 = delta * delta;
    let d3 = d2 * delta;
    let d4 = d2 * d2;
    (d3 / 6.0 - delta / 2.0) / fp::sqrt(lambda) + (-d4 / 12.0 + d2 / 4.0 - 1.0 / 12.0) / lambda
}

/// Second-order prediction for the ratio itself (two-sided bulk).
pub fn predicted_ratio(cfg: &LltConfig, k: u64) -> Result<f64> {
    let lambda = cfg.lambda;
    let delta = (k as f64 - lambda) / fp::sqrt(lambda);
    let limit = cfg.delta_limit();
    if fp::abs(delta) > limit {
        return Err(Error::BulkViolation { k, delta, limit });
    }
    Ok(ratio_expansion(lambda, delta))
}

#[inline]
fn ratio_expansion(lambda: f64, delta: f64) -> f64 {
    let d2 = delta * delta;
    let d3 = d2 * delta;
    let d4 = d2 * d2;
    let d6 = d4 * d2;
    1.0 + (d3 / 6.0 - delta / 2.0) / fp::sqrt(lambda)
        + (d6 / 72.0 - d4 / 6.0 + 3.0 * d2 / 8.0 - 1.0 / 12.0) / lambda
}

/// `ln(P_lambda(k) * sqrt(lambda) / phi(delta_k))`, fully in log space.
pub fn actual_log_ratio(p: &PoissonParam, k: u64) -> f64 {
    let lambda = p.lambda();
    if k >= 16 {
        return poisson::log_ratio_stirling(lambda, k);
    }
    let d = k as f64 - lambda;
    poisson::log_pmf(p, k) + 0.5 * (poisson::LN_2PI + fp::ln(lambda)) + d * d / (2.0 * lambda)
}

/// Walks the whole two-sided bulk of one lambda.
pub fn scan_bulk_errors(cfg: &LltConfig) -> Result<LltReport> {
    if cfg.lambda < 10.0 {
        return Err(Error::Domain("scan_bulk_errors requires lambda >= 10"));
    }
    let lambda = cfg.lambda;
    let p = PoissonParam::new(lambda)?;
    let half_width = cfg.delta_limit() * fp::sqrt(lambda);
    let klo = if lambda > half_width { fp::ceil(lambda - half_width) as u64 } else { 0 };
    let khi = fp::floor(lambda + half_width) as u64;
    if klo > khi {
        return Err(Error::Domain("bulk contains no lattice point"));
    }
    let scale = lambda * fp::sqrt(lambda);
    let mut rows = Vec::with_capacity((khi - klo + 1) as usize);
    let mut report = LltReport {
        lambda,
        eta: cfg.eta,
        bulk_b: cfg.bulk_b,
        rows: Vec::new(),
        max_scaled_error: 0.0,
        max_scaled_ratio_error: 0.0,
        max_abs_error: 0.0,
        max_abs_ratio_error: 0.0,
    };
    for k in klo..=khi {
        let delta = (k as f64 - lambda) / fp::sqrt(lambda);
        let actual = actual_log_ratio(&p, k);
        let predicted = log_expansion(lambda, delta);
        let error = actual - predicted;
        let actual_ratio = fp::exp(actual);
        let pred_ratio = ratio_expansion(lambda, delta);
        let ratio_error = actual_ratio - pred_ratio;

        let d = fp::abs(delta);
        let d5 = d * d * d * d * d;
        let w_log = fp::abs(error) / (1.0 + d5);
        let w_rat = fp::abs(ratio_error) / (1.0 + d5 * d * d * d * d);
        report.max_scaled_error = report.max_scaled_error.max(w_log * scale);
        report.max_scaled_ratio_error = report.max_scaled_ratio_error.max(w_rat * scale);
        report.max_abs_error = report.max_abs_error.max(fp::abs(error));
        report.max_abs_ratio_error = report.max_abs_ratio_error.max(fp::abs(ratio_error));

        rows.push(LltRow {
            k,
            delta,
            actual_log_ratio: actual,
            predicted_log_ratio: predicted,
            error,
            actual_ratio,
            predicted_ratio: pred_ratio,
            ratio_error,
        });
    }
    report.rows = rows;
    Ok(report)
}

/// Scans every lambda of the grid and fits both error orders.
pub fn sweep_bulk_errors(lambdas: &[f64], eta: f64, bulk_b: f64) -> Result<LltSweep> {
    if lambdas.len() < 2 {
        return Err(Error::Domain("order fit needs at least two lambdas"));
    }
    let mut reports = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        reports.push(scan_bulk_errors(&LltConfig::new(lambda, eta, bulk_b)?)?);
    }
    let xs: Vec<f64> = reports.iter().map(|r| r.lambda).collect();
    let scale = |r: &LltReport| r.lambda * fp::sqrt(r.lambda);
    let ys_log: Vec<f64> = reports.iter().map(|r| r.max_scaled_error / scale(r)).collect();
    let ys_rat: Vec<f64> = reports.iter().map(|r| r.max_scaled_ratio_error / scale(r)).collect();
    Ok(LltSweep {
        fitted_exponent_log: loglog_slope(&xs, &ys_log),
        fitted_exponent_ratio: loglog_slope(&xs, &ys_rat),
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicted_log_ratio_at_delta_zero() {
        for lambda in [25.0, 400.0, 1e4] {
            let cfg = LltConfig::with_defaults(lambda).unwrap();
            let v = predicted_log_ratio(&cfg, lambda as u64).unwrap();
            assert!((v + 1.0 / (12.0 * lambda)).abs() < 1e-18);
        }
    }

    #[test]
    fn predicted_log_ratio_hand_values() {
        // lambda = 100, k = 110: delta = 1.
        let cfg = LltConfig::with_defaults(100.0).unwrap();
        let v = predicted_log_ratio(&cfg, 110).unwrap();
        assert!((v - (-1.0 / 30.0 + 1.0 / 1200.0)).abs() < 1e-16);
        // lambda = 1e4, k = 1e4 + 100: delta = 1 again, both terms shrink.
        let cfg = LltConfig::with_defaults(1e4).unwrap();
        let v = predicted_log_ratio(&cfg, 10_100).unwrap();
        assert!((v - (-1.0 / 300.0 + 1.0 / 120_000.0)).abs() < 1e-17);
    }

    #[test]
    fn predicted_ratio_hand_values() {
        let cfg = LltConfig::with_defaults(100.0).unwrap();
        let v = predicted_ratio(&cfg, 100).unwrap();
        assert!((v - (1.0 - 1.0 / 1200.0)).abs() < 1e-15);
        // delta = -1 at k = 90.
        let v = predicted_ratio(&cfg, 90).unwrap();
        let want = 1.0 + (-1.0 / 6.0 + 0.5) / 10.0
            + (1.0 / 72.0 - 1.0 / 6.0 + 3.0 / 8.0 - 1.0 / 12.0) / 100.0;
        assert!((v - want).abs() < 1e-16);
    }

    #[test]
    fn bulk_violations_error_out() {
        let cfg = LltConfig::with_defaults(100.0).unwrap();
        // k = 0 gives delta/sqrt(lambda) = -1 < eta - 1 = -1/2.
        assert!(matches!(predicted_log_ratio(&cfg, 0), Err(Error::BulkViolation { .. })));
        // |delta| = 5 > 100^(1/6) ~ 2.15.
        assert!(matches!(predicted_ratio(&cfg, 150), Err(Error::BulkViolation { .. })));
        assert!(LltConfig::new(100.0, 1.5, 1.0).is_err());
        assert!(LltConfig::new(100.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn actual_log_ratio_small_lambda() {
        // lambda = 1, k = 1: ln(e^-1 sqrt(2 pi)) = -1 + ln(2 pi)/2.
        let p = PoissonParam::new(1.0).unwrap();
        let v = actual_log_ratio(&p, 1);
        assert!((v - (-1.0 + 0.5 * poisson::LN_2PI)).abs() < 1e-15);
    }

    #[test]
    fn scan_requires_lambda_and_nonempty_bulk() {
        assert!(scan_bulk_errors(&LltConfig::with_defaults(5.0).unwrap()).is_err());
        let cfg = LltConfig::new(100.0, 0.5, 1e-3).unwrap();
        assert!(scan_bulk_errors(&cfg).is_err());
    }
}
