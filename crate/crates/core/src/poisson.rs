//! Numerically stable Poisson primitives and the matched Gaussian density.
//!
//! Everything here works in log space. For k >= 16 the log-pmf is assembled
//! from the exact identity
//!
//! ```text
//! ln P_lambda(k) = -(k + 1/2) ln(k/lambda) + (k - lambda)
//!                  - ln sqrt(2 pi lambda) - r(k),
//! ```
//!
//! where `r(k) = ln k! - [ln sqrt(2 pi) + (k + 1/2) ln k - k]` is the
//! Stirling correction. This removes the cancellation between `k ln lambda`
//! and `ln Gamma(k+1)` that otherwise caps the accuracy of the log-ratio to
//! the matched Gaussian at a few units of 1e-9 for lambda near 1e6.

use crate::error::{Error, Result};
use crate::fp;
use crate::kahan::Kahan;

pub(crate) const LN_2PI: f64 = 1.837_877_066_409_345_6;

/// Mean (and variance) of a Poisson law, validated once at construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoissonParam {
    lambda: f64,
}

impl PoissonParam {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::Domain("lambda must be finite and > 0"));
        }
        Ok(Self { lambda })
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// A lattice point together with its standardized coordinate
/// `delta = (k - lambda) / sqrt(lambda)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaK {
    pub k: u64,
    pub delta: f64,
}

impl DeltaK {
    pub fn new(p: &PoissonParam, k: u64) -> Self {
        let delta = (k as f64 - p.lambda()) / fp::sqrt(p.lambda());
        Self { k, delta }
    }
}

/// Truncation window `[max(0, lambda - w), lambda + w]`, `w = 40 sqrt(lambda) + 40`.
/// Mass outside is below 1e-280, far under every tolerance used here.
#[derive(Clone, Copy, Debug)]
pub struct SummationWindow {
    pub lo: u64,
    pub hi: u64,
}

impl SummationWindow {
    pub fn for_lambda(lambda: f64) -> Self {
        let w = 40.0 * fp::sqrt(lambda) + 40.0;
        let lo = if lambda > w { fp::floor(lambda - w) as u64 } else { 0 };
        let hi = fp::ceil(lambda + w) as u64;
        Self { lo, hi }
    }
}

/// Upper bound on the mass outside `[lambda - t, lambda + t]` (Bernstein).
pub(crate) fn poisson_tail_mass_bound(lambda: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    2.0 * fp::exp(-t * t / (2.0 * (lambda + t / 3.0)))
}

/// Stirling correction `ln k! - ln sqrt(2 pi) - (k + 1/2) ln k + k` for k >= 16.
#[inline]
pub(crate) fn stirling_correction(k: f64) -> f64 {
    let r = 1.0 / k;
    let r2 = r * r;
    // 1/12k - 1/360k^3 + 1/1260k^5 - 1/1680k^7 + 1/1188k^9; next term < 3e-16 at k = 16.
    r * (1.0 / 12.0
        + r2 * (-1.0 / 360.0 + r2 * (1.0 / 1260.0 + r2 * (-1.0 / 1680.0 + r2 / 1188.0))))
}

/// ln(k / lambda) without cancellation when k is close to lambda.
#[inline]
fn ln_k_over_lambda(lambda: f64, kf: f64) -> f64 {
    let d = kf - lambda;
    if fp::abs(d) <= 0.5 * lambda {
        fp::ln_1p(d / lambda)
    } else {
        fp::ln(kf) - fp::ln(lambda)
    }
}

/// `ln(P_lambda(k) * sqrt(lambda) / phi(delta_k))` through the Stirling identity.
/// Requires k >= 16.
#[inline]
pub(crate) fn log_ratio_stirling(lambda: f64, k: u64) -> f64 {
    let kf = k as f64;
    let d = kf - lambda;
    -(kf + 0.5) * ln_k_over_lambda(lambda, kf) + d + d * d / (2.0 * lambda)
        - stirling_correction(kf)
}

/// Log of the Poisson(lambda) pmf at k. No intermediate overflow for
/// lambda and k up to 1e9.
pub fn log_pmf(p: &PoissonParam, k: u64) -> f64 {
    let lambda = p.lambda();
    if k == 0 {
        return -lambda;
    }
    let kf = k as f64;
    if k < 16 {
        return kf * fp::ln(lambda) - fp::ln_gamma(kf + 1.0) - lambda;
    }
    let d = kf - lambda;
    log_ratio_stirling(lambda, k) - 0.5 * (LN_2PI + fp::ln(lambda)) - d * d / (2.0 * lambda)
}

/// Poisson(lambda) pmf at k.
#[inline]
pub fn pmf(p: &PoissonParam, k: u64) -> f64 {
    fp::exp(log_pmf(p, k))
}

/// Gaussian density with the Poisson mean and variance: N(lambda, lambda) at y.
pub fn matched_gaussian_density(p: &PoissonParam, y: f64) -> f64 {
    let lambda = p.lambda();
    let d = y - lambda;
    fp::exp(-d * d / (2.0 * lambda)) / fp::sqrt(2.0 * core::f64::consts::PI * lambda)
}

/// Walks the pmf over `[lo, hi]` (clipped to the truncation window),
/// anchored at the in-range point closest to the mode and recursing
/// outwards, so each side is visited in descending magnitude.
pub(crate) fn for_each_pmf<F: FnMut(u64, f64)>(p: &PoissonParam, lo: u64, hi: u64, mut f: F) {
    let win = SummationWindow::for_lambda(p.lambda());
    let lo = lo.max(win.lo);
    let hi = hi.min(win.hi);
    if lo > hi {
        return;
    }
    let lambda = p.lambda();
    let anchor = (fp::floor(lambda) as u64).clamp(lo, hi);
    let p_anchor = pmf(p, anchor);
    f(anchor, p_anchor);
    let mut v = p_anchor;
    let mut k = anchor;
    while k < hi {
        k += 1;
        v *= lambda / k as f64;
        f(k, v);
    }
    v = p_anchor;
    k = anchor;
    while k > lo {
        v *= k as f64 / lambda;
        k -= 1;
        f(k, v);
    }
}

/// Sum of the pmf over `[lo, hi]`, compensated.
pub(crate) fn sum_pmf_range(p: &PoissonParam, lo: u64, hi: u64) -> f64 {
    let mut acc = Kahan::new();
    for_each_pmf(p, lo, hi, |_, v| acc.add(v));
    acc.value()
}

/// Distribution function and survival function at k. The smaller of the two
/// tails is summed directly; the other is its complement, so the pair never
/// suffers the cancellation of `1 - (sum near 1)`.
pub fn pmf_cdf_and_survival(p: &PoissonParam, k: u64) -> (f64, f64) {
    let lambda = p.lambda();
    let win = SummationWindow::for_lambda(lambda);
    if k < win.lo {
        return (0.0, 1.0);
    }
    if k >= win.hi {
        return (1.0, 0.0);
    }
    if (k as f64) < lambda {
        let cdf = sum_pmf_range(p, win.lo, k);
        (cdf, 1.0 - cdf)
    } else {
        let survival = sum_pmf_range(p, k + 1, win.hi);
        (1.0 - survival, survival)
    }
}

/// Exact two-sided tail probability `P(|K - lambda| > t)` next to the
/// `100 exp(-lambda^(1/3)/100)` large-deviation bound it is checked against
/// (the bound is the one valid at the threshold `t = lambda^(2/3) - 1/2`).
pub fn tail_bound_check(p: &PoissonParam, t: f64) -> Result<(f64, f64)> {
    if !(t > 0.0) {
        return Err(Error::Domain("tail threshold t must be > 0"));
    }
    let lambda = p.lambda();
    if lambda < 1.0 {
        return Err(Error::Domain("tail_bound_check requires lambda >= 1"));
    }
    let win = SummationWindow::for_lambda(lambda);
    // Largest k strictly below lambda - t, smallest strictly above lambda + t.
    let lower_hi = fp::ceil(lambda - t) - 1.0;
    let upper_lo = (fp::floor(lambda + t) + 1.0) as u64;
    let mut empirical = 0.0;
    if lower_hi >= 0.0 {
        empirical += sum_pmf_range(p, 0, lower_hi as u64);
    }
    empirical += sum_pmf_range(p, upper_lo, win.hi);
    let bound = 100.0 * fp::exp(-fp::cbrt(lambda) / 100.0);
    Ok((empirical, bound))
}
