//! Stirling numbers of the second kind and exact Poisson central moments.
//!
//! The central-moment formula
//!
//! ```text
//! E[(K - lambda)^n] = sum_l C(n,l) (sum_j S(l,j) lambda^j) (-lambda)^(n-l)
//! ```
//!
//! is expanded symbolically into a polynomial in lambda with exact integer
//! coefficients (the alternating cancellation happens in integer arithmetic,
//! not in floats), then evaluated by Horner. Table entries are built in
//! 128-bit integers; the largest value touched for n <= 20 stays far below
//! the i128 range.

use crate::error::{Error, Result};
use crate::fp;
use crate::kahan::Kahan;
use crate::poisson::{self, PoissonParam, SummationWindow};
use alloc::vec;
use alloc::vec::Vec;

pub const MAX_STIRLING_N: usize = 20;

/// Triangle of Stirling numbers of the second kind, S(l, j) for j <= l <= max_n.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    max_n: usize,
    rows: Vec<Vec<u128>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Result<Self> {
        if max_n > MAX_STIRLING_N {
            return Err(Error::Domain("StirlingTable supports max_n <= 20"));
        }
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![1]); // S(0,0) = 1
        for l in 1..=max_n {
            let prev = &rows[l - 1];
            let mut row = vec![0u128; l + 1];
            for j in 1..=l {
                // S(l, j) = j S(l-1, j) + S(l-1, j-1)
                let same = if j < prev.len() { prev[j] } else { 0 };
                row[j] = j as u128 * same + prev[j - 1];
            }
            rows.push(row);
        }
        Ok(Self { max_n, rows })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// S(l, j); out-of-range indices are a domain error.
    pub fn stirling2(&self, l: usize, j: usize) -> Result<u128> {
        if l > self.max_n || j > l {
            return Err(Error::Domain("stirling2 indices must satisfy j <= l <= max_n"));
        }
        Ok(self.rows[l][j])
    }
}

fn binomial_row(n: usize) -> Vec<i128> {
    let mut row = vec![1i128; n + 1];
    for l in 1..=n {
        row[l] = row[l - 1] * (n - l + 1) as i128 / l as i128;
    }
    row
}

/// Exact integer coefficients of E[(K - lambda)^n] as a polynomial in lambda.
pub(crate) fn central_moment_coefficients(n: usize) -> Result<Vec<i128>> {
    if n == 0 || n > MAX_STIRLING_N {
        return Err(Error::Domain("central_moment requires 1 <= n <= 20"));
    }
    let table = StirlingTable::new(n)?;
    let binom = binomial_row(n);
    let mut coeff = vec![0i128; n + 1];
    for l in 0..=n {
        let sign = if (n - l) % 2 == 0 { 1i128 } else { -1i128 };
        for j in 0..=l {
            let s = table.stirling2(l, j)? as i128;
            coeff[j + (n - l)] += sign * binom[l] * s;
        }
    }
    Ok(coeff)
}

/// E[(K - lambda)^n] for 1 <= n <= 20, exact up to the final Horner evaluation.
pub fn central_moment(p: &PoissonParam, n: usize) -> Result<f64> {
    let coeff = central_moment_coefficients(n)?;
    let lambda = p.lambda();
    let mut acc = 0.0;
    for &c in coeff.iter().rev() {
        acc = acc * lambda + c as f64;
    }
    Ok(acc)
}

/// Gap `|E[(K - lambda)^n 1_A] - c_n|` for n in {1,2,3} (c_1 = 0, c_2 = c_3 = lambda)
/// on the event A = {a_lo <= K <= a_hi}, next to its Cauchy-Schwarz bound.
///
/// Because E[(K-lambda)^n 1_A] - c_n = -E[(K-lambda)^n 1_Ac] exactly, the gap
/// is evaluated by summing the complement; an empty complement yields an
/// exact zero on both sides.
pub fn truncated_moment_gap(
    p: &PoissonParam,
    n: u32,
    a_lo: f64,
    a_hi: f64,
) -> Result<(f64, f64)> {
    if !(1..=3).contains(&n) {
        return Err(Error::Domain("truncated_moment_gap supports n in {1,2,3}"));
    }
    let lo_int = if a_lo <= 0.0 { 0u64 } else { fp::ceil(a_lo) as u64 };
    if a_hi < lo_int as f64 {
        return Err(Error::Domain("event {a_lo <= K <= a_hi} contains no lattice point"));
    }
    let hi_int = fp::floor(a_hi) as u64;

    let lambda = p.lambda();
    let win = SummationWindow::for_lambda(lambda);
    let mut moment = Kahan::new();
    let mut mass = Kahan::new();
    let mut visit = |k: u64, v: f64| {
        let d = k as f64 - lambda;
        let mut term = v;
        for _ in 0..n {
            term *= d;
        }
        moment.add(term);
        mass.add(v);
    };
    if lo_int > 0 {
        poisson::for_each_pmf(p, win.lo, lo_int - 1, &mut visit);
    }
    if hi_int < win.hi {
        poisson::for_each_pmf(p, hi_int + 1, win.hi, &mut visit);
    }
    let gap = fp::abs(moment.value());
    let p_c = mass.value().max(0.0);
    let factor = match n {
        1 => fp::sqrt(lambda),
        2 => 2.0 * (1.0 + lambda),
        _ => fp::sqrt(41.0) * (1.0 + lambda) * fp::sqrt(1.0 + lambda),
    };
    Ok((gap, factor * fp::sqrt(p_c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_small_values() {
        let t = StirlingTable::new(8).unwrap();
        assert_eq!(t.stirling2(3, 3).unwrap(), 1);
        assert_eq!(t.stirling2(4, 2).unwrap(), 7);
        assert_eq!(t.stirling2(6, 3).unwrap(), 90);
        assert_eq!(t.stirling2(1, 0).unwrap(), 0);
        assert_eq!(t.stirling2(5, 1).unwrap(), 1);
        assert!(t.stirling2(9, 1).is_err());
        assert!(StirlingTable::new(21).is_err());
    }

    #[test]
    fn closed_form_moments() {
        for lambda in [0.5, 2.0, 10.0, 50.0] {
            let p = PoissonParam::new(lambda).unwrap();
            let m2 = central_moment(&p, 2).unwrap();
            let m3 = central_moment(&p, 3).unwrap();
            let m4 = central_moment(&p, 4).unwrap();
            let m6 = central_moment(&p, 6).unwrap();
            assert!((m2 - lambda).abs() <= 1e-13 * lambda);
            assert!((m3 - lambda).abs() <= 1e-13 * lambda);
            let w4 = 3.0 * lambda * lambda + lambda;
            let w6 = 15.0 * lambda.powi(3) + 25.0 * lambda * lambda + lambda;
            assert!((m4 - w4).abs() <= 1e-13 * w4);
            assert!((m6 - w6).abs() <= 1e-13 * w6);
        }
        let p = PoissonParam::new(2.0).unwrap();
        assert!((central_moment(&p, 4).unwrap() - 14.0).abs() < 1e-12);
        assert!((central_moment(&p, 6).unwrap() - 222.0).abs() < 1e-12);
        assert!((central_moment(&p, 1).unwrap()).abs() == 0.0);
        assert!(central_moment(&p, 0).is_err());
        assert!(central_moment(&p, 21).is_err());
    }

    #[test]
    fn gap_is_exactly_zero_on_full_event() {
        let p = PoissonParam::new(4.0).unwrap();
        for n in 1..=2 {
            let (gap, bound) = truncated_moment_gap(&p, n, 0.0, f64::INFINITY).unwrap();
            assert_eq!(gap, 0.0);
            assert_eq!(bound, 0.0);
        }
    }

    #[test]
    fn rejects_empty_event() {
        let p = PoissonParam::new(4.0).unwrap();
        assert!(truncated_moment_gap(&p, 1, 3.2, 3.8).is_err());
        assert!(truncated_moment_gap(&p, 1, 2.0, -1.0).is_err());
        assert!(truncated_moment_gap(&p, 4, 0.0, 10.0).is_err());
    }
}
