//! First-moment formulas for increasing paths and trails in `G(n, p)` with a
//! uniformly random edge ordering, evaluated in log space (natural logs).
//!
//! By Stirling, `n^{k+1} p^k / k!` behaves like `n (enp/k)^k`, so the trail
//! count bound collapses once `k` exceeds `e n p` by a constant factor.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};
use statrs::function::factorial::{ln_binomial, ln_factorial};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeQuery {
    pub n: u64,
    pub p: f64,
    pub k: u64,
    pub eps: f64,
}

impl RegimeQuery {
    pub fn new(n: u64, p: f64, k: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        if k == 0 {
            return Err(Error::Domain("k must be at least 1".into()));
        }
        Ok(RegimeQuery { n, p, k, eps: 0.0 })
    }
}

/// A quantity carried as its natural log; `value` is `exp(ln)` and may be
/// infinite when not representable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    pub ln: f64,
    pub value: f64,
}

impl LogValue {
    pub fn from_ln(ln: f64) -> Self {
        LogValue { ln, value: ln.exp() }
    }

    pub fn zero() -> Self {
        LogValue {
            ln: f64::NEG_INFINITY,
            value: 0.0,
        }
    }
}

fn k_ln_p(k: u64, p: f64) -> f64 {
    if p == 0.0 {
        f64::NEG_INFINITY
    } else {
        k as f64 * p.ln()
    }
}

/// `E[X_{k,p}] = C(n, k+1) (k+1)! p^k / k!`, the expected number of
/// increasing paths of length `k` (counted as vertex sequences). Zero when
/// `k > n - 1`.
pub fn expected_increasing_paths(q: &RegimeQuery) -> LogValue {
    if q.k + 1 > q.n {
        return LogValue::zero();
    }
    let ln = ln_binomial(q.n, q.k + 1) + ln_factorial(q.k + 1) + k_ln_p(q.k, q.p) - ln_factorial(q.k);
    LogValue::from_ln(ln)
}

/// The first-moment bound `E[Y_{k,p}] <= n^{k+1} p^k / k!` on increasing trails.
pub fn expected_increasing_trails_upper(q: &RegimeQuery) -> LogValue {
    let ln = (q.k + 1) as f64 * (q.n as f64).ln() + k_ln_p(q.k, q.p) - ln_factorial(q.k);
    LogValue::from_ln(ln)
}

/// `(1 + eps) e n p`.
pub fn trail_threshold(n: u64, p: f64, eps: f64) -> f64 {
    (1.0 + eps) * E * n as f64 * p
}

/// `ln n / ln ln n`, the sparse-regime scale; requires `n >= 3`.
pub fn sparse_threshold(n: u64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain("sparse threshold needs n >= 3".into()));
    }
    let l = (n as f64).ln();
    Ok(l / l.ln())
}

/// Smallest `k` at which the trail bound drops below 1.
pub fn first_moment_crossing(n: u64, p: f64) -> Option<u64> {
    if n == 0 || p <= 0.0 {
        return Some(1);
    }
    // The bound's log is eventually decreasing in k; scan until it is < 0.
    let limit = (10.0 * E * n as f64 * p).ceil() as u64 + 64;
    (1..=limit).find(|&k| {
        expected_increasing_trails_upper(&RegimeQuery { n, p, k, eps: 0.0 }).ln < 0.0
    })
}

/// Expected number of cycles of length `3..=k` in `G(n, p)`:
/// `sum_l C(n, l) (l-1)!/2 p^l`.
pub fn expected_short_cycles(n: u64, k: u64, p: f64) -> Result<f64> {
    if k < 3 {
        return Err(Error::Domain("cycle length bound must be at least 3".into()));
    }
    let mut total = 0.0;
    for l in 3..=k.min(n) {
        let ln = ln_binomial(n, l) + ln_factorial(l - 1) - std::f64::consts::LN_2 + k_ln_p(l, p);
        total += ln.exp();
    }
    Ok(total)
}
