//! Scalar numeric services: the Riemann zeta function on `(1, ∞)`,
//! deterministic primality and next-prime search, and a log-log
//! least-squares slope fit.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// A value of ζ(α) together with a certified bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaValue {
    pub alpha: f64,
    pub value: f64,
    pub abs_error_bound: f64,
}

/// Number of leading terms summed directly before the tail expansion.
const ZETA_HEAD_TERMS: u32 = 16;

/// `B_{2k} / (2k)!` for k = 1..=9. The last entry is only used for the
/// remainder bound.
const BERNOULLI_OVER_FACTORIAL: [f64; 9] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
];

fn zeta_cache() -> &'static RwLock<HashMap<u64, ZetaValue>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, ZetaValue>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Riemann zeta function for real `alpha > 1`.
///
/// The first `N - 1` terms are summed directly (smallest first); the tail
/// `Σ_{m≥N} m^{-α}` is the integral `N^{1-α}/(α-1)` plus the
/// Euler–Maclaurin boundary and derivative corrections. For real α the
/// remainder is bounded by the first omitted correction term, which is
/// reported in `abs_error_bound` together with a rounding allowance.
pub fn riemann_zeta(alpha: f64) -> Result<ZetaValue> {
    if !alpha.is_finite() || alpha <= 1.0 {
        return Err(domain(format!(
            "riemann_zeta requires a finite alpha > 1, got {alpha}"
        )));
    }
    let key = alpha.to_bits();
    if let Some(hit) = zeta_cache().read().ok().and_then(|c| c.get(&key).copied()) {
        return Ok(hit);
    }
    let value = compute_zeta(alpha);
    if let Ok(mut cache) = zeta_cache().write() {
        cache.insert(key, value);
    }
    Ok(value)
}

fn compute_zeta(s: f64) -> ZetaValue {
    let n = ZETA_HEAD_TERMS as f64;
    let head: f64 = (1..ZETA_HEAD_TERMS)
        .rev()
        .map(|m| (m as f64).powf(-s))
        .sum();

    let n_pow = n.powf(-s);
    let mut tail = n * n_pow / (s - 1.0) + 0.5 * n_pow;

    // term_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let mut rising = s;
    let mut n_term = n_pow / n;
    let corrections = BERNOULLI_OVER_FACTORIAL.len() - 1;
    for (k, coeff) in BERNOULLI_OVER_FACTORIAL[..corrections].iter().enumerate() {
        tail += coeff * rising * n_term;
        let two_k = 2.0 * (k as f64 + 1.0);
        rising *= (s + two_k - 1.0) * (s + two_k);
        n_term /= n * n;
    }
    let remainder = (BERNOULLI_OVER_FACTORIAL[corrections] * rising * n_term).abs();

    let value = head + tail;
    let rounding = 64.0 * f64::EPSILON * value;
    ZetaValue {
        alpha: s,
        value,
        abs_error_bound: remainder + rounding,
    }
}

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn trial_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3u64;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// Deterministic primality test for all `u64`.
///
/// Trial division below 10⁶; above, Miller–Rabin with the first twelve
/// primes as witnesses, which is exact for every 64-bit integer.
pub fn is_prime(n: u64) -> bool {
    if n < TRIAL_DIVISION_LIMIT {
        return trial_division(n);
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= m`.
pub fn next_prime(m: u64) -> Result<u64> {
    if m <= 2 {
        return Ok(2);
    }
    let mut candidate = if m % 2 == 0 { m + 1 } else { m };
    loop {
        if is_prime(candidate) {
            return Ok(candidate);
        }
        candidate = candidate.checked_add(2).ok_or(Error::Overflow {
            what: "next prime exceeds u64 range",
            log_value: (m as f64).ln(),
        })?;
    }
}

/// Least-squares line through `(ln x, ln y)`; returns `(slope, intercept)`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "log-log fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(&(x, y)) = points
        .iter()
        .find(|(x, y)| !(x.is_finite() && y.is_finite() && *x > 0.0 && *y > 0.0))
    {
        return Err(domain(format!(
            "log-log fit needs finite positive coordinates, got ({x}, {y})"
        )));
    }
    let k = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / k, sy / k);
    let (sxx, sxy) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| {
        let dx = x.ln() - mx;
        (a + dx * dx, b + dx * (y.ln() - my))
    });
    if sxx <= f64::EPSILON * mx.abs().max(1.0) {
        return Err(Error::DegenerateInput(
            "all x values are equal".to_string(),
        ));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Neumaier-compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}
