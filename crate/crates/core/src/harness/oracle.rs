//! Reference computations that share no enumeration code with the spectrum
//! module: exhaustive boxes and a coordinate recursion closed off with
//! zeta tails.

use crate::error::{domain, Error, Result};
use crate::numerics::riemann_zeta;
use crate::spectrum::ProblemSpec;

/// Largest box `(2H+1)^d` the brute-force oracle will enumerate.
pub const BOX_LIMIT: u64 = 100_000_000;

fn box_size(d: usize, h: u64) -> Option<u64> {
    (2 * h + 1).checked_pow(u32::try_from(d).ok()?)
}

/// All values `r(h)` for `h ∈ [-H, H]^d`, sorted non-increasing and grouped
/// by exact equality into `(λ, count)`.
///
/// The list is exact for every eigenvalue above `T` once
/// `γ_1 / (H+1)^α ≤ T`, see [`certified_box`].
pub fn brute_force_spectrum(spec: &ProblemSpec, h: u64) -> Result<Vec<(f64, u64)>> {
    if h == 0 {
        return Err(domain("box half-width must be at least 1"));
    }
    match box_size(spec.d(), h) {
        Some(n) if n <= BOX_LIMIT => {}
        _ => {
            return Err(Error::CapExceeded {
                cap: BOX_LIMIT,
                lower_bound: 0,
            })
        }
    }
    let d = spec.d();
    let w = spec.weights();
    let alpha = spec.alpha();
    // per-coordinate factors for |h_j| = 0..=H
    let table: Vec<Vec<f64>> = w
        .iter()
        .map(|&g| {
            std::iter::once(1.0)
                .chain((1..=h).map(|m| g * (m as f64).powf(-alpha)))
                .collect()
        })
        .collect();

    // enumerate the non-negative orthant; each point stands for 2^z sign patterns
    let mut values: Vec<(f64, u64)> = Vec::with_capacity((h as usize + 1).pow(d as u32));
    let mut idx = vec![0usize; d];
    loop {
        let mut v = 1.0;
        let mut z = 0;
        for j in 0..d {
            if idx[j] != 0 {
                v *= table[j][idx[j]];
                z += 1;
            }
        }
        values.push((v, 1u64 << z));
        let mut j = 0;
        loop {
            if j == d {
                return Ok(group(values));
            }
            idx[j] += 1;
            if idx[j] as u64 <= h {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

fn group(mut values: Vec<(f64, u64)>) -> Vec<(f64, u64)> {
    values.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut out: Vec<(f64, u64)> = Vec::new();
    for (v, c) in values {
        match out.last_mut() {
            Some(last) if last.0 == v => last.1 += c,
            _ => out.push((v, c)),
        }
    }
    out
}

/// Smallest `H` for which the box `[-H, H]^d` contains every `h` with
/// `r(h) > threshold`.
pub fn certified_box(spec: &ProblemSpec, threshold: f64) -> Result<u64> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(domain(format!("threshold must lie in (0, 1), got {threshold}")));
    }
    let g = spec.weights()[0];
    // any h outside the box has a coordinate with |h_j| ≥ H+1
    let mut h = ((g / threshold).powf(1.0 / spec.alpha()).ceil() as u64).saturating_sub(1);
    while g * ((h + 1) as f64).powf(-spec.alpha()) > threshold {
        h += 1;
    }
    while h > 1 && g * (h as f64).powf(-spec.alpha()) <= threshold {
        h -= 1;
    }
    Ok(h.max(1))
}

/// Count and sum of the eigenvalues `> threshold` from a brute-force box.
pub fn brute_force_head(spectrum: &[(f64, u64)], threshold: f64) -> (u64, f64) {
    spectrum
        .iter()
        .take_while(|(v, _)| *v > threshold)
        .fold((0, 0.0), |(c, s), &(v, m)| (c + m, s + v * m as f64))
}

/// `(#{h : r(h) ≥ v}, Σ_{r(h) < v} r(h))`.
///
/// Coordinates are fixed one at a time; once the running product drops
/// below `v` the rest of the lattice contributes the closed-form product
/// `Π_{i ≥ j} (1 + 2ζ(α)γ_i)`, and once a single coordinate's factor drops
/// below `v` its remaining ranks contribute a zeta tail.
pub fn split_at(spec: &ProblemSpec, v: f64) -> Result<(u64, f64)> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(domain(format!("split value must lie in (0, 1], got {v}")));
    }
    let zeta = riemann_zeta(spec.alpha())?.value;
    let w = spec.weights();
    let mut suffix = vec![1.0; w.len() + 1];
    for j in (0..w.len()).rev() {
        suffix[j] = suffix[j + 1] * (1.0 + 2.0 * zeta * w[j]);
    }
    let mut s = Split {
        w,
        alpha: spec.alpha(),
        zeta,
        suffix,
        v,
    };
    Ok(s.go(0, 1.0))
}

struct Split<'a> {
    w: &'a [f64],
    alpha: f64,
    zeta: f64,
    suffix: Vec<f64>,
    v: f64,
}

impl Split<'_> {
    fn go(&mut self, j: usize, p: f64) -> (u64, f64) {
        if p < self.v {
            return (0, p * self.suffix[j]);
        }
        if j == self.w.len() {
            return (1, 0.0);
        }
        let (mut count, mut sum) = self.go(j + 1, p);
        let g = self.w[j];
        let mut head_zeta = 0.0;
        let mut m = 1u64;
        loop {
            let km = (m as f64).powf(-self.alpha);
            let q = p * g * km;
            if q < self.v {
                let tail = (self.zeta - head_zeta).max(0.0);
                sum += 2.0 * p * g * tail * self.suffix[j + 1];
                return (count, sum);
            }
            let (c, s) = self.go(j + 1, q);
            count += 2 * c;
            sum += 2.0 * s;
            head_zeta += km;
            m += 1;
        }
    }
}
