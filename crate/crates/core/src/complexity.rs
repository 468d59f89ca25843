//! n-th minimal worst-case errors, initial errors and information
//! complexity for `L_2`/`L_∞` approximation with `Λ^all`, plus the
//! computable bounds available for `Λ^std`.
//!
//! With `λ_{d,1} ≥ λ_{d,2} ≥ …` the ordered eigenvalues of `W_d`:
//!
//! * `e(n, APP_2, Λ^all) = λ_{n+1}^{1/2}`
//! * `e(n, APP_∞, Λ^all) = (Σ_{k>n} λ_k)^{1/2}`
//!
//! and the information complexity is the least `n` pushing the error below
//! `ε·CRI`. For `L_2` both criteria coincide (`CRI = 1`). The `L_∞` tail
//! quantities are also those of average-case `L_2` approximation under the
//! Gaussian measure whose covariance is the Korobov kernel.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numerics::{next_prime, riemann_zeta, CompensatedSum};
use crate::spectrum::{
    head_above, head_with_band, log_total_sum, total_sum, Criterion, HeadStats, InfoClass, Norm,
    ProblemSpec, SpectrumCursor,
};

/// Evidence that `n` is the information complexity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `lambda_n > ε² ≥ lambda_next`
    L2 { lambda_n: f64, lambda_next: f64 },
    /// `tail ≤ target < tail_prev`, with `tail = Σ_{k>n} λ_k`,
    /// `tail_prev = Σ_{k≥n} λ_k` and `target = ε²·CRI²`
    LInf {
        tail: f64,
        tail_prev: f64,
        target: f64,
    },
    /// The enumeration cap was hit; `n` is only a lower bound.
    Capped,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityResult {
    pub n: u64,
    /// when set, `n` is a certified lower bound rather than the exact value
    pub capped: bool,
    pub witness: Witness,
}

impl ComplexityResult {
    fn capped(n: u64) -> Self {
        ComplexityResult {
            n,
            capped: true,
            witness: Witness::Capped,
        }
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("eps must lie in (0, 1), got {eps}")))
    }
}

fn require_all(spec: &ProblemSpec) -> Result<()> {
    match spec.info_class() {
        InfoClass::All => Ok(()),
        InfoClass::Std => Err(Error::UnsupportedClass(
            "only bounds are available for Λ^std; exact minimal errors and \
             complexities are known for Λ^all only"
                .into(),
        )),
    }
}

/// `e(0, APP_{d,p}) = ‖APP_{d,p}‖`: 1 for `L_2`, `(Π_j(1+2ζ(α)γ_j))^{1/2}`
/// for `L_∞`. Evaluated through the logarithm so only truly astronomical
/// dimensions return `inf`.
pub fn initial_error(spec: &ProblemSpec) -> Result<f64> {
    match spec.p() {
        Norm::L2 => Ok(1.0),
        _ => Ok((0.5 * log_total_sum(spec)?).exp()),
    }
}

/// Sum of the `n` largest eigenvalues; a block is split when `n` falls
/// inside it.
pub fn head_sum(spec: &ProblemSpec, n: u64) -> Result<f64> {
    let mut cursor = SpectrumCursor::new(spec);
    let mut acc = CompensatedSum::default();
    let mut taken = 0u64;
    while taken < n {
        let block = cursor.next_eigenvalue()?;
        let k = block.multiplicity.min(n - taken);
        acc.add(block.lambda * k as f64);
        taken += k;
    }
    Ok(acc.value())
}

/// `λ_{d,n}` for `n ≥ 1`.
pub fn nth_eigenvalue(spec: &ProblemSpec, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(domain("eigenvalues are indexed from 1"));
    }
    let mut cursor = SpectrumCursor::new(spec);
    loop {
        let block = cursor.next_eigenvalue()?;
        if cursor.emitted_count() >= n {
            return Ok(block.lambda);
        }
    }
}

/// `e(n, APP_{d,p}, Λ^all)`.
pub fn minimal_error_all(spec: &ProblemSpec, n: u64) -> Result<f64> {
    require_all(spec)?;
    match spec.p() {
        Norm::L2 => Ok(nth_eigenvalue(spec, n + 1)?.sqrt()),
        _ => {
            let tail = total_sum(spec)? - head_sum(spec, n)?;
            Ok(tail.max(0.0).sqrt())
        }
    }
}

/// `n(ε, APP_{d,p}, Λ^all)` with a witness of the defining inequalities.
///
/// Hitting the spec's cap is not an error: the result is flagged `capped`
/// and `n` is then a certified lower bound.
pub fn info_complexity(spec: &ProblemSpec, eps: f64) -> Result<ComplexityResult> {
    check_eps(eps)?;
    require_all(spec)?;
    let t = eps * eps;
    match spec.p() {
        Norm::L2 => match head_above(spec, t) {
            Ok(head) => Ok(ComplexityResult {
                n: head.count,
                capped: false,
                witness: Witness::L2 {
                    lambda_n: head.min_included,
                    lambda_next: head.max_excluded,
                },
            }),
            Err(Error::CapExceeded { lower_bound, .. }) => {
                Ok(ComplexityResult::capped(lower_bound))
            }
            Err(e) => Err(e),
        },
        _ => info_complexity_linf(spec, eps),
    }
}

fn info_complexity_linf(spec: &ProblemSpec, eps: f64) -> Result<ComplexityResult> {
    let t = eps * eps;
    let log_total = log_total_sum(spec)?;
    // n ≥ (1-ε²)·Σλ for NORM, and n_abs ≥ n_norm
    let log_lower = (1.0 - t).ln() + log_total;
    if log_lower > (spec.cap() as f64).ln() {
        let lower = log_lower.exp();
        let n = if lower >= u64::MAX as f64 { u64::MAX } else { lower.ceil() as u64 };
        return Ok(ComplexityResult::capped(n));
    }
    let total = total_sum(spec)?;
    let target = match spec.criterion() {
        Criterion::Abs => t,
        Criterion::Norm => t * total,
    };
    if total - 1.0 <= target {
        return Ok(ComplexityResult {
            n: 1,
            capped: false,
            witness: Witness::LInf {
                tail: total - 1.0,
                tail_prev: total,
                target,
            },
        });
    }

    let probe = |threshold: f64| match head_above(spec, threshold) {
        Ok(h) if total - h.sum <= target => Ok(Probe::Enough(h)),
        Ok(h) => Ok(Probe::NotEnough(h)),
        Err(Error::CapExceeded { .. }) => Ok(Probe::Capped),
        Err(e) => Err(e),
    };

    // the virtual threshold 1 has nothing above it
    let mut hi = (
        1.0,
        HeadStats {
            count: 0,
            sum: 0.0,
            min_included: f64::INFINITY,
            max_excluded: 1.0,
        },
    );
    let mut lo_t = 0.5;
    let mut lo_stats = loop {
        match probe(lo_t)? {
            Probe::Enough(h) => break Some(h),
            Probe::Capped => break None,
            Probe::NotEnough(h) => {
                hi = (lo_t, h);
                lo_t *= 0.5;
            }
        }
    };

    let mut capped_probes = 0;
    loop {
        if let Some(h) = &lo_stats {
            if h.count - hi.1.count <= BAND {
                break;
            }
        } else if capped_probes >= CAPPED_PROBES {
            return Ok(ComplexityResult::capped(hi.1.count + 1));
        }
        let mid = (lo_t * hi.0).sqrt();
        if !(mid > lo_t && mid < hi.0) {
            break;
        }
        match probe(mid)? {
            Probe::Enough(h) => {
                lo_t = mid;
                lo_stats = Some(h);
            }
            Probe::NotEnough(h) => hi = (mid, h),
            Probe::Capped => {
                lo_t = mid;
                lo_stats = None;
                capped_probes += 1;
            }
        }
    }
    if lo_stats.is_none() {
        return Ok(ComplexityResult::capped(hi.1.count + 1));
    }

    let band = match head_with_band(spec, lo_t, hi.0) {
        Ok((_, band)) => band,
        Err(Error::CapExceeded { .. }) => return Ok(ComplexityResult::capped(hi.1.count + 1)),
        Err(e) => return Err(e),
    };
    let mut head = CompensatedSum::default();
    head.add(hi.1.sum);
    let mut n = hi.1.count;
    let last = band.len().saturating_sub(1);
    for (i, &(v, mult)) in band.iter().enumerate() {
        let tail = total - head.value();
        // the final block must cross; only rounding could say otherwise
        if tail - v * mult as f64 <= target || i == last {
            let mut k = (((tail - target) / v).ceil() as u64).clamp(1, mult);
            while k < mult && tail - v * k as f64 > target {
                k += 1;
            }
            while k > 1 && tail - v * (k - 1) as f64 <= target {
                k -= 1;
            }
            if n + k > spec.cap() {
                return Ok(ComplexityResult::capped(n.max(1)));
            }
            return Ok(ComplexityResult {
                n: n + k,
                capped: false,
                witness: Witness::LInf {
                    tail: tail - v * k as f64,
                    tail_prev: tail - v * (k - 1) as f64,
                    target,
                },
            });
        }
        head.add(v * mult as f64);
        n += mult;
    }
    Err(Error::DegenerateInput("threshold bracket holds no eigenvalue".into()))
}

/// Width, in eigenvalue count, at which the threshold bisection stops and
/// the remaining band is enumerated explicitly.
const BAND: u64 = 1 << 16;

/// Probes allowed once the cap has been hit; past them the result is
/// reported capped.
const CAPPED_PROBES: u32 = 4;

enum Probe {
    /// the eigenvalues above the threshold already bring the tail to target
    Enough(HeadStats),
    NotEnough(HeadStats),
    Capped,
}

/// `(1-ε²)·Π_j(1+2ζ(α)γ_j)`, a lower bound on `n_norm(ε, APP_{d,∞}, Λ^all)`
/// since every eigenvalue is at most 1.
pub fn qpt_lower_bound(spec: &ProblemSpec, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    Ok((1.0 - eps * eps) * total_sum(spec)?)
}

fn check_lambda(spec: &ProblemSpec, lambda: f64) -> Result<()> {
    if lambda > 0.5 && lambda < spec.alpha() / 2.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "lambda must lie in (1/2, alpha/2) = (0.5, {}), got {lambda}",
            spec.alpha() / 2.0
        )))
    }
}

/// `λ(2λ-1)/(4λ-1)`, the convergence rate in `n` of the lattice spline bound.
pub fn spline_rate(lambda: f64) -> f64 {
    lambda * (2.0 * lambda - 1.0) / (4.0 * lambda - 1.0)
}

/// `ln Π_j (1 + 2^{2α+1} γ_j^{1/(2λ)} ζ(α/(2λ)))^{2λ}`.
fn spline_log_product(spec: &ProblemSpec, lambda: f64) -> Result<f64> {
    let alpha = spec.alpha();
    let zeta = riemann_zeta(alpha / (2.0 * lambda))?.value;
    let scale = (2.0 * alpha + 1.0).exp2() * zeta;
    let inv = 1.0 / (2.0 * lambda);
    let sum: f64 = spec
        .weights()
        .iter()
        .map(|g| (scale * g.powf(inv)).ln_1p())
        .sum();
    Ok(2.0 * lambda * sum)
}

/// Logarithm of the worst-case `L_∞` error bound of the lattice-based spline
/// algorithm with `n` nodes:
/// `ln(√2 / n^{λ(2λ-1)/(4λ-1)} · Π_j (1 + 2^{2α+1} γ_j^{1/(2λ)} ζ(α/(2λ)))^{2λ})`.
pub fn spline_log_error_bound(spec: &ProblemSpec, lambda: f64, n: u64) -> Result<f64> {
    check_lambda(spec, lambda)?;
    if n == 0 {
        return Err(domain("the spline bound needs n ≥ 1 nodes"));
    }
    Ok(0.5 * std::f64::consts::LN_2 - spline_rate(lambda) * (n as f64).ln()
        + spline_log_product(spec, lambda)?)
}

/// The spline error bound itself; may be `inf` in high dimension, use
/// [`spline_log_error_bound`] there.
pub fn spline_error_bound(spec: &ProblemSpec, lambda: f64, n: u64) -> Result<f64> {
    spline_log_error_bound(spec, lambda, n).map(f64::exp)
}

/// `ln` of the node count before rounding:
/// `(√2/ε · Π_j(…)^{2λ})^{(4λ-1)/(λ(2λ-1))}`.
pub fn spline_log_m(spec: &ProblemSpec, eps: f64, lambda: f64) -> Result<f64> {
    check_eps(eps)?;
    check_lambda(spec, lambda)?;
    let inner = 0.5 * std::f64::consts::LN_2 - eps.ln() + spline_log_product(spec, lambda)?;
    Ok(inner / spline_rate(lambda))
}

/// A node count for which the spline algorithm meets `ε` in `L_∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplineSufficient {
    pub lambda: f64,
    /// `ln M` before rounding up
    pub log_m: f64,
    pub m: u64,
    /// smallest prime `≥ M`, within `[M, 2M]`
    pub n: u64,
}

/// Largest `M` handed to the prime search; keeps `2M` inside `u64`.
const SPLINE_M_LIMIT: f64 = 9.2e18;

/// `M = ⌈…⌉` and the prime `n ≥ M` that bound `n_abs(ε, APP_{d,∞}, Λ^std)`
/// from above. Fails with `Overflow` (carrying `ln M`) when `M` leaves the
/// integer range.
pub fn spline_n_sufficient(spec: &ProblemSpec, eps: f64, lambda: f64) -> Result<SplineSufficient> {
    let log_m = spline_log_m(spec, eps, lambda)?;
    let raw = log_m.exp();
    if !(raw < SPLINE_M_LIMIT) {
        return Err(Error::Overflow {
            what: "spline node count exceeds integer range",
            log_value: log_m,
        });
    }
    let m = (raw.ceil() as u64).max(1);
    Ok(SplineSufficient {
        lambda,
        log_m,
        m,
        n: next_prime(m)?,
    })
}

/// Margin kept from both ends of `(1/2, α/2)` by the optimizer.
pub const LAMBDA_MARGIN: f64 = 1e-3;

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// The `λ` minimizing `ln M` over `[1/2 + 10⁻³, α/2 − 10⁻³]` together with
/// `ln M` there.
///
/// A 64-cell grid (which includes the midpoint and quartiles) picks the
/// best bracket and golden-section search refines inside it; the returned
/// point is never worse than any grid point.
pub fn optimize_spline_log_m(spec: &ProblemSpec, eps: f64) -> Result<(f64, f64)> {
    check_eps(eps)?;
    let lo = 0.5 + LAMBDA_MARGIN;
    let hi = spec.alpha() / 2.0 - LAMBDA_MARGIN;
    if !(hi > lo) {
        return Err(domain(format!(
            "alpha = {} leaves no room for lambda in (1/2, alpha/2)",
            spec.alpha()
        )));
    }
    let f = |l: f64| spline_log_m(spec, eps, l);
    const CELLS: usize = 64;
    let grid: Vec<f64> = (0..=CELLS)
        .map(|i| lo + (hi - lo) * i as f64 / CELLS as f64)
        .collect();
    let values = grid.iter().map(|&l| f(l)).collect::<Result<Vec<_>>>()?;
    let best = (0..=CELLS)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .expect("non-empty grid");

    let (mut a, mut b) = (grid[best.saturating_sub(1)], grid[(best + 1).min(CELLS)]);
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > 1e-12 * (1.0 + a.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d)?;
        }
    }
    let (l, v) = if fc < fd { (c, fc) } else { (d, fd) };
    Ok(if v <= values[best] { (l, v) } else { (grid[best], values[best]) })
}

/// [`spline_n_sufficient`] at the optimized `λ`.
pub fn optimize_spline_lambda(spec: &ProblemSpec, eps: f64) -> Result<SplineSufficient> {
    let (lambda, _) = optimize_spline_log_m(spec, eps)?;
    spline_n_sufficient(spec, eps, lambda)
}
