//! Empirical exponents: the SPT exponent from complexity curves, and a
//! numerical estimate of the sum exponent used to cross-check the closed
//! forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::fit_loglog_slope;
use crate::weights::{Exponent, ExponentValue, Provenance, WeightFamily};

use super::curve::ComplexityCurve;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SptFit {
    /// max over `d` of the per-`d` slopes
    pub tau_hat: f64,
    /// `(d, slope of ln n against ln 1/ε)`
    pub per_d: Vec<(usize, f64)>,
}

/// Fits `ln n ≈ τ ln(1/ε) + c` separately for each dimension, using only
/// uncapped cells; SPT asks for a bound uniform in `d`, so the estimate is
/// the largest slope.
pub fn fit_spt_exponent(curve: &ComplexityCurve) -> Result<SptFit> {
    let mut dims: Vec<usize> = curve.cells.iter().map(|c| c.d).collect();
    dims.sort_unstable();
    dims.dedup();
    if dims.is_empty() {
        return Err(Error::InsufficientData("curve has no cells".into()));
    }
    let mut per_d = Vec::with_capacity(dims.len());
    for d in dims {
        let points: Vec<(f64, f64)> = curve
            .cells
            .iter()
            .filter(|c| c.d == d && !c.capped())
            .filter_map(|c| c.n().map(|n| (1.0 / c.eps, n as f64)))
            .collect();
        if points.len() < 3 {
            return Err(Error::InsufficientData(format!(
                "d = {d} has {} uncapped cells, at least 3 are needed",
                points.len()
            )));
        }
        let (slope, _) = fit_loglog_slope(&points)?;
        per_d.push((d, slope));
    }
    let tau_hat = per_d.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(SptFit { tau_hat, per_d })
}

/// Numerical bracket for `s_γ = inf{κ : Σ_j γ_j^κ < ∞}`.
///
/// A power `κ` is judged convergent when the increment of the partial sum
/// over `(D, 2D]` is smaller than over `(D/2, D]` by a factor below
/// `1 - 10⁻³`. Bisection on `κ ∈ (0, kappa_max]` then brackets the switch.
/// Slow boundary behavior (e.g. logarithmic factors) can fool the test,
/// which is why the closed forms are authoritative.
pub fn estimate_sum_exponent(family: &WeightFamily, depth: usize, kappa_max: f64) -> Result<ExponentValue> {
    if depth < 4 {
        return Err(Error::InsufficientData("depth must be at least 4".into()));
    }
    let weights = family.first(depth)?;
    let converges = |kappa: f64| {
        let sum = |a: usize, b: usize| weights[a..b].iter().map(|g| g.powf(kappa)).sum::<f64>();
        let (q, h) = (depth / 4, depth / 2);
        let early = sum(q, h);
        let late = sum(h, depth);
        // an exhausted tail (all terms underflowed) counts as convergent
        early == 0.0 || late < (1.0 - 1e-3) * early
    };
    if !converges(kappa_max) {
        return Ok(ExponentValue {
            value: Exponent::Infinite,
            provenance: Provenance::NumericalEstimate {
                lo: kappa_max,
                hi: f64::INFINITY,
            },
        });
    }
    let (mut lo, mut hi) = (0.0, kappa_max);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if converges(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ExponentValue {
        value: Exponent::Finite(0.5 * (lo + hi)),
        provenance: Provenance::NumericalEstimate { lo, hi },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::{ComplexityResult, Witness};
    use crate::harness::curve::{CurveCell, CurveTemplate};
    use rand::{Rng, SeedableRng};

    fn synthetic(f: impl Fn(usize, f64) -> u64, capped_below: f64) -> ComplexityCurve {
        let eps: Vec<f64> = (0..9).map(|i| 10f64.powf(-1.0 - 2.0 * i as f64 / 8.0)).collect();
        let mut cells = Vec::new();
        for d in 1..=3 {
            for &e in &eps {
                let capped = e < capped_below;
                cells.push(CurveCell {
                    d,
                    eps: e,
                    result: Some(ComplexityResult {
                        n: f(d, e),
                        capped,
                        witness: Witness::Capped,
                    }),
                    error: None,
                    runtime_ms: 0.0,
                });
            }
        }
        ComplexityCurve {
            template: CurveTemplate::new(WeightFamily::constant(1.0).unwrap(), 2.0),
            cells,
        }
    }

    #[test]
    fn planted_power_law() {
        let fit = fit_spt_exponent(&synthetic(|_, e| (e.powi(-2)).ceil() as u64, 0.0)).unwrap();
        assert!((fit.tau_hat - 2.0).abs() < 0.05, "{}", fit.tau_hat);
        assert_eq!(fit.per_d.len(), 3);
    }

    #[test]
    fn flat_curve() {
        let fit = fit_spt_exponent(&synthetic(|d, _| 7 * d as u64, 0.0)).unwrap();
        assert!(fit.tau_hat.abs() < 1e-12);
    }

    #[test]
    fn tau_hat_is_max_over_d() {
        let fit = fit_spt_exponent(&synthetic(|d, e| e.powf(-(d as f64) * 0.5).ceil() as u64 * 100, 0.0)).unwrap();
        assert!((fit.tau_hat - 1.5).abs() < 0.05);
    }

    #[test]
    fn capped_cells_are_dropped() {
        // only 2 of 9 cells per d stay uncapped
        let c = synthetic(|_, e| (1.0 / e) as u64, 0.04);
        assert!(matches!(fit_spt_exponent(&c), Err(Error::InsufficientData(_))));
        let c = synthetic(|_, e| (1.0 / e) as u64 * if e < 0.01 { 1000 } else { 1 }, 0.01);
        let fit = fit_spt_exponent(&c).unwrap();
        assert!((fit.tau_hat - 1.0).abs() < 0.05, "{}", fit.tau_hat);
    }

    #[test]
    fn noisy_power_laws() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for truth in [0.5, 1.0, 2.0, 3.0] {
            let noise: Vec<f64> = (0..27).map(|_| 1.0 + rng.gen_range(-0.01..0.01)).collect();
            let c = synthetic(
                |d, e| {
                    let k = (d - 1) * 9 + ((-e.log10() - 1.0) * 4.0).round() as usize;
                    (1e3 * e.powf(-truth) * noise[k]).round() as u64
                },
                0.0,
            );
            let fit = fit_spt_exponent(&c).unwrap();
            assert!((fit.tau_hat - truth).abs() < 0.05, "{truth}: {}", fit.tau_hat);
        }
    }

    #[test]
    fn sum_exponent_estimates_bracket_closed_forms() {
        for beta in [1.5, 2.0, 4.0] {
            let f = WeightFamily::polynomial(1.0, beta).unwrap();
            let est = estimate_sum_exponent(&f, 1 << 16, 4.0).unwrap();
            let Provenance::NumericalEstimate { lo, hi } = est.provenance else { panic!() };
            assert!(lo <= hi);
            let truth = f.sum_exponent().unwrap().finite().unwrap();
            assert!((est.finite().unwrap() - truth).abs() < 0.02, "β={beta}: {lo}..{hi}");
        }
        let g = WeightFamily::geometric(1.0, 0.5).unwrap();
        assert!(estimate_sum_exponent(&g, 1 << 12, 4.0).unwrap().finite().unwrap() < 0.01);
        let c = WeightFamily::constant(0.5).unwrap();
        assert_eq!(estimate_sum_exponent(&c, 1 << 12, 4.0).unwrap().value, Exponent::Infinite);
    }
}
