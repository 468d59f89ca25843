//! Cell-by-cell check of the `L_∞` sandwich
//! `(1-ε²)·Π_j(1+2ζ(α)γ_j) ≤ n_norm ≤ n_abs ≤ n_spline`.

use serde::{Deserialize, Serialize};

use crate::complexity::{info_complexity, optimize_spline_lambda, optimize_spline_log_m, qpt_lower_bound};
use crate::error::{domain, Error, Result};
use crate::spectrum::{Criterion, InfoClass, Norm};

use super::curve::CurveTemplate;

/// Test hooks for the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsOptions {
    /// multiplies the trace entering the lower bound; 1 outside fault
    /// injection
    pub total_sum_scale: f64,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        BoundsOptions { total_sum_scale: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Pass,
    Fail,
    /// a complexity hit the cap, nothing was checked
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsCell {
    pub d: usize,
    pub eps: f64,
    pub status: CellStatus,
    pub lower_bound: f64,
    pub n_norm: Option<u64>,
    pub n_abs: Option<u64>,
    /// `n` of the lattice spline algorithm; `None` when it leaves `u64`
    pub n_spline: Option<u64>,
    pub spline_log_m: Option<f64>,
    pub spline_lambda: Option<f64>,
    /// `n_norm - lower_bound`
    pub lower_margin: Option<f64>,
    /// `ln n_spline - ln n_abs` (uses `ln M` when `n_spline` overflows)
    pub upper_log_margin: Option<f64>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub cells: Vec<BoundsCell>,
}

impl BoundsReport {
    pub fn all_passed(&self) -> bool {
        self.cells.iter().all(|c| c.status != CellStatus::Fail)
    }

    pub fn count(&self, status: CellStatus) -> usize {
        self.cells.iter().filter(|c| c.status == status).count()
    }
}

/// Runs the sandwich on every `(d, ε)`; the template's family, `α` and cap
/// are used, with `p = ∞` forced.
pub fn verify_bounds(
    template: &CurveTemplate,
    eps_list: &[f64],
    d_list: &[usize],
    options: BoundsOptions,
) -> Result<BoundsReport> {
    if eps_list.is_empty() || d_list.is_empty() {
        return Err(domain("bounds sweep needs at least one eps and one d"));
    }
    let mut cells = Vec::with_capacity(eps_list.len() * d_list.len());
    for &d in d_list {
        let base = template.spec(d)?.with_norm(Norm::LInf)?.with_class(InfoClass::All);
        let norm = base.clone().with_criterion(Criterion::Norm);
        let abs = base.with_criterion(Criterion::Abs);
        for &eps in eps_list {
            cells.push(check_cell(&norm, &abs, d, eps, options)?);
        }
    }
    Ok(BoundsReport { cells })
}

fn check_cell(
    norm: &crate::spectrum::ProblemSpec,
    abs: &crate::spectrum::ProblemSpec,
    d: usize,
    eps: f64,
    options: BoundsOptions,
) -> Result<BoundsCell> {
    let lower_bound = qpt_lower_bound(norm, eps)? * options.total_sum_scale;
    let rn = info_complexity(norm, eps)?;
    let ra = info_complexity(abs, eps)?;
    let mut cell = BoundsCell {
        d,
        eps,
        status: CellStatus::Skipped,
        lower_bound,
        n_norm: Some(rn.n),
        n_abs: Some(ra.n),
        n_spline: None,
        spline_log_m: None,
        spline_lambda: None,
        lower_margin: None,
        upper_log_margin: None,
        failures: Vec::new(),
    };
    if rn.capped || ra.capped {
        return Ok(cell);
    }

    let (lambda, log_m) = optimize_spline_log_m(abs, eps)?;
    cell.spline_lambda = Some(lambda);
    cell.spline_log_m = Some(log_m);
    let log_upper = match optimize_spline_lambda(abs, eps) {
        Ok(s) => {
            cell.n_spline = Some(s.n);
            (s.n as f64).ln()
        }
        Err(Error::Overflow { log_value, .. }) => log_value,
        Err(e) => return Err(e),
    };
    cell.lower_margin = Some(rn.n as f64 - lower_bound);
    cell.upper_log_margin = Some(log_upper - (ra.n as f64).ln());

    if (rn.n as f64) < lower_bound {
        cell.failures.push(format!("n_norm = {} < lower bound {lower_bound}", rn.n));
    }
    if rn.n > ra.n {
        cell.failures.push(format!("n_norm = {} > n_abs = {}", rn.n, ra.n));
    }
    let upper_ok = match cell.n_spline {
        Some(n) => ra.n <= n,
        None => (ra.n as f64).ln() <= log_upper,
    };
    if !upper_ok {
        cell.failures.push(format!("n_abs = {} exceeds the spline node count", ra.n));
    }
    cell.status = if cell.failures.is_empty() {
        CellStatus::Pass
    } else {
        CellStatus::Fail
    };
    Ok(cell)
}
