//! Information complexity over `(d, ε)` grids.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexity::{info_complexity, ComplexityResult};
use crate::error::{domain, Error, Result};
use crate::spectrum::{Criterion, InfoClass, Norm, ProblemSpec, DEFAULT_CAP};
use crate::weights::WeightFamily;

/// Everything but the dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveTemplate {
    pub family: WeightFamily,
    pub alpha: f64,
    pub p: Norm,
    pub info_class: InfoClass,
    pub criterion: Criterion,
    pub cap: u64,
}

impl CurveTemplate {
    pub fn new(family: WeightFamily, alpha: f64) -> Self {
        CurveTemplate {
            family,
            alpha,
            p: Norm::L2,
            info_class: InfoClass::All,
            criterion: Criterion::Abs,
            cap: DEFAULT_CAP,
        }
    }

    pub fn spec(&self, d: usize) -> Result<ProblemSpec> {
        Ok(ProblemSpec::new(d, self.alpha, self.family.clone())?
            .with_norm(self.p)?
            .with_class(self.info_class)
            .with_criterion(self.criterion)
            .with_cap(self.cap))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveCell {
    pub d: usize,
    pub eps: f64,
    pub result: Option<ComplexityResult>,
    /// set when the cell could not be evaluated
    pub error: Option<String>,
    pub runtime_ms: f64,
}

impl CurveCell {
    pub fn n(&self) -> Option<u64> {
        self.result.map(|r| r.n)
    }

    pub fn capped(&self) -> bool {
        self.result.is_some_and(|r| r.capped)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityCurve {
    pub template: CurveTemplate,
    /// ordered by `d`, then by `eps`, as given
    pub cells: Vec<CurveCell>,
}

/// Whether to record wall-clock time per cell. `Omit` writes zero, which
/// makes serialized curves reproducible byte for byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Timing {
    #[default]
    Record,
    Omit,
}

/// Evaluates `n(ε, d)` for every pair; cells run in parallel and are
/// returned in grid order. Per-cell failures are recorded, not raised.
pub fn run_curve(
    template: &CurveTemplate,
    eps_list: &[f64],
    d_list: &[usize],
    timing: Timing,
) -> Result<ComplexityCurve> {
    if eps_list.is_empty() || d_list.is_empty() {
        return Err(domain("curve needs at least one eps and one d"));
    }
    if let Some(e) = eps_list.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
        return Err(domain(format!("eps must lie in (0, 1), got {e}")));
    }
    let grid: Vec<(usize, f64)> = d_list
        .iter()
        .flat_map(|&d| eps_list.iter().map(move |&e| (d, e)))
        .collect();
    let cells = grid
        .par_iter()
        .map(|&(d, eps)| {
            let start = Instant::now();
            let out = template.spec(d).and_then(|s| info_complexity(&s, eps));
            let runtime_ms = match timing {
                Timing::Record => start.elapsed().as_secs_f64() * 1e3,
                Timing::Omit => 0.0,
            };
            let (result, error) = match out {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            };
            CurveCell {
                d,
                eps,
                result,
                error,
                runtime_ms,
            }
        })
        .collect();
    Ok(ComplexityCurve {
        template: template.clone(),
        cells,
    })
}

pub const CSV_HEADER: [&str; 5] = ["d", "eps", "n", "capped", "runtime_ms"];

impl ComplexityCurve {
    /// CSV with header `d,eps,n,capped,runtime_ms`; failed cells leave `n`
    /// empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(CSV_HEADER).map_err(io)?;
        for c in &self.cells {
            w.write_record([
                c.d.to_string(),
                c.eps.to_string(),
                c.n().map(|n| n.to_string()).unwrap_or_default(),
                c.capped().to_string(),
                c.runtime_ms.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve serializes")
    }
}
