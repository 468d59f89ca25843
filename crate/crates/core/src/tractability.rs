//! Tractability verdicts for product weights.
//!
//! Each notion is evaluated against a necessary and a sufficient condition
//! on the weights. For `L_2` the two coincide. For `L_∞` several notions
//! have non-matching conditions, and a verdict of [`Verdict::Open`] is
//! returned there rather than a guess. For `p ∈ (2, ∞)` under the absolute
//! criterion the necessary side comes from the `L_2` characterization and
//! the sufficient side from the `L_∞` one.
//!
//! Verdicts are then closed under the notion hierarchy
//! `SPT ⇒ PT ⇒ QPT ⇒ UWT ⇒ (σ,τ)-WT (σ ≤ 1) ⇒ WT`: an open verdict below a
//! holding notion becomes `Holds`, and one above a failing notion becomes
//! `Fails`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::spectrum::{Criterion, InfoClass, Norm};
use crate::weights::WeightFamily;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Notion {
    Spt,
    Pt,
    Qpt,
    Uwt,
    Wt,
    /// `(σ,τ)`-weak tractability; the conditions do not involve `τ`.
    SigmaWt(f64),
}

impl Notion {
    /// Key used in reports, e.g. `"QPT"` or `"WT[sigma=0.5]"`.
    pub fn key(&self) -> String {
        match self {
            Notion::Spt => "SPT".into(),
            Notion::Pt => "PT".into(),
            Notion::Qpt => "QPT".into(),
            Notion::Uwt => "UWT".into(),
            Notion::Wt => "WT".into(),
            Notion::SigmaWt(s) => format!("WT[sigma={s}]"),
        }
    }
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    /// The known necessary and sufficient conditions disagree.
    Open { nec: bool, suff: bool },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("Holds"),
            Verdict::Fails => f.write_str("Fails"),
            Verdict::Open { nec, suff } => write!(f, "OpenGap (nec={nec}, suff={suff})"),
        }
    }
}

/// One evaluated condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub text: String,
    pub value: bool,
}

fn cond(text: impl Into<String>, value: bool) -> Condition {
    Condition {
        text: text.into(),
        value,
    }
}

/// Conditions behind one verdict. A missing necessary condition counts as
/// satisfied, a missing sufficient one as not established.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub notion: String,
    pub necessary: Option<Condition>,
    pub sufficient: Option<Condition>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecSummary {
    pub family: WeightFamily,
    pub alpha: f64,
    pub p: Norm,
    pub info_class: InfoClass,
    pub criterion: Criterion,
    pub sigma_grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TractabilityReport {
    pub spec: SpecSummary,
    pub verdicts: BTreeMap<String, Verdict>,
    /// exponent of strong polynomial tractability, when known
    pub tau_star: Option<f64>,
    /// exponent of quasi-polynomial tractability, when known
    pub t_star: Option<f64>,
    /// per-notion conditions in hierarchy order
    pub conditions: Vec<Evaluation>,
    pub notes: Vec<String>,
}

impl TractabilityReport {
    pub fn verdict(&self, notion: Notion) -> Option<Verdict> {
        self.verdicts.get(&notion.key()).copied()
    }
}

/// The summaries of `γ` every rule is phrased in.
struct Facts {
    s: f64,
    t: f64,
    gamma_i: f64,
    sum_converges: bool,
    log_bounded: bool,
    mean_vanishes_all: bool,
    u_below_one_all: bool,
}

impl Facts {
    fn new(family: &WeightFamily) -> Result<Self> {
        let inf = |e: crate::weights::ExponentValue| e.finite().unwrap_or(f64::INFINITY);
        Ok(Facts {
            s: inf(family.sum_exponent()?),
            t: inf(family.t_exponent()?),
            gamma_i: family.gamma_inf().value,
            sum_converges: family.sum_converges()?,
            log_bounded: family.log_growth_bounded()?,
            mean_vanishes_all: family.mean_vanishes_all_sigma()?,
            u_below_one_all: family.u_below_one_all_sigma()?,
        })
    }
}

const LOG_BOUNDED: &str = "limsup_d Σ_{j≤d} γ_j / ln(d+1) < ∞";

fn l2_all(n: Notion, f: &Facts) -> Condition {
    match n {
        Notion::Spt | Notion::Pt => cond("s_γ < ∞", f.s.is_finite()),
        Notion::SigmaWt(s) if s > 1.0 => cond("none (σ > 1)", true),
        _ => cond("γ_I < 1", f.gamma_i < 1.0),
    }
}

fn l2_std(n: Notion, f: &Facts, family: &WeightFamily) -> Result<Condition> {
    Ok(match n {
        Notion::Spt => cond("Σ_j γ_j < ∞", f.sum_converges),
        Notion::Pt | Notion::Qpt => cond(LOG_BOUNDED, f.log_bounded),
        Notion::Uwt => cond("lim_d d^{-σ} Σ_{j≤d} γ_j = 0 for all σ ∈ (0,1]", f.mean_vanishes_all),
        Notion::Wt => cond("lim_d d^{-1} Σ_{j≤d} γ_j = 0", family.mean_vanishes(1.0)?),
        Notion::SigmaWt(s) if s > 1.0 => cond("none (σ > 1)", true),
        Notion::SigmaWt(s) => cond(
            format!("lim_d d^{{-{s}}} Σ_{{j≤d}} γ_j = 0"),
            family.mean_vanishes(s)?,
        ),
    })
}

/// `(necessary, sufficient)` for `L_∞`, valid for both classes and criteria.
fn linf(
    n: Notion,
    f: &Facts,
    family: &WeightFamily,
) -> Result<(Option<Condition>, Option<Condition>)> {
    let exact = |c: Condition| (Some(c.clone()), Some(c));
    Ok(match n {
        Notion::Spt => exact(cond("s_γ < 1", f.s < 1.0)),
        Notion::Pt => exact(cond("t_γ < 1", f.t < 1.0)),
        Notion::Qpt => (Some(cond(LOG_BOUNDED, f.log_bounded)), None),
        Notion::Uwt => (
            Some(cond(
                "lim_d d^{-σ} Σ_{j≤d} γ_j = 0 for all σ ∈ (0,1]",
                f.mean_vanishes_all,
            )),
            Some(cond("u_{γ,σ} < 1 for all σ ∈ (0,1]", f.u_below_one_all)),
        ),
        Notion::Wt => (
            Some(cond("lim_d d^{-1} Σ_{j≤d} γ_j = 0", family.mean_vanishes(1.0)?)),
            Some(cond("u_{γ,1} < 1", family.u_exponent(1.0)?.less_than(1.0))),
        ),
        Notion::SigmaWt(s) if s > 1.0 => exact(cond("none (σ > 1)", true)),
        Notion::SigmaWt(s) => (
            Some(cond(
                format!("lim_d d^{{-{s}}} Σ_{{j≤d}} γ_j = 0"),
                family.mean_vanishes(s)?,
            )),
            Some(cond(format!("u_{{γ,{s}}} < 1"), family.u_exponent(s)?.less_than(1.0))),
        ),
    })
}

fn decide(nec: Option<&Condition>, suff: Option<&Condition>) -> Verdict {
    let nec = nec.map_or(true, |c| c.value);
    let suff = suff.is_some_and(|c| c.value);
    if suff {
        Verdict::Holds
    } else if !nec {
        Verdict::Fails
    } else {
        Verdict::Open { nec, suff }
    }
}

fn check_sigma_grid(sigma_grid: &[f64]) -> Result<Vec<f64>> {
    let mut grid = sigma_grid.to_vec();
    if let Some(bad) = grid.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
        return Err(domain(format!("sigma must be positive, got {bad}")));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

/// Per-notion verdicts for the weight family `family` and smoothness `alpha`.
///
/// `sigma_grid` lists the `σ` values for which `(σ,τ)`-WT is reported;
/// values above 1 are allowed and always hold.
pub fn classify(
    family: &WeightFamily,
    alpha: f64,
    p: Norm,
    info_class: InfoClass,
    criterion: Criterion,
    sigma_grid: &[f64],
) -> Result<TractabilityReport> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(domain(format!("alpha must exceed 1, got {alpha}")));
    }
    if matches!(p, Norm::Lp(_)) && criterion == Criterion::Norm {
        return Err(Error::UnsupportedCriterion(
            "L_p approximation for p in (2, inf) is only characterized for the \
             absolute criterion; the normalized case is open"
                .into(),
        ));
    }
    let grid = check_sigma_grid(sigma_grid)?;
    let facts = Facts::new(family)?;

    // hierarchy order; larger σ is a weaker notion
    let mut notions = vec![Notion::Spt, Notion::Pt, Notion::Qpt, Notion::Uwt];
    notions.extend(grid.iter().filter(|s| **s <= 1.0).map(|&s| Notion::SigmaWt(s)));
    notions.push(Notion::Wt);
    let chain_len = notions.len();
    notions.extend(grid.iter().filter(|s| **s > 1.0).map(|&s| Notion::SigmaWt(s)));

    let mut evals = Vec::with_capacity(notions.len());
    for &n in &notions {
        let (nec, suff) = match (p, info_class) {
            (Norm::L2, InfoClass::All) => {
                let c = l2_all(n, &facts);
                (Some(c.clone()), Some(c))
            }
            (Norm::L2, InfoClass::Std) => {
                let c = l2_std(n, &facts, family)?;
                (Some(c.clone()), Some(c))
            }
            (Norm::LInf, _) => linf(n, &facts, family)?,
            (Norm::Lp(_), class) => {
                let nec = match class {
                    InfoClass::All => l2_all(n, &facts),
                    InfoClass::Std => l2_std(n, &facts, family)?,
                };
                (Some(nec), linf(n, &facts, family)?.1)
            }
        };
        let verdict = decide(nec.as_ref(), suff.as_ref());
        evals.push(Evaluation {
            notion: n.key(),
            necessary: nec,
            sufficient: suff,
            verdict,
        });
    }

    let mut notes = Vec::new();
    close_hierarchy(&mut evals[..chain_len], &mut notes);

    let verdicts: BTreeMap<String, Verdict> =
        evals.iter().map(|e| (e.notion.clone(), e.verdict)).collect();
    let spt_holds = verdicts["SPT"] == Verdict::Holds;
    let qpt_holds = verdicts["QPT"] == Verdict::Holds;
    let tau_star = if spt_holds {
        spt_exponent_value(family, alpha, p, info_class)?
    } else {
        None
    };
    let t_star = if qpt_holds && p == Norm::L2 && info_class == InfoClass::All {
        qpt_exponent_value(family, alpha)?
    } else {
        None
    };
    match p {
        Norm::LInf => notes.push(
            "L_inf: QPT has no known sufficient condition; WT-type conditions do not match".into(),
        ),
        Norm::Lp(_) => notes.push(
            "p in (2, inf): necessary side from L_2, sufficient side from L_inf".into(),
        ),
        Norm::L2 => {}
    }

    Ok(TractabilityReport {
        spec: SpecSummary {
            family: family.clone(),
            alpha,
            p,
            info_class,
            criterion,
            sigma_grid: grid,
        },
        verdicts,
        tau_star,
        t_star,
        conditions: evals,
        notes,
    })
}

fn close_hierarchy(chain: &mut [Evaluation], notes: &mut Vec<String>) {
    if let Some(first_hold) = chain.iter().position(|e| e.verdict == Verdict::Holds) {
        let src = chain[first_hold].notion.clone();
        for e in &mut chain[first_hold + 1..] {
            if matches!(e.verdict, Verdict::Open { .. }) {
                e.verdict = Verdict::Holds;
                notes.push(format!("{}: implied by {src}", e.notion));
            }
        }
    }
    if let Some(last_fail) = chain.iter().rposition(|e| e.verdict == Verdict::Fails) {
        let src = chain[last_fail].notion.clone();
        for e in &mut chain[..last_fail] {
            if matches!(e.verdict, Verdict::Open { .. }) {
                e.verdict = Verdict::Fails;
                notes.push(format!("{}: ruled out by failure of {src}", e.notion));
            }
        }
    }
}

/// `τ* = 2·max(s_γ, 1/α)` for `L_2` when SPT holds for the class; `None`
/// otherwise (no formula is known for `p > 2`).
pub fn spt_exponent_value(
    family: &WeightFamily,
    alpha: f64,
    p: Norm,
    info_class: InfoClass,
) -> Result<Option<f64>> {
    if p != Norm::L2 {
        return Ok(None);
    }
    let holds = match info_class {
        InfoClass::All => family.sum_exponent()?.is_finite(),
        InfoClass::Std => family.sum_converges()?,
    };
    Ok(if holds {
        let s = family.sum_exponent()?.finite().expect("finite when SPT holds");
        Some(2.0 * s.max(1.0 / alpha))
    } else {
        None
    })
}

/// `t* = 2·max(1/α, 1/ln γ_I^{-1})` for `L_2` with `Λ^all` when QPT holds,
/// reading the second term as 0 when `γ_I = 0`.
pub fn qpt_exponent_value(family: &WeightFamily, alpha: f64) -> Result<Option<f64>> {
    let gi = family.gamma_inf();
    if gi.truncated {
        return Err(Error::UnsupportedFamily(
            "γ_I is undefined for an explicit list without a tail".into(),
        ));
    }
    if gi.value >= 1.0 {
        return Ok(None);
    }
    let second = if gi.value == 0.0 { 0.0 } else { 1.0 / (1.0 / gi.value).ln() };
    Ok(Some(2.0 * (1.0 / alpha).max(second)))
}
