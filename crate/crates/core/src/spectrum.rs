//! Eigenvalues of `W_d = APP*·APP` on the weighted Korobov space.
//!
//! The eigenvalues are the values of the decay function
//! `r(h) = Π_j r_{α,γ_j}(h_j)` over `h ∈ ℤ^d`. Since `r` depends on `|h_j|`
//! only, everything here works on non-negative rank profiles `m ∈ ℕ^d`,
//! where a profile with `z` nonzero ranks stands for `2^z` lattice points.
//!
//! All products are formed in coordinate order `j = 1..d`, skipping unit
//! factors, so a profile's eigenvalue is bit-identical whichever routine
//! computed it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numerics::{riemann_zeta, CompensatedSum};
use crate::weights::WeightFamily;

/// Default bound on the number of scalar eigenvalues (lattice points) any
/// single enumeration may visit.
pub const DEFAULT_CAP: u64 = 100_000_000;

/// Target space of the approximation: `L_2`, `L_p` with `2 < p < ∞`, or
/// `L_∞`. Only `L_2` and `L_∞` admit complexity computations; the
/// intermediate case is used for tractability classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Norm {
    L2,
    Lp(f64),
    LInf,
}

impl std::fmt::Display for Norm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Norm::L2 => f.write_str("2"),
            Norm::Lp(p) => write!(f, "{p}"),
            Norm::LInf => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "2" => Ok(Norm::L2),
            "inf" | "infinity" => Ok(Norm::LInf),
            other => match other.parse::<f64>() {
                Ok(p) if p == 2.0 => Ok(Norm::L2),
                Ok(p) if p.is_infinite() && p > 0.0 => Ok(Norm::LInf),
                Ok(p) if p > 2.0 => Ok(Norm::Lp(p)),
                _ => Err(domain(format!("p must be 2, inf, or a real in (2, inf); got '{s}'"))),
            },
        }
    }
}

impl Serialize for Norm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Norm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Permissible information: arbitrary continuous linear functionals or
/// point evaluations only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfoClass {
    All,
    Std,
}

/// Absolute (`CRI = 1`) or normalized (`CRI` = initial error) criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Abs,
    Norm,
}

/// One fully specified approximation problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    d: usize,
    alpha: f64,
    family: WeightFamily,
    weights: Vec<f64>,
    p: Norm,
    info_class: InfoClass,
    criterion: Criterion,
    cap: u64,
}

impl ProblemSpec {
    /// An `L_2`, `Λ^all`, absolute-criterion problem; adjust with the
    /// `with_*` builders.
    pub fn new(d: usize, alpha: f64, family: WeightFamily) -> Result<Self> {
        if d == 0 {
            return Err(domain("dimension d must be at least 1"));
        }
        if !(alpha.is_finite() && alpha > 1.0) {
            return Err(domain(format!("alpha must be a finite real > 1, got {alpha}")));
        }
        family.validate()?;
        let weights = family.first(d)?;
        Ok(ProblemSpec {
            d,
            alpha,
            family,
            weights,
            p: Norm::L2,
            info_class: InfoClass::All,
            criterion: Criterion::Abs,
            cap: DEFAULT_CAP,
        })
    }

    pub fn with_norm(mut self, p: Norm) -> Result<Self> {
        if let Norm::Lp(v) = p {
            return Err(domain(format!(
                "complexity computations support p = 2 or p = inf only, got p = {v}"
            )));
        }
        self.p = p;
        Ok(self)
    }

    pub fn with_class(mut self, info_class: InfoClass) -> Self {
        self.info_class = info_class;
        self
    }

    pub fn with_criterion(mut self, criterion: Criterion) -> Self {
        self.criterion = criterion;
        self
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap.max(1);
        self
    }

    /// Same problem in another dimension.
    pub fn with_dimension(&self, d: usize) -> Result<Self> {
        let base = ProblemSpec::new(d, self.alpha, self.family.clone())?;
        Ok(ProblemSpec {
            p: self.p,
            info_class: self.info_class,
            criterion: self.criterion,
            cap: self.cap,
            ..base
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn family(&self) -> &WeightFamily {
        &self.family
    }

    /// `γ_1, …, γ_d`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn p(&self) -> Norm {
        self.p
    }

    pub fn info_class(&self) -> InfoClass {
        self.info_class
    }

    pub fn criterion(&self) -> Criterion {
        self.criterion
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }
}

#[inline]
pub(crate) fn factor(gamma: f64, rank: u64, alpha: f64) -> f64 {
    gamma / (rank as f64).powf(alpha)
}

/// `r_{d,α,γ}(h)` for an integer vector of length `d`.
pub fn decay_value(spec: &ProblemSpec, h: &[i64]) -> Result<f64> {
    if h.len() != spec.d {
        return Err(domain(format!(
            "index vector has length {}, expected d = {}",
            h.len(),
            spec.d
        )));
    }
    let mut p = 1.0;
    for (&g, &hj) in spec.weights.iter().zip(h) {
        if hj != 0 {
            p *= factor(g, hj.unsigned_abs(), spec.alpha);
        }
    }
    Ok(p)
}

fn profile_value(weights: &[f64], alpha: f64, ranks: &[u32]) -> f64 {
    let mut p = 1.0;
    for (&g, &m) in weights.iter().zip(ranks) {
        if m != 0 {
            p *= factor(g, m as u64, alpha);
        }
    }
    p
}

/// `Σ_h r(h) = Π_j (1 + 2ζ(α)γ_j)`, i.e. the trace of `W_d`.
pub fn total_sum(spec: &ProblemSpec) -> Result<f64> {
    let zeta = riemann_zeta(spec.alpha)?.value;
    let prod: f64 = spec.weights.iter().map(|g| 1.0 + 2.0 * zeta * g).product();
    if prod.is_finite() {
        Ok(prod)
    } else {
        Err(Error::Overflow {
            what: "total eigenvalue sum exceeds double range",
            log_value: log_total_sum(spec)?,
        })
    }
}

/// `ln Σ_h r(h)`, finite for every valid spec.
pub fn log_total_sum(spec: &ProblemSpec) -> Result<f64> {
    let zeta = riemann_zeta(spec.alpha)?.value;
    Ok(spec.weights.iter().map(|g| (2.0 * zeta * g).ln_1p()).sum())
}

/// One run of equal eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenBlock {
    pub lambda: f64,
    pub multiplicity: u64,
}

#[derive(Debug)]
struct Node {
    value: f64,
    ranks: Box<[u32]>,
    /// index of the last nonzero rank
    last: usize,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| other.ranks.cmp(&self.ranks))
    }
}

/// Streams the ordered eigenvalues `λ_{d,1} ≥ λ_{d,2} ≥ …` in blocks.
///
/// Best-first search over rank profiles. Every nonzero profile has a single
/// canonical parent with a value at least as large:
///
/// * last nonzero rank `≥ 2`: decrement it;
/// * last nonzero rank `= 1` at `k` with rank `k-1` nonzero: drop it;
/// * last nonzero rank `= 1` at `k` with rank `k-1` zero: move it to `k-1`.
///
/// Children are generated by the inverse moves, so each profile enters the
/// heap exactly once and no visited set is needed; at most three children
/// per pop keep the heap small.
///
/// The first block is always `λ_{d,1} = 1` from `h = 0` alone. Later blocks
/// merge every profile whose value is bit-identical.
#[derive(Debug)]
pub struct SpectrumCursor {
    weights: Vec<f64>,
    alpha: f64,
    cap: u64,
    heap: BinaryHeap<Node>,
    started: bool,
    exhausted: bool,
    emitted_count: u64,
    emitted_sum: CompensatedSum,
}

impl SpectrumCursor {
    pub fn new(spec: &ProblemSpec) -> Self {
        SpectrumCursor {
            weights: spec.weights.clone(),
            alpha: spec.alpha,
            cap: spec.cap,
            heap: BinaryHeap::new(),
            started: false,
            exhausted: false,
            emitted_count: 0,
            emitted_sum: CompensatedSum::default(),
        }
    }

    pub fn emitted_count(&self) -> u64 {
        self.emitted_count
    }

    pub fn emitted_sum(&self) -> f64 {
        self.emitted_sum.value()
    }

    fn push(&mut self, ranks: Box<[u32]>, last: usize) {
        let value = profile_value(&self.weights, self.alpha, &ranks);
        self.heap.push(Node { value, ranks, last });
    }

    fn push_children(&mut self, node: &Node) {
        let d = self.weights.len();
        let k = node.last;
        let mut deeper = node.ranks.clone();
        deeper[k] += 1;
        self.push(deeper, k);
        if k + 1 < d {
            let mut extend = node.ranks.clone();
            extend[k + 1] = 1;
            self.push(extend, k + 1);
            if node.ranks[k] == 1 {
                let mut shift = node.ranks.clone();
                shift[k] = 0;
                shift[k + 1] = 1;
                self.push(shift, k + 1);
            }
        }
    }

    /// Next block of equal eigenvalues with its multiplicity.
    ///
    /// Fails with `CapExceeded` once the emitted count would pass the cap;
    /// the cursor stays failed afterwards.
    pub fn next_eigenvalue(&mut self) -> Result<EigenBlock> {
        let exceeded = Error::CapExceeded {
            cap: self.cap,
            lower_bound: self.emitted_count,
        };
        if self.exhausted {
            return Err(exceeded);
        }
        if !self.started {
            self.started = true;
            let mut first = vec![0u32; self.weights.len()].into_boxed_slice();
            first[0] = 1;
            self.push(first, 0);
            return self.emit(1.0, 1);
        }

        let top = self.heap.pop().expect("the spectrum is infinite");
        let lambda = top.value;
        let mut multiplicity = 0u64;
        let mut node = top;
        loop {
            let z = node.ranks.iter().filter(|&&m| m != 0).count() as u32;
            multiplicity = match 1u64.checked_shl(z).and_then(|w| multiplicity.checked_add(w)) {
                Some(m) if m <= self.cap => m,
                _ => {
                    self.exhausted = true;
                    return Err(exceeded);
                }
            };
            self.push_children(&node);
            match self.heap.peek() {
                Some(next) if next.value.to_bits() == lambda.to_bits() => {
                    node = self.heap.pop().expect("peeked");
                }
                _ => break,
            }
        }
        self.emit(lambda, multiplicity)
    }

    fn emit(&mut self, lambda: f64, multiplicity: u64) -> Result<EigenBlock> {
        match self.emitted_count.checked_add(multiplicity) {
            Some(total) if total <= self.cap => {
                self.emitted_count = total;
                self.emitted_sum.add(lambda * multiplicity as f64);
                Ok(EigenBlock {
                    lambda,
                    multiplicity,
                })
            }
            _ => {
                self.exhausted = true;
                Err(Error::CapExceeded {
                    cap: self.cap,
                    lower_bound: self.emitted_count,
                })
            }
        }
    }
}

/// Everything known about the eigenvalues strictly above a threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeadStats {
    /// `#{h : r(h) > T}`
    pub count: u64,
    /// `Σ_{r(h) > T} r(h)`
    pub sum: f64,
    /// smallest eigenvalue above the threshold
    pub min_included: f64,
    /// largest eigenvalue at or below the threshold
    pub max_excluded: f64,
}

struct HeadScan<'a> {
    weights: &'a [f64],
    alpha: f64,
    threshold: f64,
    cap: u64,
    count: u64,
    sum: CompensatedSum,
    min_included: f64,
    max_excluded: f64,
    /// values in `(threshold, band_top]` are recorded here when set
    band: Option<(f64, Vec<(f64, u64)>)>,
    /// `m^α` for `m = 0, 1, …`, grown on demand
    powers: Vec<f64>,
}

impl HeadScan<'_> {
    /// Same value as `factor(g, m, α)`, with `m^α` looked up.
    #[inline]
    fn factor(&mut self, g: f64, m: u64) -> f64 {
        let m = m as usize;
        while self.powers.len() <= m {
            let k = self.powers.len();
            self.powers.push((k as f64).powf(self.alpha));
        }
        g / self.powers[m]
    }

    /// `p > T` is the value of a profile whose nonzero ranks all lie before
    /// coordinate `j`; visits it and every extension to the right.
    fn visit(&mut self, j: usize, p: f64, z: u32) -> bool {
        let Some(mult) = 1u64.checked_shl(z) else {
            return false;
        };
        match self.count.checked_add(mult) {
            Some(c) if c <= self.cap => self.count = c,
            _ => return false,
        }
        self.sum.add(p * mult as f64);
        self.min_included = self.min_included.min(p);
        if let Some((top, values)) = &mut self.band {
            if p <= *top {
                values.push((p, mult));
            }
        }

        for i in j..self.weights.len() {
            let g = self.weights[i];
            // γ is non-increasing, so no later coordinate can stay above T either
            if p * g <= self.threshold {
                self.max_excluded = self.max_excluded.max(p * g);
                return true;
            }
            let mut m = 1u64;
            loop {
                let q = p * self.factor(g, m);
                if q <= self.threshold {
                    self.max_excluded = self.max_excluded.max(q);
                    break;
                }
                if !self.visit(i + 1, q, z + 1) {
                    return false;
                }
                m += 1;
            }
        }
        true
    }
}

/// Count, sum and bracketing values of the eigenvalues `> threshold`, by
/// depth-first recursion over coordinates with pruning at `P ≤ T`.
pub fn head_above(spec: &ProblemSpec, threshold: f64) -> Result<HeadStats> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(domain(format!("threshold must lie in (0, 1), got {threshold}")));
    }
    scan(spec, threshold, None).map(|(h, _)| h)
}

fn scan(
    spec: &ProblemSpec,
    threshold: f64,
    band_top: Option<f64>,
) -> Result<(HeadStats, Vec<(f64, u64)>)> {
    let mut scan = HeadScan {
        weights: &spec.weights,
        alpha: spec.alpha,
        threshold,
        cap: spec.cap,
        count: 0,
        sum: CompensatedSum::default(),
        min_included: f64::INFINITY,
        max_excluded: 0.0,
        band: band_top.map(|t| (t, Vec::new())),
        powers: Vec::new(),
    };
    if scan.visit(0, 1.0, 0) {
        let stats = HeadStats {
            count: scan.count,
            sum: scan.sum.value(),
            min_included: scan.min_included,
            max_excluded: scan.max_excluded,
        };
        Ok((stats, scan.band.map(|b| b.1).unwrap_or_default()))
    } else {
        Err(Error::CapExceeded {
            cap: spec.cap,
            lower_bound: scan.count,
        })
    }
}

/// Head statistics above `lo` together with the eigenvalues in `(lo, hi]`,
/// grouped by exact value in non-increasing order.
pub(crate) fn head_with_band(
    spec: &ProblemSpec,
    lo: f64,
    hi: f64,
) -> Result<(HeadStats, Vec<(f64, u64)>)> {
    if !(lo > 0.0 && lo < 1.0) {
        return Err(domain(format!("threshold must lie in (0, 1), got {lo}")));
    }
    let (stats, mut values) = scan(spec, lo, Some(hi))?;
    values.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut grouped: Vec<(f64, u64)> = Vec::new();
    for (v, m) in values {
        match grouped.last_mut() {
            Some(last) if last.0.to_bits() == v.to_bits() => last.1 += m,
            _ => grouped.push((v, m)),
        }
    }
    Ok((stats, grouped))
}

/// `#{h ∈ ℤ^d : r(h) > T}`.
pub fn count_above(spec: &ProblemSpec, threshold: f64) -> Result<u64> {
    head_above(spec, threshold).map(|h| h.count)
}

/// `Σ_{r(h) > T} r(h)`.
pub fn sum_above(spec: &ProblemSpec, threshold: f64) -> Result<f64> {
    head_above(spec, threshold).map(|h| h.sum)
}
