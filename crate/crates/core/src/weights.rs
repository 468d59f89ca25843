//! Product weight sequences `1 ≥ γ_1 ≥ γ_2 ≥ … > 0` and the decay
//! summaries that drive every tractability condition.
//!
//! The exponents are returned in closed form per family:
//!
//! * polynomial `γ_j = c·j^{-β}`: `Σ_{j≤d} γ_j^κ` is bounded iff `βκ > 1`,
//!   grows like `ln d` at `βκ = 1`, and like `d^{1-βκ}` below. Hence
//!   `s = t = 1/β` and `u_σ = max(0, (1-σ)/β)`.
//! * geometric `γ_j = c·q^{j-1}`: every power sum converges, so all
//!   exponents are zero.
//! * constant `g` (and explicit lists that repeat their last value):
//!   `Σ_{j≤d} γ_j^κ = Θ(d)`, so `s = t = ∞` and `u_σ` is `0` for `σ > 1`
//!   and `∞` otherwise.
//!
//! Explicit lists declared `undefined-beyond-length` carry no tail, and all
//! asymptotic queries on them are refused.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// What an explicit weight list means past its last entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailRule {
    RepeatLast,
    UndefinedBeyondLength,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightFamily {
    Explicit { values: Vec<f64>, tail: TailRule },
    Polynomial { c: f64, beta: f64 },
    Geometric { c: f64, q: f64 },
    Constant { g: f64 },
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 && v <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must lie in (0, 1], got {v}")))
    }
}

impl WeightFamily {
    pub fn polynomial(c: f64, beta: f64) -> Result<Self> {
        let f = WeightFamily::Polynomial { c, beta };
        f.validate()?;
        Ok(f)
    }

    pub fn geometric(c: f64, q: f64) -> Result<Self> {
        let f = WeightFamily::Geometric { c, q };
        f.validate()?;
        Ok(f)
    }

    pub fn constant(g: f64) -> Result<Self> {
        let f = WeightFamily::Constant { g };
        f.validate()?;
        Ok(f)
    }

    pub fn explicit(values: Vec<f64>, tail: TailRule) -> Result<Self> {
        let f = WeightFamily::Explicit { values, tail };
        f.validate()?;
        Ok(f)
    }

    /// Checks `γ_1 ≤ 1`, positivity and monotonicity.
    pub fn validate(&self) -> Result<()> {
        match self {
            WeightFamily::Polynomial { c, beta } => {
                check_unit("c", *c)?;
                if !(beta.is_finite() && *beta > 0.0) {
                    return Err(domain(format!("beta must be positive, got {beta}")));
                }
            }
            WeightFamily::Geometric { c, q } => {
                check_unit("c", *c)?;
                if !(q.is_finite() && *q > 0.0 && *q < 1.0) {
                    return Err(domain(format!("q must lie in (0, 1), got {q}")));
                }
            }
            WeightFamily::Constant { g } => check_unit("g", *g)?,
            WeightFamily::Explicit { values, .. } => {
                if values.is_empty() {
                    return Err(domain("explicit weight list is empty"));
                }
                for (i, &v) in values.iter().enumerate() {
                    check_unit("explicit weight", v)?;
                    if i > 0 && v > values[i - 1] {
                        return Err(domain(format!(
                            "explicit weights must be non-increasing; entry {} ({v}) exceeds entry {} ({})",
                            i + 1,
                            i,
                            values[i - 1]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The `j`-th weight (1-based).
    ///
    /// Geometric weights underflow to zero for very large `j`.
    pub fn gamma(&self, j: usize) -> Result<f64> {
        if j == 0 {
            return Err(domain("weight indices start at 1"));
        }
        Ok(match self {
            WeightFamily::Polynomial { c, beta } => c * (j as f64).powf(-beta),
            WeightFamily::Geometric { c, q } => c * q.powf((j - 1) as f64),
            WeightFamily::Constant { g } => *g,
            WeightFamily::Explicit { values, tail } => match values.get(j - 1) {
                Some(&v) => v,
                None if *tail == TailRule::RepeatLast => *values.last().expect("validated"),
                None => {
                    return Err(Error::Index {
                        index: j,
                        len: values.len(),
                    })
                }
            },
        })
    }

    /// `γ_1, …, γ_d`.
    pub fn first(&self, d: usize) -> Result<Vec<f64>> {
        (1..=d).map(|j| self.gamma(j)).collect()
    }

    /// `inf_j γ_j`.
    pub fn gamma_inf(&self) -> GammaInf {
        match self {
            WeightFamily::Polynomial { .. } | WeightFamily::Geometric { .. } => GammaInf {
                value: 0.0,
                truncated: false,
            },
            WeightFamily::Constant { g } => GammaInf {
                value: *g,
                truncated: false,
            },
            WeightFamily::Explicit { values, tail } => GammaInf {
                value: *values.last().expect("validated"),
                truncated: *tail == TailRule::UndefinedBeyondLength,
            },
        }
    }

    fn require_tail(&self) -> Result<()> {
        match self {
            WeightFamily::Explicit {
                tail: TailRule::UndefinedBeyondLength,
                ..
            } => Err(Error::UnsupportedFamily(
                "asymptotic quantities need an infinite weight sequence; \
                 declare the explicit list as repeat-last"
                    .into(),
            )),
            _ => Ok(()),
        }
    }

    /// `s_γ = inf{κ > 0 : Σ_j γ_j^κ < ∞}`.
    pub fn sum_exponent(&self) -> Result<ExponentValue> {
        self.require_tail()?;
        Ok(ExponentValue::closed(match self {
            WeightFamily::Polynomial { beta, .. } => Exponent::Finite(1.0 / beta),
            WeightFamily::Geometric { .. } => Exponent::Finite(0.0),
            _ => Exponent::Infinite,
        }))
    }

    /// `t_γ = inf{κ > 0 : limsup_d Σ_{j≤d} γ_j^κ / ln(d+1) < ∞}`.
    pub fn t_exponent(&self) -> Result<ExponentValue> {
        // same closed forms as s_γ for every supported family
        self.sum_exponent()
    }

    /// `u_{γ,σ} = inf{κ > 0 : lim_d d^{-σ} Σ_{j≤d} γ_j^κ = 0}`.
    pub fn u_exponent(&self, sigma: f64) -> Result<ExponentValue> {
        self.require_tail()?;
        check_sigma(sigma)?;
        Ok(ExponentValue::closed(match self {
            WeightFamily::Polynomial { beta, .. } => {
                Exponent::Finite(((1.0 - sigma) / beta).max(0.0))
            }
            WeightFamily::Geometric { .. } => Exponent::Finite(0.0),
            _ if sigma > 1.0 => Exponent::Finite(0.0),
            _ => Exponent::Infinite,
        }))
    }

    /// `Σ_j γ_j < ∞`.
    pub fn sum_converges(&self) -> Result<bool> {
        self.require_tail()?;
        Ok(match self {
            WeightFamily::Polynomial { beta, .. } => *beta > 1.0,
            WeightFamily::Geometric { .. } => true,
            _ => false,
        })
    }

    /// `limsup_d Σ_{j≤d} γ_j / ln(d+1) < ∞`.
    pub fn log_growth_bounded(&self) -> Result<bool> {
        self.require_tail()?;
        Ok(match self {
            WeightFamily::Polynomial { beta, .. } => *beta >= 1.0,
            WeightFamily::Geometric { .. } => true,
            _ => false,
        })
    }

    /// `lim_d d^{-σ} Σ_{j≤d} γ_j = 0`.
    pub fn mean_vanishes(&self, sigma: f64) -> Result<bool> {
        self.require_tail()?;
        check_sigma(sigma)?;
        Ok(match self {
            // Σ ~ d^{1-β}/(1-β) for β < 1, O(ln d) for β ≥ 1
            WeightFamily::Polynomial { beta, .. } => *beta > 1.0 - sigma,
            WeightFamily::Geometric { .. } => true,
            _ => sigma > 1.0,
        })
    }

    /// `lim_d d^{-σ} Σ_{j≤d} γ_j = 0` for every `σ ∈ (0, 1]`.
    pub fn mean_vanishes_all_sigma(&self) -> Result<bool> {
        self.require_tail()?;
        Ok(match self {
            WeightFamily::Polynomial { beta, .. } => *beta >= 1.0,
            WeightFamily::Geometric { .. } => true,
            _ => false,
        })
    }

    /// `u_{γ,σ} < 1` for every `σ ∈ (0, 1]`.
    pub fn u_below_one_all_sigma(&self) -> Result<bool> {
        self.require_tail()?;
        Ok(match self {
            // sup over σ → 0⁺ of (1-σ)/β is 1/β, never attained
            WeightFamily::Polynomial { beta, .. } => *beta >= 1.0,
            WeightFamily::Geometric { .. } => true,
            _ => false,
        })
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma.is_finite() && sigma > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("sigma must be positive, got {sigma}")))
    }
}

/// Infimum of the weights; `truncated` marks explicit lists without a tail,
/// for which the value is only the minimum of the given entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaInf {
    pub value: f64,
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    NumericalEstimate { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentValue {
    pub value: Exponent,
    pub provenance: Provenance,
}

impl ExponentValue {
    pub fn closed(value: Exponent) -> Self {
        ExponentValue {
            value,
            provenance: Provenance::ClosedForm,
        }
    }

    pub fn finite(&self) -> Option<f64> {
        match self.value {
            Exponent::Finite(v) => Some(v),
            Exponent::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite().is_some()
    }

    pub fn less_than(&self, bound: f64) -> bool {
        self.finite().is_some_and(|v| v < bound)
    }
}

impl fmt::Display for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Exponent::Finite(v) => write!(f, "{v}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

pub const FAMILY_GRAMMAR: &str = "one of 'poly:c=<c>,beta=<beta>', 'geo:c=<c>,q=<q>', \
'const:g=<g>', 'explicit:<w1>,<w2>,...;repeat-last|undefined-beyond-length'";

impl fmt::Display for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightFamily::Polynomial { c, beta } => write!(f, "poly:c={c},beta={beta}"),
            WeightFamily::Geometric { c, q } => write!(f, "geo:c={c},q={q}"),
            WeightFamily::Constant { g } => write!(f, "const:g={g}"),
            WeightFamily::Explicit { values, tail } => {
                f.write_str("explicit:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(match tail {
                    TailRule::RepeatLast => ";repeat-last",
                    TailRule::UndefinedBeyondLength => ";undefined-beyond-length",
                })
            }
        }
    }
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
        expected: FAMILY_GRAMMAR,
    }
}

/// Splits `s` (which starts at byte `offset` of the original input) on
/// `sep`, keeping the offset of each piece.
fn split_at_offsets(s: &str, offset: usize, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if ch == sep {
            out.push((offset + start, &s[start..i]));
            start = i + ch.len_utf8();
        }
    }
    out.push((offset + start, &s[start..]));
    out
}

fn parse_number(pos: usize, raw: &str) -> Result<f64> {
    let trimmed = raw.trim();
    trimmed
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| parse_err(pos, format!("'{trimmed}' is not a finite number")))
}

fn parse_params<'a>(
    body: &'a str,
    offset: usize,
    allowed: &[&str],
) -> Result<Vec<(&'a str, f64)>> {
    let mut out: Vec<(&str, f64)> = Vec::new();
    for (pos, item) in split_at_offsets(body, offset, ',') {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| parse_err(pos, format!("expected key=value, found '{item}'")))?;
        let key = key.trim();
        if !allowed.contains(&key) {
            return Err(parse_err(
                pos,
                format!("unknown parameter '{key}' (allowed: {})", allowed.join(", ")),
            ));
        }
        if out.iter().any(|(k, _)| *k == key) {
            return Err(parse_err(pos, format!("parameter '{key}' given twice")));
        }
        out.push((key, parse_number(pos + key.len() + 1, value)?));
    }
    Ok(out)
}

fn lookup(params: &[(&str, f64)], key: &str) -> Option<f64> {
    params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

impl FromStr for WeightFamily {
    type Err = Error;

    /// Parses the textual family grammar, case-insensitively. `c` defaults
    /// to 1 for the polynomial and geometric families.
    fn from_str(input: &str) -> Result<Self> {
        let lower = input.to_ascii_lowercase();
        let (kind, body) = lower
            .split_once(':')
            .ok_or_else(|| parse_err(0, "missing ':' after the family name"))?;
        let body_offset = kind.len() + 1;
        let family = match kind.trim() {
            "poly" | "polynomial" => {
                let p = parse_params(body, body_offset, &["c", "beta"])?;
                let beta = lookup(&p, "beta")
                    .ok_or_else(|| parse_err(body_offset, "missing parameter 'beta'"))?;
                WeightFamily::Polynomial {
                    c: lookup(&p, "c").unwrap_or(1.0),
                    beta,
                }
            }
            "geo" | "geometric" => {
                let p = parse_params(body, body_offset, &["c", "q"])?;
                let q = lookup(&p, "q")
                    .ok_or_else(|| parse_err(body_offset, "missing parameter 'q'"))?;
                WeightFamily::Geometric {
                    c: lookup(&p, "c").unwrap_or(1.0),
                    q,
                }
            }
            "const" | "constant" => {
                let p = parse_params(body, body_offset, &["g"])?;
                let g = lookup(&p, "g")
                    .ok_or_else(|| parse_err(body_offset, "missing parameter 'g'"))?;
                WeightFamily::Constant { g }
            }
            "explicit" => {
                let (list, tail) = body.split_once(';').ok_or_else(|| {
                    parse_err(
                        body_offset + body.len(),
                        "explicit lists must declare ';repeat-last' or ';undefined-beyond-length'",
                    )
                })?;
                let tail_pos = body_offset + list.len() + 1;
                let tail = match tail.trim() {
                    "repeat-last" => TailRule::RepeatLast,
                    "undefined-beyond-length" | "truncated" => TailRule::UndefinedBeyondLength,
                    other => return Err(parse_err(tail_pos, format!("unknown tail rule '{other}'"))),
                };
                let values = split_at_offsets(list, body_offset, ',')
                    .into_iter()
                    .map(|(pos, raw)| parse_number(pos, raw))
                    .collect::<Result<Vec<_>>>()?;
                WeightFamily::Explicit { values, tail }
            }
            other => return Err(parse_err(0, format!("unknown weight family '{other}'"))),
        };
        family.validate().map_err(|e| match e {
            Error::Domain(msg) => parse_err(body_offset, msg),
            other => other,
        })?;
        Ok(family)
    }
}

impl Serialize for WeightFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WeightFamily {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: f64, beta: f64) -> WeightFamily {
        WeightFamily::polynomial(c, beta).unwrap()
    }

    fn partial_power_sum(f: &WeightFamily, kappa: f64, d: usize) -> f64 {
        (1..=d).map(|j| f.gamma(j).unwrap().powf(kappa)).sum()
    }

    #[test]
    fn gamma_closed_forms() {
        assert!((poly(1.0, 2.0).gamma(3).unwrap() - 1.0 / 9.0).abs() < 1e-15);
        assert_eq!(WeightFamily::constant(0.5).unwrap().gamma(1_000_000).unwrap(), 0.5);
        assert_eq!(WeightFamily::geometric(1.0, 0.5).unwrap().gamma(4).unwrap(), 0.125);
    }

    #[test]
    fn explicit_tail_rules() {
        let rep = WeightFamily::explicit(vec![1.0, 0.5, 0.25], TailRule::RepeatLast).unwrap();
        assert_eq!(rep.gamma(10).unwrap(), 0.25);
        let trunc =
            WeightFamily::explicit(vec![1.0, 0.5, 0.25], TailRule::UndefinedBeyondLength).unwrap();
        assert_eq!(trunc.gamma(3).unwrap(), 0.25);
        assert_eq!(trunc.gamma(4), Err(Error::Index { index: 4, len: 3 }));
        assert!(matches!(trunc.sum_exponent(), Err(Error::UnsupportedFamily(_))));
        assert!(matches!(trunc.u_exponent(0.5), Err(Error::UnsupportedFamily(_))));
        assert_eq!(
            trunc.gamma_inf(),
            GammaInf {
                value: 0.25,
                truncated: true
            }
        );
    }

    #[test]
    fn validation_rejects_bad_weights() {
        assert!(WeightFamily::polynomial(1.5, 1.0).is_err());
        assert!(WeightFamily::polynomial(1.0, 0.0).is_err());
        assert!(WeightFamily::geometric(1.0, 1.0).is_err());
        assert!(WeightFamily::constant(0.0).is_err());
        assert!(WeightFamily::explicit(vec![0.5, 0.6], TailRule::RepeatLast).is_err());
        assert!(WeightFamily::explicit(vec![], TailRule::RepeatLast).is_err());
        assert!(poly(1.0, 1.0).gamma(0).is_err());
    }

    #[test]
    fn gamma_inf_values() {
        assert_eq!(WeightFamily::constant(0.5).unwrap().gamma_inf().value, 0.5);
        assert_eq!(poly(1.0, 2.0).gamma_inf().value, 0.0);
        let rep = WeightFamily::explicit(vec![1.0, 0.5, 0.25], TailRule::RepeatLast).unwrap();
        assert_eq!(rep.gamma_inf(), GammaInf { value: 0.25, truncated: false });
    }

    #[test]
    fn sum_exponent_poly_two() {
        let f = poly(1.0, 2.0);
        assert_eq!(f.sum_exponent().unwrap().finite(), Some(0.5));
        // κ = 0.6: increments over doublings shrink; κ = 0.4: they grow
        let inc = |k: f64, d: usize| partial_power_sum(&f, k, 2 * d) - partial_power_sum(&f, k, d);
        assert!(inc(0.6, 200_000) < inc(0.6, 100_000));
        assert!(inc(0.4, 200_000) > inc(0.4, 100_000));
        assert!(partial_power_sum(&f, 0.4, 400_000) > 2.0 * partial_power_sum(&f, 0.4, 10_000));
    }

    #[test]
    fn sum_exponent_geometric_and_constant() {
        let g = WeightFamily::geometric(1.0, 0.5).unwrap();
        assert_eq!(g.sum_exponent().unwrap().finite(), Some(0.0));
        // κ = 0.01: geometric series with ratio r = 0.5^{0.01}
        let r = 0.5f64.powf(0.01);
        let closed = (1.0 - r.powi(1000)) / (1.0 - r);
        assert!((partial_power_sum(&g, 0.01, 1000) - closed).abs() < 1e-10 * closed);
        assert!(closed < 1.0 / (1.0 - r));
        let c = WeightFamily::constant(0.5).unwrap();
        assert_eq!(c.sum_exponent().unwrap().value, Exponent::Infinite);
        let rep = WeightFamily::explicit(vec![1.0, 0.3], TailRule::RepeatLast).unwrap();
        assert_eq!(rep.sum_exponent().unwrap().value, Exponent::Infinite);
    }

    #[test]
    fn t_exponent_poly_one() {
        let f = poly(1.0, 1.0);
        assert_eq!(f.t_exponent().unwrap().finite(), Some(1.0));
        let ratio = |k: f64, d: usize| partial_power_sum(&f, k, d) / ((d + 1) as f64).ln();
        // κ = 1: ratio settles near 1; κ = 0.9: keeps growing; κ = 1.1: decays
        assert!((ratio(1.0, 1_000_000) - ratio(1.0, 100_000)).abs() < 0.02);
        assert!(ratio(0.9, 1_000_000) > 1.1 * ratio(0.9, 100_000));
        assert!(ratio(0.9, 100_000) > 1.1 * ratio(0.9, 10_000));
        assert!(ratio(1.1, 1_000_000) < ratio(1.1, 100_000));
        let g = WeightFamily::geometric(1.0, 0.9).unwrap();
        assert_eq!(g.t_exponent().unwrap().finite(), Some(0.0));
        assert!(partial_power_sum(&g, 0.1, 1_000_000) - partial_power_sum(&g, 0.1, 100_000) < 1e-9);
        let c = WeightFamily::constant(1.0).unwrap();
        assert_eq!(c.t_exponent().unwrap().value, Exponent::Infinite);
    }

    #[test]
    fn u_exponent_examples() {
        let f = poly(1.0, 2.0);
        assert_eq!(f.u_exponent(0.5).unwrap().finite(), Some(0.25));
        let scaled = |k: f64, d: usize| partial_power_sum(&f, k, d) / (d as f64).sqrt();
        assert!(scaled(0.3, 1_000_000) < 0.85 * scaled(0.3, 100_000));
        assert!(scaled(0.2, 1_000_000) > 1.1 * scaled(0.2, 100_000));

        for fam in [poly(1.0, 2.0), WeightFamily::geometric(1.0, 0.5).unwrap(), WeightFamily::constant(0.5).unwrap()] {
            assert_eq!(fam.u_exponent(2.0).unwrap().finite(), Some(0.0));
            let s = partial_power_sum(&fam, 0.01, 100_000) / 1e10;
            assert!(s < 1e-5);
        }
        let c = WeightFamily::constant(0.5).unwrap();
        assert_eq!(c.u_exponent(1.0).unwrap().value, Exponent::Infinite);
        assert!(c.u_exponent(0.0).is_err());
    }

    /// Closed-form limit conditions against partial sums at d = 10⁶.
    #[test]
    fn condition_closed_forms_match_partial_sums() {
        let d = 1_000_000usize;
        let fams = [
            poly(1.0, 0.5),
            poly(1.0, 1.0),
            poly(0.7, 2.0),
            WeightFamily::geometric(1.0, 0.8).unwrap(),
            WeightFamily::constant(0.5).unwrap(),
        ];
        for f in &fams {
            let s_d = partial_power_sum(f, 1.0, d);
            let s_small = partial_power_sum(f, 1.0, d / 100);
            // convergent sums barely move over the last 99% of indices
            assert_eq!(f.sum_converges().unwrap(), s_d - s_small < 0.01, "{f}");
            let log_ratio = |n: usize| partial_power_sum(f, 1.0, n) / ((n + 1) as f64).ln();
            assert_eq!(
                f.log_growth_bounded().unwrap(),
                log_ratio(d) < 1.2 * log_ratio(d / 100),
                "{f}"
            );
            for sigma in [0.3, 0.6, 1.0] {
                let m = |n: usize| partial_power_sum(f, 1.0, n) / (n as f64).powf(sigma);
                assert_eq!(f.mean_vanishes(sigma).unwrap(), m(d) < 0.9 * m(d / 100), "{f} σ={sigma}");
            }
        }
    }

    #[test]
    fn parse_families() {
        assert_eq!("poly:c=1,beta=2".parse::<WeightFamily>().unwrap(), poly(1.0, 2.0));
        assert_eq!("POLY:BETA=2".parse::<WeightFamily>().unwrap(), poly(1.0, 2.0));
        assert_eq!(
            "geo:c=1,q=0.5".parse::<WeightFamily>().unwrap(),
            WeightFamily::geometric(1.0, 0.5).unwrap()
        );
        assert_eq!("const:g=0.5".parse::<WeightFamily>().unwrap(), WeightFamily::constant(0.5).unwrap());
        assert_eq!(
            "Explicit:1,0.5,0.25;Repeat-Last".parse::<WeightFamily>().unwrap(),
            WeightFamily::explicit(vec![1.0, 0.5, 0.25], TailRule::RepeatLast).unwrap()
        );
    }

    #[test]
    fn parse_errors_report_position() {
        let err = "poly:c=1,gamma=2".parse::<WeightFamily>().unwrap_err();
        assert!(matches!(err, Error::Parse { position: 9, .. }), "{err:?}");
        let err = "explicit:1,abc;repeat-last".parse::<WeightFamily>().unwrap_err();
        assert!(matches!(err, Error::Parse { position: 11, .. }), "{err:?}");
        assert!(err.to_string().contains("poly:c=<c>,beta=<beta>"));
        assert!("explicit:1,0.5".parse::<WeightFamily>().is_err());
        assert!("weird:x=1".parse::<WeightFamily>().is_err());
        assert!("poly".parse::<WeightFamily>().is_err());
        assert!(matches!("const:g=2".parse::<WeightFamily>(), Err(Error::Parse { .. })));
    }

    fn any_family() -> impl Strategy<Value = WeightFamily> {
        prop_oneof![
            (0.01f64..=1.0, 0.05f64..6.0).prop_map(|(c, b)| poly(c, b)),
            (0.01f64..=1.0, 0.01f64..0.99).prop_map(|(c, q)| WeightFamily::geometric(c, q).unwrap()),
            (0.01f64..=1.0).prop_map(|g| WeightFamily::constant(g).unwrap()),
            prop::collection::vec(0.01f64..=1.0, 1..6).prop_map(|mut v| {
                v.sort_by(|a, b| b.total_cmp(a));
                WeightFamily::explicit(v, TailRule::RepeatLast).unwrap()
            }),
        ]
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(f in any_family()) {
            let back: WeightFamily = f.to_string().parse().unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn gamma_non_increasing(f in any_family()) {
            let mut prev = f.gamma(1).unwrap();
            prop_assert!(prev <= 1.0);
            for j in (2..100_000).step_by(97) {
                let g = f.gamma(j).unwrap();
                prop_assert!(g <= prev);
                prev = g;
            }
        }

        #[test]
        fn power_sums_dominated(f in any_family(), k in 0.05f64..3.0, dk in 0.01f64..2.0) {
            for j in 1..200 {
                let g = f.gamma(j).unwrap();
                prop_assert!(g.powf(k + dk) <= g.powf(k));
            }
        }

        #[test]
        fn t_not_above_finite_s(f in any_family()) {
            let s = f.sum_exponent().unwrap();
            let t = f.t_exponent().unwrap();
            if let Some(s) = s.finite() {
                prop_assert!(t.finite().unwrap() <= s);
            }
        }

        #[test]
        fn u_non_increasing_in_sigma(f in any_family()) {
            let grid = [0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.01, 1.5, 3.0];
            for w in grid.windows(2) {
                let a = f.u_exponent(w[0]).unwrap();
                let b = f.u_exponent(w[1]).unwrap();
                match (a.finite(), b.finite()) {
                    (Some(x), Some(y)) => prop_assert!(y <= x),
                    (None, _) => {}
                    (Some(_), None) => prop_assert!(false, "u grew to infinity"),
                }
            }
        }
    }
}
