//! Rank profiles induced on a subbundle by an oper flag, and the slope bounds
//! they give.
//!
//! A subbundle `W` of an oper of type `q` meets the flag in pieces of ranks
//! `q >= r_0 >= r_1 >= … >= r_m >= 1` with `Σ r_i = rk W`. The score
//! `S = Σ i·r_i` controls every bound here and never exceeds `w(w-1)/2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{at_least, Error, Result};
use crate::numerics::{check_genus, BundleNumerics, CurveParams};
use crate::rational::Rational;

/// Largest weight the brute-force optimizer accepts unless told otherwise.
pub const DEFAULT_WEIGHT_CAP: i64 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct FiltrationProfile {
    parts: Vec<i64>,
    cap: i64,
}

#[derive(Deserialize)]
struct RawProfile {
    parts: Vec<i64>,
    cap: i64,
}

impl TryFrom<RawProfile> for FiltrationProfile {
    type Error = Error;
    fn try_from(raw: RawProfile) -> Result<Self> {
        FiltrationProfile::new(raw.parts, raw.cap)
    }
}

impl FiltrationProfile {
    pub fn new(parts: Vec<i64>, cap: i64) -> Result<Self> {
        at_least("profile cap", cap, 1)?;
        let invalid = |msg: String| Err(Error::InvalidProfile(msg));
        if parts.is_empty() {
            return invalid("no parts".into());
        }
        if parts[0] > cap {
            return invalid(format!("first part {} exceeds cap {cap}", parts[0]));
        }
        if let Some(&bad) = parts.iter().find(|&&r| r < 1) {
            return invalid(format!("part {bad} is not positive"));
        }
        if let Some(i) = parts.windows(2).position(|w| w[1] > w[0]) {
            return invalid(format!("parts increase at index {}", i + 1));
        }
        if parts.len() > u32::MAX as usize
            || parts
                .iter()
                .try_fold(0i64, |a, &r| a.checked_add(r))
                .is_none()
        {
            return Err(Error::Overflow);
        }
        Ok(FiltrationProfile { parts, cap })
    }

    /// Profile whose cap is its own first part.
    pub fn tight(parts: Vec<i64>) -> Result<Self> {
        let cap = parts.first().copied().unwrap_or(0);
        FiltrationProfile::new(parts, cap)
    }

    /// `(1, …, 1)` of length `w`.
    pub fn all_ones(w: i64, cap: i64) -> Result<Self> {
        at_least("weight", w, 1)?;
        FiltrationProfile::new(vec![1; w as usize], cap)
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    /// `w = Σ r_i`, the rank of the subbundle.
    pub fn weight(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// The index `m` of the last part.
    pub fn last_index(&self) -> i64 {
        self.parts.len() as i64 - 1
    }

    /// Slack variables `(s_0, …, s_{m+1})` with `r_i = 1 + s_{m+1} + … + s_{i+1}`
    /// and `r_0 + s_0 = q`.
    pub fn slack(&self) -> Vec<i64> {
        let m = self.parts.len() - 1;
        let mut s = vec![0; m + 2];
        s[0] = self.cap - self.parts[0];
        for i in 0..m {
            s[i + 1] = self.parts[i] - self.parts[i + 1];
        }
        s[m + 1] = self.parts[m] - 1;
        s
    }
}

impl std::fmt::Display for FiltrationProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `S(r) = Σ i·r_i`.
pub fn profile_score(profile: &FiltrationProfile) -> i64 {
    profile
        .parts
        .iter()
        .enumerate()
        .map(|(i, &r)| i as i64 * r)
        .sum()
}

/// The score recomputed from slack variables:
/// `m(m+1)/2 + Σ_{i=1}^{m+1} i(i-1)/2 · s_i`.
pub fn score_from_slack(slack: &[i64]) -> i64 {
    let m = slack.len() as i64 - 2;
    let tail: i64 = slack
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &s)| (i as i64) * (i as i64 - 1) / 2 * s)
        .sum();
    m * (m + 1) / 2 + tail
}

/// `w(w-1)/2`.
pub fn max_score_closed_form(w: i64) -> Result<i64> {
    at_least("weight", w, 1)?;
    Ok(w * (w - 1) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreOptimum {
    pub max: i64,
    /// All maximizers, sorted by parts.
    pub argmax: Vec<FiltrationProfile>,
    /// Number of profiles examined.
    pub examined: usize,
}

/// Every weakly decreasing sequence of positive parts `<= cap` summing to `w`,
/// over all lengths `1..=w`, in lexicographic order.
pub fn enumerate_profiles(w: i64, cap: i64) -> Result<Vec<FiltrationProfile>> {
    at_least("weight", w, 1)?;
    at_least("profile cap", cap, 1)?;
    let mut out = Vec::new();
    for first in 1..=cap.min(w) {
        collect_profiles(w, cap, first, &mut out);
    }
    out.sort();
    Ok(out)
}

fn collect_profiles(w: i64, cap: i64, first: i64, out: &mut Vec<FiltrationProfile>) {
    let mut stack = vec![first];
    extend_profiles(w - first, &mut stack, &mut |parts| {
        out.push(FiltrationProfile {
            parts: parts.to_vec(),
            cap,
        });
    });
}

fn extend_profiles(remaining: i64, stack: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    if remaining == 0 {
        emit(stack);
        return;
    }
    let top = *stack.last().expect("nonempty");
    for next in (1..=top.min(remaining)).rev() {
        stack.push(next);
        extend_profiles(remaining - next, stack, emit);
        stack.pop();
    }
}

/// Exhaustive maximization of [`profile_score`] over profiles of weight `w`
/// and cap `q`, with `w` limited to [`DEFAULT_WEIGHT_CAP`].
pub fn max_score_brute_force(w: i64, q: i64) -> Result<ScoreOptimum> {
    max_score_brute_force_capped(w, q, DEFAULT_WEIGHT_CAP)
}

/// As [`max_score_brute_force`] with an explicit weight cap. The search is
/// split by first part across the rayon pool and merged deterministically.
pub fn max_score_brute_force_capped(w: i64, q: i64, weight_cap: i64) -> Result<ScoreOptimum> {
    at_least("weight", w, 1)?;
    at_least("profile cap", q, 1)?;
    if w > weight_cap {
        return Err(Error::CapExceeded {
            what: "weight",
            value: w,
            cap: weight_cap,
        });
    }
    let partial: Vec<ScoreOptimum> = (1..=q.min(w))
        .into_par_iter()
        .map(|first| {
            let mut best = ScoreOptimum {
                max: i64::MIN,
                argmax: Vec::new(),
                examined: 0,
            };
            let mut stack = vec![first];
            extend_profiles(w - first, &mut stack, &mut |parts| {
                best.examined += 1;
                let score: i64 = parts.iter().enumerate().map(|(i, &r)| i as i64 * r).sum();
                if score > best.max {
                    best.max = score;
                    best.argmax.clear();
                }
                if score == best.max {
                    best.argmax.push(FiltrationProfile {
                        parts: parts.to_vec(),
                        cap: q,
                    });
                }
            });
            best
        })
        .collect();
    let max = partial
        .iter()
        .map(|p| p.max)
        .max()
        .expect("at least one first part");
    let examined = partial.iter().map(|p| p.examined).sum();
    let mut argmax: Vec<FiltrationProfile> = partial
        .into_iter()
        .filter(|p| p.max == max)
        .flat_map(|p| p.argmax)
        .collect();
    argmax.sort();
    Ok(ScoreOptimum {
        max,
        argmax,
        examined,
    })
}

/// `(2(g-1)/(p·w)) · Σ_{i=0}^m ((p-1)/2 - i)·r_i` without any length check.
pub fn sun_gap_term(profile: &FiltrationProfile, curve: CurveParams) -> Result<Rational> {
    let p = curve.frobenius_p()?;
    let half = Rational::new(p - 1, 2)?;
    let sum: Rational = profile
        .parts
        .iter()
        .enumerate()
        .map(|(i, &r)| (&half - &Rational::integer(i as i64)) * Rational::integer(r))
        .sum();
    let scale = Rational::integer(2 * (curve.genus() - 1))
        / (Rational::integer(p) * Rational::integer(profile.weight()));
    Ok(scale * sum)
}

/// The guaranteed gap `μ(F_*Q) - μ(W)` for a subbundle `W ⊂ F_*(Q)` inducing
/// `profile` on the canonical filtration of `F^*F_*(Q)`, which has length `p`.
pub fn sun_bound(profile: &FiltrationProfile, curve: CurveParams) -> Result<Rational> {
    let p = curve.frobenius_p()?;
    if profile.last_index() >= p {
        return Err(Error::ProfileTooLong {
            parts: profile.parts.len(),
            max: p,
        });
    }
    sun_gap_term(profile, curve)
}

/// Upper bound `μ(Q)/p + (g-1)(w-1)/p` on the slope of a rank-`w` subbundle
/// of `F_*(Q)`.
pub fn worst_case_subbundle_slope_bound(
    q: BundleNumerics,
    w: i64,
    curve: CurveParams,
) -> Result<Rational> {
    let p = curve.frobenius_p()?;
    at_least("subbundle rank", w, 1)?;
    let p_r = Rational::integer(p);
    Ok(q.slope() / &p_r + Rational::integer((curve.genus() - 1) * (w - 1)) / p_r)
}

/// Smallest `p` bound from `p > (w-1)(g-1)/δ`; above it every rank-`w`
/// subbundle of `F_*(Q)` has slope `< μ(Q)/p + δ`.
pub fn slope_threshold(w: i64, g: i64, delta: &Rational) -> Result<Rational> {
    at_least("subbundle rank", w, 1)?;
    let g = check_genus(g)?;
    if !delta.is_positive() {
        return Err(Error::InvalidProfile(format!(
            "delta must be positive, got {delta}"
        )));
    }
    Ok(Rational::integer((w - 1) * (g - 1)) / delta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperSlopeBound {
    /// `μ(Q) + (2g-2)/w · S(r)`.
    pub bound: Rational,
    /// `μ(V) = μ(Q) + (l-1)(g-1)`.
    pub oper_slope: Rational,
    pub within_oper_slope: bool,
}

/// Slope bound for a flag-compatible subbundle `W` of an oper with first
/// quotient `Q` and length `l`.
pub fn oper_subbundle_slope_bound(
    profile: &FiltrationProfile,
    q: BundleNumerics,
    length: i64,
    g: i64,
) -> Result<OperSlopeBound> {
    at_least("oper length", length, 1)?;
    let g = check_genus(g)?;
    if profile.last_index() > length - 1 {
        return Err(Error::ProfileTooLong {
            parts: profile.parts.len(),
            max: length,
        });
    }
    let bound = q.slope()
        + Rational::integer(2 * g - 2) / Rational::integer(profile.weight())
            * Rational::integer(profile_score(profile));
    let oper_slope = q.slope() + Rational::integer((length - 1) * (g - 1));
    let within_oper_slope = bound <= oper_slope;
    Ok(OperSlopeBound {
        bound,
        oper_slope,
        within_oper_slope,
    })
}

/// `Σ_{i=0}^{⌊m/2⌋} (m-2i)(r_i - r_{m-i})` with `m` the profile's last index.
pub fn rearrangement_sum(profile: &FiltrationProfile) -> i64 {
    let parts = &profile.parts;
    let m = parts.len() - 1;
    (0..=m / 2)
        .map(|i| (m as i64 - 2 * i as i64) * (parts[i] - parts[m - i]))
        .sum()
}

/// Whether the rearranged sum is nonnegative; holds for every weakly
/// decreasing profile.
pub fn rearrangement_check(profile: &FiltrationProfile) -> bool {
    rearrangement_sum(profile) >= 0
}
