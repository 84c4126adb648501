//! Cross-formula identities and inequalities, evaluated over fixed parameter
//! grids. Every law here is a theorem; a failure means a bug.

use serde::{Deserialize, Serialize};

use crate::enumerate::{key_inequality_check, verify_oper_maximality, verify_target_inequalities};
use crate::error::Result;
use crate::filtration::{
    enumerate_profiles, max_score_brute_force, max_score_closed_form, oper_subbundle_slope_bound,
    rearrangement_check, slope_threshold, sun_gap_term, worst_case_subbundle_slope_bound,
};
use crate::frobenius::{
    hirschowitz_bound, pushforward_numerics, quot_dim_lower_bound, quot_nonempty, QuotNonempty,
    QuotProblem,
};
use crate::numerics::{BundleNumerics, CurveParams};
use crate::oper::{
    dormant_sum_identity, frobenius_oper_consistency, oper_polygon, oper_quotient_degrees,
    oper_space_dimensions, OperShape,
};
use crate::polygon::{polygon_from_quotient_data, shatz_leq};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawOutcome {
    pub name: &'static str,
    pub checked: usize,
    /// First few failing instances, described.
    pub failures: Vec<String>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(describe());
        }
    }

    fn finish(self) -> LawOutcome {
        LawOutcome {
            name: self.name,
            checked: self.checked,
            failures: self.failures,
        }
    }
}

const PRIMES: [i64; 5] = [2, 3, 5, 7, 11];

pub fn check_laws() -> Result<Vec<LawOutcome>> {
    Ok(vec![
        pushforward_slope()?,
        oper_polygon_constructions()?,
        oper_dimensions()?,
        dormant_sums()?,
        dormant_oper_degrees()?,
        quot_dimension_families()?,
        hirschowitz_congruence()?,
        quot_certificates()?,
        score_optimum()?,
        slope_bound_chain()?,
        subbundle_threshold()?,
        oper_subbundles()?,
        rearrangement()?,
        key_inequality()?,
        oper_dominance()?,
    ])
}

fn pushforward_slope() -> Result<LawOutcome> {
    let mut t = Tally::new("pushforward slope = μ(Q)/p + (1-1/p)(g-1)");
    for p in PRIMES {
        for g in 2..=5 {
            let curve = CurveParams::new(g, p)?;
            for rank in 1..=3 {
                for deg in -6..=6 {
                    let q = BundleNumerics::new(rank, deg)?;
                    let pushed = pushforward_numerics(q, curve)?;
                    let p_r = Rational::integer(p);
                    let expected = q.slope() / &p_r
                        + (Rational::one() - Rational::one() / p_r) * Rational::integer(g - 1);
                    t.check(pushed.slope() == expected, || {
                        format!("Q={q:?} g={g} p={p}")
                    });
                }
            }
        }
    }
    Ok(t.finish())
}

fn oper_polygon_constructions() -> Result<LawOutcome> {
    let mut t = Tally::new("oper polygon = polygon of oper quotients, symmetric");
    for r in 2..=8 {
        for g in 2..=5 {
            let direct = oper_polygon(r, g)?;
            let shape = OperShape::degree_zero(r, CurveParams::genus_only(g)?)?;
            let (ranks, degrees): (Vec<i64>, Vec<i64>) = oper_quotient_degrees(&shape)
                .iter()
                .map(|b| (b.rank(), b.degree()))
                .unzip();
            let rebuilt = polygon_from_quotient_data(&ranks, &degrees)?;
            let symmetric = (0..=r).all(|i| direct.value_at(i) == direct.value_at(r - i));
            t.check(direct == rebuilt && symmetric, || format!("r={r} g={g}"));
        }
    }
    Ok(t.finish())
}

fn oper_dimensions() -> Result<LawOutcome> {
    let mut t = Tally::new("dim W_r = dim Op = (g-1)(r²-1)");
    for r in 2..=8 {
        for g in 2..=5 {
            let (w, op) = oper_space_dimensions(r, g)?;
            t.check(w == op && w == (g - 1) * (r * r - 1), || {
                format!("r={r} g={g}: ({w}, {op})")
            });
        }
    }
    Ok(t.finish())
}

fn dormant_sums() -> Result<LawOutcome> {
    let mut t = Tally::new("dormant oper quotient degrees sum to 0");
    for r in 2..=8 {
        for g in 2..=5 {
            t.check(dormant_sum_identity(r, g)?, || format!("r={r} g={g}"));
        }
    }
    Ok(t.finish())
}

fn dormant_oper_degrees() -> Result<LawOutcome> {
    let mut t = Tally::new("oper degree with l = p equals p·deg F_*(E)");
    for p in [2, 3, 5, 7] {
        for g in 2..=4 {
            let curve = CurveParams::new(g, p)?;
            for rank in 1..=3 {
                for deg in -6..=6 {
                    let e = BundleNumerics::new(rank, deg)?;
                    t.check(frobenius_oper_consistency(e, curve)?, || {
                        format!("E={e:?} g={g} p={p}")
                    });
                }
            }
        }
    }
    Ok(t.finish())
}

fn quot_dimension_families() -> Result<LawOutcome> {
    let mut t = Tally::new("Quot dimension estimates: 2d family and oper case 0");
    for g in 2..=5 {
        for d in 0..=5 {
            let dim = quot_dim_lower_bound(1, -(g - 1) + d, 2, g)?;
            t.check(dim == 2 * d, || format!("g={g} d={d}: {dim}"));
        }
        for r in 2..=8 {
            let dim = quot_dim_lower_bound(1, -(r - 1) * (g - 1), r, g)?;
            t.check(dim == 0, || format!("oper case r={r} g={g}: {dim}"));
        }
    }
    Ok(t.finish())
}

fn hirschowitz_congruence() -> Result<LawOutcome> {
    let mut t = Tally::new("Hirschowitz ε in [0, n-1] solves its congruence");
    for n in 2..=12 {
        for m in 1..n {
            for g in 2..=4 {
                for d in -12..=12 {
                    let h = hirschowitz_bound(n, d, m, g)?;
                    let ok = (0..n).contains(&h.epsilon)
                        && (h.epsilon + m * (n - m) * (g - 1) - m * d).rem_euclid(n) == 0;
                    t.check(ok, || format!("n={n} d={d} m={m} g={g}: ε={}", h.epsilon));
                }
            }
        }
    }
    Ok(t.finish())
}

fn quot_certificates() -> Result<LawOutcome> {
    let mut t = Tally::new("Quot non-emptiness certificates give μ(W) >= 0");
    for p in [3, 5, 7, 11, 13] {
        for g in 2..=4 {
            let curve = CurveParams::new(g, p)?;
            for q in 1..=3 {
                for r in q + 1..p * q {
                    let start = -(r - q) * (g - 1);
                    for deg in start - 2..=start + p * q + 2 {
                        let problem =
                            QuotProblem::degree_zero(BundleNumerics::new(q, deg)?, r, curve)?;
                        match quot_nonempty(&problem)? {
                            QuotNonempty::Nonempty(c) => t.check(
                                !c.slope_bound.is_negative()
                                    && c.epsilon == c.epsilon_from_reduction,
                                || format!("q={q} deg={deg} r={r} g={g} p={p}"),
                            ),
                            QuotNonempty::HypothesisNotMet { .. } => {
                                t.check(deg < start, || format!("unexpected refusal at deg={deg}"))
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(t.finish())
}

fn score_optimum() -> Result<LawOutcome> {
    let mut t = Tally::new("max Σ i·r_i = w(w-1)/2, attained only by (1,…,1)");
    for w in 1..=10 {
        for q in 1..=w {
            let opt = max_score_brute_force(w, q)?;
            let ok = opt.max == max_score_closed_form(w)?
                && opt.argmax.len() == 1
                && opt.argmax[0].parts().iter().all(|&r| r == 1);
            t.check(ok, || format!("w={w} q={q}: max {}", opt.max));
        }
    }
    Ok(t.finish())
}

fn slope_bound_chain() -> Result<LawOutcome> {
    let mut t = Tally::new("min gap term gives μ(W) <= μ(Q)/p + (g-1)(w-1)/p");
    for p in [5, 7, 11, 13] {
        for g in 2..=4 {
            let curve = CurveParams::new(g, p)?;
            for q in 1..=3 {
                let quotient = BundleNumerics::new(q, -1)?;
                let mu_push = pushforward_numerics(quotient, curve)?.slope();
                for w in 1..=8 {
                    let mut min_gap: Option<Rational> = None;
                    for profile in enumerate_profiles(w, q)? {
                        let gap = sun_gap_term(&profile, curve)?;
                        if min_gap.as_ref().is_none_or(|m| gap < *m) {
                            min_gap = Some(gap);
                        }
                    }
                    let bound = mu_push.clone() - min_gap.expect("profiles exist");
                    let closed = worst_case_subbundle_slope_bound(quotient, w, curve)?;
                    t.check(bound == closed, || {
                        format!("q={q} w={w} g={g} p={p}: {bound} vs {closed}")
                    });
                }
            }
        }
    }
    Ok(t.finish())
}

fn subbundle_threshold() -> Result<LawOutcome> {
    let mut t = Tally::new("p > (w-1)(g-1)/δ implies bound < μ(Q)/p + δ");
    let deltas = [
        Rational::new(1, 2)?,
        Rational::new(1, 6)?,
        Rational::new(1, 12)?,
        Rational::new(3, 2)?,
    ];
    for p in [2, 3, 5, 7, 11, 13, 29, 31, 37, 41] {
        for g in 2..=4 {
            let curve = CurveParams::new(g, p)?;
            for w in 1..=6 {
                for delta in &deltas {
                    if Rational::integer(p) <= slope_threshold(w, g, delta)? {
                        continue;
                    }
                    let q = BundleNumerics::new(1, -1)?;
                    let bound = worst_case_subbundle_slope_bound(q, w, curve)?;
                    let limit = q.slope() / Rational::integer(p) + delta;
                    t.check(bound < limit, || format!("w={w} g={g} p={p} δ={delta}"));
                }
            }
        }
    }
    Ok(t.finish())
}

fn oper_subbundles() -> Result<LawOutcome> {
    let mut t = Tally::new("flag-compatible subbundles satisfy μ(W) <= μ(V)");
    for q in 1..=3 {
        let quotient = BundleNumerics::new(q, -1)?;
        for w in 1..=8 {
            for profile in enumerate_profiles(w, q)? {
                for length in profile.parts().len() as i64..=8 {
                    let b = oper_subbundle_slope_bound(&profile, quotient, length, 2)?;
                    t.check(b.within_oper_slope, || format!("{profile} l={length}"));
                }
            }
        }
    }
    Ok(t.finish())
}

fn rearrangement() -> Result<LawOutcome> {
    let mut t = Tally::new("rearranged sum Σ (m-2i)(r_i - r_{m-i}) >= 0");
    for w in 1..=12 {
        for profile in enumerate_profiles(w, w)? {
            t.check(rearrangement_check(&profile), || profile.to_string());
        }
    }
    Ok(t.finish())
}

fn key_inequality() -> Result<LawOutcome> {
    let mut t = Tally::new("key inequality 2Σ j·m_{l-j} <= (2l-1)Σ m_i");
    for l in 2..=6i64 {
        let slots = (l - 1) as u32;
        for code in 0..5i64.pow(slots) {
            let m: Vec<i64> = (0..slots).map(|k| (code / 5i64.pow(k)) % 5).collect();
            let k = key_inequality_check(l, &m)?;
            t.check(k.holds(), || format!("l={l} m={m:?}"));
        }
    }
    Ok(t.finish())
}

fn oper_dominance() -> Result<LawOutcome> {
    let mut t = Tally::new("oper polygon is the unique maximal admissible polygon");
    for r in 2..=5 {
        for g in 2..=3 {
            let report = verify_oper_maximality(r, g)?;
            t.check(report.passed(), || format!("r={r} g={g}"));
            let oper = &report.oper_polygon;
            for p in crate::enumerate::enumerate_admissible(r, g)? {
                let agree = verify_target_inequalities(&p, g)? == shatz_leq(&p, oper)?;
                t.check(agree, || format!("criteria disagree on {p}"));
            }
        }
    }
    Ok(t.finish())
}
