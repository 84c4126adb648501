//! Numerics of Frobenius direct images `F_*(Q)`: degree and slope, the
//! Hirschowitz subbundle bound, Quot-scheme non-emptiness and dimension
//! estimates, and the destabilization criteria.
//!
//! Propositions here are one-directional. Whenever a hypothesis fails the
//! result says so instead of answering `false`.

use serde::{Deserialize, Serialize};

use crate::error::{at_least, bounded, narrow, Error, Result};
use crate::filtration::worst_case_subbundle_slope_bound;
use crate::numerics::{check_genus, BundleNumerics, CurveParams};
use crate::oper::threshold_c;
use crate::rational::Rational;

/// `(rk, deg)` of `F_*(Q)`: `(p·q, deg Q + q(p-1)(g-1))`.
pub fn pushforward_numerics(q: BundleNumerics, curve: CurveParams) -> Result<BundleNumerics> {
    let p = curve.frobenius_p()? as i128;
    let rank = q.rank() as i128;
    let g = curve.genus() as i128;
    let degree = q.degree() as i128 + rank * (p - 1) * (g - 1);
    BundleNumerics::new(narrow(p * rank)?, narrow(degree)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HirschowitzBound {
    /// The representative in `[0, n-1]` of `m·d - m(n-m)(g-1) mod n`.
    pub epsilon: i64,
    /// `μ(V) - ((n-m)/n)(g-1) - ε/(mn)`: some rank-`m` subbundle reaches it.
    pub slope_bound: Rational,
}

/// Guaranteed slope of a rank-`m` subbundle of a bundle of rank `n` and
/// degree `d` on a genus-`g` curve.
pub fn hirschowitz_bound(n: i64, d: i64, m: i64, g: i64) -> Result<HirschowitzBound> {
    at_least("rank", n, 2)?;
    let g = check_genus(g)?;
    if !(1..n).contains(&m) {
        return Err(Error::SubbundleRank { m, max: n - 1 });
    }
    let (n128, m128) = (n as i128, m as i128);
    let epsilon = (m128 * d as i128 - m128 * (n128 - m128) * (g as i128 - 1)).rem_euclid(n128);
    let epsilon = narrow(epsilon)?;
    let slope_bound = Rational::new(d, n)?
        - Rational::new(n - m, n)? * Rational::integer(g - 1)
        - Rational::integer(epsilon) / (Rational::integer(m) * Rational::integer(n));
    Ok(HirschowitzBound {
        epsilon,
        slope_bound,
    })
}

/// Rank-`r`, degree-`target_degree` subsheaves of `F_*(Q)`, with `q < r < pq`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotProblem {
    q: BundleNumerics,
    r: i64,
    target_degree: i64,
    curve: CurveParams,
    degree_threshold: i64,
    reduced_value: i64,
}

impl QuotProblem {
    pub fn new(q: BundleNumerics, r: i64, target_degree: i64, curve: CurveParams) -> Result<Self> {
        let p = curve.frobenius_p()?;
        bounded("subsheaf rank", r)?;
        bounded("target degree", target_degree)?;
        let pq = p as i128 * q.rank() as i128;
        if !(q.rank() < r && (r as i128) < pq) {
            return Err(Error::QuotRange { q: q.rank(), r, p });
        }
        let threshold = -(r as i128 - q.rank() as i128) * (curve.genus() as i128 - 1);
        let reduced = r as i128 * (q.degree() as i128 - threshold);
        Ok(QuotProblem {
            q,
            r,
            target_degree,
            curve,
            degree_threshold: narrow(threshold)?,
            reduced_value: narrow(reduced)?,
        })
    }

    /// The degree-0 problem `Quot^{r,0}(F_*(Q))`.
    pub fn degree_zero(q: BundleNumerics, r: i64, curve: CurveParams) -> Result<Self> {
        QuotProblem::new(q, r, 0, curve)
    }

    pub fn quotient(&self) -> BundleNumerics {
        self.q
    }

    pub fn subsheaf_rank(&self) -> i64 {
        self.r
    }

    pub fn target_degree(&self) -> i64 {
        self.target_degree
    }

    pub fn curve(&self) -> CurveParams {
        self.curve
    }

    /// `-(r-q)(g-1)`, the smallest `deg Q` covered by the non-emptiness criterion.
    pub fn degree_threshold(&self) -> i64 {
        self.degree_threshold
    }

    /// `r·[deg Q + (r-q)(g-1)]`.
    pub fn reduced_value(&self) -> i64 {
        self.reduced_value
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonemptyCase {
    /// `r[deg Q + (r-q)(g-1)] <= pq - 1`: ε equals the reduced value.
    ResidueBelowModulus,
    /// `r[deg Q + (r-q)(g-1)] >= pq`: `-ε/(pqr) >= -1/r` closes the gap.
    ResidueAtLeastModulus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonemptyCertificate {
    pub case: NonemptyCase,
    /// `r[deg Q + (r-q)(g-1)]`.
    pub reduced_value: i64,
    /// ε from [`hirschowitz_bound`] applied to `F_*(Q)` with `m = r`.
    pub epsilon: i64,
    /// `reduced_value mod pq`, the same ε obtained by simplifying the congruence.
    pub epsilon_from_reduction: i64,
    /// Lower bound on `μ(W)` for some rank-`r` subsheaf `W ⊂ F_*(Q)`.
    pub slope_bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum QuotNonempty {
    Nonempty(NonemptyCertificate),
    /// `deg Q < -(r-q)(g-1)`. Says nothing about emptiness.
    HypothesisNotMet {
        degree: i64,
        threshold: i64,
    },
}

impl QuotNonempty {
    pub fn is_certified(&self) -> bool {
        matches!(self, QuotNonempty::Nonempty(_))
    }

    pub fn certificate(&self) -> Option<&NonemptyCertificate> {
        match self {
            QuotNonempty::Nonempty(c) => Some(c),
            QuotNonempty::HypothesisNotMet { .. } => None,
        }
    }
}

/// Non-emptiness of `Quot^{r,0}(F_*(Q))` when `deg Q >= -(r-q)(g-1)`.
pub fn quot_nonempty(problem: &QuotProblem) -> Result<QuotNonempty> {
    if problem.target_degree != 0 {
        return Err(Error::NonzeroTargetDegree(problem.target_degree));
    }
    let threshold = problem.degree_threshold();
    if problem.q.degree() < threshold {
        return Ok(QuotNonempty::HypothesisNotMet {
            degree: problem.q.degree(),
            threshold,
        });
    }
    let pushed = pushforward_numerics(problem.q, problem.curve)?;
    let hb = hirschowitz_bound(
        pushed.rank(),
        pushed.degree(),
        problem.r,
        problem.curve.genus(),
    )?;
    let modulus = pushed.rank();
    let reduced_value = problem.reduced_value();
    let case = if reduced_value < modulus {
        NonemptyCase::ResidueBelowModulus
    } else {
        NonemptyCase::ResidueAtLeastModulus
    };
    Ok(QuotNonempty::Nonempty(NonemptyCertificate {
        case,
        reduced_value,
        epsilon: hb.epsilon,
        epsilon_from_reduction: reduced_value.rem_euclid(modulus),
        slope_bound: hb.slope_bound,
    }))
}

/// `r[(r-q)(g-1) + deg Q]`, returned as is even when negative.
pub fn quot_dim_lower_bound(q_rank: i64, q_degree: i64, r: i64, g: i64) -> Result<i64> {
    at_least("rank", q_rank, 1)?;
    at_least("subsheaf rank", r, 1)?;
    let g = check_genus(g)? as i128;
    let r128 = r as i128;
    narrow(r128 * ((r128 - q_rank as i128) * (g - 1) + q_degree as i128))
}

impl QuotProblem {
    /// Lower bound on the dimension of every component of the Quot-scheme.
    pub fn dim_lower_bound(&self) -> i64 {
        quot_dim_lower_bound(self.q.rank(), self.q.degree(), self.r, self.curve.genus())
            .expect("inputs validated at construction")
    }
}

/// Expected dimensions attached to rank `r` and genus `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedDimensions {
    /// `3g - 4` for components of the rank-2 Frobenius-destabilized locus
    /// containing a dormant oper; absent unless `r = 2`.
    pub dim_j2: Option<i64>,
    /// Expected dimension of `Quot^{r,0}(F_*(Q))` for a line bundle `Q` of
    /// degree `-(r-1)(g-1)`.
    pub quot_expected: i64,
    /// `-(r-1)(g-1)`.
    pub oper_quot_degree: i64,
}

pub fn expected_dimensions(r: i64, g: i64) -> Result<ExpectedDimensions> {
    at_least("rank", r, 2)?;
    let g = check_genus(g)?;
    let oper_quot_degree = narrow(-((r as i128 - 1) * (g as i128 - 1)))?;
    let quot_expected = quot_dim_lower_bound(1, oper_quot_degree, r, g)?;
    let dim_j2 = (r == 2).then(|| 3 * g - 4);
    Ok(ExpectedDimensions {
        dim_j2,
        quot_expected,
        oper_quot_degree,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabilizationPredicates {
    /// `C(rk V, g)`.
    pub threshold: i64,
    /// `p > C(rk V, g)`.
    pub p_exceeds_threshold: bool,
    /// `rk Q < rk V`.
    pub rank_ok: bool,
    /// `μ(Q) < p·μ(V)`.
    pub slope_ok: bool,
    /// `deg Q = -1`; only reported when `deg V = 0`.
    pub degree0_target: Option<bool>,
}

/// Hypotheses of the criterion realizing `V` inside some `F_*(Q)`.
pub fn destabilization_predicates(
    v: BundleNumerics,
    q: BundleNumerics,
    curve: CurveParams,
) -> Result<DestabilizationPredicates> {
    let threshold = threshold_c(v.rank(), curve.genus())?;
    let p = curve.char_p();
    Ok(DestabilizationPredicates {
        threshold,
        p_exceeds_threshold: p > threshold,
        rank_ok: q.rank() < v.rank(),
        slope_ok: q.slope() < Rational::integer(p) * v.slope(),
        degree0_target: (v.degree() == 0).then(|| q.degree() == -1),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxDegreeHypotheses {
    /// `q < r < pq`.
    pub rank_range: bool,
    /// `-(r-q)(g-1) <= deg Q < 0`.
    pub degree_range: bool,
    /// `p > r(r-1)(g-1)`.
    pub char_large: bool,
}

impl MaxDegreeHypotheses {
    pub fn all(&self) -> bool {
        self.rank_range && self.degree_range && self.char_large
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxDegreeCertificate {
    /// Some rank-`r` subsheaf has slope at least this (hence degree `>= 0`).
    pub lower: NonemptyCertificate,
    /// Every rank-`r` subbundle has slope at most this.
    pub upper_slope_bound: Rational,
    /// `1/r`; the upper bound is strictly below it, so degrees are `<= 0`.
    pub upper_limit: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxDegreeVerdict {
    pub hypotheses: MaxDegreeHypotheses,
    pub certificate: Option<MaxDegreeCertificate>,
}

impl MaxDegreeVerdict {
    pub fn holds(&self) -> bool {
        self.certificate.is_some()
    }
}

/// Certifies that the maximal degree of rank-`r` subbundles of `F_*(Q)` is 0.
pub fn maxdegree_certificate(
    q: BundleNumerics,
    r: i64,
    curve: CurveParams,
) -> Result<MaxDegreeVerdict> {
    at_least("subsheaf rank", r, 1)?;
    let p = curve.char_p() as i128;
    let g = curve.genus() as i128;
    let (qr, r128) = (q.rank() as i128, r as i128);
    let hypotheses = MaxDegreeHypotheses {
        rank_range: qr < r128 && r128 < p * qr,
        degree_range: -(r128 - qr) * (g - 1) <= q.degree() as i128 && q.degree() < 0,
        char_large: p > r128 * (r128 - 1) * (g - 1),
    };
    if !hypotheses.all() {
        return Ok(MaxDegreeVerdict {
            hypotheses,
            certificate: None,
        });
    }
    let problem = QuotProblem::degree_zero(q, r, curve)?;
    let lower = match quot_nonempty(&problem)? {
        QuotNonempty::Nonempty(c) => c,
        QuotNonempty::HypothesisNotMet { .. } => unreachable!("degree range checked above"),
    };
    let upper_slope_bound = worst_case_subbundle_slope_bound(q, r, curve)?;
    let upper_limit = Rational::new(1, r)?;
    let certificate = (upper_slope_bound < upper_limit && !lower.slope_bound.is_negative())
        .then_some(MaxDegreeCertificate {
            lower,
            upper_slope_bound,
            upper_limit,
        });
    Ok(MaxDegreeVerdict {
        hypotheses,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bn(r: i64, d: i64) -> BundleNumerics {
        BundleNumerics::new(r, d).unwrap()
    }

    fn curve(g: i64, p: i64) -> CurveParams {
        CurveParams::new(g, p).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn pushforward_examples() {
        let f = pushforward_numerics(bn(1, -1), curve(2, 3)).unwrap();
        assert_eq!(f, bn(3, 1));
        assert_eq!(f.slope(), rat(1, 3));
        assert_eq!(
            pushforward_numerics(bn(2, 1), curve(2, 3)).unwrap(),
            bn(6, 5)
        );
        assert_eq!(
            pushforward_numerics(bn(1, 0), curve(2, 2)).unwrap(),
            bn(2, 1)
        );
        assert_eq!(
            pushforward_numerics(bn(1, 0), curve(2, 0)),
            Err(Error::RequiresCharacteristic)
        );
    }

    #[test]
    fn hirschowitz_examples() {
        let h = hirschowitz_bound(3, 1, 2, 2).unwrap();
        assert_eq!((h.epsilon, h.slope_bound), (0, rat(0, 1)));
        let h = hirschowitz_bound(2, 0, 1, 2).unwrap();
        assert_eq!((h.epsilon, h.slope_bound), (1, rat(-1, 1)));
        let h = hirschowitz_bound(4, 0, 2, 2).unwrap();
        assert_eq!((h.epsilon, h.slope_bound), (0, rat(-1, 2)));
    }

    #[test]
    fn hirschowitz_rank_range() {
        assert_eq!(
            hirschowitz_bound(3, 0, 3, 2),
            Err(Error::SubbundleRank { m: 3, max: 2 })
        );
        assert_eq!(
            hirschowitz_bound(3, 0, 0, 2),
            Err(Error::SubbundleRank { m: 0, max: 2 })
        );
    }

    #[test]
    fn quot_nonempty_examples() {
        let p = QuotProblem::degree_zero(bn(1, -1), 2, curve(2, 3)).unwrap();
        let v = quot_nonempty(&p).unwrap();
        let c = v.certificate().unwrap();
        assert_eq!(c.case, NonemptyCase::ResidueBelowModulus);
        assert_eq!(c.reduced_value, 0);
        assert_eq!(c.epsilon, 0);
        assert_eq!(c.slope_bound, rat(0, 1));

        let p = QuotProblem::degree_zero(bn(1, -2), 3, curve(2, 5)).unwrap();
        assert!(quot_nonempty(&p).unwrap().is_certified());

        let p = QuotProblem::degree_zero(bn(1, -3), 2, curve(2, 3)).unwrap();
        assert_eq!(
            quot_nonempty(&p).unwrap(),
            QuotNonempty::HypothesisNotMet {
                degree: -3,
                threshold: -1
            }
        );
    }

    #[test]
    fn quot_nonempty_large_residue_case() {
        // r[deg Q + (r-q)(g-1)] = 2(3 + 1) = 8 >= pq = 3
        let p = QuotProblem::degree_zero(bn(1, 3), 2, curve(2, 3)).unwrap();
        let c = quot_nonempty(&p).unwrap().certificate().cloned().unwrap();
        assert_eq!(c.case, NonemptyCase::ResidueAtLeastModulus);
        assert_eq!(c.epsilon, 8 % 3);
        assert_eq!(c.epsilon, c.epsilon_from_reduction);
        assert!(!c.slope_bound.is_negative());
    }

    #[test]
    fn quot_problem_validation() {
        assert!(matches!(
            QuotProblem::degree_zero(bn(1, 0), 1, curve(2, 3)),
            Err(Error::QuotRange { .. })
        ));
        assert!(matches!(
            QuotProblem::degree_zero(bn(1, 0), 3, curve(2, 3)),
            Err(Error::QuotRange { .. })
        ));
        assert_eq!(
            QuotProblem::degree_zero(bn(1, 0), 2, curve(2, 0)),
            Err(Error::RequiresCharacteristic)
        );
        let p = QuotProblem::new(bn(1, 0), 2, 1, curve(2, 3)).unwrap();
        assert_eq!(quot_nonempty(&p), Err(Error::NonzeroTargetDegree(1)));
    }

    #[test]
    fn dim_lower_bound_examples() {
        assert_eq!(quot_dim_lower_bound(1, -2, 3, 2).unwrap(), 0);
        assert_eq!(quot_dim_lower_bound(1, -1, 2, 2).unwrap(), 0);
        assert_eq!(quot_dim_lower_bound(1, -(3 - 1) + 1, 2, 3).unwrap(), 2);
        assert_eq!(quot_dim_lower_bound(1, -5, 2, 2).unwrap(), -8);
        let p = QuotProblem::degree_zero(bn(1, -2), 3, curve(2, 5)).unwrap();
        assert_eq!(p.dim_lower_bound(), 0);
    }

    #[test]
    fn expected_dimension_examples() {
        let e = expected_dimensions(2, 2).unwrap();
        assert_eq!(
            e,
            ExpectedDimensions {
                dim_j2: Some(2),
                quot_expected: 0,
                oper_quot_degree: -1
            }
        );
        assert_eq!(expected_dimensions(2, 3).unwrap().dim_j2, Some(5));
        let e = expected_dimensions(3, 2).unwrap();
        assert_eq!(
            e,
            ExpectedDimensions {
                dim_j2: None,
                quot_expected: 0,
                oper_quot_degree: -2
            }
        );
    }

    #[test]
    fn destabilization_examples() {
        let d = destabilization_predicates(bn(2, 0), bn(1, -1), curve(2, 3)).unwrap();
        assert!(d.p_exceeds_threshold && d.rank_ok && d.slope_ok);
        assert_eq!(d.degree0_target, Some(true));
        assert_eq!(d.threshold, 0);

        let d = destabilization_predicates(bn(3, 0), bn(2, -1), curve(2, 5)).unwrap();
        assert_eq!(d.threshold, 6);
        assert!(!d.p_exceeds_threshold);

        let d = destabilization_predicates(bn(2, 0), bn(2, -1), curve(2, 3)).unwrap();
        assert!(!d.rank_ok);

        let d = destabilization_predicates(bn(2, 1), bn(1, 0), curve(2, 3)).unwrap();
        assert_eq!(d.degree0_target, None);
    }

    #[test]
    fn maxdegree_examples() {
        let v = maxdegree_certificate(bn(1, -1), 2, curve(2, 3)).unwrap();
        assert!(v.hypotheses.all());
        let c = v.certificate.unwrap();
        assert_eq!(c.upper_limit, rat(1, 2));
        // -1/3 + 1/3
        assert_eq!(c.upper_slope_bound, rat(0, 1));
        assert!(!c.lower.slope_bound.is_negative());

        let v = maxdegree_certificate(bn(1, -1), 2, curve(2, 2)).unwrap();
        assert!(!v.hypotheses.char_large);
        assert!(!v.holds());

        let v = maxdegree_certificate(bn(1, -2), 3, curve(2, 7)).unwrap();
        assert!(v.holds());
    }

    #[test]
    fn maxdegree_degree_range() {
        let v = maxdegree_certificate(bn(1, 0), 2, curve(2, 5)).unwrap();
        assert!(!v.hypotheses.degree_range);
        let v = maxdegree_certificate(bn(1, -2), 2, curve(2, 5)).unwrap();
        assert!(!v.hypotheses.degree_range);
        assert!(!maxdegree_certificate(bn(1, -1), 2, curve(2, 0))
            .unwrap()
            .holds());
    }
}
