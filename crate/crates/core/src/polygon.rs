//! Harder-Narasimhan polygons and the Shatz dominance order.
//!
//! A polygon is stored by its breakpoints `(rank, degree)` in increasing rank,
//! starting at `(0, 0)`. Reading left to right, the first segment carries the
//! largest slope (the maximal destabilizing subbundle) and slopes strictly
//! decrease. In the decreasing-filtration convention
//! `0 = V_l ⊂ V_{l-1} ⊂ … ⊂ V_0 = V`, breakpoint `j` (counted from the left) is
//! `(rk V_{l-j}, deg V_{l-j})` and segment `j` has slope `μ_{l-j+1}`.
//!
//! Polygons are strictly convex: collinear interior points are rejected, so
//! each numerical filtration has exactly one representation. The semistable
//! case is the two-point polygon `(0,0)–(r,d)`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Bound on breakpoint coordinates. Keeps every cross-multiplication used for
/// exact comparisons inside `i128`.
pub const COORDINATE_LIMIT: i64 = 1 << 40;

pub type Breakpoint = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPolygon")]
pub struct HNPolygon {
    breakpoints: Vec<Breakpoint>,
}

#[derive(Deserialize)]
struct RawPolygon {
    breakpoints: Vec<Breakpoint>,
}

impl TryFrom<RawPolygon> for HNPolygon {
    type Error = Error;
    fn try_from(raw: RawPolygon) -> Result<Self> {
        HNPolygon::new(raw.breakpoints)
    }
}

impl HNPolygon {
    pub fn new(breakpoints: Vec<Breakpoint>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidPolygon(msg));
        if breakpoints.len() < 2 {
            return invalid(format!(
                "need at least two breakpoints, got {}",
                breakpoints.len()
            ));
        }
        if breakpoints[0] != (0, 0) {
            return invalid(format!(
                "first breakpoint is {:?}, expected (0, 0)",
                breakpoints[0]
            ));
        }
        for &(x, y) in &breakpoints {
            if x.abs() > COORDINATE_LIMIT || y.abs() > COORDINATE_LIMIT {
                return invalid(format!("breakpoint ({x}, {y}) exceeds coordinate limit"));
            }
        }
        for (i, w) in breakpoints.windows(2).enumerate() {
            if w[1].0 <= w[0].0 {
                return invalid(format!(
                    "ranks must strictly increase at breakpoint {}",
                    i + 1
                ));
            }
        }
        for (i, w) in breakpoints.windows(3).enumerate() {
            if compare_slopes(segment(w[0], w[1]), segment(w[1], w[2])) != Ordering::Greater {
                return invalid(format!(
                    "slopes must strictly decrease at breakpoint {}",
                    i + 1
                ));
            }
        }
        Ok(HNPolygon { breakpoints })
    }

    /// The semistable polygon: a single segment from `(0,0)` to `(rank, degree)`.
    pub fn trivial(rank: i64, degree: i64) -> Result<Self> {
        HNPolygon::new(vec![(0, 0), (rank, degree)])
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    pub fn endpoint(&self) -> Breakpoint {
        *self.breakpoints.last().expect("at least two breakpoints")
    }

    pub fn total_rank(&self) -> i64 {
        self.endpoint().0
    }

    pub fn total_degree(&self) -> i64 {
        self.endpoint().1
    }

    pub fn is_trivial(&self) -> bool {
        self.breakpoints.len() == 2
    }

    /// Number of segments, i.e. the length `l` of the filtration.
    pub fn length(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// Segment slopes from left to right (strictly decreasing).
    pub fn segment_slopes(&self) -> Vec<Rational> {
        self.breakpoints
            .windows(2)
            .map(|w| {
                let (n, d) = segment(w[0], w[1]);
                Rational::new(d, n).expect("positive segment rank")
            })
            .collect()
    }

    /// Quotient data `(n_1..n_l, δ_1..δ_l)` with `n_i = rk(V_{i-1}/V_i)` and
    /// `δ_i = deg(V_{i-1}/V_i)`, so `δ_i/n_i` increases with `i`. Inverse of
    /// [`polygon_from_quotient_data`].
    pub fn quotient_data(&self) -> (Vec<i64>, Vec<i64>) {
        self.breakpoints
            .windows(2)
            .rev()
            .map(|w| segment(w[0], w[1]))
            .unzip()
    }

    /// Exact value of the piecewise-linear interpolation at integer rank `x`.
    ///
    /// Panics if `x` lies outside `0..=total_rank`.
    pub fn value_at(&self, x: i64) -> Rational {
        let (num, den) = self.value_fraction(x);
        Rational::from_bigints(num.into(), den.into()).expect("positive denominator")
    }

    // (numerator, positive denominator), not reduced.
    fn value_fraction(&self, x: i64) -> (i128, i128) {
        assert!(
            (0..=self.total_rank()).contains(&x),
            "rank {x} outside polygon domain 0..={}",
            self.total_rank()
        );
        let idx = self.breakpoints.partition_point(|&(r, _)| r < x);
        let (rb, db) = self.breakpoints[idx];
        if rb == x {
            return (db as i128, 1);
        }
        let (ra, da) = self.breakpoints[idx - 1];
        let len = (rb - ra) as i128;
        let num = da as i128 * len + (db - da) as i128 * (x - ra) as i128;
        (num, len)
    }

    fn value_cmp(&self, other: &HNPolygon, x: i64) -> Ordering {
        let (a, da) = self.value_fraction(x);
        let (b, db) = other.value_fraction(x);
        (a * db).cmp(&(b * da))
    }
}

impl std::fmt::Display for HNPolygon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .breakpoints
            .iter()
            .map(|(r, d)| format!("({r},{d})"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

fn segment(a: Breakpoint, b: Breakpoint) -> (i64, i64) {
    (b.0 - a.0, b.1 - a.1)
}

// Compares d1/n1 with d2/n2 for positive n1, n2.
pub(crate) fn compare_slopes((n1, d1): (i64, i64), (n2, d2): (i64, i64)) -> Ordering {
    (d1 as i128 * n2 as i128).cmp(&(d2 as i128 * n1 as i128))
}

/// Builds the polygon of a filtration from its graded pieces.
///
/// `ranks[i-1] = n_i = rk(V_{i-1}/V_i)` and `degrees[i-1] = δ_i`. The slopes
/// `δ_i/n_i` must strictly increase with `i`; the breakpoints are
/// `(n_l+…+n_{i+1}, δ_l+…+δ_{i+1})` for `i = l, …, 0`.
pub fn polygon_from_quotient_data(ranks: &[i64], degrees: &[i64]) -> Result<HNPolygon> {
    if ranks.is_empty() {
        return Err(Error::EmptyQuotientData);
    }
    if ranks.len() != degrees.len() {
        return Err(Error::LengthMismatch {
            ranks: ranks.len(),
            degrees: degrees.len(),
        });
    }
    if let Some(&bad) = ranks.iter().find(|&&n| n < 1) {
        return Err(Error::TooSmall {
            what: "quotient rank",
            min: 1,
            got: bad,
        });
    }
    for i in 1..ranks.len() {
        if compare_slopes((ranks[i], degrees[i]), (ranks[i - 1], degrees[i - 1]))
            != Ordering::Greater
        {
            return Err(Error::NonConvex { index: i });
        }
    }
    let mut points = Vec::with_capacity(ranks.len() + 1);
    let (mut x, mut y) = (0i64, 0i64);
    points.push((0, 0));
    for (&n, &d) in ranks.iter().zip(degrees).rev() {
        x = x.checked_add(n).ok_or(Error::Overflow)?;
        y = y.checked_add(d).ok_or(Error::Overflow)?;
        points.push((x, y));
    }
    HNPolygon::new(points)
}

fn check_comparable(a: &HNPolygon, b: &HNPolygon) -> Result<()> {
    if a.endpoint() != b.endpoint() {
        return Err(Error::EndpointMismatch {
            left: a.endpoint(),
            right: b.endpoint(),
        });
    }
    Ok(())
}

/// `a ≼ b` in the Shatz order: `b` lies on or above `a`.
///
/// Both polygons have kinks only at integer ranks, so comparing values at
/// every integer rank decides dominance on the whole interval.
pub fn shatz_leq(a: &HNPolygon, b: &HNPolygon) -> Result<bool> {
    check_comparable(a, b)?;
    Ok((0..=a.total_rank()).all(|x| a.value_cmp(b, x) != Ordering::Greater))
}

/// Finite poset under [`shatz_leq`] with its Hasse diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataPoset {
    /// Distinct polygons in lexicographic breakpoint order.
    pub elements: Vec<HNPolygon>,
    /// Cover relations `(lower, upper)` as indices into `elements`, sorted.
    pub covers: Vec<(usize, usize)>,
}

impl StrataPoset {
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| !self.covers.iter().any(|&(lo, _)| lo == i))
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| !self.covers.iter().any(|&(_, hi)| hi == i))
            .collect()
    }
}

/// Hasse diagram of a set of polygons sharing endpoints.
pub fn strata_poset(polygons: &[HNPolygon]) -> Result<StrataPoset> {
    let mut elements = polygons.to_vec();
    elements.sort();
    elements.dedup();
    if let Some(first) = elements.first() {
        for p in &elements[1..] {
            check_comparable(first, p)?;
        }
    }
    let n = elements.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = i == j || shatz_leq(&elements[i], &elements[j])?;
        }
    }
    let lt = |i: usize, j: usize| i != j && leq[i * n + j];
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                covers.push((i, j));
            }
        }
    }
    Ok(StrataPoset { elements, covers })
}
