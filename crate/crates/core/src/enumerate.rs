//! Exhaustive enumeration of admissible degree-0 Harder-Narasimhan polygons and
//! verification that the oper polygon dominates all of them.
//!
//! A polygon from `(0,0)` to `(r,0)` is admissible for genus `g` when adjacent
//! segment slopes differ by at most `2g-2`, the constraint satisfied by every
//! semistable local system. With `l` segments the slopes then lie in
//! `[-(l-1)(2g-2), (l-1)(2g-2)]`, which bounds the search.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{at_least, Error, Result};
use crate::numerics::check_genus;
use crate::oper::oper_polygon;
use crate::polygon::{compare_slopes, shatz_leq, HNPolygon};

pub const DEFAULT_MAX_RANK: i64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub max_rank: i64,
    /// Worker threads; `1` runs on the calling thread.
    pub jobs: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            max_rank: DEFAULT_MAX_RANK,
            jobs: 1,
        }
    }
}

/// Whether `polygon` ends at `(r, 0)` and every slope drop is at most `2g-2`.
pub fn is_admissible(polygon: &HNPolygon, g: i64) -> bool {
    if polygon.total_degree() != 0 {
        return false;
    }
    let gap = 2 * g - 2;
    let points = polygon.breakpoints();
    points.windows(3).all(|w| {
        let (n1, d1) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let (n2, d2) = (w[2].0 - w[1].0, w[2].1 - w[1].1);
        // d1/n1 - d2/n2 <= gap
        (d1 as i128 * n2 as i128 - d2 as i128 * n1 as i128) <= gap as i128 * n1 as i128 * n2 as i128
    })
}

/// Crude upper estimate of the number of search nodes for rank `r`.
pub fn search_space_estimate(r: i64, g: i64) -> u128 {
    let per_segment = (r.max(1) as u128) * (2 * g.max(1) as u128 - 2) + 1;
    let mut total: u128 = 1;
    for _ in 1..r.max(1) {
        total = total.saturating_mul(2).saturating_mul(per_segment);
    }
    total
}

/// All admissible polygons of rank `r` and degree 0, sorted.
pub fn enumerate_admissible(r: i64, g: i64) -> Result<Vec<HNPolygon>> {
    enumerate_admissible_with(r, g, EnumerationOptions::default())
}

pub fn enumerate_admissible_with(
    r: i64,
    g: i64,
    options: EnumerationOptions,
) -> Result<Vec<HNPolygon>> {
    at_least("rank", r, 2)?;
    let g = check_genus(g)?;
    if r > options.max_rank {
        return Err(Error::CapExceeded {
            what: "rank",
            value: r,
            cap: options.max_rank,
        });
    }
    let search = Search {
        rank: r,
        gap: 2 * g - 2,
        slope_bound: (r - 1) * (2 * g - 2),
    };
    let firsts = search.first_segments();
    let explore = |&(n, d): &(i64, i64)| {
        let mut out = Vec::new();
        let mut path = vec![(0, 0), (n, d)];
        search.extend(&mut path, &mut out);
        out
    };
    let mut polygons: Vec<HNPolygon> = if options.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| firsts.par_iter().flat_map_iter(explore).collect())
    } else {
        firsts.iter().flat_map(explore).collect()
    };
    polygons.sort();
    Ok(polygons)
}

struct Search {
    rank: i64,
    gap: i64,
    slope_bound: i64,
}

impl Search {
    fn first_segments(&self) -> Vec<(i64, i64)> {
        let mut firsts = Vec::new();
        for n in 1..=self.rank {
            for d in -n * self.slope_bound..=n * self.slope_bound {
                if self.viable((n, d), (n, d)) {
                    firsts.push((n, d));
                }
            }
        }
        firsts
    }

    // `point` is the breakpoint just reached through segment `(n, d)`.
    fn viable(&self, point: (i64, i64), (n, d): (i64, i64)) -> bool {
        let (x, y) = point;
        let rest = self.rank - x;
        if rest == 0 {
            return y == 0;
        }
        // The remaining slopes are strictly below d/n and, with at most `rest`
        // more segments, no lower than d/n - rest·gap.
        let upper_ok = n as i128 * y as i128 + rest as i128 * d as i128 > 0;
        let lowest = d as i128 - (rest as i128 * self.gap as i128) * n as i128;
        let lower_ok = n as i128 * y as i128 + rest as i128 * lowest <= 0;
        upper_ok && lower_ok
    }

    fn extend(&self, path: &mut Vec<(i64, i64)>, out: &mut Vec<HNPolygon>) {
        let (x, y) = *path.last().expect("nonempty path");
        if x == self.rank {
            out.push(HNPolygon::new(path.clone()).expect("search emits strictly convex polygons"));
            return;
        }
        let prev = path[path.len() - 2];
        let (np, dp) = (x - prev.0, y - prev.1);
        for n in 1..=self.rank - x {
            // dp/np - gap <= d/n < dp/np
            let hi = (dp as i128 * n as i128 - 1).div_euclid(np as i128);
            let lo_num = dp as i128 * n as i128 - self.gap as i128 * n as i128 * np as i128;
            let lo = -((-lo_num).div_euclid(np as i128));
            let cap = (n * self.slope_bound) as i128;
            for d in lo.max(-cap)..=hi.min(cap) {
                let d = d as i64;
                debug_assert_eq!(compare_slopes((n, d), (np, dp)), Ordering::Less);
                let next = (x + n, y + d);
                if self.viable(next, (n, d)) {
                    path.push(next);
                    self.extend(path, out);
                    path.pop();
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityReport {
    pub rank: i64,
    pub genus: i64,
    pub polygon_count: usize,
    pub oper_polygon: HNPolygon,
    /// The oper polygon itself is admissible and was enumerated.
    pub oper_present: bool,
    /// Polygons not dominated by the oper polygon.
    pub counterexamples: Vec<HNPolygon>,
    /// Elements not strictly below any other enumerated polygon.
    pub maximal_elements: Vec<HNPolygon>,
}

impl MaximalityReport {
    pub fn unique_maximum_is_oper(&self) -> bool {
        self.maximal_elements.len() == 1 && self.maximal_elements[0] == self.oper_polygon
    }

    pub fn passed(&self) -> bool {
        self.oper_present && self.counterexamples.is_empty() && self.unique_maximum_is_oper()
    }
}

pub fn verify_oper_maximality(r: i64, g: i64) -> Result<MaximalityReport> {
    verify_oper_maximality_with(r, g, EnumerationOptions::default())
}

pub fn verify_oper_maximality_with(
    r: i64,
    g: i64,
    options: EnumerationOptions,
) -> Result<MaximalityReport> {
    let polygons = enumerate_admissible_with(r, g, options)?;
    maximality_report(r, g, &polygons)
}

/// Checks dominance and uniqueness of the maximum over a given polygon set.
pub fn maximality_report(r: i64, g: i64, polygons: &[HNPolygon]) -> Result<MaximalityReport> {
    let oper = oper_polygon(r, g)?;
    let oper_present = polygons.contains(&oper);
    let mut counterexamples = Vec::new();
    for p in polygons {
        if !shatz_leq(p, &oper)? {
            counterexamples.push(p.clone());
        }
    }
    let mut maximal_elements = Vec::new();
    for (i, p) in polygons.iter().enumerate() {
        let mut dominated = false;
        for (j, q) in polygons.iter().enumerate() {
            if i != j && p != q && shatz_leq(p, q)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            maximal_elements.push(p.clone());
        }
    }
    maximal_elements.sort();
    maximal_elements.dedup();
    Ok(MaximalityReport {
        rank: r,
        genus: g,
        polygon_count: polygons.len(),
        oper_polygon: oper,
        oper_present,
        counterexamples,
        maximal_elements,
    })
}

/// Evaluates `deg(V_i) <= (g-1)(n_1+…+n_i)(n_{i+1}+…+n_l)` for `1 <= i <= l-1`
/// from the polygon's quotient data.
pub fn verify_target_inequalities(polygon: &HNPolygon, g: i64) -> Result<bool> {
    let g = check_genus(g)?;
    let r = polygon.total_rank();
    if polygon.endpoint() != (r, 0) {
        return Err(Error::EndpointMismatch {
            left: polygon.endpoint(),
            right: (r, 0),
        });
    }
    let (ranks, degrees) = polygon.quotient_data();
    let l = ranks.len();
    for i in 1..l {
        let below: i128 = ranks[..i].iter().map(|&n| n as i128).sum();
        let above: i128 = ranks[i..].iter().map(|&n| n as i128).sum();
        let deg_vi: i128 = degrees[i..].iter().map(|&d| d as i128).sum();
        if deg_vi > (g as i128 - 1) * below * above {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyInequality {
    /// `2(m_{l-1} + 2m_{l-2} + … + (l-1)m_1)`.
    pub lhs: i64,
    /// `(2l-1)(m_1 + … + m_{l-1})`.
    pub rhs: i64,
}

impl KeyInequality {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// Both sides of the key inequality for `m = (m_1, …, m_{l-1})`, with the
/// coefficient `j` attached to `m_{l-j}` as displayed.
pub fn key_inequality_check(l: i64, m_values: &[i64]) -> Result<KeyInequality> {
    at_least("l", l, 2)?;
    if m_values.len() as i64 != l - 1 {
        return Err(Error::KeyInequalityArity {
            l,
            expected: (l - 1) as usize,
            got: m_values.len(),
        });
    }
    if let Some(&bad) = m_values.iter().find(|&&m| m < 0) {
        return Err(Error::TooSmall {
            what: "m_i",
            min: 0,
            got: bad,
        });
    }
    let lhs: i128 = (1..l)
        .map(|j| j as i128 * m_values[(l - j - 1) as usize] as i128)
        .sum::<i128>()
        * 2;
    let rhs = (2 * l as i128 - 1) * m_values.iter().map(|&m| m as i128).sum::<i128>();
    Ok(KeyInequality {
        lhs: crate::error::narrow(lhs)?,
        rhs: crate::error::narrow(rhs)?,
    })
}

/// One CSV row of an enumeration export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonRow {
    /// Breakpoints as `r:d` pairs joined by `;`.
    pub breakpoints: String,
    pub is_oper: bool,
    pub dominated_by_oper: bool,
}

pub fn polygon_rows(polygons: &[HNPolygon], oper: &HNPolygon) -> Result<Vec<PolygonRow>> {
    polygons
        .iter()
        .map(|p| {
            let breakpoints = p
                .breakpoints()
                .iter()
                .map(|(r, d)| format!("{r}:{d}"))
                .collect::<Vec<_>>()
                .join(";");
            Ok(PolygonRow {
                breakpoints,
                is_oper: p == oper,
                dominated_by_oper: shatz_leq(p, oper)?,
            })
        })
        .collect()
}

pub fn polygons_to_csv(polygons: &[HNPolygon], oper: &HNPolygon) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in polygon_rows(polygons, oper)? {
        writer
            .serialize(row)
            .map_err(|e| Error::Csv(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Csv(e.to_string()))
}

pub fn polygons_to_json(polygons: &[HNPolygon]) -> Result<String> {
    serde_json::to_string(polygons).map_err(|e| Error::Json(e.to_string()))
}

pub fn polygons_from_json(json: &str) -> Result<Vec<HNPolygon>> {
    serde_json::from_str(json).map_err(|e| Error::Json(e.to_string()))
}
