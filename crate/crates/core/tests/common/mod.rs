//! Test-only oracles, written without the library's search or comparison code.

#![allow(dead_code)]

use opercalc::HNPolygon;
use proptest::prelude::*;

/// Every admissible degree-0 polygon of rank `r`, found by trying all subsets
/// of interior breakpoint ranks and all degrees up to
/// `⌊r/2⌋·(r-1)(2g-2)`, then filtering by strict concavity and slope gaps.
///
/// The degree bound: a concave polygon through `(0,0)` and `(r,0)` is positive
/// inside, its first slope is at most `(l-1)(2g-2) <= (r-1)(2g-2)` and its last
/// is at least the negative of that, so `deg(x) <= min(x, r-x)·(r-1)(2g-2)`.
pub fn slow_admissible(r: i64, g: i64) -> Vec<HNPolygon> {
    let gap = 2 * g - 2;
    let max_deg = (r / 2) * (r - 1) * gap;
    let interior: Vec<i64> = (1..r).collect();
    let mut found = Vec::new();
    for mask in 0u32..(1 << interior.len()) {
        let xs: Vec<i64> = interior
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &x)| x)
            .collect();
        let mut degrees = vec![1i64; xs.len()];
        loop {
            let mut points = vec![(0i64, 0i64)];
            points.extend(xs.iter().copied().zip(degrees.iter().copied()));
            points.push((r, 0));
            if strictly_concave_with_gaps(&points, gap) {
                found.push(HNPolygon::new(points).expect("oracle polygon is valid"));
            }
            // odometer over degrees in 1..=max_deg
            let mut k = 0;
            while k < degrees.len() && degrees[k] == max_deg {
                degrees[k] = 1;
                k += 1;
            }
            if k == degrees.len() {
                break;
            }
            degrees[k] += 1;
        }
    }
    found.sort();
    found
}

fn strictly_concave_with_gaps(points: &[(i64, i64)], gap: i64) -> bool {
    points.windows(3).all(|w| {
        let (n1, d1) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let (n2, d2) = (w[2].0 - w[1].0, w[2].1 - w[1].1);
        // d1/n1 > d2/n2 and d1/n1 - d2/n2 <= gap
        let diff = d1 * n2 - d2 * n1;
        diff > 0 && diff <= gap * n1 * n2
    })
}

/// `b` lies on or above `a` at every integer rank, using a separate
/// interpolation over the raw breakpoints.
pub fn oracle_below(a: &HNPolygon, b: &HNPolygon) -> bool {
    let r = a.total_rank();
    (0..=r).all(|x| {
        let (an, ad) = interpolate(a.breakpoints(), x);
        let (bn, bd) = interpolate(b.breakpoints(), x);
        an * bd <= bn * ad
    })
}

fn interpolate(points: &[(i64, i64)], x: i64) -> (i128, i128) {
    for w in points.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x0 <= x && x <= x1 {
            let len = (x1 - x0) as i128;
            return (y0 as i128 * len + (y1 - y0) as i128 * (x - x0) as i128, len);
        }
    }
    panic!("x = {x} outside polygon");
}

/// Upper concave hull of `(0,0)`, `(r,0)` and `(x, heights[x-1])`, without
/// collinear points.
pub fn upper_hull(r: i64, heights: &[i64]) -> HNPolygon {
    let mut pts: Vec<(i64, i64)> = vec![(0, 0)];
    pts.extend((1..r).map(|x| (x, heights[(x - 1) as usize])));
    pts.push((r, 0));
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    HNPolygon::new(hull).expect("upper hull is strictly concave")
}

/// Random polygons of a shared rank `r` ending at `(r, 0)`.
pub fn polygon_strategy(r: i64) -> impl Strategy<Value = HNPolygon> {
    prop::collection::vec(-3i64..6, (r - 1) as usize).prop_map(move |h| upper_hull(r, &h))
}

/// Triples of polygons sharing endpoints `(r, 0)` for some `r` in `2..=6`.
pub fn polygon_triple() -> impl Strategy<Value = (HNPolygon, HNPolygon, HNPolygon)> {
    (2i64..=6).prop_flat_map(|r| {
        (
            polygon_strategy(r),
            polygon_strategy(r),
            polygon_strategy(r),
        )
    })
}
