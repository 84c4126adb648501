//! Numerical invariants of opers.
//!
//! An oper of type `q` and length `l` with first quotient `Q = V_0/V_1` has
//! graded pieces `V_i/V_{i+1} ≅ Q ⊗ K^i`, so its rank and degree are
//! `q·l` and `l·(deg Q + q(l-1)(g-1))`.

use serde::{Deserialize, Serialize};

use crate::error::{at_least, narrow, Error, Result};
use crate::frobenius::pushforward_numerics;
use crate::numerics::{check_genus, BundleNumerics, CurveParams};
use crate::polygon::HNPolygon;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperShape {
    quotient: BundleNumerics,
    length: i64,
    curve: CurveParams,
    rank: i64,
    degree: i64,
}

impl OperShape {
    pub fn new(quotient: BundleNumerics, length: i64, curve: CurveParams) -> Result<Self> {
        at_least("oper length", length, 1)?;
        let q = quotient.rank() as i128;
        let l = length as i128;
        let g = curve.genus() as i128;
        let rank = narrow(q * l)?;
        let degree = narrow(l * (quotient.degree() as i128 + q * (l - 1) * (g - 1)))?;
        Ok(OperShape {
            quotient,
            length,
            curve,
            rank,
            degree,
        })
    }

    /// Like [`OperShape::new`], but in positive characteristic also requires
    /// `p | deg(V)`, which any bundle carrying a connection satisfies.
    pub fn new_strict(quotient: BundleNumerics, length: i64, curve: CurveParams) -> Result<Self> {
        let shape = OperShape::new(quotient, length, curve)?;
        let p = curve.char_p();
        if p > 0 && shape.degree % p != 0 {
            return Err(Error::DegreeNotDivisible {
                degree: shape.degree,
                p,
            });
        }
        Ok(shape)
    }

    /// Degree-0 oper of type 1 and rank `r`: `Q` is a line bundle of degree
    /// `-(r-1)(g-1)` and `l = r`.
    pub fn degree_zero(rank: i64, curve: CurveParams) -> Result<Self> {
        at_least("oper rank", rank, 2)?;
        let deg_q = narrow(-((rank as i128 - 1) * (curve.genus() as i128 - 1)))?;
        OperShape::new(BundleNumerics::new(1, deg_q)?, rank, curve)
    }

    pub fn quotient(&self) -> BundleNumerics {
        self.quotient
    }

    pub fn length(&self) -> i64 {
        self.length
    }

    pub fn curve(&self) -> CurveParams {
        self.curve
    }

    /// `type = rk(Q)`.
    pub fn oper_type(&self) -> i64 {
        self.quotient.rank()
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn numerics(&self) -> BundleNumerics {
        BundleNumerics::new(self.rank, self.degree).expect("validated at construction")
    }
}

/// Polygon with vertices `(i, i(r-i)(g-1))`, `0 <= i <= r`.
pub fn oper_polygon(r: i64, g: i64) -> Result<HNPolygon> {
    at_least("oper rank", r, 2)?;
    let g = check_genus(g)?;
    let points = (0..=r)
        .map(|i| Ok((i, narrow(i as i128 * (r - i) as i128 * (g - 1) as i128)?)))
        .collect::<Result<Vec<_>>>()?;
    HNPolygon::new(points)
}

/// `(rank, degree)` of `V_i/V_{i+1} = Q ⊗ K^i` for `i = 0..l-1`.
pub fn oper_quotient_degrees(shape: &OperShape) -> Vec<BundleNumerics> {
    let q = shape.quotient();
    let canonical = 2 * shape.curve().genus() - 2;
    (0..shape.length())
        .map(|i| {
            let deg = q.degree() as i128 + i as i128 * q.rank() as i128 * canonical as i128;
            BundleNumerics::new(q.rank(), narrow(deg).expect("bounded by oper degree"))
                .expect("pieces of a validated oper")
        })
        .collect()
}

/// Checks `Σ_{i=0}^{r-1} (deg Q + i(2g-2)) = 0` for `deg Q = -(r-1)(g-1)`.
pub fn dormant_sum_identity(r: i64, g: i64) -> Result<bool> {
    at_least("rank", r, 2)?;
    let g = check_genus(g)? as i128;
    let deg_q = -((r as i128 - 1) * (g - 1));
    let sum: i128 = (0..r as i128).map(|i| deg_q + i * (2 * g - 2)).sum();
    Ok(sum == 0)
}

/// `C(r,g) = r(r-1)(r-2)(g-1)`.
pub fn threshold_c(r: i64, g: i64) -> Result<i64> {
    at_least("rank", r, 1)?;
    let g = check_genus(g)? as i128;
    let r = r as i128;
    narrow(r * (r - 1) * (r - 2) * (g - 1))
}

/// Dimensions of `W_r = ⊕_{i=2}^r H^0(K^i)` and of the space of `PGL(r)`-opers.
///
/// The first is summed piece by piece from `h^0(K^i) = (2i-1)(g-1)` (Riemann-Roch,
/// valid for `i >= 2`); the second is the closed form `(g-1)(r²-1)`.
pub fn oper_space_dimensions(r: i64, g: i64) -> Result<(i64, i64)> {
    at_least("rank", r, 2)?;
    let g = check_genus(g)? as i128;
    let dim_w: i128 = (2..=r as i128).map(|i| (2 * i - 1) * (g - 1)).sum();
    let r = r as i128;
    let dim_op = (g - 1) * (r * r - 1);
    Ok((narrow(dim_w)?, narrow(dim_op)?))
}

/// Cross-checks the oper degree formula against the pushforward degree for the
/// dormant oper `F^*F_*(E)` of type `rk(E)` and length `p`:
/// `deg = p · deg(F_* E)`.
pub fn frobenius_oper_consistency(e: BundleNumerics, curve: CurveParams) -> Result<bool> {
    let p = curve.frobenius_p()?;
    let shape = OperShape::new(e, p, curve)?;
    let pushed = pushforward_numerics(e, curve)?;
    let rhs = p as i128 * pushed.degree() as i128;
    Ok(shape.degree() as i128 == rhs && shape.rank() as i128 == p as i128 * e.rank() as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bn(r: i64, d: i64) -> BundleNumerics {
        BundleNumerics::new(r, d).unwrap()
    }

    #[test]
    fn oper_polygon_examples() {
        assert_eq!(
            oper_polygon(2, 2).unwrap().breakpoints(),
            &[(0, 0), (1, 1), (2, 0)]
        );
        assert_eq!(
            oper_polygon(3, 2).unwrap().breakpoints(),
            &[(0, 0), (1, 2), (2, 2), (3, 0)]
        );
        assert_eq!(
            oper_polygon(2, 3).unwrap().breakpoints(),
            &[(0, 0), (1, 2), (2, 0)]
        );
        assert!(oper_polygon(1, 2).is_err());
        assert_eq!(oper_polygon(3, 1), Err(Error::InvalidGenus(1)));
    }

    #[test]
    fn quotient_degree_examples() {
        let c = CurveParams::genus_only(2).unwrap();
        let s = OperShape::new(bn(1, -1), 2, c).unwrap();
        assert_eq!(oper_quotient_degrees(&s), vec![bn(1, -1), bn(1, 1)]);
        let s = OperShape::new(bn(1, -2), 3, c).unwrap();
        let pieces = oper_quotient_degrees(&s);
        assert_eq!(pieces, vec![bn(1, -2), bn(1, 0), bn(1, 2)]);
        assert_eq!(pieces.iter().map(|b| b.degree()).sum::<i64>(), s.degree());
        assert_eq!(s.degree(), 0);
        let s = OperShape::new(bn(2, 0), 1, c).unwrap();
        assert_eq!(oper_quotient_degrees(&s), vec![bn(2, 0)]);
    }

    #[test]
    fn dormant_sum_examples() {
        assert!(dormant_sum_identity(2, 2).unwrap());
        assert!(dormant_sum_identity(3, 2).unwrap());
        assert!(dormant_sum_identity(5, 4).unwrap());
    }

    #[test]
    fn threshold_examples() {
        for g in 2..10 {
            assert_eq!(threshold_c(2, g).unwrap(), 0);
        }
        assert_eq!(threshold_c(3, 2).unwrap(), 6);
        assert_eq!(threshold_c(4, 3).unwrap(), 48);
        assert_eq!(threshold_c(1, 2).unwrap(), 0);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(oper_space_dimensions(2, 2).unwrap(), (3, 3));
        assert_eq!(oper_space_dimensions(3, 2).unwrap(), (8, 8));
        assert_eq!(oper_space_dimensions(2, 3).unwrap(), (6, 6));
    }

    #[test]
    fn consistency_examples() {
        assert!(frobenius_oper_consistency(bn(1, 0), CurveParams::new(2, 3).unwrap()).unwrap());
        assert!(frobenius_oper_consistency(bn(2, 1), CurveParams::new(2, 5).unwrap()).unwrap());
        assert!(frobenius_oper_consistency(bn(1, 0), CurveParams::new(2, 2).unwrap()).unwrap());
        let shape = OperShape::new(bn(1, 0), 3, CurveParams::new(2, 3).unwrap()).unwrap();
        assert_eq!(shape.degree(), 6);
        assert_eq!(
            frobenius_oper_consistency(bn(1, 0), CurveParams::genus_only(2).unwrap()),
            Err(Error::RequiresCharacteristic)
        );
    }

    #[test]
    fn degree_zero_shape() {
        let s = OperShape::degree_zero(4, CurveParams::genus_only(3).unwrap()).unwrap();
        assert_eq!(
            (s.rank(), s.degree(), s.length(), s.oper_type()),
            (4, 0, 4, 1)
        );
        assert_eq!(s.quotient(), bn(1, -6));
    }

    #[test]
    fn strict_mode_checks_divisibility() {
        let c = CurveParams::new(2, 3).unwrap();
        // l = 2: deg = 2(-1 + 1) = 0, divisible
        assert!(OperShape::new_strict(bn(1, -1), 2, c).is_ok());
        // l = 2: deg = 2(0 + 1) = 2, not divisible by 3
        assert_eq!(
            OperShape::new_strict(bn(1, 0), 2, c),
            Err(Error::DegreeNotDivisible { degree: 2, p: 3 })
        );
        assert!(OperShape::new(bn(1, 0), 2, c).is_ok());
    }
}
