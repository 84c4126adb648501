//! Discrete invariants of bundles and the ambient curve.

use serde::{Deserialize, Serialize};

use crate::error::{at_least, bounded, Error, Result};
use crate::rational::Rational;

/// Rank and degree of a vector bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawNumerics")]
pub struct BundleNumerics {
    rank: i64,
    degree: i64,
}

#[derive(Deserialize)]
struct RawNumerics {
    rank: i64,
    degree: i64,
}

impl TryFrom<RawNumerics> for BundleNumerics {
    type Error = Error;
    fn try_from(raw: RawNumerics) -> Result<Self> {
        BundleNumerics::new(raw.rank, raw.degree)
    }
}

impl BundleNumerics {
    pub fn new(rank: i64, degree: i64) -> Result<Self> {
        at_least("rank", rank, 1)?;
        bounded("degree", degree)?;
        Ok(BundleNumerics { rank, degree })
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn slope(&self) -> Rational {
        Rational::new(self.degree, self.rank).expect("rank is positive")
    }
}

/// Genus and characteristic of the base curve.
///
/// `char_p == 0` stands for characteristic zero; formulas that involve the
/// Frobenius reject it with [`Error::RequiresCharacteristic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCurve")]
pub struct CurveParams {
    genus: i64,
    char_p: i64,
}

#[derive(Deserialize)]
struct RawCurve {
    genus: i64,
    char_p: i64,
}

impl TryFrom<RawCurve> for CurveParams {
    type Error = Error;
    fn try_from(raw: RawCurve) -> Result<Self> {
        CurveParams::new(raw.genus, raw.char_p)
    }
}

impl CurveParams {
    pub fn new(genus: i64, char_p: i64) -> Result<Self> {
        let genus = check_genus(genus)?;
        bounded("characteristic", char_p)?;
        if char_p != 0 && !is_prime(char_p) {
            return Err(Error::InvalidCharacteristic(char_p));
        }
        Ok(CurveParams { genus, char_p })
    }

    /// Curve in characteristic zero, for formulas that never mention `p`.
    pub fn genus_only(genus: i64) -> Result<Self> {
        CurveParams::new(genus, 0)
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn char_p(&self) -> i64 {
        self.char_p
    }

    /// The characteristic, or an error in characteristic zero.
    pub fn frobenius_p(&self) -> Result<i64> {
        if self.char_p == 0 {
            Err(Error::RequiresCharacteristic)
        } else {
            Ok(self.char_p)
        }
    }
}

pub(crate) fn check_genus(genus: i64) -> Result<i64> {
    bounded("genus", genus)?;
    if genus < 2 {
        return Err(Error::InvalidGenus(genus));
    }
    Ok(genus)
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2i64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
