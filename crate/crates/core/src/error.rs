use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be at least 2, got {0}")]
    InvalidGenus(i64),
    #[error("characteristic must be 0 or a prime, got {0}")]
    InvalidCharacteristic(i64),
    #[error("this operation needs a positive characteristic")]
    RequiresCharacteristic,
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: i64,
        got: i64,
    },
    #[error("{what} = {value} is outside the supported range (|x| <= {limit})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        limit: i64,
    },
    #[error("arithmetic overflow: result does not fit in 64 bits")]
    Overflow,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("quotient data is empty")]
    EmptyQuotientData,
    #[error("quotient data has {ranks} ranks but {degrees} degrees")]
    LengthMismatch { ranks: usize, degrees: usize },
    #[error("quotient slopes must strictly increase; entry {index} breaks the order")]
    NonConvex { index: usize },
    #[error("polygons end at ({}, {}) and ({}, {}); they are not comparable", .left.0, .left.1, .right.0, .right.1)]
    EndpointMismatch { left: (i64, i64), right: (i64, i64) },
    #[error("subbundle rank m = {m} must satisfy 1 <= m <= {max}")]
    SubbundleRank { m: i64, max: i64 },
    #[error("subsheaf rank r = {r} must satisfy q < r < p*q with q = {q}, p = {p}")]
    QuotRange { q: i64, r: i64, p: i64 },
    #[error("expected a degree-0 Quot problem, target degree is {0}")]
    NonzeroTargetDegree(i64),
    #[error("invalid filtration profile: {0}")]
    InvalidProfile(String),
    #[error("profile has {parts} parts; at most {max} are allowed here")]
    ProfileTooLong { parts: usize, max: i64 },
    #[error("{what} = {value} exceeds the enumeration cap {cap}; raise the cap to proceed")]
    CapExceeded {
        what: &'static str,
        value: i64,
        cap: i64,
    },
    #[error("key inequality for l = {l} expects {expected} values, got {got}")]
    KeyInequalityArity { l: i64, expected: usize, got: usize },
    #[error("strict oper shape: degree {degree} is not divisible by p = {p}")]
    DegreeNotDivisible { degree: i64, p: i64 },
    #[error("json: {0}")]
    Json(String),
    #[error("csv: {0}")]
    Csv(String),
}

/// Largest magnitude accepted for any integer input. Internal products of up to
/// four such values are carried out in `i128` and never overflow.
pub const MAX_MAGNITUDE: i64 = i32::MAX as i64;

pub(crate) fn bounded(what: &'static str, value: i64) -> Result<i64> {
    if value.abs() > MAX_MAGNITUDE {
        Err(Error::OutOfRange {
            what,
            value,
            limit: MAX_MAGNITUDE,
        })
    } else {
        Ok(value)
    }
}

pub(crate) fn at_least(what: &'static str, value: i64, min: i64) -> Result<i64> {
    bounded(what, value)?;
    if value < min {
        Err(Error::TooSmall {
            what,
            min,
            got: value,
        })
    } else {
        Ok(value)
    }
}

pub(crate) fn narrow(value: i128) -> Result<i64> {
    i64::try_from(value).map_err(|_| Error::Overflow)
}
