//! Exact numerics for Harder-Narasimhan polygons of local systems, opers and
//! Frobenius direct images on curves.
//!
//! Everything is integer or exact rational arithmetic; there is no floating
//! point anywhere in the crate.

pub mod enumerate;
pub mod error;
pub mod filtration;
pub mod frobenius;
pub mod laws;
pub mod numerics;
pub mod oper;
pub mod polygon;
pub mod rational;

pub use error::{Error, Result};
pub use filtration::FiltrationProfile;
pub use frobenius::QuotProblem;
pub use numerics::{BundleNumerics, CurveParams};
pub use oper::OperShape;
pub use polygon::{HNPolygon, StrataPoset};
pub use rational::Rational;
