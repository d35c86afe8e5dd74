//! Exact HeLP-method machinery for `PSL(2,q)`.
//!
//! The crate builds the restrictions of ordinary and Brauer characters of
//! `PSL(2,q)` to a cyclic subgroup `<g_0>`, turns the eigenvalue-multiplicity
//! conditions on partial augmentations into an integer constraint system, and
//! enumerates every integer solution exactly.
//!
//! All arithmetic is generic over an integer [`Scalar`]; the aliases at the
//! crate root fix it to [`BigInt`] so that nothing can overflow.

pub mod cyclotomic;
mod error;
pub mod help;
pub mod psl2;
mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use scalar::{from_i64, Scalar};

pub use num_bigint::BigInt;
pub use num_rational::Ratio;

/// Cyclotomic integer with arbitrary-precision coefficients.
pub type CycSum = cyclotomic::CycSum<BigInt>;
/// Cyclotomic integer with machine-word coefficients.
pub type CycSum64 = cyclotomic::CycSum<i64>;
/// Exact rational number.
pub type Rational = Ratio<BigInt>;
pub type ClassFunction = psl2::ClassFunction<BigInt>;
pub type ConstraintSystem = help::ConstraintSystem<BigInt>;
pub type ConstraintRow = help::ConstraintRow<BigInt>;
pub type V4Report = help::V4Report<BigInt>;
pub type EnumerationReport = solver::EnumerationReport;
