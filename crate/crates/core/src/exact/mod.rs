//! Exact scalar, polynomial, and dense matrix arithmetic.
//!
//! Scalars are arbitrary-precision rationals kept in lowest terms with a
//! canonical sign, so equality is structural equality. Nothing in this
//! module ever rounds.

mod matrix;
mod poly;

pub use matrix::ExactMatrix;
pub use poly::{lagrange_interpolate, poly_shift_compose, IntPoly, RatPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Exact rational scalar. `num_rational` keeps it reduced with a positive
/// denominator, which makes `==` the mathematical equality.
pub type Rat = BigRational;

/// Shorthand for small integer constants.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Exact fraction from a numerator and a non-zero denominator.
pub fn ratio(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "7", "-3" or "19/4" into an exact rational.
pub fn parse_rat(text: &str) -> Result<Rat, ExactError> {
    let bad = || ExactError::BadRationalLiteral(text.to_string());
    let mut parts = text.splitn(2, '/');
    let num: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let den: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is {rows}x{cols}, operation needs a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left_rows}x{left_cols} against {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("dimension {dim} exceeds the limit {limit} for {operation}")]
    TooLarge {
        operation: &'static str,
        dim: usize,
        limit: usize,
    },
    #[error("operation requires integer entries, found {entry} at ({row},{col})")]
    NonIntegerEntries { row: usize, col: usize, entry: String },
    #[error("cannot parse {0:?} as an exact rational (expected p or p/q)")]
    BadRationalLiteral(String),
}
