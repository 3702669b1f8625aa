//! Exact arithmetic: sparse integer polynomials in `(q, t)`, rational
//! evaluation, and truncated power series in two further variables `(x, y)`
//! whose coefficients are such polynomials.

mod poly;
mod series;

pub use poly::BivarPoly;
pub use series::{series_reciprocal, TruncatedSeries2};

pub use num_bigint::BigInt;

/// Exact rational numbers, always kept in lowest terms with a positive
/// denominator.
pub type ExactRational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> ExactRational {
    ExactRational::new(numer.into(), denom.into())
}

pub fn integer(value: i64) -> ExactRational {
    ExactRational::from_integer(value.into())
}
