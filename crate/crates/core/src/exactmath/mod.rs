//! Exact integer and rational arithmetic, plus the precision contract for
//! [`Real`] values used by everything downstream.

mod binomial;
mod precision;
mod rational;
mod real;

pub use binomial::{binomial, binomial_row, central_binomial, PascalRows};
pub use precision::PrecisionPolicy;
pub use rational::{parse_rational, rational_from_ratio};
pub use real::{bits_for_error, Real};


/// Arbitrary-magnitude signed integer.
pub type ExactInt = num_bigint::BigInt;

/// Reduced fraction with a positive denominator.
pub type ExactRational = num_rational::BigRational;
