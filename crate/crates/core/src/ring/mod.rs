//! Exact scalars and multivariate polynomials over the rationals.
//!
//! Every coefficient is a [`Rational`] kept in lowest terms; nothing in this
//! crate ever rounds. Polynomials carry their arity (the number of base
//! variables) and refuse to mix with polynomials of a different arity.

mod monomial;
mod parse;
mod poly;

pub use monomial::Monomial;
pub use parse::{parse_poly, parse_rational, ParseError, ParseErrorKind};
pub use poly::{Poly, RingError};

/// Arbitrary-precision rational number, always normalized.
pub type Rational = num_rational::BigRational;

/// Builds the rational `numer / denom`. Panics if `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Builds an integral rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(value.into())
}
