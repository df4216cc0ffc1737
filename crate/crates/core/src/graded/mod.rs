//! The function algebra of `E[-1]` and its graded vector fields.
//!
//! Functions are polynomials in the even coordinates `x^i` tensored with the
//! exterior algebra on the odd coordinates `xi^k` (degree -1). Vector fields
//! are graded derivations, stored by their values on the generators, so
//! brackets and contractions reduce to component arithmetic.

mod field;
mod function;

pub use field::{GradedVectorField, Section};
pub use function::{SuperFunction, SuperFunctionDisplay, XiSet};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("dimension mismatch: expected (n, m) = {expected:?}, found {found:?}")]
    Dimension {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },
}
