//! Exact sparse multivariate polynomials.

mod monomial;
pub(crate) mod parse;
mod polynomial;
mod ring;

pub use monomial::{binomial, count_monomials, monomials_of_degree, write_monomial, Monomial, MAX_VARS};
pub use parse::{parse_polynomial, ParseError};
pub use polynomial::Polynomial;
pub use ring::{MonomialOrder, PolyRing};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring mismatch: {left:?} vs {right:?}")]
    RingMismatch { left: PolyRing, right: PolyRing },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("variable z{index} already occurs in the polynomial")]
    VariableOccurs { index: usize },
    #[error("target degree {target} is below the polynomial degree {degree}")]
    DegreeTooLow { target: u32, degree: u32 },
    #[error("matrix must be {expected}x{expected}")]
    DimensionMismatch { expected: usize },
}
