//! Projective and affine 1-forms, their exterior calculus, singular-scheme
//! ideals and the standard constructions (logarithmic forms, linear
//! pull-backs, the exceptional family).
//!
//! Conventions: `(dω)_ij = ∂F_j/∂z_i − ∂F_i/∂z_j`,
//! `(ω∧η)_ijk = F_i η_jk − F_j η_ik + F_k η_ij`, `(i_R η)_j = Σ_i z_i η_ij`.
//! A projectivity `A` acts by pull-back along `z ↦ Az`.

mod constructors;
mod forms;

pub use constructors::{
    exceptional_form, exceptional_linear_field, exceptional_quasi_homogeneous_field, logarithmic_form, pencil,
    pullback_from_plane, ExceptionalForm,
};
pub use forms::{exterior_derivative, radial_contraction, wedge, AffineOneForm, ProjectiveOneForm, ThreeForm, TwoForm};

use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::poly::{PolyError, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoliationError {
    #[error("Euler relation fails: Σ z_j F_j = {sum}")]
    EulerViolation { sum: String },
    #[error("coefficient {index} is not homogeneous")]
    Inhomogeneous { index: usize },
    #[error("coefficient {index} has degree {found}, expected {expected}")]
    DegreeMismatch { index: usize, expected: u32, found: u32 },
    #[error("all coefficients vanish")]
    ZeroForm,
    #[error("expected {expected} coefficients, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("forms live in 3 or 4 variables, not {nvars}")]
    UnsupportedDimension { nvars: usize },
    #[error("ring mismatch: {left:?} vs {right:?}")]
    RingMismatch { left: PolyRing, right: PolyRing },
    #[error("singular locus has codimension one (dim R/I = {dim}); a common factor survived")]
    CodimTooSmall { dim: i64 },
    #[error("weight constraint violated: {0}")]
    WeightConstraintViolation(String),
    #[error("form is not integrable")]
    NotIntegrable,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[cfg(test)]
mod tests;
