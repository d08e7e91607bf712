//! Exact symbolic toolkit for codimension-one holomorphic foliations on
//! projective 3-space and the projective plane.
//!
//! A foliation is given by a homogeneous 1-form `ω = Σ F_i dz_i` with the
//! Euler relation `Σ z_i F_i = 0`. The crate checks integrability, extracts
//! the singular-scheme ideal `(F_0, …, F_n)`, and decides saturation,
//! local freeness, splitting and splitting type of the tangent sheaf, and
//! whether the foliation is determined by its singular scheme.
//!
//! The algebra layers ([`poly`], [`linalg`], [`groebner`]) are generic over
//! the coefficient [`Field`]; the foliation layers work over the exact
//! rationals through the aliases below.

pub mod classify;
pub mod corpus;
pub mod determine;
pub mod foliation;
pub mod formfile;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod scalar;

pub use scalar::Field;

/// Exact rationals with arbitrary-precision numerator and denominator.
pub type Rat = num_rational::BigRational;
/// Polynomials with exact rational coefficients.
pub type Poly = poly::Polynomial<Rat>;
