use super::forms::{AffineOneForm, ProjectiveOneForm};
use super::FoliationError;
use crate::groebner::Ideal;
use crate::poly::{Monomial, PolyRing};
use crate::{Poly, Rat};

/// `ω = Σ_i λ_i (Π_{j≠i} f_j) df_i`, the logarithmic form of type
/// `L(deg f_0, …)`. Needs `λ_i ≠ 0` and `Σ λ_i deg f_i = 0`.
pub fn logarithmic_form(factors: &[Poly], weights: &[Rat]) -> Result<ProjectiveOneForm, FoliationError> {
    if factors.len() != weights.len() || factors.len() < 2 {
        return Err(FoliationError::WeightConstraintViolation(format!(
            "{} factors with {} weights",
            factors.len(),
            weights.len()
        )));
    }
    let ring = factors[0].ring();
    if let Some(f) = factors.iter().find(|f| f.ring() != ring) {
        return Err(FoliationError::RingMismatch { left: ring, right: f.ring() });
    }
    if weights.iter().any(|w| w == &Rat::from_integer(0.into())) {
        return Err(FoliationError::WeightConstraintViolation("weights must be nonzero".into()));
    }
    let mut total = Rat::from_integer(0.into());
    for (index, (f, w)) in factors.iter().zip(weights).enumerate() {
        let Some(d) = f.homogeneous_degree().filter(|&d| d > 0) else {
            return Err(FoliationError::Inhomogeneous { index });
        };
        total += w.clone() * Rat::from_integer(d.into());
    }
    if total != Rat::from_integer(0.into()) {
        return Err(FoliationError::WeightConstraintViolation(format!("Σ λ_i deg f_i = {total}, expected 0")));
    }
    for (i, f) in factors.iter().enumerate() {
        for (j, g) in factors.iter().enumerate() {
            if i != j && Ideal::new(ring, vec![f.clone()])?.contains(g)? {
                return Err(FoliationError::WeightConstraintViolation(format!("factor {i} divides factor {j}")));
            }
        }
    }
    let n = ring.nvars();
    let mut coeffs = vec![Poly::zero(ring); n];
    for (i, (f, w)) in factors.iter().zip(weights).enumerate() {
        let others =
            factors.iter().enumerate().filter(|&(j, _)| j != i).fold(Poly::one(ring), |acc, (_, g)| &acc * g).scale(w);
        for (k, c) in coeffs.iter_mut().enumerate() {
            let df = f.partial_derivative(k)?;
            if !df.is_zero() {
                *c = &*c + &(&others * &df);
            }
        }
    }
    ProjectiveOneForm::validate(coeffs)
}

/// The linear pull-back of a plane form under the projection from
/// `(1:0:0:0)`: plane variables `z0, z1, z2` become `z1, z2, z3` and the
/// `dz0` coefficient is zero.
pub fn pullback_from_plane(plane: &ProjectiveOneForm) -> Result<ProjectiveOneForm, FoliationError> {
    if plane.nvars() != 3 {
        return Err(FoliationError::UnsupportedDimension { nvars: plane.nvars() });
    }
    let target = PolyRing::new(4, plane.ring().order());
    let map = [1, 2, 3];
    let mut coeffs = vec![Poly::zero(target)];
    coeffs.extend(plane.coefficients().iter().map(|g| g.remap_variables(target, &map)));
    ProjectiveOneForm::validate(coeffs)
}

/// The pencil `z_j dz_i − z_i dz_j`.
pub fn pencil(ring: PolyRing, i: usize, j: usize) -> Result<ProjectiveOneForm, FoliationError> {
    let n = ring.nvars();
    if i >= n || j >= n || i == j {
        return Err(FoliationError::ArityMismatch { expected: n, found: i.max(j) + 1 });
    }
    let mut coeffs = vec![Poly::zero(ring); n];
    coeffs[i] = Poly::var(ring, j);
    coeffs[j] = -Poly::var(ring, i);
    ProjectiveOneForm::validate(coeffs)
}

/// A member of the exceptional family together with the data it was built
/// from.
#[derive(Clone, Debug)]
pub struct ExceptionalForm {
    /// The parameter `d` of the affine formula.
    pub parameter: u32,
    /// `(1+d, 1+d+d², 1+2d+2d²+d³)`.
    pub scalars: [i64; 3],
    pub affine: AffineOneForm,
    pub form: ProjectiveOneForm,
}

impl ExceptionalForm {
    /// Degree of the projectivized form, which need not equal `parameter`.
    pub fn computed_degree(&self) -> u32 {
        self.form.degree()
    }
}

/// Weights of the linear field `S = Σ s_i z_i ∂/∂z_i` behind the exceptional
/// construction, on affine `z1, z2, z3`.
pub fn exceptional_linear_field(d: u32) -> [i64; 3] {
    let d = i64::from(d);
    [1 + d + d * d, 1 + d, 1]
}

/// The quasi-homogeneous field `X = (1+d+d²) z2^d ∂1 + (1+d) z3^d ∂2 + ∂3`,
/// as (coefficient, affine monomial exponents) per component.
pub fn exceptional_quasi_homogeneous_field(d: u32) -> [(i64, [u32; 3]); 3] {
    let s = exceptional_linear_field(d);
    [(s[0], [0, d, 0]), (s[1], [0, 0, d]), (1, [0, 0, 0])]
}

/// The affine form
/// `(1+d)(z2 − z3^{d+1}) dz1 − (1+d+d²)(z1 − z2^d z3) dz2 − (1+2d+2d²+d³)(z2^{d+1} − z1 z3^d) dz3`
/// extended to `P³` with `z0` as the new variable, then validated and
/// checked for integrability.
pub fn exceptional_form(d: u32) -> Result<ExceptionalForm, FoliationError> {
    if d < 2 {
        return Err(FoliationError::WeightConstraintViolation(format!("exceptional family needs d ≥ 2, got {d}")));
    }
    let dd = i64::from(d);
    let scalars = [1 + dd, 1 + dd + dd * dd, 1 + 2 * dd + 2 * dd * dd + dd * dd * dd];
    // affine variables x0, x1, x2 stand for z1, z2, z3
    let ring = PolyRing::grevlex(3);
    let int = |v: i64| Rat::from_integer(v.into());
    let mono = |e: [u32; 3]| Monomial::from_exponents(&e);
    let term = |c: i64, e: [u32; 3]| Poly::monomial(ring, mono(e), int(c));
    let a1 = (term(1, [0, 1, 0]) - term(1, [0, 0, d + 1])).scale(&int(scalars[0]));
    let a2 = (term(1, [1, 0, 0]) - term(1, [0, d, 1])).scale(&int(-scalars[1]));
    let a3 = (term(1, [0, d + 1, 0]) - term(1, [1, 0, d])).scale(&int(-scalars[2]));
    let affine = AffineOneForm::new(vec![a1, a2, a3])?;
    let form = affine.projectivize(0)?;
    if !form.is_integrable() {
        return Err(FoliationError::NotIntegrable);
    }
    Ok(ExceptionalForm { parameter: d, scalars, affine, form })
}
