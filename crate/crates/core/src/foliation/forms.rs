use std::collections::BTreeMap;
use std::fmt;

use super::FoliationError;
use crate::groebner::Ideal;
use crate::poly::{Monomial, PolyRing};
use crate::{Poly, Rat};

/// `ω = Σ F_i dz_i` on projective space, with `Σ z_i F_i = 0` and all `F_i`
/// homogeneous of degree `d + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectiveOneForm {
    ring: PolyRing,
    coeffs: Vec<Poly>,
    degree: u32,
}

/// A 1-form on affine space; coefficients need not be homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineOneForm {
    ring: PolyRing,
    coeffs: Vec<Poly>,
}

/// An antisymmetric 2-form `Σ_{i<j} η_ij dz_i ∧ dz_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForm {
    ring: PolyRing,
    coeffs: BTreeMap<(usize, usize), Poly>,
}

/// An alternating 3-form `Σ_{i<j<k} θ_ijk dz_i ∧ dz_j ∧ dz_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeForm {
    ring: PolyRing,
    coeffs: BTreeMap<(usize, usize, usize), Poly>,
}

/// `(dω)_ij = ∂F_j/∂z_i − ∂F_i/∂z_j`.
pub fn exterior_derivative(ring: PolyRing, coeffs: &[Poly]) -> TwoForm {
    let n = ring.nvars();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = coeffs[j].partial_derivative(i).expect("index in range");
            let b = coeffs[i].partial_derivative(j).expect("index in range");
            out.insert((i, j), a - b);
        }
    }
    TwoForm { ring, coeffs: out }
}

/// `(ω ∧ η)_ijk = F_i η_jk − F_j η_ik + F_k η_ij`.
pub fn wedge(coeffs: &[Poly], eta: &TwoForm) -> ThreeForm {
    let n = eta.ring.nvars();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = &(&coeffs[i] * eta.get(j, k)) - &(&coeffs[j] * eta.get(i, k));
                out.insert((i, j, k), &t + &(&coeffs[k] * eta.get(i, j)));
            }
        }
    }
    ThreeForm { ring: eta.ring, coeffs: out }
}

/// `(i_R η)_j = Σ_i z_i η_ij`.
pub fn radial_contraction(eta: &TwoForm) -> Vec<Poly> {
    let n = eta.ring.nvars();
    (0..n)
        .map(|j| (0..n).fold(Poly::zero(eta.ring), |acc, i| acc + &Poly::var(eta.ring, i) * &eta.coeff(i, j)))
        .collect()
}

impl TwoForm {
    pub fn zero(ring: PolyRing) -> Self {
        let n = ring.nvars();
        let coeffs = (0..n).flat_map(|i| (i + 1..n).map(move |j| ((i, j), Poly::zero(ring)))).collect();
        Self { ring, coeffs }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    /// Every pair `i < j` is stored, so this never misses.
    fn get(&self, i: usize, j: usize) -> &Poly {
        &self.coeffs[&(i, j)]
    }

    /// `η_ij` with the antisymmetric sign for `i > j`.
    pub fn coeff(&self, i: usize, j: usize) -> Poly {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.get(i, j).clone(),
            std::cmp::Ordering::Greater => -self.get(j, i).clone(),
            std::cmp::Ordering::Equal => Poly::zero(self.ring),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Poly::is_zero)
    }

    /// `dη`: `(dη)_ijk = ∂_i η_jk − ∂_j η_ik + ∂_k η_ij`.
    pub fn exterior_derivative(&self) -> ThreeForm {
        let n = self.ring.nvars();
        let mut out = BTreeMap::new();
        let d = |p: &Poly, v: usize| p.partial_derivative(v).expect("index in range");
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t = d(self.get(j, k), i) - d(self.get(i, k), j) + d(self.get(i, j), k);
                    out.insert((i, j, k), t);
                }
            }
        }
        ThreeForm { ring: self.ring, coeffs: out }
    }
}

impl ThreeForm {
    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    /// `θ_ijk` for `i < j < k`.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> Poly {
        self.coeffs.get(&(i, j, k)).cloned().unwrap_or_else(|| Poly::zero(self.ring))
    }

    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Poly)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Poly::is_zero)
    }
}

impl ProjectiveOneForm {
    /// Check homogeneity, equal degrees and the Euler relation, stripping
    /// any monomial common to all coefficients.
    pub fn validate(coeffs: Vec<Poly>) -> Result<Self, FoliationError> {
        let first = coeffs.first().ok_or(FoliationError::ZeroForm)?;
        let ring = first.ring();
        let n = ring.nvars();
        if !(3..=4).contains(&n) {
            return Err(FoliationError::UnsupportedDimension { nvars: n });
        }
        if coeffs.len() != n {
            return Err(FoliationError::ArityMismatch { expected: n, found: coeffs.len() });
        }
        if let Some(c) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(FoliationError::RingMismatch { left: ring, right: c.ring() });
        }
        if coeffs.iter().all(Poly::is_zero) {
            return Err(FoliationError::ZeroForm);
        }
        let mut degree = None;
        for (index, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let Some(dc) = c.homogeneous_degree() else {
                return Err(FoliationError::Inhomogeneous { index });
            };
            match degree {
                None => degree = Some(dc),
                Some(d) if d != dc => return Err(FoliationError::DegreeMismatch { index, expected: d, found: dc }),
                _ => {}
            }
        }
        let euler = coeffs.iter().enumerate().fold(Poly::zero(ring), |acc, (j, f)| acc + &Poly::var(ring, j) * f);
        if !euler.is_zero() {
            return Err(FoliationError::EulerViolation { sum: euler.to_string() });
        }
        let common = coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(Poly::monomial_content)
            .reduce(|a, b| a.gcd(&b))
            .unwrap_or_else(Monomial::one);
        let coeffs: Vec<Poly> =
            coeffs.iter().map(|c| c.div_monomial(&common).expect("common factor divides")).collect();
        let coeff_degree = degree.expect("nonzero form") - common.degree();
        // Euler forces every coefficient to have positive degree
        Ok(Self { ring, coeffs, degree: coeff_degree - 1 })
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coeffs
    }

    /// The degree `d`; coefficients have degree `d + 1`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exterior_derivative(&self) -> TwoForm {
        exterior_derivative(self.ring, &self.coeffs)
    }

    /// `ω ∧ dω`.
    pub fn integrability_form(&self) -> ThreeForm {
        wedge(&self.coeffs, &self.exterior_derivative())
    }

    /// `ω ∧ dω = 0`.
    pub fn is_integrable(&self) -> bool {
        self.integrability_form().is_zero()
    }

    /// `i_R dω`, which equals `(d+2)·ω`.
    pub fn radial_contraction_of_derivative(&self) -> Vec<Poly> {
        radial_contraction(&self.exterior_derivative())
    }

    /// The singular-scheme ideal `(F_0, …, F_n)`. Rejects forms whose
    /// singular locus has codimension one.
    pub fn singular_ideal(&self) -> Result<Ideal<Rat>, FoliationError> {
        let ideal = Ideal::new(self.ring, self.coeffs.clone())?;
        let hd = ideal.hilbert_data()?;
        if hd.krull_dim >= self.nvars() as i64 - 1 {
            return Err(FoliationError::CodimTooSmall { dim: hd.krull_dim });
        }
        Ok(ideal)
    }

    /// The ideal `(F_0, …, F_n)` without the codimension check.
    pub fn coefficient_ideal(&self) -> Ideal<Rat> {
        Ideal::new(self.ring, self.coeffs.clone()).expect("validated coefficients are homogeneous")
    }

    pub fn scale(&self, c: &Rat) -> Result<Self, FoliationError> {
        Self::validate(self.coeffs.iter().map(|f| f.scale(c)).collect())
    }

    /// Whether `self = c·other` for a nonzero rational `c`.
    pub fn is_proportional_to(&self, other: &Self) -> bool {
        if self.ring != other.ring {
            return false;
        }
        let Some((k, f)) = self.coeffs.iter().enumerate().find(|(_, f)| !f.is_zero()) else { return false };
        let g = &other.coeffs[k];
        let (Some(a), Some(b)) = (f.leading_coefficient(), g.leading_coefficient()) else { return false };
        let c = a.clone() / b.clone();
        self.coeffs.iter().zip(&other.coeffs).all(|(x, y)| *x == y.scale(&c))
    }

    /// Pull back along `z ↦ A z`: `F'_j = Σ_i A_ij F_i(Az)`.
    pub fn apply_projectivity(&self, a: &[Vec<Rat>]) -> Result<Self, FoliationError> {
        let n = self.nvars();
        let subst = self.coeffs.iter().map(|f| f.apply_linear_change(a)).collect::<Result<Vec<_>, _>>()?;
        let coeffs =
            (0..n).map(|j| (0..n).fold(Poly::zero(self.ring), |acc, i| acc + subst[i].scale(&a[i][j]))).collect();
        Self::validate(coeffs)
    }

    /// Render as `(F_0) dz0 + (F_1) dz1 + …`, skipping zero coefficients.
    pub fn to_form_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, f) in self.coeffs.iter().enumerate() {
            if !f.is_zero() {
                parts.push(format!("({f}) dz{i}"));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for ProjectiveOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_form_string())
    }
}

impl fmt::Debug for ProjectiveOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjectiveOneForm(d={}, {})", self.degree, self.to_form_string())
    }
}

impl AffineOneForm {
    pub fn new(coeffs: Vec<Poly>) -> Result<Self, FoliationError> {
        let first = coeffs.first().ok_or(FoliationError::ZeroForm)?;
        let ring = first.ring();
        if coeffs.len() != ring.nvars() {
            return Err(FoliationError::ArityMismatch { expected: ring.nvars(), found: coeffs.len() });
        }
        if let Some(c) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(FoliationError::RingMismatch { left: ring, right: c.ring() });
        }
        Ok(Self { ring, coeffs })
    }

    /// The exact differential `df`.
    pub fn exact(f: &Poly) -> Self {
        let ring = f.ring();
        let coeffs = (0..ring.nvars()).map(|i| f.partial_derivative(i).expect("index in range")).collect();
        Self { ring, coeffs }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn exterior_derivative(&self) -> TwoForm {
        exterior_derivative(self.ring, &self.coeffs)
    }

    pub fn is_integrable(&self) -> bool {
        wedge(&self.coeffs, &self.exterior_derivative()).is_zero()
    }

    /// Extend to projective space with a new homogenizing variable at index
    /// `new_var`; the affine variables keep their order around it.
    pub fn projectivize(&self, new_var: usize) -> Result<ProjectiveOneForm, FoliationError> {
        let m = self.ring.nvars();
        if new_var > m {
            return Err(FoliationError::UnsupportedDimension { nvars: m + 1 });
        }
        if self.coeffs.iter().all(Poly::is_zero) {
            return Err(FoliationError::ZeroForm);
        }
        let target = PolyRing::new(m + 1, self.ring.order());
        let map: Vec<usize> = (0..m).map(|i| if i < new_var { i } else { i + 1 }).collect();
        let top = self.coeffs.iter().filter_map(Poly::total_degree).max().unwrap_or(0);
        let lifted = self
            .coeffs
            .iter()
            .map(|a| a.remap_variables(target, &map).homogenize(new_var, top))
            .collect::<Result<Vec<_>, _>>()?;
        let z_new = Poly::var(target, new_var);
        let mut coeffs = vec![Poly::zero(target); m + 1];
        let mut last = Poly::zero(target);
        for (j, a) in lifted.iter().enumerate() {
            coeffs[map[j]] = &z_new * a;
            last = last - &Poly::var(target, map[j]) * a;
        }
        coeffs[new_var] = last;
        ProjectiveOneForm::validate(coeffs)
    }
}
