//! Decision procedures on the singular scheme of a foliation of `P³`:
//! saturation, the curve (locally free) test, the ACM test, splitting and
//! splitting type of the tangent sheaf, and the Hartshorne–Rao dimensions.
//!
//! Splitting is decided twice, as "curve and saturated" and as "curve and
//! ACM"; the two answers must coincide.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::foliation::{FoliationError, ProjectiveOneForm};
use crate::groebner::{free_resolution, syzygy_module, Budget, ExtModule, FreeResolution, GroebnerError, Ideal};
use crate::linalg::DenseMatrix;
use crate::poly::{count_monomials, monomials_of_degree};
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("classification needs a form on P³ (4 variables), got {nvars}")]
    UnsupportedDimension { nvars: usize },
    #[error("singular scheme is not a curve")]
    NotACurve,
    #[error("foliation does not split")]
    NotSplit,
    #[error("splitting-type consistency check failed: {0}")]
    ConsistencyFailure(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

impl ClassifyError {
    /// Whether the failure came from an exhausted computation budget.
    pub fn is_resource_exhausted(&self) -> bool {
        matches!(
            self,
            Self::Groebner(GroebnerError::ResourceExhausted { .. })
                | Self::Foliation(FoliationError::Groebner(GroebnerError::ResourceExhausted { .. }))
        )
    }
}

/// Everything [`classify`] computes about one form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub degree: u32,
    /// The singular locus has codimension at least two. Always true in a
    /// returned report; forms failing it are rejected with `CodimTooSmall`.
    pub codim_ok: bool,
    pub saturated: bool,
    pub is_curve: bool,
    pub is_acm: bool,
    pub is_split: bool,
    /// `(a, b)` with `a ≤ b` when the tangent sheaf is `O(a) ⊕ O(b)`.
    pub splitting_type: Option<(i64, i64)>,
    /// `k ↦ h¹(I_Z(k))`, nonzero entries only; empty unless `Z` is a curve.
    pub rao_dims: BTreeMap<i64, i128>,
    /// Graded Betti numbers of `R/I^sat`.
    pub betti: Vec<BTreeMap<i64, usize>>,
    /// `d + 2`, the twist in `N = I_Z(d+2)`.
    pub normal_twist: u32,
    /// Connectedness of `Z` needs a primary decomposition and is not decided.
    pub connected: Option<bool>,
    /// `curve ∧ saturated`.
    pub route_saturated: bool,
    /// `curve ∧ ACM`.
    pub route_acm: bool,
}

/// The ideal-side data of one form, computed lazily and shared by the
/// individual tests.
struct Analysis<'a> {
    form: &'a ProjectiveOneForm,
    ideal: Ideal<Rat>,
    saturation: Option<Ideal<Rat>>,
    resolution: Option<FreeResolution<Rat>>,
    ext: Option<ExtModule<Rat>>,
}

impl<'a> Analysis<'a> {
    fn new(form: &'a ProjectiveOneForm, budget: &Budget) -> Result<Self, ClassifyError> {
        let ideal = form.singular_ideal()?.with_budget(*budget);
        Ok(Self { form, ideal, saturation: None, resolution: None, ext: None })
    }

    fn require_space(&self) -> Result<(), ClassifyError> {
        match self.form.nvars() {
            4 => Ok(()),
            nvars => Err(ClassifyError::UnsupportedDimension { nvars }),
        }
    }

    fn saturation(&mut self) -> Result<&Ideal<Rat>, ClassifyError> {
        if self.saturation.is_none() {
            self.saturation = Some(self.ideal.saturate_by_variables()?);
        }
        Ok(self.saturation.as_ref().expect("just set"))
    }

    fn saturated(&mut self) -> Result<bool, ClassifyError> {
        let ideal = self.ideal.clone();
        Ok(self.saturation()?.is_subset_of(&ideal)?)
    }

    fn resolution(&mut self) -> Result<&FreeResolution<Rat>, ClassifyError> {
        if self.resolution.is_none() {
            let sat = self.saturation()?.clone();
            self.resolution = Some(free_resolution(&sat, true)?);
        }
        Ok(self.resolution.as_ref().expect("just set"))
    }

    fn ext3(&mut self) -> Result<&ExtModule<Rat>, ClassifyError> {
        if self.ext.is_none() {
            let budget = self.ideal.budget();
            let ext = ExtModule::from_resolution(self.resolution()?, 3, &budget)?;
            self.ext = Some(ext);
        }
        Ok(self.ext.as_ref().expect("just set"))
    }

    fn is_curve(&mut self) -> Result<bool, ClassifyError> {
        self.require_space()?;
        if self.saturation()?.hilbert_data()?.krull_dim != 2 {
            return Ok(false);
        }
        Ok(self.ext3()?.krull_dim() <= 0)
    }

    fn is_acm(&mut self) -> Result<bool, ClassifyError> {
        Ok(self.resolution()?.length() == 2)
    }

    fn rao(&mut self) -> Result<BTreeMap<i64, i128>, ClassifyError> {
        let ext = self.ext3()?;
        let (numerator, _) = ext.series().finite_support().ok_or(ClassifyError::NotACurve)?;
        Ok(numerator.into_iter().filter(|&(_, c)| c != 0).map(|(delta, c)| (-delta - 4, c)).collect())
    }

    /// Both routes to splitting; an error if they disagree.
    fn routes(&mut self) -> Result<(bool, bool, bool, bool, bool), ClassifyError> {
        let curve = self.is_curve()?;
        let saturated = self.saturated()?;
        let acm = curve && self.is_acm()?;
        let route_a = curve && saturated;
        let route_b = curve && acm;
        if route_a != route_b {
            return Err(ClassifyError::InternalInconsistency(format!(
                "curve ∧ saturated = {route_a} but curve ∧ ACM = {route_b}"
            )));
        }
        Ok((curve, saturated, acm, route_a, route_b))
    }

    fn splitting_type(&mut self) -> Result<(i64, i64), ClassifyError> {
        let d = i64::from(self.form.degree());
        let k = self.form.coefficients().len() as i128;
        let s = |m: i64| -> Result<i128, ClassifyError> {
            Ok(k * count_monomials(4, m + 1) - self.ideal.graded_dim(m + d + 2)?)
        };
        let h0 = |m: i64| -> Result<i128, ClassifyError> { Ok(s(m)? - count_monomials(4, m)) };
        // b ≤ 1, so nothing below m = -1 can have sections
        let mut m0 = None;
        for m in -1..=d + 2 {
            if h0(m)? > 0 {
                m0 = Some(m);
                break;
            }
        }
        let m0 =
            m0.ok_or_else(|| ClassifyError::ConsistencyFailure(format!("no sections of F(m) for m ≤ {}", d + 2)))?;
        let b = -m0;
        let a = 2 - d - b;
        if a > b || b > 1 {
            return Err(ClassifyError::ConsistencyFailure(format!("recovered (a, b) = ({a}, {b}) violates a ≤ b ≤ 1")));
        }
        for m in m0 + 1..=m0 + 3 {
            let expected = count_monomials(4, m + a) + count_monomials(4, m + b) + count_monomials(4, m);
            let found = s(m)?;
            if found != expected {
                return Err(ClassifyError::ConsistencyFailure(format!(
                    "O({a}) ⊕ O({b}) predicts {expected} syzygies of degree {}, found {found}",
                    m + 1
                )));
            }
        }
        Ok((a, b))
    }
}

/// `s_m`, the dimension of the syzygies `(g_i)` of the coefficients with
/// `deg g_i = m + 1`, spanned from a syzygy module basis. The classification
/// itself counts `4·h⁰(O(m+1)) − dim I_{m+d+2}` instead.
pub fn syzygy_dimension(form: &ProjectiveOneForm, m: i64) -> Result<i128, ClassifyError> {
    let ring = form.ring();
    let coeffs = form.coefficients();
    let syz = syzygy_module(coeffs, &Budget::default())?;
    let target = m + 1;
    // span of all multiples of the basis landing in the target degree
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let n = coeffs.len();
    let Ok(component_degree) = u32::try_from(m + 1) else { return Ok(0) };
    let monos = monomials_of_degree(ring.nvars(), component_degree);
    for g in &syz {
        // component degree; zero coefficients carry no usable twist
        let Some(gd) = g.components.iter().find(|c| !c.is_zero()).and_then(|c| c.homogeneous_degree()) else {
            continue;
        };
        let shift = target - i64::from(gd);
        if shift < 0 {
            continue;
        }
        for mult in monomials_of_degree(ring.nvars(), shift as u32) {
            let mut row = Vec::with_capacity(n * monos.len());
            for comp in &g.components {
                let c = comp.mul_term(&mult, &Rat::from_integer(1.into()));
                row.extend(monos.iter().map(|mo| c.coefficient(mo)));
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(DenseMatrix::from_rows(rows).rank() as i128)
}

/// `I = I^sat` for the singular-scheme ideal. Works in any number of variables.
pub fn is_saturated(form: &ProjectiveOneForm, budget: &Budget) -> Result<bool, ClassifyError> {
    Analysis::new(form, budget)?.saturated()
}

/// The saturated singular-scheme ideal.
pub fn saturated_ideal(form: &ProjectiveOneForm, budget: &Budget) -> Result<Ideal<Rat>, ClassifyError> {
    Ok(Analysis::new(form, budget)?.saturation()?.clone())
}

/// `Z` is a curve: `R/I^sat` has Krull dimension 2 and `Ext³(R/I^sat, R)` has
/// finite length. Equivalent to the tangent sheaf being locally free.
pub fn is_curve(form: &ProjectiveOneForm, budget: &Budget) -> Result<bool, ClassifyError> {
    Analysis::new(form, budget)?.is_curve()
}

/// The minimal resolution of `R/I^sat` has length exactly 2.
pub fn is_acm(form: &ProjectiveOneForm, budget: &Budget) -> Result<bool, ClassifyError> {
    Analysis::new(form, budget)?.is_acm()
}

/// Whether the tangent sheaf splits, decided by both routes.
pub fn is_split(form: &ProjectiveOneForm, budget: &Budget) -> Result<bool, ClassifyError> {
    let mut an = Analysis::new(form, budget)?;
    let (.., route_a, _) = an.routes()?;
    Ok(route_a)
}

/// `(a, b)` with `a ≤ b` and `F = O(a) ⊕ O(b)`, for split forms.
pub fn splitting_type(form: &ProjectiveOneForm, budget: &Budget) -> Result<(i64, i64), ClassifyError> {
    let mut an = Analysis::new(form, budget)?;
    let (.., split, _) = an.routes()?;
    if !split {
        return Err(ClassifyError::NotSplit);
    }
    an.splitting_type()
}

/// `k ↦ h¹(I_Z(k)) = dim Ext³(R/I^sat, R)_{-k-4}`, nonzero entries only.
pub fn rao_dimensions(form: &ProjectiveOneForm, budget: &Budget) -> Result<BTreeMap<i64, i128>, ClassifyError> {
    let mut an = Analysis::new(form, budget)?;
    if !an.is_curve()? {
        return Err(ClassifyError::NotACurve);
    }
    an.rao()
}

/// Rao dimensions of an arbitrary saturated homogeneous ideal in 4 variables
/// whose `Ext³` has finite length.
pub fn rao_dimensions_of_ideal(ideal: &Ideal<Rat>) -> Result<BTreeMap<i64, i128>, ClassifyError> {
    let res = free_resolution(ideal, true)?;
    let ext = ExtModule::from_resolution(&res, 3, &ideal.budget())?;
    let (numerator, _) = ext.series().finite_support().ok_or(ClassifyError::NotACurve)?;
    Ok(numerator.into_iter().filter(|&(_, c)| c != 0).map(|(delta, c)| (-delta - 4, c)).collect())
}

/// The full report. Fails rather than returning a partial report.
pub fn classify(form: &ProjectiveOneForm, budget: &Budget) -> Result<ClassificationReport, ClassifyError> {
    let mut an = Analysis::new(form, budget)?;
    an.require_space()?;
    let (curve, saturated, acm, route_a, route_b) = an.routes()?;
    let split = route_a;
    let splitting_type = if split { Some(an.splitting_type()?) } else { None };
    let rao_dims = if curve { an.rao()? } else { BTreeMap::new() };
    if curve && acm != rao_dims.is_empty() {
        return Err(ClassifyError::InternalInconsistency(format!(
            "ACM = {acm} but the Rao module has {} nonzero degrees",
            rao_dims.len()
        )));
    }
    let d = form.degree();
    if let Some((a, b)) = splitting_type {
        if a + b != 2 - i64::from(d) || a > b || b > 1 {
            return Err(ClassifyError::InternalInconsistency(format!("splitting type ({a}, {b}) for degree {d}")));
        }
    }
    let betti = an.resolution()?.betti();
    Ok(ClassificationReport {
        degree: d,
        codim_ok: true,
        saturated,
        is_curve: curve,
        is_acm: acm,
        is_split: split,
        splitting_type,
        rao_dims,
        betti,
        normal_twist: d + 2,
        connected: None,
        route_saturated: route_a,
        route_acm: route_b,
    })
}

#[cfg(test)]
mod tests;
