//! Distributions sharing the singular scheme of a split foliation.
//!
//! A linear syzygy `Σ ℓ_j F_j = 0` is a matrix `M` with `(z_0 … z_n)·M = ℓ`;
//! the Euler syzygy is the identity. Every invertible `M` in that space gives
//! a distribution `M·F` with the same singular ideal, and integrability of
//! `Σ α_k M_k F` is a system of quadrics in the parameters `α`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::classify::{classify, saturated_ideal, ClassifyError};
use crate::foliation::{exterior_derivative, wedge, FoliationError, ProjectiveOneForm, ThreeForm};
use crate::groebner::{Budget, GroebnerError, Ideal};
use crate::linalg::{row_space_basis, DenseMatrix};
use crate::poly::{monomials_of_degree, Monomial, MonomialOrder, PolyError, PolyRing, MAX_VARS};
use crate::{Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetermineError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("expected a {expected}×{expected} matrix")]
    MatrixShape { expected: usize },
    #[error("the coefficients admit no constant syzygy")]
    NoConstantSyzygy,
    #[error("foliation does not split")]
    NotSplit,
    #[error("form is not integrable")]
    NotIntegrable,
    #[error("{dim} family parameters exceed the supported {max}")]
    TooManyParameters { dim: usize, max: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl DetermineError {
    /// Whether the failure came from an exhausted computation budget.
    pub fn is_resource_exhausted(&self) -> bool {
        match self {
            Self::Groebner(GroebnerError::ResourceExhausted { .. })
            | Self::Foliation(FoliationError::Groebner(GroebnerError::ResourceExhausted { .. })) => true,
            Self::Classify(e) => e.is_resource_exhausted(),
            _ => false,
        }
    }
}

fn int(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

/// A relation `Σ ℓ_j F_j = 0` with linear `ℓ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSyzygy {
    entries: Vec<Poly>,
}

impl LinearSyzygy {
    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    /// `M` with `M_ij` the coefficient of `z_i` in `ℓ_j`.
    pub fn to_matrix(&self) -> SyzygyMatrix {
        let n = self.entries.len();
        let rows = (0..n).map(|i| (0..n).map(|j| self.entries[j].coefficient(&Monomial::var(i))).collect()).collect();
        SyzygyMatrix { rows }
    }

    /// `ℓ = (z)·M`.
    pub fn from_matrix(ring: PolyRing, m: &SyzygyMatrix) -> Self {
        let n = m.dim();
        let entries =
            (0..n).map(|j| Poly::from_terms(ring, (0..n).map(|i| (Monomial::var(i), m.rows[i][j].clone())))).collect();
        Self { entries }
    }

    pub fn is_syzygy_of(&self, coeffs: &[Poly]) -> bool {
        let ring = coeffs[0].ring();
        self.entries.iter().zip(coeffs).fold(Poly::zero(ring), |acc, (l, f)| acc + l * f).is_zero()
    }
}

/// A square matrix of rationals acting on coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyMatrix {
    rows: Vec<Vec<Rat>>,
}

impl SyzygyMatrix {
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self, DetermineError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(DetermineError::MatrixShape { expected: n.max(1) });
        }
        Ok(Self { rows })
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &int(1))
    }

    pub fn scalar(n: usize, c: &Rat) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { c.clone() } else { int(0) }).collect()).collect();
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn determinant(&self) -> Rat {
        DenseMatrix::from_rows(self.rows.clone()).determinant()
    }

    /// `F'_i = Σ_j M_ij F_j`.
    pub fn apply(&self, coeffs: &[Poly]) -> Vec<Poly> {
        let ring = coeffs[0].ring();
        self.rows
            .iter()
            .map(|row| row.iter().zip(coeffs).fold(Poly::zero(ring), |acc, (m, f)| acc + f.scale(m)))
            .collect()
    }

    fn flatten(&self) -> Vec<Rat> {
        self.rows.iter().flatten().cloned().collect()
    }

    fn unflatten(n: usize, v: &[Rat]) -> Self {
        Self { rows: v.chunks(n).map(<[Rat]>::to_vec).collect() }
    }
}

/// Coefficient vectors of `polys` over `monos`, concatenated.
fn coefficient_row(polys: &[Poly], monos: &[Monomial]) -> Vec<Rat> {
    polys.iter().flat_map(|p| monos.iter().map(move |m| p.coefficient(m))).collect()
}

fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        0
    } else {
        DenseMatrix::from_rows(rows.to_vec()).rank()
    }
}

/// Basis of the linear syzygies, as flattened matrices: Euler first, then
/// reduced echelon vectors that enlarge the span.
fn linear_syzygy_matrices(form: &ProjectiveOneForm) -> Vec<SyzygyMatrix> {
    let n = form.nvars();
    let f = form.coefficients();
    let monos = monomials_of_degree(n, form.degree() + 2);
    let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let mut a = DenseMatrix::zeros(monos.len(), n * n);
    for i in 0..n {
        for (j, fj) in f.iter().enumerate() {
            for (m, c) in fj.terms() {
                a[(index[&m.mul(&Monomial::var(i))], i * n + j)] += c.clone();
            }
        }
    }
    let kernel = row_space_basis(&a.kernel(), n * n);
    let mut basis = vec![SyzygyMatrix::identity(n).flatten()];
    for v in kernel {
        basis.push(v);
        if rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    basis.iter().map(|v| SyzygyMatrix::unflatten(n, v)).collect()
}

/// Basis of the degree-one syzygies of the coefficients, Euler first.
pub fn linear_syzygy_space(form: &ProjectiveOneForm) -> Vec<LinearSyzygy> {
    linear_syzygy_matrices(form).iter().map(|m| LinearSyzygy::from_matrix(form.ring(), m)).collect()
}

/// Basis (reduced echelon) of `{a ∈ Qⁿ : Σ a_i F_i = 0}`.
pub fn constant_syzygy_space(form: &ProjectiveOneForm) -> Vec<Vec<Rat>> {
    let n = form.nvars();
    let monos = monomials_of_degree(n, form.degree() + 1);
    let cols: Vec<Vec<Rat>> =
        form.coefficients().iter().map(|f| coefficient_row(std::slice::from_ref(f), &monos)).collect();
    let a = DenseMatrix::from_rows(cols).transpose();
    row_space_basis(&a.kernel(), n)
}

/// Whether two coefficient vectors span the same space of forms of one
/// degree, i.e. generate the same ideal.
fn same_span(f: &[Poly], g: &[Poly], degree: u32) -> bool {
    let n = f[0].ring().nvars();
    let monos = monomials_of_degree(n, degree);
    let rows_f: Vec<Vec<Rat>> = f.iter().map(|p| coefficient_row(std::slice::from_ref(p), &monos)).collect();
    let rows_g: Vec<Vec<Rat>> = g.iter().map(|p| coefficient_row(std::slice::from_ref(p), &monos)).collect();
    let rf = rank(&rows_f);
    let both: Vec<Vec<Rat>> = rows_f.into_iter().chain(rows_g.iter().cloned()).collect();
    rank(&rows_g) == rf && rank(&both) == rf
}

/// The distribution `M·F`. Its Euler relation holds because `(z)·M` is a
/// syzygy; a matrix that is not one fails validation.
pub fn distribution_from_matrix(
    form: &ProjectiveOneForm,
    m: &SyzygyMatrix,
) -> Result<ProjectiveOneForm, DetermineError> {
    if m.dim() != form.nvars() {
        return Err(DetermineError::MatrixShape { expected: form.nvars() });
    }
    if m.determinant().is_zero() {
        return Err(DetermineError::SingularMatrix);
    }
    let out = ProjectiveOneForm::validate(m.apply(form.coefficients()))?;
    if !out.coefficient_ideal().equals(&form.coefficient_ideal())? {
        return Err(DetermineError::InternalInconsistency("an invertible syzygy matrix changed the ideal".into()));
    }
    Ok(out)
}

/// `Σ α_k M_k F` over a basis of linear syzygies.
#[derive(Clone, Debug)]
pub struct DistributionFamily {
    base: ProjectiveOneForm,
    syzygies: Vec<SyzygyMatrix>,
    members: Vec<Vec<Poly>>,
    /// Indices of basis elements whose forms `M_k F` are linearly
    /// independent; the others differ from them by `M` with `M F = 0`.
    effective: Vec<usize>,
    parameter_ring: PolyRing,
    degenerate_locus: Poly,
}

impl DistributionFamily {
    pub fn base(&self) -> &ProjectiveOneForm {
        &self.base
    }

    pub fn syzygy_basis(&self) -> Vec<LinearSyzygy> {
        self.syzygies.iter().map(|m| LinearSyzygy::from_matrix(self.base.ring(), m)).collect()
    }

    pub fn syzygy_matrices(&self) -> &[SyzygyMatrix] {
        &self.syzygies
    }

    pub fn parameter_dim(&self) -> usize {
        self.syzygies.len()
    }

    /// `Q[α_0, …]`, variables printed as `z0, z1, …`.
    pub fn parameter_ring(&self) -> PolyRing {
        self.parameter_ring
    }

    pub fn effective_indices(&self) -> &[usize] {
        &self.effective
    }

    /// Dimension of the space of distinct forms `M·F`.
    pub fn effective_dim(&self) -> usize {
        self.effective.len()
    }

    /// `det(Σ α_k M_k)`; members on its zero set are excluded.
    pub fn degenerate_locus(&self) -> &Poly {
        &self.degenerate_locus
    }

    /// `Σ α_k M_k`.
    pub fn matrix(&self, alpha: &[Rat]) -> SyzygyMatrix {
        let n = self.base.nvars();
        let mut rows = vec![vec![int(0); n]; n];
        for (a, m) in alpha.iter().zip(&self.syzygies) {
            for (row, mrow) in rows.iter_mut().zip(&m.rows) {
                for (x, y) in row.iter_mut().zip(mrow) {
                    *x += a.clone() * y.clone();
                }
            }
        }
        SyzygyMatrix { rows }
    }

    /// Coefficients of `Σ α_k M_k F`, not validated.
    pub fn member_coefficients(&self, alpha: &[Rat]) -> Vec<Poly> {
        let ring = self.base.ring();
        let n = self.base.nvars();
        let mut out = vec![Poly::zero(ring); n];
        for (a, member) in alpha.iter().zip(&self.members) {
            if a.is_zero() {
                continue;
            }
            for (o, f) in out.iter_mut().zip(member) {
                *o = &*o + &f.scale(a);
            }
        }
        out
    }

    /// Whether `α` gives a distribution with the base's singular ideal.
    pub fn is_nondegenerate(&self, alpha: &[Rat]) -> bool {
        let coeffs = self.member_coefficients(alpha);
        !coeffs.iter().all(Poly::is_zero) && same_span(&coeffs, self.base.coefficients(), self.base.degree() + 1)
    }

    /// The validated member at `α`.
    pub fn member(&self, alpha: &[Rat]) -> Result<ProjectiveOneForm, DetermineError> {
        Ok(ProjectiveOneForm::validate(self.member_coefficients(alpha))?)
    }
}

fn poly_determinant(m: &[Vec<Poly>], ring: PolyRing) -> Poly {
    match m.len() {
        0 => Poly::one(ring),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Poly::zero(ring);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][c] * &poly_determinant(&minor, ring);
                acc = if c % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

fn build_family(form: &ProjectiveOneForm) -> Result<DistributionFamily, DetermineError> {
    if !form.is_integrable() {
        return Err(DetermineError::NotIntegrable);
    }
    let syzygies = linear_syzygy_matrices(form);
    let p = syzygies.len();
    if p > MAX_VARS {
        return Err(DetermineError::TooManyParameters { dim: p, max: MAX_VARS });
    }
    let members: Vec<Vec<Poly>> = syzygies.iter().map(|m| m.apply(form.coefficients())).collect();
    let monos = monomials_of_degree(form.nvars(), form.degree() + 1);
    let mut effective = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (k, member) in members.iter().enumerate() {
        rows.push(coefficient_row(member, &monos));
        if rank(&rows) == rows.len() {
            effective.push(k);
        } else {
            rows.pop();
        }
    }
    let parameter_ring = PolyRing::grevlex(p);
    let n = form.nvars();
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    Poly::from_terms(
                        parameter_ring,
                        syzygies.iter().enumerate().map(|(k, m)| (Monomial::var(k), m.rows[i][j].clone())),
                    )
                })
                .collect()
        })
        .collect();
    let degenerate_locus = poly_determinant(&entries, parameter_ring);
    Ok(DistributionFamily { base: form.clone(), syzygies, members, effective, parameter_ring, degenerate_locus })
}

/// The family of distributions sharing the singular scheme of a split
/// foliation.
pub fn distribution_family(form: &ProjectiveOneForm, budget: &Budget) -> Result<DistributionFamily, DetermineError> {
    if !crate::classify::is_split(form, budget)? {
        return Err(DetermineError::NotSplit);
    }
    build_family(form)
}

/// Quadrics in `ring` (one variable per member) whose common zeros are the
/// integrable combinations `Σ α_k ω_k`, row-reduced.
fn quadric_system(members: &[&Vec<Poly>], ring: PolyRing) -> Result<Vec<Poly>, DetermineError> {
    let zring = members[0][0].ring();
    let derivs: Vec<_> = members.iter().map(|m| exterior_derivative(zring, m)).collect();
    // reduced echelon form below makes the row order irrelevant
    let mut collected: HashMap<(usize, usize, usize, Monomial), Poly> = HashMap::new();
    let mut add = |theta: &ThreeForm, alpha: Monomial| {
        for (&(i, j, k), c) in theta.components() {
            for (m, coeff) in c.terms() {
                let entry = collected.entry((i, j, k, *m)).or_insert_with(|| Poly::zero(ring));
                *entry = &*entry + &Poly::monomial(ring, alpha, coeff.clone());
            }
        }
    };
    for k in 0..members.len() {
        for l in k..members.len() {
            let alpha = Monomial::var(k).mul(&Monomial::var(l));
            let theta = wedge(members[k], &derivs[l]);
            if l != k {
                add(&wedge(members[l], &derivs[k]), alpha);
            } else if k == 0 && !theta.is_zero() {
                return Err(DetermineError::InternalInconsistency("the base form is not integrable".into()));
            }
            add(&theta, alpha);
        }
    }
    let quad = monomials_of_degree(ring.nvars(), 2);
    let rows: Vec<Vec<Rat>> =
        collected.values().filter(|p| !p.is_zero()).map(|p| quad.iter().map(|m| p.coefficient(m)).collect()).collect();
    Ok(row_space_basis(&rows, quad.len())
        .into_iter()
        .map(|v| Poly::from_terms(ring, quad.iter().copied().zip(v)))
        .collect())
}

/// The quadrics in `α` expressing integrability of `Σ α_k M_k F`.
pub fn integrability_system(family: &DistributionFamily) -> Result<Vec<Poly>, DetermineError> {
    let members: Vec<&Vec<Poly>> = family.members.iter().collect();
    quadric_system(&members, family.parameter_ring)
}

/// An integrable, nondegenerate member of a family.
#[derive(Clone, Debug)]
pub struct Member {
    /// Coordinates in the family's syzygy basis.
    pub alpha: Vec<Rat>,
    pub form: ProjectiveOneForm,
}

#[derive(Clone, Debug)]
pub enum IntegrableMembers {
    /// Every integrable nondegenerate member, up to scale.
    Finite {
        members: Vec<Member>,
        excluded_degenerate: usize,
    },
    /// The integrable members form a set of projective dimension `dim`;
    /// `witnesses` are members not proportional to the base or each other.
    PositiveDimensional {
        dim: i64,
        witnesses: Vec<Member>,
    },
    Inconclusive {
        reason: String,
    },
}

/// Largest integer whose divisors are enumerated when looking for rational
/// roots.
const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// All rational roots of a univariate polynomial in variable `x`, or `None`
/// when some root is not rational (or the coefficients are too large to
/// certify).
fn rational_roots(p: &Poly, x: usize) -> Option<Vec<Rat>> {
    let deg = p.terms().iter().map(|(m, _)| m.exponent(x)).max()? as usize;
    let mut coeffs = vec![int(0); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exponent(x) as usize] = c.clone();
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(int(0));
        while ints.len() > 1 && ints[0].is_zero() {
            ints.remove(0);
        }
    }
    let mut poly: Vec<Rat> = ints.iter().cloned().map(Rat::from_integer).collect();
    if poly.len() > 1 {
        let (ps, qs) = (divisors(&ints[0])?, divisors(ints.last()?)?);
        for &pn in &ps {
            for &qd in &qs {
                for sign in [1i64, -1] {
                    let r = Rat::new(BigInt::from(pn) * sign, BigInt::from(qd));
                    if roots.contains(&r) {
                        continue;
                    }
                    let mut found = false;
                    while poly.len() > 1 {
                        // synthetic division by (x - r), coefficients low to high
                        let mut quotient = vec![int(0); poly.len() - 1];
                        let mut carry = int(0);
                        for k in (1..poly.len()).rev() {
                            carry = poly[k].clone() + carry * r.clone();
                            quotient[k - 1] = carry.clone();
                        }
                        if (poly[0].clone() + carry * r.clone()).is_zero() {
                            poly = quotient;
                            found = true;
                        } else {
                            break;
                        }
                    }
                    if found {
                        roots.push(r);
                    }
                }
            }
        }
    }
    (poly.len() == 1).then_some(roots)
}

/// Solutions of an affine system in all variables of `ring` (a lex ring), or
/// `None` when the set is not a finite set of rational points.
fn solve_affine(polys: Vec<Poly>, ring: PolyRing, budget: &Budget) -> Result<Option<Vec<Vec<Rat>>>, GroebnerError> {
    let polys: Vec<Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    if polys.is_empty() {
        return Ok(None);
    }
    let gb = Ideal::new_inhomogeneous(ring, polys)?.with_budget(*budget).groebner_basis()?.to_vec();
    if gb.iter().any(Poly::is_constant) {
        return Ok(Some(Vec::new()));
    }
    let m = ring.nvars();
    let last = m - 1;
    let Some(uni) = gb.iter().find(|g| g.terms().iter().all(|(mo, _)| mo.degree() == mo.exponent(last))) else {
        return Ok(None);
    };
    let Some(roots) = rational_roots(uni, last) else { return Ok(None) };
    let mut out = Vec::new();
    for r in roots {
        if m == 1 {
            out.push(vec![r]);
            continue;
        }
        let sub_ring = PolyRing::new(m - 1, MonomialOrder::Lex);
        let mut images: Vec<Poly> = (0..m - 1).map(|i| Poly::var(sub_ring, i)).collect();
        images.push(Poly::constant(sub_ring, r.clone()));
        let reduced: Vec<Poly> = gb.iter().map(|g| g.substitute(&images)).collect();
        let Some(rest) = solve_affine(reduced, sub_ring, budget)? else { return Ok(None) };
        for mut s in rest {
            s.push(r.clone());
            out.push(s);
        }
    }
    Ok(Some(out))
}

/// Rational points of the projective zero set of homogeneous `system` in
/// `ring`, one representative each (first nonzero coordinate 1); `None` if
/// the set is not finite and rational.
fn projective_points(system: &[Poly], ring: PolyRing, budget: &Budget) -> Result<Option<Vec<Vec<Rat>>>, GroebnerError> {
    let r = ring.nvars();
    let mut out = Vec::new();
    for c in 0..r {
        let m = r - c - 1;
        let prefix = |rest: &[Rat]| {
            let mut v = vec![int(0); c];
            v.push(int(1));
            v.extend_from_slice(rest);
            v
        };
        if m == 0 {
            let point = prefix(&[]);
            if system.iter().all(|q| q.evaluate(&point).is_zero()) {
                out.push(point);
            }
            continue;
        }
        let chart = PolyRing::new(m, MonomialOrder::Lex);
        let images: Vec<Poly> = (0..r)
            .map(|j| match j.cmp(&c) {
                std::cmp::Ordering::Less => Poly::zero(chart),
                std::cmp::Ordering::Equal => Poly::one(chart),
                std::cmp::Ordering::Greater => Poly::var(chart, j - c - 1),
            })
            .collect();
        let polys: Vec<Poly> = system.iter().map(|q| q.substitute(&images)).collect();
        if polys.iter().all(Poly::is_zero) {
            return Ok(None);
        }
        let Some(sols) = solve_affine(polys, chart, budget)? else { return Ok(None) };
        out.extend(sols.iter().map(|s| prefix(s)));
    }
    Ok(Some(out))
}

/// Directions `v` with `v_0 = 0`, entries bounded by `radius`, first nonzero
/// entry positive, in increasing sup-norm.
fn scan_directions(r: usize, max_radius: i64) -> impl Iterator<Item = Vec<i64>> {
    (1..=max_radius).flat_map(move |radius| {
        let side = (2 * radius + 1) as usize;
        let total = side.pow((r - 1) as u32);
        (0..total).filter_map(move |mut code| {
            let mut v = vec![0i64];
            for _ in 1..r {
                v.push((code % side) as i64 - radius);
                code /= side;
            }
            let sup = v.iter().map(|x| x.abs()).max().unwrap_or(0);
            let first = v.iter().copied().find(|&x| x != 0).unwrap_or(0);
            (sup == radius && first > 0).then_some(v)
        })
    })
}

const SCAN_RADIUS: i64 = 3;
const SCAN_LIMIT: usize = 20_000;

/// Integrable nondegenerate members of `family`, solved in the effective
/// parameters (where distinct parameters give distinct forms).
pub fn integrable_members(family: &DistributionFamily, budget: &Budget) -> Result<IntegrableMembers, DetermineError> {
    let r = family.effective.len();
    let p = family.parameter_dim();
    let embed = |eff: &[Rat]| -> Vec<Rat> {
        let mut full = vec![int(0); p];
        for (&k, a) in family.effective.iter().zip(eff) {
            full[k] = a.clone();
        }
        full
    };
    let base_alpha = embed(&[int(1)]);
    let base = Member { alpha: base_alpha, form: family.base.clone() };
    if r == 1 {
        return Ok(IntegrableMembers::Finite { members: vec![base], excluded_degenerate: 0 });
    }
    let ring = PolyRing::grevlex(r);
    let eff_members: Vec<&Vec<Poly>> = family.effective.iter().map(|&k| &family.members[k]).collect();
    let system = quadric_system(&eff_members, ring)?;
    let dim = if system.is_empty() {
        r as i64 - 1
    } else {
        match Ideal::new(ring, system.clone())?.with_budget(*budget).hilbert_data() {
            Ok(h) => h.krull_dim - 1,
            Err(e @ GroebnerError::ResourceExhausted { .. }) => {
                return Ok(IntegrableMembers::Inconclusive { reason: e.to_string() })
            }
            Err(e) => return Err(e.into()),
        }
    };
    let verify = |alpha: Vec<Rat>| -> Result<Option<Member>, DetermineError> {
        if !family.is_nondegenerate(&alpha) {
            return Ok(None);
        }
        let form = family.member(&alpha)?;
        if !form.is_integrable() {
            return Err(DetermineError::InternalInconsistency(format!("solution {alpha:?} is not integrable")));
        }
        Ok(Some(Member { alpha, form }))
    };
    if dim <= 0 {
        let points = match projective_points(&system, ring, budget) {
            Ok(Some(points)) => points,
            Ok(None) => {
                return Ok(IntegrableMembers::Inconclusive {
                    reason: "finite solution set with irrational points".into(),
                })
            }
            Err(e @ GroebnerError::ResourceExhausted { .. }) => {
                return Ok(IntegrableMembers::Inconclusive { reason: e.to_string() })
            }
            Err(e) => return Err(e.into()),
        };
        let mut members = Vec::new();
        let mut excluded_degenerate = 0;
        for point in points {
            match verify(embed(&point))? {
                Some(m) => members.push(m),
                None => excluded_degenerate += 1,
            }
        }
        return Ok(IntegrableMembers::Finite { members, excluded_degenerate });
    }
    // every line through the base meets the quadrics in at most one more point
    let mut witnesses: Vec<Member> = Vec::new();
    let mut e0 = vec![int(0); r];
    e0[0] = int(1);
    for v in scan_directions(r, SCAN_RADIUS).take(SCAN_LIMIT) {
        let v: Vec<Rat> = v.into_iter().map(int).collect();
        let e0v: Vec<Rat> = e0.iter().zip(&v).map(|(a, b)| a + b).collect();
        let coeffs: Vec<(Rat, Rat)> =
            system.iter().map(|q| (q.evaluate(&e0v) - q.evaluate(&v), q.evaluate(&v))).collect();
        let (s, t) = match coeffs.iter().find(|(b, c)| !(b.is_zero() && c.is_zero())) {
            None => (int(1), int(1)),
            Some((b, c)) => (c.clone(), -b.clone()),
        };
        if t.is_zero() || !coeffs.iter().all(|(b, c)| (b * &s + c * &t).is_zero()) {
            continue;
        }
        let point: Vec<Rat> = e0.iter().zip(&v).map(|(a, b)| a * &s + b * &t).collect();
        let Some(member) = verify(embed(&point))? else { continue };
        if member.form.is_proportional_to(&family.base)
            || witnesses.iter().any(|w| w.form.is_proportional_to(&member.form))
        {
            continue;
        }
        witnesses.push(member);
        if witnesses.len() == 2 {
            return Ok(IntegrableMembers::PositiveDimensional { dim, witnesses });
        }
    }
    Ok(IntegrableMembers::Inconclusive {
        reason: format!("solution set has dimension {dim} but the line scan found {} witnesses", witnesses.len()),
    })
}

#[derive(Clone, Debug)]
pub enum Determination {
    Unique {
        reason: String,
    },
    /// `witness` is integrable, has the same saturated singular ideal and is
    /// not a multiple of the form.
    NonUnique {
        witness: ProjectiveOneForm,
        reason: String,
    },
    Inconclusive {
        reason: String,
    },
}

impl Determination {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Unique { .. } => "unique",
            Self::NonUnique { .. } => "non-unique",
            Self::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Whether `ω` is the only foliation (up to scale) with its singular scheme.
/// Sufficient criteria on the splitting type are tried before solving the
/// integrability system.
pub fn is_determined_by_singular_scheme(
    form: &ProjectiveOneForm,
    budget: &Budget,
) -> Result<Determination, DetermineError> {
    let inconclusive = |e: &dyn std::fmt::Display| Determination::Inconclusive { reason: e.to_string() };
    let report = match classify(form, budget) {
        Ok(r) => r,
        Err(e) if e.is_resource_exhausted() => return Ok(inconclusive(&e)),
        Err(e) => return Err(e.into()),
    };
    if !report.is_split {
        return Err(DetermineError::NotSplit);
    }
    let (a, b) = report.splitting_type.expect("split forms carry a type");
    let d = form.degree();
    if b <= -1 {
        return Ok(Determination::Unique { reason: format!("splitting type ({a}, {b}) with a, b ≤ -1") });
    }
    if b == 1 && d != 1 {
        return Ok(Determination::Unique {
            reason: format!("linear pull-back of a plane foliation of degree {d} ≠ 1"),
        });
    }
    let family = build_family(form)?;
    let found = match integrable_members(&family, budget) {
        Ok(f) => f,
        Err(e) if e.is_resource_exhausted() => return Ok(inconclusive(&e)),
        Err(e) => return Err(e),
    };
    let (witness, reason) = match found {
        IntegrableMembers::Inconclusive { reason } => return Ok(Determination::Inconclusive { reason }),
        IntegrableMembers::Finite { members, .. } => {
            match members.into_iter().find(|m| !m.form.is_proportional_to(form)) {
                None => {
                    return Ok(Determination::Unique {
                        reason: "the base is the only integrable member of its family".into(),
                    })
                }
                Some(m) => (m.form, "another isolated integrable member".to_string()),
            }
        }
        IntegrableMembers::PositiveDimensional { dim, mut witnesses } => {
            (witnesses.remove(0).form, format!("integrable members form a set of dimension {dim}"))
        }
    };
    let same = saturated_ideal(&witness, budget)?.equals(&saturated_ideal(form, budget)?)?;
    if !same || !witness.is_integrable() || witness.is_proportional_to(form) {
        return Err(DetermineError::InternalInconsistency("witness failed verification".into()));
    }
    Ok(Determination::NonUnique { witness, reason })
}

/// A plane form and the change of coordinates exhibiting `ω` as its linear
/// pull-back.
#[derive(Clone, Debug)]
pub struct PullbackStructure {
    /// Kernel vector `a` with `Σ a_i F_i = 0`: the projection centre.
    pub center: Vec<Rat>,
    /// `A` with first column `a`; `ω` pulled back along `z ↦ Az` has no
    /// `dz0` term and no `z0` dependence.
    pub matrix: Vec<Vec<Rat>>,
    pub plane: ProjectiveOneForm,
}

/// Recover the plane foliation behind a linear pull-back. `Ok(None)` if the
/// transformed coefficients still depend on the projection variable.
pub fn pullback_structure(form: &ProjectiveOneForm) -> Result<Option<PullbackStructure>, DetermineError> {
    let n = form.nvars();
    if n != 4 {
        return Err(FoliationError::UnsupportedDimension { nvars: n }.into());
    }
    let center = constant_syzygy_space(form).into_iter().next().ok_or(DetermineError::NoConstantSyzygy)?;
    let pivot = center.iter().position(|x| !x.is_zero()).expect("kernel vectors are nonzero");
    let others: Vec<usize> = (0..n).filter(|&j| j != pivot).collect();
    let matrix: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row = vec![center[i].clone()];
            row.extend(others.iter().map(|&j| if i == j { int(1) } else { int(0) }));
            row
        })
        .collect();
    let moved = form.apply_projectivity(&matrix)?;
    let f = moved.coefficients();
    if !f[0].is_zero() {
        return Err(DetermineError::InternalInconsistency("the centre does not annihilate the coefficients".into()));
    }
    for c in &f[1..] {
        if !c.partial_derivative(0)?.is_zero() {
            return Ok(None);
        }
    }
    let plane_ring = PolyRing::new(3, form.ring().order());
    let map = [0, 0, 1, 2];
    let plane = ProjectiveOneForm::validate(f[1..].iter().map(|c| c.remap_variables(plane_ring, &map)).collect())?;
    Ok(Some(PullbackStructure { center, matrix, plane }))
}

#[cfg(test)]
mod tests;
