use std::sync::OnceLock;

use super::buchberger::{module_groebner_basis, reduce};
use super::hilbert::{HilbertData, HilbertSeries};
use super::module::{ModuleOrder, Vector};
use super::syzygy::vector_syzygies;
use super::{Budget, GroebnerError};
use crate::poly::{count_monomials, Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::scalar::Field;

/// Guard on the number of colon steps in an iterated saturation.
const MAX_COLON_STEPS: u64 = 256;

/// An ideal of a polynomial ring with a lazily computed reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal<C: Field> {
    ring: PolyRing,
    gens: Vec<Polynomial<C>>,
    homogeneous: bool,
    budget: Budget,
    gb: OnceLock<Vec<Polynomial<C>>>,
}

impl<C: Field> Ideal<C> {
    /// A homogeneous ideal. Zero generators are dropped.
    pub fn new(ring: PolyRing, gens: Vec<Polynomial<C>>) -> Result<Self, GroebnerError> {
        let ideal = Self::new_inhomogeneous(ring, gens)?;
        if let Some(g) = ideal.gens.iter().find(|g| !g.is_homogeneous()) {
            return Err(GroebnerError::NotHomogeneous(g.to_string()));
        }
        Ok(ideal)
    }

    /// An ideal whose generators need not be homogeneous. Graded operations
    /// (Hilbert data, resolutions, per-variable saturation) refuse it.
    pub fn new_inhomogeneous(ring: PolyRing, gens: Vec<Polynomial<C>>) -> Result<Self, GroebnerError> {
        if let Some(g) = gens.iter().find(|g| g.ring() != ring) {
            return Err(GroebnerError::RingMismatch { left: ring, right: g.ring() });
        }
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let homogeneous = gens.iter().all(Polynomial::is_homogeneous);
        Ok(Self { ring, gens, homogeneous, budget: Budget::default(), gb: OnceLock::new() })
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn zero(ring: PolyRing) -> Self {
        Self::new(ring, Vec::new()).expect("empty ideal")
    }

    pub fn unit(ring: PolyRing) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).expect("unit ideal")
    }

    /// The irrelevant ideal `(z_0, …, z_n)`.
    pub fn irrelevant(ring: PolyRing) -> Self {
        Self::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect()).expect("variables")
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn generators(&self) -> &[Polynomial<C>] {
        &self.gens
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    fn require_homogeneous(&self) -> Result<(), GroebnerError> {
        match self.gens.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(GroebnerError::NotHomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    fn same_ring(&self, other: &Self) -> Result<(), GroebnerError> {
        if self.ring != other.ring {
            return Err(GroebnerError::RingMismatch { left: self.ring, right: other.ring });
        }
        Ok(())
    }

    fn derived(&self, gens: Vec<Polynomial<C>>) -> Self {
        let homogeneous = gens.iter().all(Polynomial::is_homogeneous);
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Self { ring: self.ring, gens, homogeneous, budget: self.budget, gb: OnceLock::new() }
    }

    fn order(&self) -> ModuleOrder {
        ModuleOrder::top(self.ring, vec![0])
    }

    /// The reduced Gröbner basis for the ring's order, monic, sorted
    /// descending by leading monomial.
    pub fn groebner_basis(&self) -> Result<&[Polynomial<C>], GroebnerError> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let order = self.order();
        let vecs: Vec<Vector<C>> = self.gens.iter().map(|g| Vector::from_polynomial(g, 0, &order)).collect();
        let gb = module_groebner_basis(&vecs, &order, &self.budget)?;
        let polys = gb.iter().map(|v| v.to_components(self.ring, 1).pop().expect("rank one")).collect();
        Ok(self.gb.get_or_init(|| polys))
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Result<Polynomial<C>, GroebnerError> {
        if f.ring() != self.ring {
            return Err(GroebnerError::RingMismatch { left: self.ring, right: f.ring() });
        }
        Ok(normal_form(f, self.groebner_basis()?))
    }

    pub fn contains(&self, f: &Polynomial<C>) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool, GroebnerError> {
        self.same_ring(other)?;
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals, decided by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Self) -> Result<bool, GroebnerError> {
        self.same_ring(other)?;
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    pub fn is_unit(&self) -> Result<bool, GroebnerError> {
        Ok(self.groebner_basis()?.iter().any(Polynomial::is_constant))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Leading monomials of the reduced Gröbner basis.
    pub fn leading_monomials(&self) -> Result<Vec<Monomial>, GroebnerError> {
        Ok(self.groebner_basis()?.iter().filter_map(Polynomial::leading_monomial).collect())
    }

    /// Hilbert series of `R/I`, read off the leading-term ideal.
    pub fn hilbert_data(&self) -> Result<HilbertData, GroebnerError> {
        self.require_homogeneous()?;
        let graded = if self.ring.order().is_graded() { self.clone() } else { self.with_order(MonomialOrder::GrevLex) };
        let leads = graded.leading_monomials()?;
        Ok(HilbertData::from_series(HilbertSeries::from_monomial_ideal(self.ring.nvars(), &leads)))
    }

    /// `dim_Q I_k`.
    pub fn graded_dim(&self, k: i64) -> Result<i128, GroebnerError> {
        Ok(count_monomials(self.ring.nvars(), k) - self.hilbert_data()?.graded_dim(k))
    }

    /// The same ideal in a ring with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let ring = self.ring.with_order(order);
        Self {
            ring,
            gens: self.gens.iter().map(|g| g.with_order(order)).collect(),
            homogeneous: self.homogeneous,
            budget: self.budget,
            gb: OnceLock::new(),
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self, GroebnerError> {
        self.same_ring(other)?;
        Ok(self.derived(self.gens.iter().chain(&other.gens).cloned().collect()))
    }

    pub fn product(&self, other: &Self) -> Result<Self, GroebnerError> {
        self.same_ring(other)?;
        Ok(self.derived(self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a * b)).collect()))
    }

    /// Syzygies of `(first, rest…)` projected to their first `split`
    /// coordinates and paired with the generators of that prefix.
    fn syzygy_prefix(&self, all: &[Polynomial<C>], split: usize) -> Result<Vec<Vec<Polynomial<C>>>, GroebnerError> {
        let order = self.order();
        let cols: Vec<Vector<C>> = all.iter().map(|g| Vector::from_polynomial(g, 0, &order)).collect();
        let degrees: Vec<i64> = all.iter().map(|g| g.total_degree().map_or(0, i64::from)).collect();
        let syz = vector_syzygies(self.ring, &cols, &[0], &degrees, &self.budget)?;
        Ok(syz.into_iter().map(|v| v.to_components(self.ring, all.len()).into_iter().take(split).collect()).collect())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, GroebnerError> {
        self.same_ring(other)?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Self::zero(self.ring).with_budget(self.budget));
        }
        let all: Vec<_> = self.gens.iter().chain(&other.gens).cloned().collect();
        let k = self.gens.len();
        let mut out = Vec::new();
        for coeffs in self.syzygy_prefix(&all, k)? {
            let f = coeffs.iter().zip(&self.gens).fold(Polynomial::zero(self.ring), |acc, (c, g)| acc + c * g);
            out.push(f);
        }
        Ok(self.derived(out).minimized())
    }

    /// `I : (g) = {f : f·g ∈ I}`.
    pub fn colon_poly(&self, g: &Polynomial<C>) -> Result<Self, GroebnerError> {
        if g.ring() != self.ring {
            return Err(GroebnerError::RingMismatch { left: self.ring, right: g.ring() });
        }
        if g.is_zero() {
            return Ok(Self::unit(self.ring).with_budget(self.budget));
        }
        if self.gens.is_empty() {
            return Ok(self.clone());
        }
        let mut all = vec![g.clone()];
        all.extend(self.gens.iter().cloned());
        let gens = self.syzygy_prefix(&all, 1)?.into_iter().map(|mut c| c.remove(0)).collect();
        Ok(self.derived(gens).minimized())
    }

    /// `I : J = {f : f·J ⊆ I}`.
    pub fn colon(&self, other: &Self) -> Result<Self, GroebnerError> {
        self.same_ring(other)?;
        let mut acc: Option<Self> = None;
        for g in &other.gens {
            let part = self.colon_poly(g)?;
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Self::unit(self.ring).with_budget(self.budget)))
    }

    /// `I : J^∞` by iterating the colon until it stabilizes.
    pub fn saturate(&self, other: &Self) -> Result<Self, GroebnerError> {
        let mut current = self.clone();
        for _ in 0..MAX_COLON_STEPS {
            let next = current.colon(other)?;
            if next.is_subset_of(&current)? {
                return Ok(current);
            }
            current = next;
        }
        Err(GroebnerError::ResourceExhausted { what: "colon steps", limit: MAX_COLON_STEPS })
    }

    /// Saturation with respect to the irrelevant ideal, by iterated colon.
    pub fn saturate_irrelevant(&self) -> Result<Self, GroebnerError> {
        self.saturate(&Self::irrelevant(self.ring).with_budget(self.budget))
    }

    /// `I : z_i^∞` for homogeneous `I`: a Gröbner basis for reverse
    /// lexicographic order with `z_i` last, with every power of `z_i` divided out.
    pub fn saturate_by_variable(&self, i: usize) -> Result<Self, GroebnerError> {
        self.require_homogeneous()?;
        let cheap = self.with_order(MonomialOrder::GrevLexCheapest(i));
        let gens = cheap
            .groebner_basis()?
            .iter()
            .map(|g| {
                let e = g.monomial_content().exponent(i);
                g.div_monomial(&Monomial::var_pow(i, e)).expect("divisible").with_order(self.ring.order())
            })
            .collect();
        Ok(self.derived(gens))
    }

    /// Saturation with respect to the irrelevant ideal as `∩_i I : z_i^∞`.
    pub fn saturate_by_variables(&self) -> Result<Self, GroebnerError> {
        let mut acc: Option<Self> = None;
        for i in 0..self.ring.nvars() {
            let part = self.saturate_by_variable(i)?;
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        Ok(acc.expect("at least one variable"))
    }

    /// Replace the generators by the reduced Gröbner basis when that is no
    /// longer than the current list; keeps later computations small.
    fn minimized(self) -> Self {
        match self.groebner_basis() {
            Ok(gb) if gb.len() <= self.gens.len() => {
                let gb = gb.to_vec();
                Self { gens: gb.clone(), gb: OnceLock::from(gb), ..self }
            }
            _ => self,
        }
    }

    /// Apply `z_i ← Σ_j a[i][j] z_j` to every generator.
    pub fn apply_linear_change(&self, a: &[Vec<C>]) -> Result<Self, GroebnerError> {
        let gens = self.gens.iter().map(|g| g.apply_linear_change(a)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.derived(gens))
    }
}

/// Remainder of `f` on division by a Gröbner basis `gb`.
pub fn normal_form<C: Field>(f: &Polynomial<C>, gb: &[Polynomial<C>]) -> Polynomial<C> {
    let ring = f.ring();
    let order = ModuleOrder::top(ring, vec![0]);
    let basis: Vec<Vector<C>> = gb.iter().map(|g| Vector::from_polynomial(g, 0, &order)).collect();
    let flags = vec![true; basis.len()];
    let r = reduce(&Vector::from_polynomial(f, 0, &order), &basis, &flags, &order);
    r.to_components(ring, 1).pop().expect("rank one")
}
