//! Elements of graded free modules `⊕ R·e_c` and the module orders used to
//! compute Gröbner bases of submodules.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VTerm<C> {
    pub mono: Monomial,
    pub comp: usize,
    pub coeff: C,
}

/// A sparse module element. Terms are kept strictly descending in the
/// [`ModuleOrder`] that built the vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector<C> {
    terms: Vec<VTerm<C>>,
}

#[derive(Clone, Debug)]
enum OrderKind {
    /// Weighted degree, then the ring order, then lower component first.
    TermOverPosition,
    /// Components below `split` dominate every component at or above it;
    /// inside a block, term-over-position.
    Blocks { split: usize },
    /// The order induced by a list of leading terms in a parent module:
    /// `m e_i > n e_j` iff `m·lead_i > n·lead_j`, ties broken by `i < j`.
    Schreyer(Arc<SchreyerData>),
}

#[derive(Clone, Debug)]
struct SchreyerData {
    leads: Vec<(Monomial, usize)>,
    parent: ModuleOrder,
}

/// A monomial order on a graded free module. `degrees[c]` is the degree of
/// the basis element `e_c`.
#[derive(Clone, Debug)]
pub struct ModuleOrder {
    ring: PolyRing,
    degrees: Vec<i64>,
    kind: OrderKind,
}

impl ModuleOrder {
    pub fn top(ring: PolyRing, degrees: Vec<i64>) -> Self {
        Self { ring, degrees, kind: OrderKind::TermOverPosition }
    }

    pub fn blocks(ring: PolyRing, degrees: Vec<i64>, split: usize) -> Self {
        Self { ring, degrees, kind: OrderKind::Blocks { split } }
    }

    /// Induced order on a free module whose basis maps onto elements with
    /// the given leading terms in `parent`.
    pub fn schreyer(parent: &ModuleOrder, leads: Vec<(Monomial, usize)>, degrees: Vec<i64>) -> Self {
        assert_eq!(leads.len(), degrees.len());
        Self {
            ring: parent.ring,
            degrees,
            kind: OrderKind::Schreyer(Arc::new(SchreyerData { leads, parent: parent.clone() })),
        }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Weighted degree of the term `m e_c`.
    #[inline]
    pub fn weighted_degree(&self, m: &Monomial, c: usize) -> i64 {
        i64::from(m.degree()) + self.degrees[c]
    }

    pub fn compare(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        match &self.kind {
            OrderKind::TermOverPosition => self.top_compare(a, b),
            OrderKind::Blocks { split } => {
                let (ba, bb) = (a.1 < *split, b.1 < *split);
                match (ba, bb) {
                    (true, false) => Ordering::Greater,
                    (false, true) => Ordering::Less,
                    _ => self.top_compare(a, b),
                }
            }
            OrderKind::Schreyer(data) => {
                let (la, ca) = &data.leads[a.1];
                let (lb, cb) = &data.leads[b.1];
                data.parent.compare((&a.0.mul(la), *ca), (&b.0.mul(lb), *cb)).then_with(|| b.1.cmp(&a.1))
            }
        }
    }

    fn top_compare(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        let by_degree = if self.ring.order().is_graded() {
            self.weighted_degree(a.0, a.1).cmp(&self.weighted_degree(b.0, b.1))
        } else {
            Ordering::Equal
        };
        by_degree.then_with(|| self.ring.cmp(a.0, b.0)).then_with(|| b.1.cmp(&a.1))
    }
}

impl<C: Field> Vector<C> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    /// Build from arbitrary terms (merged, zeros dropped, sorted).
    pub fn from_terms(terms: impl IntoIterator<Item = VTerm<C>>, order: &ModuleOrder) -> Self {
        let mut acc: HashMap<(Monomial, usize), C> = HashMap::new();
        for t in terms {
            debug_assert!(t.comp < order.rank(), "component out of range");
            match acc.get_mut(&(t.mono, t.comp)) {
                Some(v) => *v = v.clone() + t.coeff,
                None => {
                    acc.insert((t.mono, t.comp), t.coeff);
                }
            }
        }
        let mut terms: Vec<VTerm<C>> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((mono, comp), coeff)| VTerm { mono, comp, coeff })
            .collect();
        terms.sort_by(|a, b| order.compare((&b.mono, b.comp), (&a.mono, a.comp)));
        Self { terms }
    }

    /// Place a polynomial in component `comp`.
    pub fn from_polynomial(p: &Polynomial<C>, comp: usize, order: &ModuleOrder) -> Self {
        Self::from_terms(p.terms().iter().map(|(m, c)| VTerm { mono: *m, comp, coeff: c.clone() }), order)
    }

    /// Assemble from one polynomial per component.
    pub fn from_components(components: &[Polynomial<C>], order: &ModuleOrder) -> Self {
        Self::from_terms(
            components
                .iter()
                .enumerate()
                .flat_map(|(comp, p)| p.terms().iter().map(move |(m, c)| VTerm { mono: *m, comp, coeff: c.clone() })),
            order,
        )
    }

    /// Split into one polynomial per component (`rank` components).
    pub fn to_components(&self, ring: PolyRing, rank: usize) -> Vec<Polynomial<C>> {
        let mut parts: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            parts[t.comp].push((t.mono, t.coeff.clone()));
        }
        parts.into_iter().map(|ts| Polynomial::from_terms(ring, ts)).collect()
    }

    pub fn terms(&self) -> &[VTerm<C>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&VTerm<C>> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weighted degree of the leading term.
    pub fn degree(&self, order: &ModuleOrder) -> Option<i64> {
        self.lead().map(|t| order.weighted_degree(&t.mono, t.comp))
    }

    pub fn is_homogeneous(&self, order: &ModuleOrder) -> bool {
        match self.degree(order) {
            None => true,
            Some(d) => self.terms.iter().all(|t| order.weighted_degree(&t.mono, t.comp) == d),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { mono: t.mono, comp: t.comp, coeff: t.coeff.clone() * c.clone() })
                .collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(t) if !t.coeff.is_one() => self.scale(&t.coeff.inv()),
            _ => self.clone(),
        }
    }

    /// `self - c·m·other`, merging sorted term lists. Every module order
    /// here is compatible with multiplication by monomials, so `m·other`
    /// stays sorted.
    pub fn sub_scaled(&self, c: &C, m: &Monomial, other: &Self, order: &ModuleOrder) -> Self {
        self.sub_scaled_from(0, c, m, other, order)
    }

    /// Like [`sub_scaled`](Self::sub_scaled) but drops the first `skip`
    /// terms of `self`, which must all be larger than every term of `m·other`.
    pub(crate) fn sub_scaled_from(&self, skip: usize, c: &C, m: &Monomial, other: &Self, order: &ModuleOrder) -> Self {
        let a = &self.terms[skip..];
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < other.terms.len() {
            let ta = &a[i];
            let tb = &other.terms[j];
            let mb = tb.mono.mul(m);
            match order.compare((&ta.mono, ta.comp), (&mb, tb.comp)) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(VTerm { mono: mb, comp: tb.comp, coeff: -(c.clone() * tb.coeff.clone()) });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = ta.coeff.clone() - c.clone() * tb.coeff.clone();
                    if !v.is_zero() {
                        out.push(VTerm { mono: ta.mono, comp: ta.comp, coeff: v });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|tb| VTerm {
            mono: tb.mono.mul(m),
            comp: tb.comp,
            coeff: -(c.clone() * tb.coeff.clone()),
        }));
        Self { terms: out }
    }

    pub fn add(&self, other: &Self, order: &ModuleOrder) -> Self {
        self.sub_scaled(&-C::one(), &Monomial::one(), other, order)
    }

    pub fn mul_term(&self, c: &C, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { mono: t.mono.mul(m), comp: t.comp, coeff: t.coeff.clone() * c.clone() })
                .collect(),
        }
    }

    /// Re-sort under a different order (e.g. after relabelling components).
    pub fn reorder(&self, order: &ModuleOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare((&b.mono, b.comp), (&a.mono, a.comp)));
        Self { terms }
    }

    /// Shift every component index by `-offset`, re-sorting under `order`.
    pub(crate) fn shift_components(&self, offset: usize, order: &ModuleOrder) -> Self {
        let terms =
            self.terms.iter().map(|t| VTerm { mono: t.mono, comp: t.comp - offset, coeff: t.coeff.clone() }).collect();
        Self { terms }.reorder(order)
    }

    /// Everything but the leading term.
    pub fn tail(&self) -> Self {
        Self { terms: self.terms.get(1..).map(<[_]>::to_vec).unwrap_or_default() }
    }

    pub(crate) fn from_sorted(terms: Vec<VTerm<C>>) -> Self {
        Self { terms }
    }
}
