use super::buchberger::module_groebner_basis;
use super::module::{ModuleOrder, VTerm, Vector};
use super::{Budget, GroebnerError};
use crate::poly::{PolyRing, Polynomial};
use crate::scalar::Field;

/// An element of the graded free module `⊕ R(-twist_k)`. Homogeneous
/// elements have `deg(component_k) + twist_k` constant over nonzero
/// components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleElement<C: Field> {
    pub components: Vec<Polynomial<C>>,
    pub twists: Vec<i64>,
}

impl<C: Field> FreeModuleElement<C> {
    pub fn degree(&self) -> Option<i64> {
        self.components
            .iter()
            .zip(&self.twists)
            .find(|(p, _)| !p.is_zero())
            .and_then(|(p, t)| p.homogeneous_degree().map(|d| i64::from(d) + t))
    }

    pub fn is_homogeneous(&self) -> bool {
        let Some(d) = self.degree() else { return self.components.iter().all(Polynomial::is_zero) };
        self.components
            .iter()
            .zip(&self.twists)
            .filter(|(p, _)| !p.is_zero())
            .all(|(p, t)| p.homogeneous_degree().map(|e| i64::from(e) + t) == Some(d))
    }

    /// `Σ components_k · gens_k`.
    pub fn dot(&self, gens: &[Polynomial<C>]) -> Polynomial<C> {
        assert_eq!(gens.len(), self.components.len(), "length mismatch");
        let ring = gens[0].ring();
        self.components.iter().zip(gens).fold(Polynomial::zero(ring), |acc, (a, b)| acc + a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }
}

/// Gröbner basis of the syzygies among `columns` (elements of a free module
/// whose basis has degrees `target_degrees`). The result lives in
/// `R^columns.len()`, ordered by [`ModuleOrder::top`] with `column_degrees`.
pub fn vector_syzygies<C: Field>(
    ring: PolyRing,
    columns: &[Vector<C>],
    target_degrees: &[i64],
    column_degrees: &[i64],
    budget: &Budget,
) -> Result<Vec<Vector<C>>, GroebnerError> {
    let r = target_degrees.len();
    let k = columns.len();
    assert_eq!(column_degrees.len(), k);
    let mut degrees = target_degrees.to_vec();
    degrees.extend_from_slice(column_degrees);
    let aug = ModuleOrder::blocks(ring, degrees, r);
    let gens: Vec<Vector<C>> = columns
        .iter()
        .enumerate()
        .map(|(i, col)| {
            let mut terms: Vec<VTerm<C>> = col.terms().to_vec();
            terms.push(VTerm { mono: crate::poly::Monomial::one(), comp: r + i, coeff: C::one() });
            Vector::from_terms(terms, &aug)
        })
        .collect();
    let gb = module_groebner_basis(&gens, &aug, budget)?;
    let target = ModuleOrder::top(ring, column_degrees.to_vec());
    Ok(gb
        .into_iter()
        .filter(|g| g.lead().is_some_and(|t| t.comp >= r))
        .map(|g| g.shift_components(r, &target))
        .collect())
}

/// Generators of the syzygy module `{(g_k) : Σ g_k·gens_k = 0}`.
pub fn syzygy_module<C: Field>(
    gens: &[Polynomial<C>],
    budget: &Budget,
) -> Result<Vec<FreeModuleElement<C>>, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::Empty)?;
    let ring = first.ring();
    let mut twists = Vec::with_capacity(gens.len());
    for g in gens {
        if g.ring() != ring {
            return Err(GroebnerError::RingMismatch { left: ring, right: g.ring() });
        }
        if !g.is_homogeneous() {
            return Err(GroebnerError::NotHomogeneous(g.to_string()));
        }
        twists.push(g.homogeneous_degree().map_or(0, i64::from));
    }
    let target = ModuleOrder::top(ring, vec![0]);
    let cols: Vec<Vector<C>> = gens.iter().map(|g| Vector::from_polynomial(g, 0, &target)).collect();
    let syz = vector_syzygies(ring, &cols, &[0], &twists, budget)?;
    Ok(syz
        .into_iter()
        .map(|v| FreeModuleElement { components: v.to_components(ring, gens.len()), twists: twists.clone() })
        .collect())
}
