use std::cmp::Ordering;

use super::monomial::{Monomial, MAX_VARS};

/// Monomial orders. All are total, multiplicative and well-founded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Graded reverse lexicographic with the given variable moved to the
    /// cheapest (last) position. For homogeneous ideals a Gröbner basis in
    /// this order exposes `I : z_k^∞` by stripping powers of `z_k`.
    GrevLexCheapest(usize),
}

impl MonomialOrder {
    pub fn is_graded(&self) -> bool {
        !matches!(self, MonomialOrder::Lex)
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.raw()[..nvars].cmp(&b.raw()[..nvars]),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                let (ea, eb) = (a.raw(), b.raw());
                for i in (0..nvars).rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::GrevLexCheapest(k) => a.degree().cmp(&b.degree()).then_with(|| {
                let (ea, eb) = (a.raw(), b.raw());
                if ea[k] != eb[k] {
                    return eb[k].cmp(&ea[k]);
                }
                for i in (0..nvars).rev() {
                    if i != k && ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// The polynomial ring `Q[z0, …, z_{n}]` with a fixed monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    nvars: usize,
    order: MonomialOrder,
}

impl PolyRing {
    /// Panics if `nvars` is zero or exceeds [`MAX_VARS`].
    pub fn new(nvars: usize, order: MonomialOrder) -> Self {
        assert!((1..=MAX_VARS).contains(&nvars), "unsupported variable count {nvars}");
        if let MonomialOrder::GrevLexCheapest(k) = order {
            assert!(k < nvars, "cheapest variable out of range");
        }
        Self { nvars, order }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(nvars, MonomialOrder::GrevLex)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self::new(self.nvars, order)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, self.nvars)
    }

    pub fn var_names(&self) -> Vec<String> {
        (0..self.nvars).map(|i| format!("z{i}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_textbook_cases() {
        let r = PolyRing::grevlex(3);
        let m = |e: &[u32]| Monomial::from_exponents(e);
        // x*z < y^2 in grevlex
        assert_eq!(r.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(r.cmp(&m(&[2, 0, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(r.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
        let lex = r.with_order(MonomialOrder::Lex);
        assert_eq!(lex.cmp(&m(&[1, 0, 0]), &m(&[0, 0, 3])), Ordering::Greater);
    }

    #[test]
    fn cheapest_variable_is_last() {
        let r = PolyRing::new(3, MonomialOrder::GrevLexCheapest(0));
        let m = |e: &[u32]| Monomial::from_exponents(e);
        // any degree-2 monomial with z0 is below any without it
        assert_eq!(r.cmp(&m(&[1, 0, 1]), &m(&[0, 0, 2])), Ordering::Less);
        assert_eq!(r.cmp(&m(&[1, 1, 0]), &m(&[0, 1, 1])), Ordering::Less);
    }
}
