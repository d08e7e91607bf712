use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{write_monomial, Monomial};
use super::ring::{MonomialOrder, PolyRing};
use super::PolyError;
use crate::scalar::Field;

/// A sparse polynomial. Terms are stored strictly descending in the ring's
/// order and never carry a zero coefficient, so equal polynomials have
/// identical term lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    ring: PolyRing,
    terms: Vec<(Monomial, C)>,
}

impl<C: Field> Polynomial<C> {
    pub fn zero(ring: PolyRing) -> Self {
        Self { ring, terms: Vec::new() }
    }

    pub fn one(ring: PolyRing) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn constant(ring: PolyRing, c: C) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn var(ring: PolyRing, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::monomial(ring, Monomial::var(i), C::one())
    }

    pub fn monomial(ring: PolyRing, m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero(ring)
        } else {
            Self { ring, terms: vec![(m, c)] }
        }
    }

    /// Build from arbitrary terms: duplicates are merged, zeros dropped.
    pub fn from_terms(ring: PolyRing, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            debug_assert!(m.raw()[ring.nvars()..].iter().all(|&e| e == 0));
            match acc.get_mut(&m) {
                Some(v) => *v = v.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Self { ring, terms }
    }

    #[inline]
    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|(t, _)| self.ring.cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// The common degree of all terms, if there is one. The zero polynomial
    /// has none.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// The part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self { ring: self.ring, terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect() }
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch { left: self.ring, right: other.ring });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, |c| c.clone()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, |c| -c.clone()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(m, c));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| self.ring.cmp(&b.0, &a.0));
        Ok(Self { ring: self.ring, terms })
    }

    /// `self + other * sign` via a linear merge of the sorted term lists.
    fn merge(&self, other: &Self, map: impl Fn(&C) -> C) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match self.ring.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, map(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.clone() + map(cb);
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (*m, map(c))));
        Self { ring: self.ring, terms: out }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        Self { ring: self.ring, terms: self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())).collect() }
    }

    /// Multiply by a single term; the order is multiplicative so the term
    /// list stays sorted.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        Self { ring: self.ring, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scale so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    /// Formal partial derivative with respect to `z_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self, PolyError> {
        if i >= self.ring.nvars() {
            return Err(PolyError::VariableOutOfRange { index: i, nvars: self.ring.nvars() });
        }
        // Dropping one power of z_i is monotone on monomials that contain z_i,
        // so the surviving terms stay sorted.
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exponent(i);
                (e > 0).then(|| (m.without_var(i).expect("exponent positive"), c.clone() * C::from_int(i64::from(e))))
            })
            .collect::<Vec<_>>();
        Ok(Self::from_terms(self.ring, terms))
    }

    /// Largest monomial dividing every term (the unit monomial for zero).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Monomial::one() };
        it.fold(*first, |g, (m, _)| g.gcd(m))
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let terms =
            self.terms.iter().map(|(t, c)| m.quotient_of(t).map(|q| (q, c.clone()))).collect::<Option<Vec<_>>>()?;
        Some(Self::from_terms(self.ring, terms))
    }

    /// The same polynomial in a ring with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let ring = self.ring.with_order(order);
        if ring == self.ring {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Self { ring, terms }
    }

    /// Move to another ring, sending variable `i` to variable `map[i]`.
    pub fn remap_variables(&self, target: PolyRing, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ring.nvars(), "variable map has the wrong length");
        assert!(map.iter().all(|&t| t < target.nvars()), "variable map leaves the target ring");
        Self::from_terms(target, self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())))
    }

    /// Homogenize with respect to `z_var` up to `target_degree`.
    pub fn homogenize(&self, var: usize, target_degree: u32) -> Result<Self, PolyError> {
        if var >= self.ring.nvars() {
            return Err(PolyError::VariableOutOfRange { index: var, nvars: self.ring.nvars() });
        }
        if self.terms.iter().any(|(m, _)| m.exponent(var) > 0) {
            return Err(PolyError::VariableOccurs { index: var });
        }
        let deg = self.total_degree().unwrap_or(0);
        if target_degree < deg {
            return Err(PolyError::DegreeTooLow { target: target_degree, degree: deg });
        }
        Ok(Self::from_terms(
            self.ring,
            self.terms.iter().map(|(m, c)| (m.mul(&Monomial::var_pow(var, target_degree - m.degree())), c.clone())),
        ))
    }

    /// Set `z_var = 1`.
    pub fn dehomogenize(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.ring.nvars() {
            return Err(PolyError::VariableOutOfRange { index: var, nvars: self.ring.nvars() });
        }
        Ok(Self::from_terms(
            self.ring,
            self.terms.iter().map(|(m, c)| {
                let e = m.exponent(var);
                (Monomial::var_pow(var, e).quotient_of(m).expect("power divides"), c.clone())
            }),
        ))
    }

    /// Substitute `z_i ← Σ_j a[i][j] z_j`.
    ///
    /// Composition: applying `A` and then `B` equals applying `A·B`, because
    /// `p(A(Bz)) = p((AB)z)`.
    pub fn apply_linear_change(&self, a: &[Vec<C>]) -> Result<Self, PolyError> {
        let n = self.ring.nvars();
        if a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(PolyError::DimensionMismatch { expected: n });
        }
        let images: Vec<Self> = a
            .iter()
            .map(|row| Self::from_terms(self.ring, row.iter().enumerate().map(|(j, c)| (Monomial::var(j), c.clone()))))
            .collect();
        let mut powers: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(self.ring), p.clone()]).collect();
        let mut acc = Self::zero(self.ring);
        for (m, c) in &self.terms {
            let mut t = Self::constant(self.ring, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &images[i];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Evaluate at a point.
    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.ring.nvars(), "point has the wrong dimension");
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute a polynomial (possibly from another ring) for each
    /// variable. All images must live in one target ring.
    pub fn substitute(&self, images: &[Polynomial<C>]) -> Polynomial<C> {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let target = images[0].ring;
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, img) in images.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    t = &t * img;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Render with custom variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.write_with(&mut s, names).expect("writing to a string");
        s
    }

    fn write_with(&self, f: &mut impl fmt::Write, names: &[String]) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_char('0');
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.sign_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_char('-')?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m, self.ring.nvars(), names)?;
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, &self.ring.var_names())
    }
}

impl<C: Field> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<C: Field> $trait<&Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Field> $trait for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Field> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<C: Field> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}
