use std::collections::BTreeMap;

use crate::poly::{count_monomials, Monomial};

/// A Hilbert series `N(t) / (1-t)^n` with an integer Laurent numerator `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    nvars: usize,
    numerator: BTreeMap<i64, i128>,
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, numerator: BTreeMap::new() }
    }

    /// Series of the free module `R(-shift)`.
    pub fn free(nvars: usize, shift: i64) -> Self {
        Self { nvars, numerator: BTreeMap::from([(shift, 1)]) }
    }

    /// Series of `R/M` for the monomial ideal generated by `gens`.
    pub fn from_monomial_ideal(nvars: usize, gens: &[Monomial]) -> Self {
        Self { nvars, numerator: monomial_numerator(gens.to_vec()) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Numerator coefficients `(exponent, coefficient)`, ascending.
    pub fn numerator(&self) -> Vec<(i64, i128)> {
        self.numerator.iter().map(|(&e, &c)| (e, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Multiply by `t^s`.
    pub fn shifted(&self, s: i64) -> Self {
        Self { nvars: self.nvars, numerator: self.numerator.iter().map(|(&e, &c)| (e + s, c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i128) -> Self {
        assert_eq!(self.nvars, other.nvars, "series over different rings");
        let mut n = self.numerator.clone();
        for (&e, &c) in &other.numerator {
            *n.entry(e).or_insert(0) += sign * c;
        }
        n.retain(|_, c| *c != 0);
        Self { nvars: self.nvars, numerator: n }
    }

    /// Cancel every factor `(1-t)` shared by numerator and denominator:
    /// returns the reduced numerator and the remaining pole order.
    pub fn reduced(&self) -> (Vec<(i64, i128)>, usize) {
        let mut n = self.numerator.clone();
        let mut pole = self.nvars;
        while pole > 0 && !n.is_empty() && n.values().sum::<i128>() == 0 {
            n = divide_one_minus_t(&n);
            pole -= 1;
        }
        (n.into_iter().collect(), pole)
    }

    /// Krull dimension of the module; `-1` for the zero module.
    pub fn krull_dim(&self) -> i64 {
        if self.is_zero() {
            return -1;
        }
        self.reduced().1 as i64
    }

    /// The leading coefficient of the Hilbert polynomial times `(dim-1)!`.
    pub fn multiplicity(&self) -> i128 {
        self.reduced().0.iter().map(|(_, c)| c).sum()
    }

    /// `dim_Q M_k`.
    pub fn graded_dim(&self, k: i64) -> i128 {
        self.numerator.iter().map(|(&e, &c)| c * count_monomials(self.nvars, k - e)).sum()
    }

    /// For a module of finite length, the degrees it lives in and its total
    /// dimension.
    pub fn finite_support(&self) -> Option<(Vec<(i64, i128)>, i128)> {
        if self.is_zero() {
            return Some((Vec::new(), 0));
        }
        let (n, pole) = self.reduced();
        if pole != 0 {
            return None;
        }
        let total = n.iter().map(|(_, c)| c).sum();
        Some((n, total))
    }
}

/// Hilbert data of a graded quotient `R/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub series: HilbertSeries,
    pub krull_dim: i64,
    pub multiplicity: i128,
}

impl HilbertData {
    pub fn from_series(series: HilbertSeries) -> Self {
        let krull_dim = series.krull_dim();
        let multiplicity = series.multiplicity();
        Self { series, krull_dim, multiplicity }
    }

    /// Unreduced numerator over `(1-t)^num_vars`.
    pub fn numerator(&self) -> Vec<(i64, i128)> {
        self.series.numerator()
    }

    pub fn graded_dim(&self, k: i64) -> i128 {
        self.series.graded_dim(k)
    }
}

fn divide_one_minus_t(n: &BTreeMap<i64, i128>) -> BTreeMap<i64, i128> {
    // N = (1 - t) Q  ⇒  q_k = n_k + q_{k-1}
    let (&lo, _) = n.first_key_value().expect("nonzero");
    let (&hi, _) = n.last_key_value().expect("nonzero");
    let mut q = BTreeMap::new();
    let mut prev = 0i128;
    for k in lo..hi {
        prev += n.get(&k).copied().unwrap_or(0);
        if prev != 0 {
            q.insert(k, prev);
        }
    }
    q
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(Monomial::degree);
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn mul_into(acc: &mut BTreeMap<i64, i128>, factor: &[(i64, i128)]) {
    let mut next = BTreeMap::new();
    for (&e, &c) in acc.iter() {
        for &(f, d) in factor {
            *next.entry(e + f).or_insert(0) += c * d;
        }
    }
    next.retain(|_, c: &mut i128| *c != 0);
    *acc = next;
}

/// Numerator of the Hilbert series of `R/M` over `(1-t)^n`, by pivoting on
/// a variable power: `N(M) = N(M + (p)) + t^{deg p} N(M : p)`.
fn monomial_numerator(gens: Vec<Monomial>) -> BTreeMap<i64, i128> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return BTreeMap::from([(0, 1)]);
    }
    if gens.iter().any(Monomial::is_one) {
        return BTreeMap::new();
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = BTreeMap::from([(0, 1)]);
        for g in &gens {
            mul_into(&mut acc, &[(0, 1), (i64::from(g.degree()), -1)]);
        }
        return acc;
    }
    // the variable in the most generators
    let var = (0..crate::poly::MAX_VARS)
        .max_by_key(|&v| (gens.iter().filter(|g| g.exponent(v) > 0).count(), std::cmp::Reverse(v)))
        .expect("variables");
    let e = gens.iter().map(|g| g.exponent(var)).filter(|&x| x > 0).min().expect("occurs");
    let pivot = Monomial::var_pow(var, e);

    let mut plus = gens.clone();
    plus.push(pivot);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let common = g.gcd(&pivot);
            common.quotient_of(g).expect("gcd divides")
        })
        .collect();
    let mut out = monomial_numerator(plus);
    for (k, c) in monomial_numerator(colon) {
        *out.entry(k + i64::from(e)).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomials_of_degree;

    fn brute_count(nvars: usize, gens: &[Monomial], k: u32) -> i128 {
        monomials_of_degree(nvars, k).iter().filter(|m| !gens.iter().any(|g| g.divides(m))).count() as i128
    }

    #[test]
    fn graded_dims_match_monomial_counting() {
        let cases: Vec<Vec<Monomial>> = vec![
            vec![],
            vec![Monomial::var(0), Monomial::var(1)],
            vec![
                Monomial::from_exponents(&[1, 0, 1, 0]),
                Monomial::from_exponents(&[1, 0, 0, 1]),
                Monomial::from_exponents(&[0, 1, 1, 0]),
                Monomial::from_exponents(&[0, 1, 0, 1]),
            ],
            vec![
                Monomial::from_exponents(&[2, 1, 0, 0]),
                Monomial::from_exponents(&[0, 3, 1, 0]),
                Monomial::from_exponents(&[1, 0, 0, 2]),
                Monomial::from_exponents(&[0, 0, 2, 2]),
            ],
        ];
        for gens in cases {
            let hs = HilbertSeries::from_monomial_ideal(4, &gens);
            for k in 0..8 {
                assert_eq!(hs.graded_dim(i64::from(k)), brute_count(4, &gens, k), "{gens:?} at {k}");
            }
        }
    }

    #[test]
    fn dimension_and_degree() {
        let line = HilbertSeries::from_monomial_ideal(4, &[Monomial::var(0), Monomial::var(1)]);
        assert_eq!(line.krull_dim(), 2);
        assert_eq!(line.multiplicity(), 1);
        let whole = HilbertSeries::from_monomial_ideal(4, &[]);
        assert_eq!(whole.krull_dim(), 4);
        assert_eq!(whole.numerator(), vec![(0, 1)]);
        let unit = HilbertSeries::from_monomial_ideal(4, &[Monomial::one()]);
        assert_eq!(unit.krull_dim(), -1);
        let point = HilbertSeries::from_monomial_ideal(2, &[Monomial::var_pow(0, 2), Monomial::var_pow(1, 3)]);
        assert_eq!(point.finite_support().map(|s| s.1), Some(6));
    }
}
