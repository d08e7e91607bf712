use std::fmt;

/// Largest number of variables a ring may have.
pub const MAX_VARS: usize = 10;

/// An exponent vector. Positions past the ring's variable count stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        let mut m = Self::default();
        m.exps[i] = u16::try_from(e).expect("exponent overflow");
        m.deg = e;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        u32::from(self.exps[i])
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| u32::from(e)).collect()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m.deg += other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for (a, b) in m.exps.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        m.deg -= self.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = Self::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += u32::from(m.exps[i]);
        }
        m
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut m = Self::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += u32::from(m.exps[i]);
        }
        m
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Drop one power of variable `i`, if present.
    pub fn without_var(&self, i: usize) -> Option<Self> {
        Self::var(i).quotient_of(self)
    }

    pub(crate) fn raw(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    /// Rename variables: variable `i` of `self` becomes variable `map[i]`.
    pub fn remap(&self, map: &[usize]) -> Self {
        let mut m = Self::default();
        for (i, &target) in map.iter().enumerate() {
            m.exps[target] += self.exps[i];
        }
        m.deg = self.deg;
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Render a monomial as `z0^2*z1`; the unit monomial renders as `1`.
pub fn write_monomial(f: &mut impl fmt::Write, m: &Monomial, nvars: usize, names: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, name) in names.iter().enumerate().take(nvars) {
        let e = m.exponent(i);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_char('1')?;
    }
    Ok(())
}

/// All monomials of total degree `deg` in `nvars` variables, in lexicographic
/// descending order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fill(&mut out, &mut exps, 0, deg);
    out
}

fn fill(out: &mut Vec<Monomial>, exps: &mut [u32], pos: usize, remaining: u32) {
    if pos + 1 == exps.len() {
        exps[pos] = remaining;
        out.push(Monomial::from_exponents(exps));
        return;
    }
    for e in (0..=remaining).rev() {
        exps[pos] = e;
        fill(out, exps, pos + 1, remaining - e);
    }
    exps[pos] = 0;
}

/// Binomial coefficient for small arguments; zero when `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * i128::from(n - i) / i128::from(i + 1);
    }
    acc
}

/// Number of monomials of degree `deg` in `nvars` variables (zero for negative degrees).
pub fn count_monomials(nvars: usize, deg: i64) -> i128 {
    if deg < 0 {
        return 0;
    }
    binomial(deg + nvars as i64 - 1, nvars as i64 - 1)
}
