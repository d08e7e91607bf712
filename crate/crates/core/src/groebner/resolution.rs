use std::collections::BTreeMap;

use super::buchberger::{divide_with_quotients, s_vector};
use super::ideal::Ideal;
use super::module::{ModuleOrder, VTerm, Vector};
use super::{Budget, GroebnerError};
use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::scalar::Field;

/// A matrix of polynomials; column `j` is the image of the `j`-th basis
/// element of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<C: Field> {
    ring: PolyRing,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Polynomial<C>>>,
}

impl<C: Field> PolyMatrix<C> {
    pub fn zeros(ring: PolyRing, rows: usize, cols: usize) -> Self {
        Self { ring, rows, cols, entries: vec![vec![Polynomial::zero(ring); cols]; rows] }
    }

    pub fn from_rows(ring: PolyRing, rows: Vec<Vec<Polynomial<C>>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { ring, rows: rows.len(), cols, entries: rows }
    }

    /// Build from column vectors of a module of rank `rows`.
    pub fn from_columns(ring: PolyRing, rows: usize, columns: &[Vector<C>]) -> Self {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, p) in col.to_components(ring, rows).into_iter().enumerate() {
                m.entries[i][j] = p;
            }
        }
        m
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<C> {
        &self.entries[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial<C>> {
        (0..self.rows).map(|i| self.entries[i][j].clone()).collect()
    }

    pub fn column_vector(&self, j: usize, order: &ModuleOrder) -> Vector<C> {
        Vector::from_components(&self.column(j), order)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j][i] = self.entries[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] = &out.entries[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    /// Position of some nonzero constant entry.
    pub fn find_unit(&self) -> Option<(usize, usize)> {
        (0..self.rows).flat_map(|i| (0..self.cols).map(move |j| (i, j))).find(|&(i, j)| {
            let e = &self.entries[i][j];
            !e.is_zero() && e.is_constant()
        })
    }

    fn drop_row(&mut self, r: usize) {
        self.entries.remove(r);
        self.rows -= 1;
    }

    fn drop_col(&mut self, c: usize) {
        for row in &mut self.entries {
            row.remove(c);
        }
        self.cols -= 1;
    }
}

/// A graded free resolution `0 ← R/I ← F_0 ← F_1 ← … ← F_L ← 0`.
#[derive(Clone, Debug)]
pub struct FreeResolution<C: Field> {
    ring: PolyRing,
    /// `degrees[i][c]`: degree of the `c`-th basis element of `F_i`.
    degrees: Vec<Vec<i64>>,
    /// `maps[i] : F_{i+1} → F_i`.
    maps: Vec<PolyMatrix<C>>,
    minimal: bool,
}

impl<C: Field> FreeResolution<C> {
    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn degrees(&self) -> &[Vec<i64>] {
        &self.degrees
    }

    pub fn maps(&self) -> &[PolyMatrix<C>] {
        &self.maps
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees.get(i).map_or(0, Vec::len)
    }

    /// Largest `i` with `F_i ≠ 0`.
    pub fn length(&self) -> usize {
        self.degrees.iter().rposition(|d| !d.is_empty()).unwrap_or(0)
    }

    /// Graded Betti numbers `β_{i,j}` as `i ↦ (j ↦ β)`.
    pub fn betti(&self) -> Vec<BTreeMap<i64, usize>> {
        self.degrees
            .iter()
            .map(|ds| {
                let mut m = BTreeMap::new();
                for &d in ds {
                    *m.entry(d).or_insert(0) += 1;
                }
                m
            })
            .collect()
    }

    /// Total Betti numbers `β_i = rank F_i`.
    pub fn total_betti(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    /// Consecutive maps compose to zero.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// `Σ_i (-1)^i Σ_j β_{i,j} t^j`.
    pub fn euler_numerator(&self) -> Vec<(i64, i128)> {
        let mut acc: BTreeMap<i64, i128> = BTreeMap::new();
        for (i, ds) in self.degrees.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &d in ds {
                *acc.entry(d).or_insert(0) += sign;
            }
        }
        acc.retain(|_, c| *c != 0);
        acc.into_iter().collect()
    }

    /// Cancel unit entries until none remain.
    fn prune(&mut self) {
        loop {
            let mut changed = false;
            // maps[0] is the presentation of R/I and keeps F_0
            for i in 1..self.maps.len() {
                while let Some((r, c)) = self.maps[i].find_unit() {
                    self.cancel(i, r, c);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        while self.degrees.len() > 1 && self.degrees.last().is_some_and(Vec::is_empty) {
            self.degrees.pop();
            self.maps.pop();
        }
        self.minimal = true;
    }

    /// Split off `F_{i+1} ∋ e_c ↦ u·e_r + … ∈ F_i` with `u` a unit.
    fn cancel(&mut self, i: usize, r: usize, c: usize) {
        let phi = &self.maps[i];
        let u_inv = phi.entries[r][c].leading_coefficient().expect("unit").inv();
        let col_c = phi.column(c);
        let row_r: Vec<Polynomial<C>> = phi.entries[r].clone();
        let mut next = phi.clone();
        for (a, ca) in col_c.iter().enumerate() {
            if a == r || ca.is_zero() {
                continue;
            }
            for (b, rb) in row_r.iter().enumerate() {
                if b == c || rb.is_zero() {
                    continue;
                }
                let delta = (ca * rb).scale(&u_inv);
                next.entries[a][b] = &next.entries[a][b] - &delta;
            }
        }
        next.drop_row(r);
        next.drop_col(c);
        self.maps[i] = next;
        // F_i loses e_r, F_{i+1} loses e_c
        self.maps[i - 1].drop_col(r);
        if let Some(after) = self.maps.get_mut(i + 1) {
            after.drop_row(c);
        }
        self.degrees[i].remove(r);
        self.degrees[i + 1].remove(c);
    }
}

/// Sort key for frame elements: by lead component, then lexicographically
/// descending lead monomial.
fn frame_sort<C: Field>(gb: &mut [Vector<C>]) {
    gb.sort_by(|a, b| {
        let (x, y) = (a.lead().expect("nonzero"), b.lead().expect("nonzero"));
        x.comp.cmp(&y.comp).then_with(|| y.mono.raw().cmp(x.mono.raw()))
    });
}

/// Schreyer syzygies of a Gröbner basis `gb` of a submodule of `(F, order)`:
/// returns a Gröbner basis of the syzygy module for the induced order.
fn schreyer_step<C: Field>(
    gb: &[Vector<C>],
    order: &ModuleOrder,
    induced: &ModuleOrder,
    budget_meter: &super::buchberger::Meter,
) -> Result<Vec<Vector<C>>, GroebnerError> {
    let mut out = Vec::new();
    for a in 0..gb.len() {
        let la = gb[a].lead().expect("nonzero");
        // quotients m_ab for b > a with the same lead component
        let mut cands: Vec<(usize, Monomial)> = Vec::new();
        for (b, g) in gb.iter().enumerate().skip(a + 1) {
            let lb = g.lead().expect("nonzero");
            if lb.comp != la.comp {
                continue;
            }
            let l = la.mono.lcm(&lb.mono);
            cands.push((b, la.mono.quotient_of(&l).expect("divides")));
        }
        // keep only minimal m_ab (one per monomial)
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (b, m) in &cands {
            let dominated = cands.iter().any(|(_, m2)| m2 != m && m2.divides(m)) || kept.iter().any(|(_, m2)| m2 == m);
            if !dominated {
                kept.push((*b, *m));
            }
        }
        for (b, _) in kept {
            budget_meter.tick()?;
            let lb = gb[b].lead().expect("nonzero");
            let l = la.mono.lcm(&lb.mono);
            let qa = la.mono.quotient_of(&l).expect("divides");
            let qb = lb.mono.quotient_of(&l).expect("divides");
            let s = s_vector(&gb[a], &gb[b], order);
            let (rem, quotients) = divide_with_quotients(&s, gb, order);
            debug_assert!(rem.is_zero(), "input is not a Gröbner basis");
            if !rem.is_zero() {
                return Err(GroebnerError::Internal("frame input is not a Gröbner basis".into()));
            }
            // s = lb.coeff·qa·g_a − la.coeff·qb·g_b = Σ c·m·g_k
            let mut terms = vec![
                VTerm { mono: qa, comp: a, coeff: lb.coeff.clone() },
                VTerm { mono: qb, comp: b, coeff: -la.coeff.clone() },
            ];
            terms.extend(quotients.into_iter().map(|(k, m, c)| VTerm { mono: m, comp: k, coeff: -c }));
            out.push(Vector::from_terms(terms, induced));
        }
    }
    Ok(out)
}

/// A graded free resolution of `R/I` by Schreyer frames; with `minimal`, unit
/// entries are cancelled until the Betti numbers are the graded Betti numbers.
pub fn free_resolution<C: Field>(ideal: &Ideal<C>, minimal: bool) -> Result<FreeResolution<C>, GroebnerError> {
    if let Some(g) = ideal.generators().iter().find(|g| !g.is_homogeneous()) {
        return Err(GroebnerError::NotHomogeneous(g.to_string()));
    }
    let ring = ideal.ring();
    let budget: Budget = ideal.budget();
    let meter = super::buchberger::Meter::new(&budget);
    let mut order = ModuleOrder::top(ring, vec![0]);
    let mut gb: Vec<Vector<C>> =
        ideal.groebner_basis()?.iter().map(|g| Vector::from_polynomial(g, 0, &order)).collect();

    let mut degrees = vec![vec![0i64]];
    let mut maps = Vec::new();
    while !gb.is_empty() {
        if maps.len() >= budget.max_resolution_length {
            return Err(GroebnerError::ResourceExhausted {
                what: "resolution steps",
                limit: budget.max_resolution_length as u64,
            });
        }
        frame_sort(&mut gb);
        let rank = order.rank();
        let degs: Vec<i64> = gb.iter().map(|g| g.degree(&order).expect("nonzero")).collect();
        let leads: Vec<(Monomial, usize)> =
            gb.iter().map(|g| g.lead().map(|t| (t.mono, t.comp)).expect("nonzero")).collect();
        let induced = ModuleOrder::schreyer(&order, leads, degs.clone());
        maps.push(PolyMatrix::from_columns(ring, rank, &gb));
        degrees.push(degs);
        let next = schreyer_step(&gb, &order, &induced, &meter)?;
        gb = next.into_iter().filter(|v| !v.is_zero()).collect();
        order = induced;
    }
    let mut res = FreeResolution { ring, degrees, maps, minimal: false };
    if minimal {
        res.prune();
    }
    Ok(res)
}
