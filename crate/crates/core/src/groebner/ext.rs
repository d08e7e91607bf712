use super::buchberger::module_groebner_basis;
use super::hilbert::HilbertSeries;
use super::ideal::Ideal;
use super::module::ModuleOrder;
use super::resolution::{free_resolution, FreeResolution, PolyMatrix};
use super::{Budget, GroebnerError};
use crate::linalg::DenseMatrix;
use crate::poly::{monomials_of_degree, Monomial};
use crate::scalar::Field;

/// `Ext^k(R/I, R)` presented as the homology at `F_k^*` of the dual complex
/// `F_{k-1}^* → F_k^* → F_{k+1}^*`.
#[derive(Clone, Debug)]
pub struct ExtModule<C: Field> {
    k: usize,
    nvars: usize,
    /// Degrees of the basis of `F_k^*` (negated degrees of `F_k`).
    degrees: Vec<i64>,
    prev_degrees: Vec<i64>,
    next_degrees: Vec<i64>,
    incoming: Option<PolyMatrix<C>>,
    outgoing: Option<PolyMatrix<C>>,
    series: HilbertSeries,
}

/// Hilbert series of the cokernel of `a` (columns live in a free module
/// with basis degrees `target`).
fn cokernel_series<C: Field>(
    a: Option<&PolyMatrix<C>>,
    nvars: usize,
    target: &[i64],
    budget: &Budget,
) -> Result<HilbertSeries, GroebnerError> {
    let mut hs = HilbertSeries::zero(nvars);
    let Some(a) = a else {
        for &d in target {
            hs = hs.add(&HilbertSeries::free(nvars, d));
        }
        return Ok(hs);
    };
    let order = ModuleOrder::top(a.ring(), target.to_vec());
    let cols: Vec<_> = (0..a.cols()).map(|j| a.column_vector(j, &order)).collect();
    let gb = module_groebner_basis(&cols, &order, budget)?;
    for (c, &d) in target.iter().enumerate() {
        let leads: Vec<Monomial> = gb.iter().filter_map(|g| g.lead()).filter(|t| t.comp == c).map(|t| t.mono).collect();
        hs = hs.add(&HilbertSeries::from_monomial_ideal(nvars, &leads).shifted(d));
    }
    Ok(hs)
}

/// Rank of the degree-`delta` strand of `a : ⊕R(-src) → ⊕R(-tgt)`.
fn strand_rank<C: Field>(a: &PolyMatrix<C>, src: &[i64], tgt: &[i64], delta: i64, nvars: usize) -> usize {
    let basis = |degs: &[i64]| -> Vec<(usize, Monomial)> {
        degs.iter()
            .enumerate()
            .filter(|(_, &d)| delta - d >= 0)
            .flat_map(|(c, &d)| monomials_of_degree(nvars, (delta - d) as u32).into_iter().map(move |m| (c, m)))
            .collect()
    };
    let (sb, tb) = (basis(src), basis(tgt));
    if sb.is_empty() || tb.is_empty() {
        return 0;
    }
    let index: std::collections::HashMap<(usize, Monomial), usize> =
        tb.iter().enumerate().map(|(i, key)| (*key, i)).collect();
    let mut m = DenseMatrix::<C>::zeros(tb.len(), sb.len());
    for (j, (c, mono)) in sb.iter().enumerate() {
        for r in 0..a.rows() {
            for (tm, coeff) in a.entry(r, *c).terms() {
                let key = (r, tm.mul(mono));
                let i = index[&key];
                m[(i, j)] = m[(i, j)].clone() + coeff.clone();
            }
        }
    }
    m.rank()
}

impl<C: Field> ExtModule<C> {
    pub fn from_resolution(res: &FreeResolution<C>, k: usize, budget: &Budget) -> Result<Self, GroebnerError> {
        let nvars = res.ring().nvars();
        if k > nvars {
            return Err(GroebnerError::ExtIndex { k, max: nvars });
        }
        let dual =
            |i: usize| -> Vec<i64> { res.degrees().get(i).map_or(Vec::new(), |d| d.iter().map(|x| -x).collect()) };
        let degrees = dual(k);
        let prev_degrees = if k == 0 { Vec::new() } else { dual(k - 1) };
        let next_degrees = dual(k + 1);
        let incoming = if k == 0 { None } else { res.maps().get(k - 1).map(PolyMatrix::transpose) };
        let outgoing = res.maps().get(k).map(PolyMatrix::transpose);
        let series = if degrees.is_empty() {
            HilbertSeries::zero(nvars)
        } else {
            let mut next_free = HilbertSeries::zero(nvars);
            for &d in &next_degrees {
                next_free = next_free.add(&HilbertSeries::free(nvars, d));
            }
            let coker_in = cokernel_series(incoming.as_ref(), nvars, &degrees, budget)?;
            let coker_out = match &outgoing {
                Some(_) => cokernel_series(outgoing.as_ref(), nvars, &next_degrees, budget)?,
                None => HilbertSeries::zero(nvars),
            };
            coker_in.sub(&next_free).add(&coker_out)
        };
        Ok(Self { k, nvars, degrees, prev_degrees, next_degrees, incoming, outgoing, series })
    }

    pub fn index(&self) -> usize {
        self.k
    }

    pub fn series(&self) -> &HilbertSeries {
        &self.series
    }

    pub fn krull_dim(&self) -> i64 {
        self.series.krull_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    /// `dim_Q Ext^k_δ` from the Hilbert series.
    pub fn graded_dim(&self, delta: i64) -> i128 {
        self.series.graded_dim(delta)
    }

    /// `dim_Q Ext^k_δ` by exact linear algebra on the degree-δ strand.
    pub fn graded_dim_by_strands(&self, delta: i64) -> i128 {
        let n = self.nvars;
        let free: i128 = self.degrees.iter().map(|&d| crate::poly::count_monomials(n, delta - d)).sum();
        let out_rank =
            self.outgoing.as_ref().map_or(0, |a| strand_rank(a, &self.degrees, &self.next_degrees, delta, n));
        let in_rank = self.incoming.as_ref().map_or(0, |a| strand_rank(a, &self.prev_degrees, &self.degrees, delta, n));
        free - out_rank as i128 - in_rank as i128
    }

    /// Degree range outside which the module vanishes, for modules of finite
    /// length: the lowest and highest degrees of its series.
    pub fn support_window(&self) -> Option<(i64, i64)> {
        let (n, _) = self.series.finite_support()?;
        Some((n.first()?.0, n.last()?.0))
    }

    /// Total dimension over Q when finite.
    pub fn total_dim(&self) -> Option<i128> {
        self.series.finite_support().map(|(_, t)| t)
    }
}

/// `Ext^k(R/I, R)` from a minimal free resolution of `R/I`.
pub fn ext_module<C: Field>(ideal: &Ideal<C>, k: usize) -> Result<ExtModule<C>, GroebnerError> {
    let res = free_resolution(ideal, true)?;
    ExtModule::from_resolution(&res, k, &ideal.budget())
}
