//! Buchberger's algorithm for submodules of free modules, with the
//! Gebauer–Möller pair criteria.

use std::cell::Cell;

use super::module::{ModuleOrder, VTerm, Vector};
use super::{Budget, GroebnerError};
use crate::poly::Monomial;
use crate::scalar::Field;

/// Counts pair reductions against a [`Budget`].
#[derive(Debug)]
pub(crate) struct Meter {
    used: Cell<u64>,
    limit: u64,
}

impl Meter {
    pub fn new(budget: &Budget) -> Self {
        Self { used: Cell::new(0), limit: budget.max_pair_reductions }
    }

    pub fn tick(&self) -> Result<(), GroebnerError> {
        let n = self.used.get() + 1;
        self.used.set(n);
        if n > self.limit {
            return Err(GroebnerError::ResourceExhausted { what: "pair reductions", limit: self.limit });
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    degree: i64,
}

enum Work {
    Pair(Pair),
    Input(usize, i64),
}

/// Fully reduce `f` against the leads of `basis` (skipping inactive entries).
pub(crate) fn reduce<C: Field>(f: &Vector<C>, basis: &[Vector<C>], active: &[bool], order: &ModuleOrder) -> Vector<C> {
    let mut done: Vec<VTerm<C>> = Vec::new();
    let mut rest = f.clone();
    loop {
        let Some(lt) = rest.lead().cloned() else { break };
        let reducer = basis.iter().zip(active).find_map(|(g, &on)| {
            if !on {
                return None;
            }
            let gl = g.lead()?;
            if gl.comp != lt.comp {
                return None;
            }
            gl.mono.quotient_of(&lt.mono).map(|q| (g, q, gl.coeff.clone()))
        });
        match reducer {
            Some((g, q, gc)) => {
                let c = lt.coeff.clone() / gc;
                rest = rest.sub_scaled(&c, &q, g, order);
            }
            None => {
                done.push(lt);
                rest = rest.tail();
            }
        }
    }
    Vector::from_sorted(done)
}

/// The S-vector of two elements with leads in the same component.
pub(crate) fn s_vector<C: Field>(a: &Vector<C>, b: &Vector<C>, order: &ModuleOrder) -> Vector<C> {
    let (la, lb) = (a.lead().expect("nonzero"), b.lead().expect("nonzero"));
    let l = la.mono.lcm(&lb.mono);
    let qa = la.mono.quotient_of(&l).expect("divides");
    let qb = lb.mono.quotient_of(&l).expect("divides");
    let sa = a.mul_term(&lb.coeff, &qa);
    sa.sub_scaled(&la.coeff, &qb, b, order)
}

/// A Gröbner basis of the submodule generated by `gens`, reduced and sorted
/// descending by leading term.
pub fn module_groebner_basis<C: Field>(
    gens: &[Vector<C>],
    order: &ModuleOrder,
    budget: &Budget,
) -> Result<Vec<Vector<C>>, GroebnerError> {
    let meter = Meter::new(budget);
    // the product criterion is only sound for ideals
    let product_criterion = order.rank() == 1;
    let mut basis: Vec<Vector<C>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut queue: Vec<Work> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(k, g)| Work::Input(k, g.degree(order).unwrap_or(0)))
        .collect();

    while !queue.is_empty() {
        // smallest degree first; inputs before pairs of the same degree
        let pick = (0..queue.len())
            .min_by_key(|&k| match &queue[k] {
                Work::Input(_, d) => (*d, 0u8, 0usize),
                Work::Pair(p) => (p.degree, 1, p.j),
            })
            .expect("nonempty");
        let item = queue.swap_remove(pick);
        meter.tick()?;
        let candidate = match item {
            Work::Input(k, _) => gens[k].clone(),
            Work::Pair(p) => s_vector(&basis[p.i], &basis[p.j], order),
        };
        let h = reduce(&candidate, &basis, &active, order);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        update(&mut basis, &mut active, &mut queue, h, order, product_criterion);
    }

    let mut out: Vec<Vector<C>> = basis.into_iter().zip(active).filter_map(|(g, on)| on.then_some(g)).collect();
    // inter-reduce tails
    for k in 0..out.len() {
        let mut flags = vec![true; out.len()];
        flags[k] = false;
        let g = out[k].clone();
        let lead = g.lead().expect("nonzero").clone();
        let tail = g.tail();
        let tail = reduce(&tail, &out, &flags, order);
        let mut terms = vec![lead];
        terms.extend(tail.terms().iter().cloned());
        out[k] = Vector::from_sorted(terms);
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.lead().expect("nonzero"), b.lead().expect("nonzero"));
        order.compare((&y.mono, y.comp), (&x.mono, x.comp))
    });
    Ok(out)
}

fn update<C: Field>(
    basis: &mut Vec<Vector<C>>,
    active: &mut Vec<bool>,
    queue: &mut Vec<Work>,
    h: Vector<C>,
    order: &ModuleOrder,
    product_criterion: bool,
) {
    let hl = h.lead().expect("nonzero").clone();
    let t = hl.mono;
    let new = basis.len();

    // candidate pairs (g, h)
    let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
    for (g, v) in basis.iter().enumerate() {
        if !active[g] {
            continue;
        }
        let gl = v.lead().expect("nonzero");
        if gl.comp != hl.comp {
            continue;
        }
        cands.push((g, gl.mono.lcm(&t), gl.mono.is_coprime(&t)));
    }
    // criterion M: drop pairs whose lcm is a proper multiple of another's
    let keep_m: Vec<bool> =
        cands.iter().map(|(_, l, _)| !cands.iter().any(|(_, l2, _)| l2 != l && l2.divides(l))).collect();
    let mut survivors: Vec<(usize, Monomial, bool)> =
        cands.into_iter().zip(keep_m).filter_map(|(c, k)| k.then_some(c)).collect();
    // criterion F: one pair per lcm; with the product criterion an lcm that
    // has a coprime representative is dropped altogether
    let mut chosen: Vec<(usize, Monomial)> = Vec::new();
    survivors.sort_by_key(|(g, _, _)| *g);
    let mut seen: Vec<Monomial> = Vec::new();
    for (g, l, _) in &survivors {
        if seen.contains(l) {
            continue;
        }
        seen.push(*l);
        let coprime_here = survivors.iter().any(|(_, l2, cp)| l2 == l && *cp);
        if product_criterion && coprime_here {
            continue;
        }
        chosen.push((*g, *l));
    }

    // criterion B on the old pairs
    queue.retain(|w| match w {
        Work::Input(..) => true,
        Work::Pair(p) => {
            if p.comp != hl.comp || !t.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lead().expect("nonzero").mono.lcm(&t);
            let lj = basis[p.j].lead().expect("nonzero").mono.lcm(&t);
            li == p.lcm || lj == p.lcm
        }
    });

    // retire elements whose lead is now redundant
    for (g, v) in basis.iter().enumerate() {
        if active[g] {
            let gl = v.lead().expect("nonzero");
            if gl.comp == hl.comp && t.divides(&gl.mono) {
                active[g] = false;
            }
        }
    }

    for (g, l) in chosen {
        queue.push(Work::Pair(Pair {
            i: g,
            j: new,
            lcm: l,
            comp: hl.comp,
            degree: order.weighted_degree(&l, hl.comp),
        }));
    }
    basis.push(h);
    active.push(true);
}

/// Every S-vector of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis<C: Field>(basis: &[Vector<C>], order: &ModuleOrder) -> bool {
    let flags = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (basis[i].lead(), basis[j].lead());
            match (a, b) {
                (Some(a), Some(b)) if a.comp == b.comp => {}
                _ => continue,
            }
            if !reduce(&s_vector(&basis[i], &basis[j], order), basis, &flags, order).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Reduce by top-reduction only, recording the quotients: returns
/// `(remainder, [(index, monomial, coefficient)])` with
/// `f = Σ c·m·basis[index] + remainder`.
pub(crate) fn divide_with_quotients<C: Field>(
    f: &Vector<C>,
    basis: &[Vector<C>],
    order: &ModuleOrder,
) -> (Vector<C>, Vec<(usize, Monomial, C)>) {
    let mut quotients = Vec::new();
    let mut done: Vec<VTerm<C>> = Vec::new();
    let mut rest = f.clone();
    while let Some(lt) = rest.lead().cloned() {
        let reducer = basis.iter().enumerate().find_map(|(k, g)| {
            let gl = g.lead()?;
            if gl.comp != lt.comp {
                return None;
            }
            gl.mono.quotient_of(&lt.mono).map(|q| (k, q, gl.coeff.clone()))
        });
        match reducer {
            Some((k, q, gc)) => {
                let c = lt.coeff.clone() / gc;
                rest = rest.sub_scaled(&c, &q, &basis[k], order);
                quotients.push((k, q, c));
            }
            None => {
                done.push(lt);
                rest = rest.tail();
            }
        }
    }
    (Vector::from_sorted(done), quotients)
}
