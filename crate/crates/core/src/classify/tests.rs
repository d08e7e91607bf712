use std::collections::BTreeMap;

use super::*;
use crate::foliation::{exceptional_form, logarithmic_form, pencil, pullback_from_plane};
use crate::poly::{parse_polynomial, PolyRing};
use crate::Poly;

fn q(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

fn p(ring: PolyRing, s: &str) -> Poly {
    parse_polynomial(ring, s).unwrap()
}

fn l1111() -> ProjectiveOneForm {
    let r = PolyRing::grevlex(4);
    let f: Vec<Poly> = (0..4).map(|i| Poly::var(r, i)).collect();
    logarithmic_form(&f, &[q(1), q(1), q(1), q(-3)]).unwrap()
}

fn l112() -> ProjectiveOneForm {
    let r = PolyRing::grevlex(4);
    logarithmic_form(&[p(r, "z0"), p(r, "z1"), p(r, "z0^2 + z1^2 + z2^2 + z3^2")], &[q(1), q(1), q(-1)]).unwrap()
}

/// Pull-back of the plane foliation with four invariant lines.
fn pullback_d2() -> ProjectiveOneForm {
    let plane = PolyRing::grevlex(3);
    let f = [p(plane, "z0"), p(plane, "z1"), p(plane, "z2"), p(plane, "z0 + z1 + z2")];
    let w2 = logarithmic_form(&f, &[q(1), q(1), q(1), q(-3)]).unwrap();
    assert_eq!(w2.degree(), 2);
    pullback_from_plane(&w2).unwrap()
}

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn pencil_report() {
    let w = pencil(PolyRing::grevlex(4), 0, 1).unwrap();
    let r = classify(&w, &budget()).unwrap();
    assert_eq!(r.degree, 0);
    assert!(r.saturated && r.is_curve && r.is_acm && r.is_split);
    assert_eq!(r.splitting_type, Some((1, 1)));
    assert!(r.rao_dims.is_empty());
    assert_eq!(r.normal_twist, 2);
    assert_eq!(r.connected, None);
}

#[test]
fn tetrahedron_report() {
    let w = l1111();
    let r = classify(&w, &budget()).unwrap();
    assert_eq!(r.degree, 2);
    assert!(r.saturated && r.is_curve && r.is_acm && r.is_split);
    assert_eq!(r.splitting_type, Some((0, 0)));
    assert!(r.rao_dims.is_empty());
    // six lines through four points: resolution 1; 4 cubics; 3 quartic syzygies
    let expected: Vec<BTreeMap<i64, usize>> =
        vec![[(0, 1)].into_iter().collect(), [(3, 4)].into_iter().collect(), [(4, 3)].into_iter().collect()];
    assert_eq!(r.betti, expected);
    // s_0 = h⁰(O ⊕ O ⊕ O) = 3
    assert_eq!(syzygy_dimension(&w, 0).unwrap(), 3);
}

#[test]
fn quadric_logarithmic_is_not_split() {
    let w = l112();
    let r = classify(&w, &budget()).unwrap();
    assert_eq!(r.degree, 2);
    assert!(!r.is_curve);
    assert!(!r.is_split);
    assert_eq!(r.splitting_type, None);
    assert!(matches!(splitting_type(&w, &budget()), Err(ClassifyError::NotSplit)));
    assert!(matches!(rao_dimensions(&w, &budget()), Err(ClassifyError::NotACurve)));
    // the saturation still has a one-dimensional part
    assert_eq!(saturated_ideal(&w, &budget()).unwrap().hilbert_data().unwrap().krull_dim, 2);
}

#[test]
fn exceptional_split() {
    let e = exceptional_form(2).unwrap();
    let d = i64::from(e.computed_degree());
    let r = classify(&e.form, &budget()).unwrap();
    assert!(r.is_split);
    let (a, b) = r.splitting_type.unwrap();
    assert_eq!((a.min(b), a.max(b)), ((2 - d).min(0), (2 - d).max(0)));
    assert_eq!(syzygy_dimension(&e.form, 0).unwrap(), 2);
}

#[test]
fn plane_pullback_type() {
    let w = pullback_d2();
    let r = classify(&w, &budget()).unwrap();
    assert!(r.is_split);
    assert_eq!(r.splitting_type, Some((-1, 1)));
    // s_{-1} = h⁰(O(1-1)) = 1 from the constant syzygy
    assert_eq!(syzygy_dimension(&w, -1).unwrap(), 1);
}

#[test]
fn syzygy_counts_agree() {
    for w in [l1111(), pullback_d2(), exceptional_form(2).unwrap().form] {
        let an = Analysis::new(&w, &budget()).unwrap();
        let k = w.coefficients().len() as i128;
        let d = i64::from(w.degree());
        for m in -1..=2 {
            let counted = k * count_monomials(4, m + 1) - an.ideal.graded_dim(m + d + 2).unwrap();
            assert_eq!(counted, syzygy_dimension(&w, m).unwrap(), "m = {m}");
        }
    }
}

#[test]
fn plane_forms_are_saturated_but_not_classified() {
    let plane = PolyRing::grevlex(3);
    let f: Vec<Poly> = (0..3).map(|i| Poly::var(plane, i)).collect();
    let w = logarithmic_form(&f, &[q(1), q(1), q(-2)]).unwrap();
    assert!(is_saturated(&w, &budget()).unwrap());
    assert!(matches!(classify(&w, &budget()), Err(ClassifyError::UnsupportedDimension { nvars: 3 })));
}

#[test]
fn engine_level_rao_modules() {
    let r = PolyRing::grevlex(4);
    let skew = Ideal::new(r, vec![p(r, "z0*z2"), p(r, "z0*z3"), p(r, "z1*z2"), p(r, "z1*z3")]).unwrap();
    let rao = rao_dimensions_of_ideal(&skew).unwrap();
    assert_eq!(rao, [(0, 1)].into_iter().collect());
    let cubic = Ideal::new(r, vec![p(r, "z0*z2 - z1^2"), p(r, "z1*z3 - z2^2"), p(r, "z0*z3 - z1*z2")]).unwrap();
    assert!(rao_dimensions_of_ideal(&cubic).unwrap().is_empty());
    let fat = Ideal::new(r, vec![p(r, "z0^2"), p(r, "z0*z1"), p(r, "z0*z2"), p(r, "z0*z3")]).unwrap();
    let sat = fat.saturate_by_variables().unwrap();
    assert!(!sat.is_subset_of(&fat).unwrap());
    assert!(sat.equals(&Ideal::new(r, vec![p(r, "z0")]).unwrap()).unwrap());
}
