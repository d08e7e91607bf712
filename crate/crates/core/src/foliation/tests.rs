use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::groebner::Ideal;
use crate::poly::{monomials_of_degree, parse_polynomial, PolyRing};
use crate::{Poly, Rat};

fn q(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

fn p(ring: PolyRing, s: &str) -> Poly {
    parse_polynomial(ring, s).unwrap()
}

fn form(ring: PolyRing, cs: &[&str]) -> Result<ProjectiveOneForm, FoliationError> {
    ProjectiveOneForm::validate(cs.iter().map(|s| p(ring, s)).collect())
}

fn l1111(weights: [i64; 4]) -> ProjectiveOneForm {
    let r = PolyRing::grevlex(4);
    let f: Vec<Poly> = (0..4).map(|i| Poly::var(r, i)).collect();
    logarithmic_form(&f, &weights.map(q)).unwrap()
}

#[test]
fn validation_examples() {
    let r = PolyRing::grevlex(4);
    assert_eq!(form(r, &["z1", "-z0", "0", "0"]).unwrap().degree(), 0);
    match form(r, &["z0", "0", "0", "0"]) {
        Err(FoliationError::EulerViolation { sum }) => assert_eq!(sum, "z0^2"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(form(r, &["0", "0", "0", "0"]), Err(FoliationError::ZeroForm)));
    assert!(matches!(form(r, &["z1 + 1", "-z0", "0", "0"]), Err(FoliationError::Inhomogeneous { index: 0 })));
    assert!(matches!(form(r, &["z1^2", "-z0", "0", "0"]), Err(FoliationError::DegreeMismatch { .. })));
    let w = l1111([1, 1, 1, -3]);
    assert_eq!(w.degree(), 2);
    assert_eq!(w.coefficients()[3], p(r, "-3*z0*z1*z2"));
    // a common monomial factor is stripped
    let s = form(r, &["z2*z1", "-z2*z0", "0", "0"]).unwrap();
    assert_eq!(s.coefficients()[0], p(r, "z1"));
}

#[test]
fn derivative_and_contraction() {
    let r = PolyRing::grevlex(4);
    let w = form(r, &["z1", "-z0", "0", "0"]).unwrap();
    let dw = w.exterior_derivative();
    assert_eq!(dw.coeff(0, 1), p(r, "-2"));
    assert_eq!(dw.coeff(1, 0), p(r, "2"));
    let ir = w.radial_contraction_of_derivative();
    assert_eq!(ir, vec![p(r, "2*z1"), p(r, "-2*z0"), p(r, "0"), p(r, "0")]);
    assert!(radial_contraction(&TwoForm::zero(r)).iter().all(Poly::is_zero));
    assert!(w.is_integrable());
}

#[test]
fn cartan_identity_on_examples() {
    let r = PolyRing::grevlex(4);
    let forms =
        vec![l1111([1, 1, 1, -3]), l1111([1, 2, 3, -6]), exceptional_form(2).unwrap().form, pencil(r, 0, 1).unwrap()];
    for w in forms {
        let k = q(i64::from(w.degree()) + 2);
        let ir = w.radial_contraction_of_derivative();
        for (a, b) in ir.iter().zip(w.coefficients()) {
            assert_eq!(*a, b.scale(&k));
        }
    }
}

#[test]
fn logarithmic_examples() {
    let r = PolyRing::grevlex(4);
    for lam in [[1, 1, 1, -3], [1, -1, 1, -1], [2, 3, -4, -1]] {
        assert!(l1111(lam).is_integrable(), "{lam:?}");
    }
    let plane = PolyRing::grevlex(3);
    let f: Vec<Poly> = (0..3).map(|i| Poly::var(plane, i)).collect();
    let w2 = logarithmic_form(&f, &[q(1), q(1), q(-2)]).unwrap();
    assert_eq!(w2.degree(), 1);
    assert!(w2.is_integrable());
    let l112 =
        logarithmic_form(&[p(r, "z0"), p(r, "z1"), p(r, "z0^2 + z1^2 + z2^2 + z3^2")], &[q(1), q(1), q(-1)]).unwrap();
    assert_eq!(l112.degree(), 2);
    assert!(l112.is_integrable());
    let bad = logarithmic_form(&f, &[q(1), q(1), q(-1)]);
    assert!(matches!(bad, Err(FoliationError::WeightConstraintViolation(_))));
    let zero_weight = logarithmic_form(&f, &[q(2), q(0), q(-2)]);
    assert!(matches!(zero_weight, Err(FoliationError::WeightConstraintViolation(_))));
}

#[test]
fn singular_ideals() {
    let r = PolyRing::grevlex(4);
    let pencil_ideal = pencil(r, 0, 1).unwrap().singular_ideal().unwrap();
    assert!(pencil_ideal.equals(&Ideal::new(r, vec![p(r, "z0"), p(r, "z1")]).unwrap()).unwrap());
    let edges = Ideal::new(r, vec![p(r, "z1*z2*z3"), p(r, "z0*z2*z3"), p(r, "z0*z1*z3"), p(r, "z0*z1*z2")]).unwrap();
    assert!(l1111([1, 1, 1, -3]).singular_ideal().unwrap().equals(&edges).unwrap());
}

#[test]
fn projectivize_examples() {
    let a = PolyRing::grevlex(2);
    let w = AffineOneForm::new(vec![p(a, "z1"), p(a, "-z0")]).unwrap().projectivize(2).unwrap();
    let r = PolyRing::grevlex(3);
    assert_eq!(w.coefficients(), &[p(r, "z1"), p(r, "-z0"), p(r, "0")]);
    let dx = AffineOneForm::new(vec![p(a, "1"), p(a, "0")]).unwrap().projectivize(2).unwrap();
    assert_eq!(dx.coefficients(), &[p(r, "z2"), p(r, "0"), p(r, "-z0")]);
    assert_eq!(dx.degree(), 0);
}

#[test]
fn exceptional_family() {
    let e2 = exceptional_form(2).unwrap();
    assert_eq!(e2.scalars, [3, 7, 21]);
    assert!(e2.form.is_integrable());
    assert!(e2.affine.is_integrable());
    assert_eq!(e2.computed_degree(), 3);
    let e3 = exceptional_form(3).unwrap();
    assert_eq!(e3.scalars, [4, 13, 52]);
    assert!(e3.form.is_integrable());
    assert!(exceptional_form(1).is_err());
}

#[test]
fn plane_pullback() {
    let plane = PolyRing::grevlex(3);
    let w2 = ProjectiveOneForm::validate(vec![p(plane, "z1"), p(plane, "-z0"), p(plane, "0")]).unwrap();
    let w3 = pullback_from_plane(&w2).unwrap();
    let r = PolyRing::grevlex(4);
    assert_eq!(w3.coefficients(), &[p(r, "0"), p(r, "z2"), p(r, "-z1"), p(r, "0")]);
    assert_eq!(w3.degree(), 0);
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rat>> {
    loop {
        let a: Vec<Vec<Rat>> = (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect()).collect();
        if crate::linalg::DenseMatrix::from_rows(a.clone()).determinant() != q(0) {
            return a;
        }
    }
}

#[test]
fn projectivity_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let base = l1111([1, 2, 3, -6]);
    for _ in 0..3 {
        let a = random_matrix(&mut rng, 4);
        let moved = base.apply_projectivity(&a).unwrap();
        assert_eq!(moved.degree(), base.degree());
        assert!(moved.is_integrable());
        let sub = base.coefficient_ideal().apply_linear_change(&a).unwrap();
        assert!(moved.coefficient_ideal().equals(&sub).unwrap());
    }
    let r = PolyRing::grevlex(4);
    let not_integrable = form(r, &["z1*z2", "-z0*z2", "z3^2", "-z2*z3"]).unwrap();
    assert!(!not_integrable.is_integrable());
    let a = random_matrix(&mut rng, 4);
    assert!(!not_integrable.apply_projectivity(&a).unwrap().is_integrable());
}

#[test]
fn wedge_is_alternating() {
    let w = l1111([1, 2, 3, -6]);
    let f = w.coefficients();
    let eta = w.exterior_derivative();
    let at = |i: usize, j: usize, k: usize| -> Poly {
        &(&(&f[i] * &eta.coeff(j, k)) - &(&f[j] * &eta.coeff(i, k))) + &(&f[k] * &eta.coeff(i, j))
    };
    let (i, j, k) = (0, 1, 3);
    assert_eq!(at(j, i, k), -at(i, j, k));
    assert_eq!(at(i, k, j), -at(i, j, k));
    let theta = wedge(f, &eta);
    assert_eq!(theta.coeff(i, j, k), at(i, j, k));
}

/// A random affine 1-form in 3 variables of degree ≤ 3.
pub(crate) fn random_affine_form(rng: &mut ChaCha8Rng) -> AffineOneForm {
    let r = PolyRing::grevlex(3);
    let coeffs = (0..3)
        .map(|_| {
            let mut f = Poly::zero(r);
            for _ in 0..rng.gen_range(1..5) {
                let d = rng.gen_range(0..=3);
                let ms = monomials_of_degree(3, d);
                f = f + Poly::monomial(r, ms[rng.gen_range(0..ms.len())], q(rng.gen_range(-4..=4)));
            }
            f
        })
        .collect();
    AffineOneForm::new(coeffs).unwrap()
}

#[test]
fn d_squared_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let w = random_affine_form(&mut rng);
        assert!(w.exterior_derivative().exterior_derivative().is_zero());
        let f = w.coefficients()[0].clone();
        assert!(AffineOneForm::exact(&f).exterior_derivative().is_zero());
    }
}
