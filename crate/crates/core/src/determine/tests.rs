use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::foliation::{exceptional_form, logarithmic_form, pullback_from_plane};
use crate::poly::parse_polynomial;

fn q(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

fn p(ring: PolyRing, s: &str) -> Poly {
    parse_polynomial(ring, s).unwrap()
}

fn budget() -> Budget {
    Budget::default()
}

fn l1111(weights: [i64; 4]) -> ProjectiveOneForm {
    let r = PolyRing::grevlex(4);
    let f: Vec<Poly> = (0..4).map(|i| Poly::var(r, i)).collect();
    logarithmic_form(&f, &weights.map(q)).unwrap()
}

fn plane_log(lines: &[&str], weights: &[i64]) -> ProjectiveOneForm {
    let plane = PolyRing::grevlex(3);
    let f: Vec<Poly> = lines.iter().map(|s| p(plane, s)).collect();
    let w: Vec<Rat> = weights.iter().map(|&v| q(v)).collect();
    logarithmic_form(&f, &w).unwrap()
}

fn pullback_d1() -> ProjectiveOneForm {
    pullback_from_plane(&plane_log(&["z0", "z1", "z2"], &[1, 1, -2])).unwrap()
}

fn pullback_d2() -> ProjectiveOneForm {
    pullback_from_plane(&plane_log(&["z0", "z1", "z2", "z0 + z1 + z2"], &[1, 1, 1, -3])).unwrap()
}

fn random_invertible(rng: &mut ChaCha8Rng) -> Vec<Vec<Rat>> {
    loop {
        let a: Vec<Vec<Rat>> = (0..4).map(|_| (0..4).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
        if !DenseMatrix::from_rows(a.clone()).determinant().is_zero() {
            return a;
        }
    }
}

#[test]
fn syzygy_space_dimensions() {
    let w = l1111([1, 1, 1, -3]);
    let space = linear_syzygy_space(&w);
    assert_eq!(space.len(), 3);
    assert_eq!(space[0].to_matrix(), SyzygyMatrix::identity(4));
    assert!(space.iter().all(|s| s.is_syzygy_of(w.coefficients())));
    assert!(constant_syzygy_space(&w).is_empty());

    let e = exceptional_form(2).unwrap().form;
    assert_eq!(linear_syzygy_space(&e).len(), 2);
    assert!(constant_syzygy_space(&e).is_empty());

    for pb in [pullback_d1(), pullback_d2()] {
        let c = constant_syzygy_space(&pb);
        assert_eq!(c, vec![vec![q(1), q(0), q(0), q(0)]]);
    }
}

#[test]
fn syzygy_matrix_bijection() {
    let w = l1111([1, 2, 3, -6]);
    let r = w.ring();
    for s in linear_syzygy_space(&w) {
        let m = s.to_matrix();
        assert_eq!(LinearSyzygy::from_matrix(r, &m), s);
        assert_eq!(LinearSyzygy::from_matrix(r, &m).to_matrix(), m);
    }
    let euler = LinearSyzygy::from_matrix(r, &SyzygyMatrix::identity(4));
    assert_eq!(euler.entries(), &[p(r, "z0"), p(r, "z1"), p(r, "z2"), p(r, "z3")]);
}

#[test]
fn distributions_from_matrices() {
    let w = l1111([1, 1, 1, -3]);
    let same = distribution_from_matrix(&w, &SyzygyMatrix::identity(4)).unwrap();
    assert_eq!(same.coefficients(), w.coefficients());
    let scaled = distribution_from_matrix(&w, &SyzygyMatrix::scalar(4, &q(5))).unwrap();
    assert!(scaled.is_proportional_to(&w));
    assert!(matches!(
        distribution_from_matrix(&w, &SyzygyMatrix::scalar(4, &q(0))),
        Err(DetermineError::SingularMatrix)
    ));
    // the second basis syzygy of the exceptional form gives a non-integrable ω₁
    let e = exceptional_form(2).unwrap().form;
    let space = linear_syzygy_space(&e);
    let m1 = space[1].to_matrix();
    let omega1 = ProjectiveOneForm::validate(m1.apply(e.coefficients())).unwrap();
    assert!(!omega1.is_integrable());
    assert!(omega1.coefficient_ideal().is_subset_of(&e.coefficient_ideal()).unwrap());
}

#[test]
fn exceptional_family_has_only_the_base() {
    let e = exceptional_form(2).unwrap().form;
    let family = distribution_family(&e, &budget()).unwrap();
    assert_eq!(family.parameter_dim(), 2);
    assert_eq!(family.effective_dim(), 2);
    assert_eq!(family.degenerate_locus().evaluate(&[q(1), q(0)]), q(1));
    let system = integrability_system(&family).unwrap();
    assert!(!system.is_empty());
    // α_0² never appears: the base is integrable
    let a00 = Monomial::var(0).mul(&Monomial::var(0));
    assert!(system.iter().all(|s| s.coefficient(&a00).is_zero()));
    match integrable_members(&family, &budget()).unwrap() {
        IntegrableMembers::Finite { members, .. } => {
            assert_eq!(members.len(), 1);
            assert!(members[0].form.is_proportional_to(&e));
            assert_eq!(members[0].alpha, vec![q(1), q(0)]);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(is_determined_by_singular_scheme(&e, &budget()).unwrap().label(), "unique");
}

#[test]
fn tetrahedron_is_not_determined() {
    let w = l1111([1, 1, 1, -3]);
    let family = distribution_family(&w, &budget()).unwrap();
    assert_eq!(family.parameter_dim(), 3);
    // every member is logarithmic, hence integrable
    assert!(integrability_system(&family).unwrap().is_empty());
    match integrable_members(&family, &budget()).unwrap() {
        IntegrableMembers::PositiveDimensional { dim, witnesses } => {
            assert_eq!(dim, 2);
            assert_eq!(witnesses.len(), 2);
            assert!(!witnesses[0].form.is_proportional_to(&witnesses[1].form));
        }
        other => panic!("{other:?}"),
    }
    match is_determined_by_singular_scheme(&w, &budget()).unwrap() {
        Determination::NonUnique { witness, .. } => {
            assert!(witness.is_integrable());
            assert!(!witness.is_proportional_to(&w));
        }
        other => panic!("{other:?}"),
    }
    let other = l1111([1, -1, 1, -1]);
    assert!(other.coefficient_ideal().equals(&w.coefficient_ideal()).unwrap());
    assert!(!other.is_proportional_to(&w));
}

#[test]
fn plane_pullbacks() {
    let d2 = pullback_d2();
    assert_eq!(is_determined_by_singular_scheme(&d2, &budget()).unwrap().label(), "unique");
    // the shortcut agrees with the solver
    let family = build_family(&d2).unwrap();
    assert_eq!(family.effective_dim(), 1);
    assert!(
        matches!(integrable_members(&family, &budget()).unwrap(), IntegrableMembers::Finite { ref members, .. } if members.len() == 1)
    );

    let d1 = pullback_d1();
    let family = distribution_family(&d1, &budget()).unwrap();
    match integrable_members(&family, &budget()).unwrap() {
        IntegrableMembers::PositiveDimensional { dim, witnesses } => {
            assert!(dim >= 1);
            for wit in &witnesses {
                assert!(wit.form.is_integrable());
                assert!(wit.form.coefficient_ideal().equals(&d1.coefficient_ideal()).unwrap());
                assert!(!wit.form.is_proportional_to(&d1));
            }
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(is_determined_by_singular_scheme(&d1, &budget()).unwrap().label(), "non-unique");
}

#[test]
fn pullback_structure_round_trip() {
    let w2 = plane_log(&["z0", "z1", "z2", "z0 + z1 + z2"], &[1, 1, 1, -3]);
    let w3 = pullback_from_plane(&w2).unwrap();
    let s = pullback_structure(&w3).unwrap().unwrap();
    assert_eq!(s.center, vec![q(1), q(0), q(0), q(0)]);
    assert!(s.plane.is_proportional_to(&w2));

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let a = random_invertible(&mut rng);
        let moved = w3.apply_projectivity(&a).unwrap();
        let s = pullback_structure(&moved).unwrap().unwrap();
        let back = pullback_from_plane(&s.plane).unwrap();
        let inv = DenseMatrix::from_rows(s.matrix.clone()).inverse().unwrap().to_rows();
        assert!(back.apply_projectivity(&inv).unwrap().is_proportional_to(&moved));
    }
    assert!(matches!(pullback_structure(&l1111([1, 1, 1, -3])), Err(DetermineError::NoConstantSyzygy)));
}

#[test]
fn rational_root_finder() {
    let r = PolyRing::new(1, MonomialOrder::Lex);
    let f = p(r, "6*z0^3 - 5*z0^2 - 2*z0 + 1"); // (z0 - 1)(2z0 + 1)(3z0 - 1)
    let mut roots = rational_roots(&f, 0).unwrap();
    roots.sort();
    assert_eq!(roots, vec![Rat::new((-1).into(), 2.into()), Rat::new(1.into(), 3.into()), q(1)]);
    assert_eq!(rational_roots(&p(r, "z0^3 - z0"), 0).unwrap().len(), 3);
    assert!(rational_roots(&p(r, "z0^2 - 2"), 0).is_none());
}

#[test]
fn projective_points_of_a_small_system() {
    let r = PolyRing::grevlex(3);
    // meets in (1:0:0), (0:1:0), (1:1:1) and (1:1:-1)
    let system = vec![p(r, "z0*z1 - z2^2"), p(r, "z2*z0 - z2*z1")];
    let pts = projective_points(&system, r, &budget()).unwrap().unwrap();
    for pt in &pts {
        assert!(system.iter().all(|s| s.evaluate(pt).is_zero()));
    }
    assert_eq!(pts.len(), 4);
}
