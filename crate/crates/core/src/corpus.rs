//! Named fixture forms on `P³` and seeded generators of plane forms.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::foliation::{
    exceptional_form, logarithmic_form, pencil, pullback_from_plane, AffineOneForm, FoliationError, ProjectiveOneForm,
};
use crate::linalg::DenseMatrix;
use crate::poly::{parse_polynomial, PolyRing};
use crate::{Poly, Rat};

fn q(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

fn polys(ring: PolyRing, texts: &[&str]) -> Vec<Poly> {
    texts.iter().map(|t| parse_polynomial(ring, t).expect("fixture polynomial")).collect()
}

fn log(ring: PolyRing, factors: &[&str], weights: &[i64]) -> Result<ProjectiveOneForm, FoliationError> {
    let w: Vec<Rat> = weights.iter().map(|&v| q(v)).collect();
    logarithmic_form(&polys(ring, factors), &w)
}

/// The tetrahedron form `L(1,1,1,1)` with `ℓ_i = z_i` and the given weights.
pub fn tetrahedron(weights: [i64; 4]) -> ProjectiveOneForm {
    log(PolyRing::grevlex(4), &["z0", "z1", "z2", "z3"], &weights).expect("weights sum to zero")
}

/// `L(1,1,2)` with the quadric `z0² + z1² + z2² + z3²`.
pub fn quadric_logarithmic() -> ProjectiveOneForm {
    log(PolyRing::grevlex(4), &["z0", "z1", "z0^2 + z1^2 + z2^2 + z3^2"], &[1, 1, -1]).expect("valid fixture")
}

/// Plane logarithmic form with `k` lines `z0, z1, z2, z0+z1+z2, z0-z1+2z2, …`
/// of degree `k - 2`.
pub fn plane_lines(k: usize) -> ProjectiveOneForm {
    let lines = ["z0", "z1", "z2", "z0 + z1 + z2", "z0 - z1 + 2*z2", "2*z0 + 3*z1 - z2"];
    assert!((3..=lines.len()).contains(&k), "between 3 and {} lines", lines.len());
    let mut weights = vec![1i64; k];
    weights[k - 1] = -(k as i64 - 1);
    log(PolyRing::grevlex(3), &lines[..k], &weights).expect("lines in general position")
}

/// The fixture corpus: name and form, degrees 0 to 3.
pub fn standard_corpus() -> Vec<(String, ProjectiveOneForm)> {
    let r = PolyRing::grevlex(4);
    let mut out: Vec<(&str, ProjectiveOneForm)> = vec![
        ("pencil", pencil(r, 0, 1).expect("valid")),
        ("pencil_skew", log(r, &["z0 + z1", "z2 - z3"], &[1, -1]).expect("valid")),
        ("pullback_d1", pullback_from_plane(&plane_lines(3)).expect("valid")),
        ("quadric_plane_d1", log(r, &["z0", "z0*z1 + z2*z3"], &[2, -1]).expect("valid")),
        ("tetrahedron", tetrahedron([1, 1, 1, -3])),
        ("tetrahedron_alt", tetrahedron([1, -1, 1, -1])),
        ("tetrahedron_1236", tetrahedron([1, 2, 3, -6])),
        ("tetrahedron_general", log(r, &["z0", "z1", "z2", "z0 + z1 + z2 + z3"], &[1, 2, -1, -2]).expect("valid")),
        ("quadric_logarithmic", quadric_logarithmic()),
        ("two_quadrics", log(r, &["z0*z3 - z1*z2", "z0*z2 - z1^2"], &[1, -1]).expect("valid")),
        ("pullback_d2", pullback_from_plane(&plane_lines(4)).expect("valid")),
        ("pullback_d3", pullback_from_plane(&plane_lines(5)).expect("valid")),
        ("exceptional_d2", exceptional_form(2).expect("valid").form),
        ("planes_and_quadric_d3", log(r, &["z0", "z1", "z2", "z0*z1 + z2^2 + z3^2"], &[1, 1, 2, -2]).expect("valid")),
    ];
    out.sort_by_key(|(_, w)| w.degree());
    out.into_iter().map(|(n, w)| (n.to_string(), w)).collect()
}

/// A seeded random plane logarithmic form with 3 to 5 lines.
pub fn random_plane_logarithmic(rng: &mut ChaCha8Rng) -> Result<ProjectiveOneForm, FoliationError> {
    let ring = PolyRing::grevlex(3);
    let k = rng.gen_range(3..=5);
    let lines: Vec<Poly> = (0..k)
        .map(|_| loop {
            let l = (0..3).fold(Poly::zero(ring), |acc, i| acc + Poly::var(ring, i).scale(&q(rng.gen_range(-3..=3))));
            if !l.is_zero() {
                break l;
            }
        })
        .collect();
    let mut weights: Vec<Rat> =
        (0..k - 1).map(|_| q(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
    let total: Rat = weights.iter().cloned().sum();
    weights.push(-total);
    logarithmic_form(&lines, &weights)
}

/// A seeded random affine form in two variables of degree at most 3,
/// extended to the plane.
pub fn random_plane_affine(rng: &mut ChaCha8Rng) -> Result<ProjectiveOneForm, FoliationError> {
    let ring = PolyRing::grevlex(2);
    let coeffs: Vec<Poly> = (0..2)
        .map(|_| {
            let mut f = Poly::zero(ring);
            for _ in 0..rng.gen_range(1..=4) {
                let (a, b) = (rng.gen_range(0..=2u32), rng.gen_range(0..=1u32));
                let m = crate::poly::Monomial::from_exponents(&[a, b]);
                f = f + Poly::monomial(ring, m, q(rng.gen_range(-4..=4)));
            }
            f
        })
        .collect();
    AffineOneForm::new(coeffs)?.projectivize(2)
}

/// A random invertible `n × n` matrix with entries in `-2..=2`.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rat>> {
    loop {
        let a: Vec<Vec<Rat>> = (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
        if !DenseMatrix::from_rows(a.clone()).determinant().is_zero() {
            return a;
        }
    }
}

/// Seeded random plane forms with singular locus of codimension 2: `count`
/// of each kind.
pub fn plane_suite(seed: u64, count: usize) -> Vec<ProjectiveOneForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for generator in [random_plane_logarithmic, random_plane_affine] {
        let mut found = 0;
        while found < count {
            let Ok(w) = generator(&mut rng) else { continue };
            if w.singular_ideal().is_ok() {
                out.push(w);
                found += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_spans_degrees() {
        let corpus = standard_corpus();
        assert!(corpus.len() >= 12);
        let degrees: std::collections::BTreeSet<u32> = corpus.iter().map(|(_, w)| w.degree()).collect();
        assert_eq!(degrees.into_iter().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        for (name, w) in &corpus {
            assert!(w.is_integrable(), "{name}");
            assert!(w.singular_ideal().is_ok(), "{name}");
        }
    }

    #[test]
    fn plane_suite_is_reproducible() {
        let a = plane_suite(5, 4);
        let b = plane_suite(5, 4);
        assert_eq!(a.len(), 8);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.coefficients(), y.coefficients());
            assert_eq!(x.ring().nvars(), 3);
        }
    }
}
