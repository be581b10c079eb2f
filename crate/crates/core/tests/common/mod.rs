#![allow(dead_code)]

use std::ops::RangeInclusive;

use framing_core::gca::{Algebra, AlgebraHandle, BasisSpec, GeneratorSpec, Monomial};
use framing_core::linalg::SparseMatrix;
use framing_core::{Derivation, Element, GradedDims, LabeledDims, Rational};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Mixed-parity test algebra: Λ[x@1, y@1, η@3, η′@3] ⊗ Q[u@2, p@4].
pub fn test_algebra() -> AlgebraHandle {
    Algebra::new(vec![
        GeneratorSpec::new("x", 1),
        GeneratorSpec::new("y", 1),
        GeneratorSpec::new("u", 2),
        GeneratorSpec::new("η", 3),
        GeneratorSpec::new("η′", 3),
        GeneratorSpec::new("p", 4),
    ])
    .unwrap()
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn monomial(alg: AlgebraHandle) -> impl Strategy<Value = Option<Monomial>> {
    proptest::collection::vec(0u32..=2, alg.len()).prop_map(move |exps| {
        let pairs: Vec<(usize, u32)> = exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(g, e)| (g, *e)).collect();
        Monomial::from_exponents(&alg, &pairs)
    })
}

/// Random, generally inhomogeneous element with up to four terms.
pub fn element(alg: AlgebraHandle) -> impl Strategy<Value = Element> {
    let a = alg.clone();
    proptest::collection::vec((monomial(alg), coeff()), 0..4).prop_map(move |terms| {
        Element::from_terms(&a, terms.into_iter().filter_map(|(m, c)| m.map(|m| (m, c))))
    })
}

/// Homogeneous pieces of an element.
pub fn homogeneous_parts(e: &Element) -> Vec<(i64, Element)> {
    e.degrees()
        .into_iter()
        .map(|d| {
            let alg = e.algebra();
            let part = Element::from_terms(
                alg,
                e.terms().filter(|(m, _)| alg.degree_of(m) == d).map(|(m, c)| (m.clone(), c.clone())),
            );
            (d, part)
        })
        .collect()
}

/// Random derivation of degree `deg` with homogeneous images.
pub fn derivation(alg: AlgebraHandle, deg: i64) -> impl Strategy<Value = Derivation> {
    let bases: Vec<Vec<Monomial>> = alg
        .generators()
        .iter()
        .map(|g| alg.basis_in_degree(g.degree + deg, &BasisSpec::default()).unwrap())
        .collect();
    let sizes: Vec<usize> = bases.iter().map(Vec::len).collect();
    let coeffs = sizes.into_iter().map(|n| proptest::collection::vec(coeff(), n)).collect::<Vec<_>>();
    coeffs.prop_map(move |cs| {
        let mut d = Derivation::new(&alg, deg);
        for (g, (basis, c)) in bases.iter().zip(cs).enumerate() {
            let image = Element::from_terms(&alg, basis.iter().cloned().zip(c));
            d.set_image(g, image).unwrap();
        }
        d
    })
}

/// Random small integer matrix with some zero entries.
pub fn int_matrix(max_dim: usize) -> impl Strategy<Value = SparseMatrix<Rational>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], r * c).prop_map(move |v| {
            SparseMatrix::from_triplets(r, c, v.iter().enumerate().map(|(k, x)| (k / c, k % c, q(*x))))
        })
    })
}

/// Random coefficient table with one to three graded slots in `degrees`.
pub fn random_coeffs(rng: &mut StdRng, degrees: RangeInclusive<i64>) -> GradedDims {
    let slots = rng.gen_range(1..=3);
    let mut d = GradedDims::new();
    for _ in 0..slots {
        d.add(rng.gen_range(degrees.clone()), rng.gen_range(1..=2));
    }
    d
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn labeled(d: &GradedDims) -> LabeledDims {
    LabeledDims::from_dims(d, "c")
}

pub fn dims(pairs: &[(i64, usize)]) -> GradedDims {
    GradedDims::from_pairs(pairs.iter().copied())
}
