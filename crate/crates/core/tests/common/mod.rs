#![allow(dead_code)]

use std::sync::Arc;

use cumulant_core::linsolve::{self, SparseRow};
use cumulant_core::{
    canonical_monomials_up_to, fixtures, Algebra, GradedBasis, LinearMap, QAlgebra, QLinearMap, QSElement,
    QVector, Rational, Vector,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qq(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(rng: &mut impl Rng) -> Q {
    qq(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// A random vector supported on the generators of the given degree.
pub fn vector_of_degree(rng: &mut impl Rng, basis: &GradedBasis, degree: i64) -> QVector {
    let mut v = Vector::zero();
    for i in basis.of_degree(degree) {
        if rng.gen_bool(0.7) {
            v.add_term(i, rational(rng));
        }
    }
    v
}

pub fn linear_map(
    rng: &mut impl Rng,
    source: &Arc<GradedBasis>,
    target: &Arc<GradedBasis>,
    degree: i64,
) -> QLinearMap {
    let columns = (0..source.len())
        .map(|i| (i, vector_of_degree(rng, target, source.degree(i) + degree)))
        .collect::<Vec<_>>();
    LinearMap::new(source.clone(), target.clone(), degree, columns).unwrap()
}

/// Base algebras on three generators.
pub fn base_algebras() -> Vec<QAlgebra> {
    vec![
        fixtures::truncated_polynomial(3),
        fixtures::exterior_e2(),
        fixtures::mixed_m3(),
    ]
}

/// A random degree-preserving change of basis of one of the base algebras.
pub fn random_algebra(rng: &mut impl Rng) -> QAlgebra {
    let base = base_algebras().choose(rng).unwrap().clone();
    loop {
        let b = base.basis();
        let new: Vec<QVector> = (0..b.len())
            .map(|i| vector_of_degree(rng, b, b.degree(i)))
            .collect();
        if new.iter().any(|v| v.is_zero()) {
            continue;
        }
        if let Ok(alg) = base.change_basis(&new) {
            return alg;
        }
    }
}

pub fn random_element(rng: &mut impl Rng, basis: &Arc<GradedBasis>, cap: usize, terms: usize) -> QSElement {
    let monomials = canonical_monomials_up_to(basis, cap);
    let mut v = QSElement::zero(basis.clone(), cap);
    for _ in 0..terms {
        let m = monomials.choose(rng).unwrap().clone();
        v.add_term(m, rational(rng));
    }
    v
}

/// Coordinates of every old generator in the new basis.
pub fn inverse_columns(new_basis: &[QVector], n: usize) -> Vec<QVector> {
    let rows: Vec<(SparseRow<Q>, Q)> = (0..n)
        .map(|k| {
            let row = (0..n)
                .filter_map(|i| {
                    let c = new_basis[i].coeff(k);
                    (c != q(0)).then_some((i, c))
                })
                .collect();
            (row, q(0))
        })
        .collect();
    (0..n)
        .map(|k| {
            let mut system = rows.clone();
            system[k].1 = q(1);
            Vector::from_terms(linsolve::solve(&system, n).unwrap().into_iter().enumerate())
        })
        .collect()
}

/// A random algebra `A'` isomorphic to `base`, and the isomorphism `base → A'`.
pub fn random_isomorphism(rng: &mut impl Rng, base: &Algebra<Q>) -> (QAlgebra, QLinearMap) {
    let b = base.basis();
    loop {
        let new: Vec<QVector> = (0..b.len())
            .map(|i| vector_of_degree(rng, b, b.degree(i)))
            .collect();
        if let Ok(moved) = base.change_basis(&new) {
            let inv = inverse_columns(&new, b.len());
            let f = LinearMap::new(b.clone(), moved.basis().clone(), 0, inv.into_iter().enumerate()).unwrap();
            return (moved, f);
        }
    }
}
