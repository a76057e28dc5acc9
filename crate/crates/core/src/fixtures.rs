//! Small named algebras, maps and retracts used throughout the tests and
//! the CLI examples.

use std::sync::Arc;

use crate::algebra::{Algebra, GradedBasis, LinearMap, Vector};
use crate::error::{Error, Result};
use crate::scalar::{from_i64, from_usize, Scalar};
use crate::transfer::RetractData;

fn basis(pairs: &[(&str, i64)]) -> GradedBasis {
    GradedBasis::from_pairs(pairs).expect("fixture names are distinct")
}

fn e<S: Scalar>(i: usize) -> Vector<S> {
    Vector::basis(i)
}

fn map<S: Scalar>(
    source: &Arc<GradedBasis>,
    target: &Arc<GradedBasis>,
    degree: i64,
    columns: Vec<(usize, Vector<S>)>,
) -> LinearMap<S> {
    LinearMap::new(source.clone(), target.clone(), degree, columns).expect("fixture maps are homogeneous")
}

/// `a`, `b` of degree 1 and `g` of degree 2 with `a·b = g = -b·a`; every
/// other product vanishes.
pub fn exterior_e2<S: Scalar>() -> Algebra<S> {
    Algebra::from_products(basis(&[("a", 1), ("b", 1), ("g", 2)]), [(0, 1, e(2))])
        .expect("exterior fixture is valid")
}

/// `x1, .., xn` in degree 0 with `xi·xj = x(i+j)` when `i + j <= n`.
pub fn truncated_polynomial<S: Scalar>(n: usize) -> Algebra<S> {
    let names: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    let pairs: Vec<(&str, i64)> = names.iter().map(|s| (s.as_str(), 0)).collect();
    let products = (1..=n)
        .flat_map(|i| (i..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| i + j <= n)
        .map(|(i, j)| (i - 1, j - 1, e(i + j - 1)));
    Algebra::from_products(basis(&pairs), products).expect("truncated polynomials are valid")
}

/// `x` in degree 0 and `e`, `y` in degree 1, with `x` idempotent and acting
/// as the identity on `e` and `y`; `e·y = 0`.
pub fn mixed_m3<S: Scalar>() -> Algebra<S> {
    Algebra::from_products(
        basis(&[("x", 0), ("e", 1), ("y", 1)]),
        [(0, 0, e(0)), (0, 1, e(1)), (0, 2, e(2))],
    )
    .expect("mixed fixture is valid")
}

/// The one-dimensional algebra spanned by an idempotent `1` of degree 0.
pub fn point_algebra<S: Scalar>() -> Algebra<S> {
    Algebra::from_products(basis(&[("1", 0)]), [(0, 0, e(0))]).expect("point algebra is valid")
}

/// The expectation `f(xᵏ) = m_k · 1` from a truncated polynomial algebra to
/// the point algebra.
pub fn expectation_map<S: Scalar>(
    source: &Algebra<S>,
    target: &Algebra<S>,
    moments: &[S],
) -> Result<LinearMap<S>> {
    if moments.len() != source.dim() || target.dim() != 1 {
        return Err(Error::Mismatch(format!(
            "{} moments for an algebra of dimension {} into one of dimension {}",
            moments.len(),
            source.dim(),
            target.dim()
        )));
    }
    LinearMap::new(
        source.basis().clone(),
        target.basis().clone(),
        0,
        moments
            .iter()
            .enumerate()
            .map(|(k, m)| (k, Vector::from_terms([(0, m.clone())]))),
    )
}

/// The Euler derivation `xᵏ ↦ k xᵏ` of a truncated polynomial algebra.
pub fn euler_derivation<S: Scalar>(alg: &Algebra<S>) -> LinearMap<S> {
    let b = alg.basis();
    map(
        b,
        b,
        0,
        (0..b.len())
            .map(|k| (k, e::<S>(k).scaled(&from_usize(k + 1))))
            .collect(),
    )
}

/// The degree `+1` derivation of `E2` sending `a` to `g` and killing `b`, `g`.
pub fn e2_derivation<S: Scalar>(alg: &Algebra<S>) -> LinearMap<S> {
    let b = alg.basis();
    map(b, b, 1, vec![(0, e(2))])
}

/// The automorphism of `E2` swapping `a` and `b` (so `g ↦ -g`).
pub fn e2_swap<S: Scalar>(alg: &Algebra<S>) -> LinearMap<S> {
    let b = alg.basis();
    map(
        b,
        b,
        0,
        vec![(0, e(1)), (1, e(0)), (2, e::<S>(2).scaled(&from_i64(-1)))],
    )
}

/// `c`, `b` in degree 0 and `a` in degree -1 with `c·c = b`.
pub fn k2_algebra<S: Scalar>() -> Algebra<S> {
    Algebra::from_products(basis(&[("c", 0), ("b", 0), ("a", -1)]), [(0, 0, e(1))])
        .expect("K2 algebra is valid")
}

fn k2_with_homotopy<S: Scalar>(sign: i64) -> RetractData<S> {
    let alg = Arc::new(k2_algebra::<S>());
    let a = alg.basis().clone();
    let c = Arc::new(basis(&[("c", 0)]));
    RetractData::new(
        alg,
        c.clone(),
        map(&a, &a, -1, vec![(1, e(2))]),
        LinearMap::zero(c.clone(), c.clone(), -1),
        map(&c, &a, 0, vec![(0, e(0))]),
        map(&a, &c, 0, vec![(0, e(0))]),
        map(&a, &a, 1, vec![(2, e::<S>(1).scaled(&from_i64(sign)))]),
    )
    .expect("K2 shapes are consistent")
}

/// Retract of `K2` onto the span of `c`: `∂b = a`, `i` the inclusion, `I`
/// the projection killing `a` and `b`, and `s(a) = -b`.
pub fn k2_retract<S: Scalar>() -> RetractData<S> {
    k2_with_homotopy(-1)
}

/// `K2` with `s(a) = b`, which breaks `∂s + s∂ = i∘I - id` at both `b` and `a`.
pub fn k2_retract_corrupted<S: Scalar>() -> RetractData<S> {
    k2_with_homotopy(1)
}

/// `c0`, `b` in degree 0 and `c1`, `a` in degree -1 with `c0·c0 = b` and
/// `∂c0 = c1`, `∂b = a`.
pub fn k4_algebra<S: Scalar>() -> Algebra<S> {
    Algebra::from_products(
        basis(&[("c0", 0), ("c1", -1), ("b", 0), ("a", -1)]),
        [(0, 0, e(2))],
    )
    .expect("K4 algebra is valid")
}

/// The differential of [`k4_algebra`].
pub fn k4_differential<S: Scalar>(alg: &Algebra<S>) -> LinearMap<S> {
    let b = alg.basis();
    map(b, b, -1, vec![(0, e(1)), (2, e(3))])
}

/// Retract of `K4` onto `C = span{c0, c1}` with `∂_C c0 = c1` and `s(a) = -b`.
pub fn k4_retract<S: Scalar>() -> RetractData<S> {
    let alg = Arc::new(k4_algebra::<S>());
    let a = alg.basis().clone();
    let c = Arc::new(basis(&[("c0", 0), ("c1", -1)]));
    RetractData::new(
        alg.clone(),
        c.clone(),
        k4_differential(&alg),
        map(&c, &c, -1, vec![(0, e(1))]),
        map(&c, &a, 0, vec![(0, e(0)), (1, e(1))]),
        map(&a, &c, 0, vec![(0, e(0)), (1, e(1))]),
        map(&a, &a, 1, vec![(3, e::<S>(2).scaled(&from_i64(-1)))]),
    )
    .expect("K4 shapes are consistent")
}

/// `K4` retracted onto itself: `i = I = id`, `s = 0`.
pub fn trivial_retract<S: Scalar>() -> RetractData<S> {
    let alg = Arc::new(k4_algebra::<S>());
    let a = alg.basis().clone();
    let d = k4_differential(&alg);
    RetractData::new(
        alg,
        a.clone(),
        d.clone(),
        d,
        LinearMap::identity(a.clone()),
        LinearMap::identity(a.clone()),
        LinearMap::zero(a.clone(), a, 1),
    )
    .expect("trivial retract shapes are consistent")
}

/// A chain map between two dg algebras on the same graded space that is not
/// an algebra map.
pub struct ChainMapFixture<S> {
    pub source: Algebra<S>,
    pub source_differential: LinearMap<S>,
    pub target: Algebra<S>,
    pub target_differential: LinearMap<S>,
    pub map: LinearMap<S>,
}

/// Source `K4`; target with `c0·c0 = c0`, `c0·c1 = c1` and the same
/// differential; `f(c0) = c0 + b`, `f(c1) = c1 + a`, `f = id` on `b`, `a`.
pub fn chain_map_fixture<S: Scalar>() -> ChainMapFixture<S> {
    let source = k4_algebra::<S>();
    let source_differential = k4_differential(&source);
    let target = Algebra::from_products(
        basis(&[("c0", 0), ("c1", -1), ("b", 0), ("a", -1)]),
        [(0, 0, e(0)), (0, 1, e(1))],
    )
    .expect("target algebra is valid");
    let target_differential = k4_differential(&target);
    let plus = |i: usize, j: usize| e::<S>(i).plus(&e(j));
    let f = map(
        source.basis(),
        target.basis(),
        0,
        vec![(0, plus(0, 2)), (1, plus(1, 3)), (2, e(2)), (3, e(3))],
    );
    ChainMapFixture {
        source,
        source_differential,
        target,
        target_differential,
        map: f,
    }
}
