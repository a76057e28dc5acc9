//! Finite-dimensional graded commutative algebras given by structure
//! constants, their elements, and linear maps between them.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linsolve::{self, SparseRow};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Self {
            name: name.into(),
            degree,
        }
    }
}

#[inline]
pub(crate) fn is_odd(degree: i64) -> bool {
    degree.rem_euclid(2) == 1
}

/// An ordered list of named, integer-graded basis elements.
///
/// This is all a chain complex or the underlying space of an algebra needs;
/// the symmetric coalgebra on it depends on nothing else.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedBasis {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for GradedBasis {}

impl GradedBasis {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.name.is_empty() {
                return Err(Error::Schema("generator names must be nonempty".into()));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Self { generators, index })
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_pairs(pairs: &[(&str, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(n, d)| Generator::new(n, d)).collect())
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.generators[i].degree
    }

    pub fn is_odd(&self, i: usize) -> bool {
        is_odd(self.generators[i].degree)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i].name
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                dim: self.len(),
            })
        }
    }

    /// Indices of all generators of the given degree.
    pub fn of_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.generators[i].degree == degree)
            .collect()
    }
}

/// A sparse element of a graded vector space: generator index -> coefficient.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S> {
    terms: BTreeMap<usize, S>,
}

impl<S: Scalar> Default for Vector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Vector<S> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.add_term(i, S::one());
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, S)>) -> Self {
        let mut v = Self::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize) -> S {
        self.terms.get(&i).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn add_term(&mut self, i: usize, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(slot) => {
                let sum = slot.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&i);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(i, c);
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &S, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.terms {
            self.add_term(i, c.clone() * x.clone());
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&S::one(), other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&-S::one(), other);
        out
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Checks every index against `basis`.
    pub fn check_in(&self, basis: &GradedBasis) -> Result<()> {
        match self.max_index() {
            Some(i) => basis.check_index(i),
            None => Ok(()),
        }
    }

    /// `true` when every term has the given degree (vacuously for zero).
    pub fn is_homogeneous_of(&self, basis: &GradedBasis, degree: i64) -> bool {
        self.terms.keys().all(|&i| basis.degree(i) == degree)
    }
}

/// A graded commutative associative algebra over `S`, not necessarily unital.
#[derive(Debug, Clone, PartialEq)]
pub struct Algebra<S> {
    basis: Arc<GradedBasis>,
    table: Vec<Vec<Vector<S>>>,
}

impl<S: Scalar> Algebra<S> {
    /// Builds and validates an algebra from a full `dim x dim` product table.
    ///
    /// Checks homogeneity of every entry, graded commutativity on basis pairs
    /// and associativity on all basis triples.
    pub fn new(basis: GradedBasis, table: Vec<Vec<Vector<S>>>) -> Result<Self> {
        let basis = Arc::new(basis);
        let n = basis.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Schema(format!("product table must be {n} x {n}")));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                v.check_in(&basis)?;
                let expected = basis.degree(i) + basis.degree(j);
                if !v.is_homogeneous_of(&basis, expected) {
                    return Err(Error::NonHomogeneousProduct {
                        left: basis.name(i).into(),
                        right: basis.name(j).into(),
                        expected,
                    });
                }
            }
        }
        let alg = Self { basis, table };
        alg.check_commutativity()?;
        alg.check_associativity()?;
        Ok(alg)
    }

    /// Builds an algebra from a sparse list of stated products. A pair that is
    /// not stated takes the graded-commutative reflection of its mirror if
    /// that is stated, and zero otherwise.
    pub fn from_products(
        basis: GradedBasis,
        products: impl IntoIterator<Item = (usize, usize, Vector<S>)>,
    ) -> Result<Self> {
        let n = basis.len();
        let mut stated: BTreeMap<(usize, usize), Vector<S>> = BTreeMap::new();
        for (i, j, v) in products {
            basis.check_index(i)?;
            basis.check_index(j)?;
            if stated.insert((i, j), v).is_some() {
                return Err(Error::Schema(format!(
                    "product {}*{} stated twice",
                    basis.name(i),
                    basis.name(j)
                )));
            }
        }
        let mut table = vec![vec![Vector::zero(); n]; n];
        for (&(i, j), v) in &stated {
            table[i][j] = v.clone();
            if !stated.contains_key(&(j, i)) {
                let sign = if basis.is_odd(i) && basis.is_odd(j) {
                    -S::one()
                } else {
                    S::one()
                };
                table[j][i] = v.scaled(&sign);
            }
        }
        Self::new(basis, table)
    }

    fn check_commutativity(&self) -> Result<()> {
        let b = &self.basis;
        for i in 0..b.len() {
            for j in i..b.len() {
                let sign = if b.is_odd(i) && b.is_odd(j) {
                    -S::one()
                } else {
                    S::one()
                };
                if self.table[i][j] != self.table[j][i].scaled(&sign) {
                    return Err(Error::Commutativity {
                        left: b.name(i).into(),
                        right: b.name(j).into(),
                        left_index: i,
                        right_index: j,
                    });
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.basis.len();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let left = self.mul_vec_basis(ij, k);
                    let right = self.mul_basis_vec(i, &self.table[j][k]);
                    if left != right {
                        return Err(Error::Associativity(
                            self.basis.name(i).into(),
                            self.basis.name(j).into(),
                            self.basis.name(k).into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The structure constant vector `x_i * x_j`.
    pub fn product_of(&self, i: usize, j: usize) -> &Vector<S> {
        &self.table[i][j]
    }

    fn mul_vec_basis(&self, u: &Vector<S>, k: usize) -> Vector<S> {
        let mut out = Vector::zero();
        for (i, c) in u.iter() {
            out.add_scaled(c, &self.table[i][k]);
        }
        out
    }

    fn mul_basis_vec(&self, i: usize, v: &Vector<S>) -> Vector<S> {
        let mut out = Vector::zero();
        for (k, c) in v.iter() {
            out.add_scaled(c, &self.table[i][k]);
        }
        out
    }

    /// Product of two elements, assuming their indices are valid.
    pub(crate) fn mul(&self, u: &Vector<S>, v: &Vector<S>) -> Vector<S> {
        let mut out = Vector::zero();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out.add_scaled(&(a.clone() * b.clone()), &self.table[i][j]);
            }
        }
        out
    }

    /// Transports the structure to a new basis. `new_basis[i]` expresses the
    /// `i`-th new generator in the current basis; it must be homogeneous of
    /// the degree of the `i`-th current generator, and the vectors must be
    /// linearly independent. Generator names are kept.
    pub fn change_basis(&self, new_basis: &[Vector<S>]) -> Result<Self> {
        let n = self.dim();
        if new_basis.len() != n {
            return Err(Error::Schema(format!("change of basis needs {n} vectors")));
        }
        for (i, v) in new_basis.iter().enumerate() {
            v.check_in(&self.basis)?;
            if !v.is_homogeneous_of(&self.basis, self.basis.degree(i)) || v.is_zero() {
                return Err(Error::NonHomogeneousMap {
                    generator: self.basis.name(i).into(),
                    expected: self.basis.degree(i),
                });
            }
        }
        // rows of P: old coordinate k as a combination of the new unknowns
        let rows: Vec<(SparseRow<S>, S)> = (0..n)
            .map(|k| {
                let row = (0..n)
                    .filter_map(|i| {
                        let c = new_basis[i].coeff(k);
                        (!c.is_zero()).then_some((i, c))
                    })
                    .collect();
                (row, S::zero())
            })
            .collect();
        // columns of P⁻¹: old generator k in new coordinates
        let mut inverse = Vec::with_capacity(n);
        for k in 0..n {
            let mut system = rows.clone();
            system[k].1 = S::one();
            let y = linsolve::solve(&system, n)
                .ok_or_else(|| Error::Schema("change of basis is singular".into()))?;
            inverse.push(Vector::from_terms(y.into_iter().enumerate()));
        }
        let to_new = |v: &Vector<S>| {
            let mut out = Vector::zero();
            for (k, c) in v.iter() {
                out.add_scaled(c, &inverse[k]);
            }
            out
        };
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| to_new(&self.mul(&new_basis[i], &new_basis[j])))
                    .collect()
            })
            .collect();
        Self::new((*self.basis).clone(), table)
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, u: &Vector<S>, v: &Vector<S>) -> Result<Vector<S>> {
        u.check_in(&self.basis)?;
        v.check_in(&self.basis)?;
        Ok(self.mul(u, v))
    }
}

/// A homogeneous linear map between graded vector spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap<S> {
    source: Arc<GradedBasis>,
    target: Arc<GradedBasis>,
    degree: i64,
    columns: BTreeMap<usize, Vector<S>>,
}

impl<S: Scalar> LinearMap<S> {
    /// Builds a map from its nonzero columns, checking that each column is
    /// homogeneous of degree `deg(source generator) + degree`.
    pub fn new(
        source: Arc<GradedBasis>,
        target: Arc<GradedBasis>,
        degree: i64,
        columns: impl IntoIterator<Item = (usize, Vector<S>)>,
    ) -> Result<Self> {
        let mut cols = BTreeMap::new();
        for (i, v) in columns {
            source.check_index(i)?;
            v.check_in(&target)?;
            let expected = source.degree(i) + degree;
            if !v.is_homogeneous_of(&target, expected) {
                return Err(Error::NonHomogeneousMap {
                    generator: source.name(i).into(),
                    expected,
                });
            }
            if !v.is_zero() {
                cols.insert(i, v);
            }
        }
        Ok(Self {
            source,
            target,
            degree,
            columns: cols,
        })
    }

    pub fn zero(source: Arc<GradedBasis>, target: Arc<GradedBasis>, degree: i64) -> Self {
        Self {
            source,
            target,
            degree,
            columns: BTreeMap::new(),
        }
    }

    pub fn identity(basis: Arc<GradedBasis>) -> Self {
        let columns = (0..basis.len()).map(|i| (i, Vector::basis(i))).collect();
        Self {
            source: basis.clone(),
            target: basis,
            degree: 0,
            columns,
        }
    }

    pub fn source(&self) -> &Arc<GradedBasis> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedBasis> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Image of the `i`-th source generator.
    pub fn column(&self, i: usize) -> Vector<S> {
        self.columns.get(&i).cloned().unwrap_or_default()
    }

    pub fn columns(&self) -> impl Iterator<Item = (usize, &Vector<S>)> {
        self.columns.iter().map(|(&i, v)| (i, v))
    }

    pub(crate) fn apply_unchecked(&self, v: &Vector<S>) -> Vector<S> {
        let mut out = Vector::zero();
        for (i, c) in v.iter() {
            if let Some(col) = self.columns.get(&i) {
                out.add_scaled(c, col);
            }
        }
        out
    }

    /// Matrix-vector action.
    pub fn apply(&self, v: &Vector<S>) -> Result<Vector<S>> {
        v.check_in(&self.source)
            .map_err(|_| Error::Mismatch("vector is not over the map's source".into()))?;
        Ok(self.apply_unchecked(v))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearMap<S>) -> Result<LinearMap<S>> {
        if other.target != self.source {
            return Err(Error::Mismatch("composition of incompatible maps".into()));
        }
        let columns = other
            .columns
            .iter()
            .map(|(&i, v)| (i, self.apply_unchecked(v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(LinearMap {
            source: other.source.clone(),
            target: self.target.clone(),
            degree: self.degree + other.degree,
            columns,
        })
    }

    /// `self + c * other`; the degrees must agree unless one side is zero.
    pub fn add_scaled(&self, c: &S, other: &LinearMap<S>) -> Result<LinearMap<S>> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Mismatch("sum of maps with different shapes".into()));
        }
        let degree = if self.columns.is_empty() {
            other.degree
        } else if other.columns.is_empty() || self.degree == other.degree {
            self.degree
        } else {
            return Err(Error::Mismatch(format!(
                "sum of maps of degrees {} and {}",
                self.degree, other.degree
            )));
        };
        let mut columns = self.columns.clone();
        for (&i, v) in &other.columns {
            let col = columns.entry(i).or_insert_with(Vector::zero);
            col.add_scaled(c, v);
            if col.is_zero() {
                columns.remove(&i);
            }
        }
        Ok(LinearMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree,
            columns,
        })
    }

    pub fn scaled(&self, c: &S) -> LinearMap<S> {
        let columns = self
            .columns
            .iter()
            .map(|(&i, v)| (i, v.scaled(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        LinearMap {
            columns,
            ..self.clone()
        }
    }

    /// Graded commutator `[a, b] = a∘b - (-1)^{|a||b|} b∘a` of endomorphisms.
    pub fn commutator(a: &LinearMap<S>, b: &LinearMap<S>) -> Result<LinearMap<S>> {
        let ab = a.compose(b)?;
        let ba = b.compose(a)?;
        let sign: S = if is_odd(a.degree) && is_odd(b.degree) {
            S::one()
        } else {
            -S::one()
        };
        ab.add_scaled(&sign, &ba)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    /// First source generator on which `self` and `other` differ.
    pub fn first_difference(&self, other: &LinearMap<S>) -> Option<usize> {
        (0..self.source.len()).find(|&i| self.column(i) != other.column(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn change_of_basis_keeps_the_structure() {
        let e2 = fixtures::exterior_e2::<Rational>();
        // a' = a + b, b' = 2b - a, g' = 3g: a'b' = 2g + g = 3g = g'
        let new = vec![
            Vector::from_terms([(0, q(1)), (1, q(1))]),
            Vector::from_terms([(0, q(-1)), (1, q(2))]),
            Vector::from_terms([(2, q(3))]),
        ];
        let moved = e2.change_basis(&new).unwrap();
        assert_eq!(moved.product_of(0, 1), &Vector::basis(2));
        assert!(moved.product_of(0, 0).is_zero());
        let singular = vec![new[0].clone(), new[0].clone(), new[2].clone()];
        assert!(e2.change_basis(&singular).is_err());
        let mixed = vec![
            Vector::from_terms([(0, q(1)), (2, q(1))]),
            new[1].clone(),
            new[2].clone(),
        ];
        assert!(e2.change_basis(&mixed).is_err());
    }

    #[test]
    fn e2_products() {
        let e2 = fixtures::exterior_e2::<Rational>();
        let b = e2.basis().clone();
        let (a, bb, g) = (
            b.index_of("a").unwrap(),
            b.index_of("b").unwrap(),
            b.index_of("g").unwrap(),
        );
        let va = Vector::basis(a);
        let vb = Vector::basis(bb);
        assert_eq!(e2.multiply(&va, &vb).unwrap(), Vector::basis(g));
        assert_eq!(e2.multiply(&vb, &va).unwrap(), Vector::basis(g).scaled(&q(-1)));
        assert!(e2.multiply(&va, &va).unwrap().is_zero());
        assert!(e2.multiply(&va, &Vector::zero()).unwrap().is_zero());
    }

    #[test]
    fn p8_products() {
        let p8 = fixtures::truncated_polynomial::<Rational>(8);
        let x1 = Vector::basis(0);
        assert_eq!(p8.multiply(&x1, &x1).unwrap(), Vector::basis(1));
        // x^3 * x^5 = x^8, x^4 * x^5 = 0
        assert_eq!(
            p8.multiply(&Vector::basis(2), &Vector::basis(4)).unwrap(),
            Vector::basis(7)
        );
        assert!(p8
            .multiply(&Vector::basis(3), &Vector::basis(4))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn multiply_rejects_bad_index() {
        let p8 = fixtures::truncated_polynomial::<Rational>(8);
        let err = p8.multiply(&Vector::basis(8), &Vector::basis(0));
        assert!(matches!(err, Err(Error::IndexOutOfRange { index: 8, dim: 8 })));
    }

    #[test]
    fn corrupted_commutativity_names_the_pair() {
        let basis = GradedBasis::from_pairs(&[("g", 2), ("a", 1), ("b", 1)]).unwrap();
        // a*b = g and b*a = g: violates anticommutativity of odd elements
        let products = vec![(1, 2, Vector::<Rational>::basis(0)), (2, 1, Vector::basis(0))];
        match Algebra::from_products(basis, products) {
            Err(Error::Commutativity {
                left_index,
                right_index,
                ..
            }) => assert_eq!((left_index, right_index), (1, 2)),
            other => panic!("expected commutativity error, got {other:?}"),
        }
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // x*x = y, x*y = x, y*y = 0: (xx)x = yx = x but x(xx) = xy = x; (xx)y = 0 vs x(xy) = y
        let basis = GradedBasis::from_pairs(&[("x", 0), ("y", 0)]).unwrap();
        let products = vec![(0, 0, Vector::<Rational>::basis(1)), (0, 1, Vector::basis(0))];
        assert!(matches!(
            Algebra::from_products(basis, products),
            Err(Error::Associativity(..))
        ));
    }

    #[test]
    fn non_homogeneous_product_is_rejected() {
        let basis = GradedBasis::from_pairs(&[("x", 1), ("y", 1)]).unwrap();
        let products = vec![(0, 1, Vector::<Rational>::basis(0))];
        assert!(matches!(
            Algebra::from_products(basis, products),
            Err(Error::NonHomogeneousProduct { .. })
        ));
    }

    #[test]
    fn apply_identity_zero_and_expectation() {
        let p8 = fixtures::truncated_polynomial::<Rational>(8);
        let v = Vector::from_terms([(0, q(3)), (4, q(-2))]);
        let id = LinearMap::identity(p8.basis().clone());
        assert_eq!(id.apply(&v).unwrap(), v);
        let zero = LinearMap::zero(p8.basis().clone(), p8.basis().clone(), 0);
        assert!(zero.apply(&v).unwrap().is_zero());

        let point = fixtures::point_algebra::<Rational>();
        let half = Rational::new(1.into(), 2.into());
        let f = fixtures::expectation_map(&p8, &point, &vec![half.clone(); 8]).unwrap();
        assert_eq!(
            f.apply(&Vector::basis(2)).unwrap(),
            Vector::basis(0).scaled(&half)
        );
    }

    #[test]
    fn apply_rejects_foreign_vector() {
        let point = fixtures::point_algebra::<Rational>();
        let id = LinearMap::<Rational>::identity(point.basis().clone());
        assert!(matches!(id.apply(&Vector::basis(3)), Err(Error::Mismatch(_))));
    }

    #[test]
    fn map_columns_must_be_homogeneous() {
        let b = Arc::new(GradedBasis::from_pairs(&[("a", 0), ("b", 1)]).unwrap());
        let bad = LinearMap::new(b.clone(), b.clone(), 0, [(0, Vector::<Rational>::basis(1))]);
        assert!(matches!(bad, Err(Error::NonHomogeneousMap { .. })));
        let good = LinearMap::new(b.clone(), b, 1, [(0, Vector::<Rational>::basis(1))]);
        assert!(good.is_ok());
    }

    #[test]
    fn commutator_of_odd_maps_is_anticommutator() {
        let b = Arc::new(GradedBasis::from_pairs(&[("u", 0), ("v", -1), ("w", -2)]).unwrap());
        let d = LinearMap::new(
            b.clone(),
            b.clone(),
            -1,
            [(0, Vector::<Rational>::basis(1)), (1, Vector::basis(2))],
        )
        .unwrap();
        let c = LinearMap::commutator(&d, &d).unwrap();
        assert_eq!(c, d.compose(&d).unwrap().scaled(&q(2)));
    }
}
