//! The symmetric coalgebra `SA = A ⊕ ∧²A ⊕ ...` truncated at a weight cap.
//!
//! Elements are sparse combinations of canonical wedge monomials (sorted
//! generator indices, no repeated odd factor). The reduced coproduct splits a
//! monomial along every ordered pair of complementary nonempty subsets of its
//! factor positions, with the Koszul sign of moving the first subset to the
//! front.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{GradedBasis, Vector};
use crate::error::{Error, Result};
use crate::partition::{mask_positions, permutations, set_partitions_into};
use crate::scalar::{apply_sign, signed, Scalar};

/// Default weight cap.
pub const DEFAULT_WEIGHT_CAP: usize = 6;

/// A canonical wedge monomial `x_{i1} ∧ ... ∧ x_{in}` with `i1 <= ... <= in`.
///
/// Ordered by weight first, then lexicographically by factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WedgeMonomial {
    factors: Vec<usize>,
    degree: i64,
}

impl Ord for WedgeMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.factors
            .len()
            .cmp(&other.factors.len())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for WedgeMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl WedgeMonomial {
    /// Validates a factor list that is already in canonical order.
    pub fn new(basis: &GradedBasis, factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Schema("wedge monomials have weight >= 1".into()));
        }
        for &f in &factors {
            basis.check_index(f)?;
        }
        for w in factors.windows(2) {
            if w[0] > w[1] {
                return Err(Error::Schema(format!(
                    "factors {:?} are not in canonical order",
                    factors
                )));
            }
            if w[0] == w[1] && basis.is_odd(w[0]) {
                return Err(Error::VanishingMonomial(
                    Self::unchecked(basis, factors.clone()).display(basis),
                ));
            }
        }
        Ok(Self::unchecked(basis, factors))
    }

    pub(crate) fn unchecked(basis: &GradedBasis, factors: Vec<usize>) -> Self {
        let degree = factors.iter().map(|&f| basis.degree(f)).sum();
        Self { factors, degree }
    }

    pub fn generator(basis: &GradedBasis, i: usize) -> Self {
        Self::unchecked(basis, vec![i])
    }

    pub fn weight(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// The sub-monomial on the given (increasing) factor positions.
    pub(crate) fn select(&self, basis: &GradedBasis, positions: &[usize]) -> Self {
        Self::unchecked(basis, positions.iter().map(|&p| self.factors[p]).collect())
    }

    pub fn names(&self, basis: &GradedBasis) -> Vec<String> {
        self.factors.iter().map(|&f| basis.name(f).to_string()).collect()
    }

    /// Human-readable form such as `a∧b∧g`.
    pub fn display(&self, basis: &GradedBasis) -> String {
        self.names(basis).join("∧")
    }

    pub(crate) fn odd_flags(&self, basis: &GradedBasis) -> Vec<bool> {
        self.factors.iter().map(|&f| basis.is_odd(f)).collect()
    }
}

/// Parity of the Koszul sign of a rearrangement: `order[k]` is the original
/// position that lands at slot `k`, and `odd[p]` flags odd-degree positions.
pub(crate) fn rearrangement_is_odd(odd: &[bool], order: &[usize]) -> bool {
    let mut parity = false;
    for a in 0..order.len() {
        if !odd[order[a]] {
            continue;
        }
        for &later in &order[a + 1..] {
            if later < order[a] && odd[later] {
                parity = !parity;
            }
        }
    }
    parity
}

/// Koszul sign of a permutation of graded elements.
///
/// `permutation[k]` is the original position placed at slot `k`. The result
/// `ε` satisfies `x_0 ∧ ... ∧ x_{n-1} = ε · x_{π(0)} ∧ ... ∧ x_{π(n-1)}`: one
/// factor `(-1)^{deg_p · deg_q}` for every pair of positions whose relative
/// order is inverted.
pub fn koszul_sign<S: Scalar>(degrees: &[i64], permutation: &[usize]) -> Result<S> {
    let n = degrees.len();
    let mut seen = vec![false; n];
    if permutation.len() != n {
        return Err(Error::MalformedPermutation(permutation.to_vec()));
    }
    for &p in permutation {
        if p >= n || seen[p] {
            return Err(Error::MalformedPermutation(permutation.to_vec()));
        }
        seen[p] = true;
    }
    let odd: Vec<bool> = degrees.iter().map(|&d| crate::algebra::is_odd(d)).collect();
    Ok(signed(rearrangement_is_odd(&odd, permutation)))
}

/// Sorts a factor list, returning the sorted list and whether the Koszul sign
/// is negative, or `None` when a repeated odd factor kills the monomial.
pub(crate) fn normalize_factors(basis: &GradedBasis, factors: &[usize]) -> Option<(Vec<usize>, bool)> {
    if factors.is_empty() {
        return None;
    }
    let mut negative = false;
    for a in 0..factors.len() {
        if !basis.is_odd(factors[a]) {
            continue;
        }
        for &later in &factors[a + 1..] {
            if later < factors[a] && basis.is_odd(later) {
                negative = !negative;
            }
        }
    }
    let mut sorted = factors.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] && basis.is_odd(w[0]) {
            return None;
        }
    }
    Some((sorted, negative))
}

/// Brings a factor list into canonical order.
///
/// Returns the canonical monomial and the accumulated Koszul sign, or `None`
/// when an odd generator repeats (the wedge product is zero).
pub fn normalize_monomial<S: Scalar>(
    basis: &GradedBasis,
    factors: &[usize],
) -> Result<Option<(WedgeMonomial, S)>> {
    for &f in factors {
        basis.check_index(f)?;
    }
    Ok(normalize_factors(basis, factors)
        .map(|(sorted, neg)| (WedgeMonomial::unchecked(basis, sorted), signed(neg))))
}

/// All canonical monomials of weight exactly `n`.
pub fn canonical_monomials(basis: &GradedBasis, n: usize) -> Vec<WedgeMonomial> {
    fn extend(basis: &GradedBasis, n: usize, current: &mut Vec<usize>, out: &mut Vec<WedgeMonomial>) {
        if current.len() == n {
            out.push(WedgeMonomial::unchecked(basis, current.clone()));
            return;
        }
        let start = match current.last() {
            Some(&last) if basis.is_odd(last) => last + 1,
            Some(&last) => last,
            None => 0,
        };
        for i in start..basis.len() {
            current.push(i);
            extend(basis, n, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        extend(basis, n, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// All canonical monomials of weight `1..=cap`, in canonical order.
pub fn canonical_monomials_up_to(basis: &GradedBasis, cap: usize) -> Vec<WedgeMonomial> {
    (1..=cap).flat_map(|n| canonical_monomials(basis, n)).collect()
}

/// An element of `SA` truncated at weight `cap`.
///
/// Terms of weight above the cap are dropped on insertion and the drop is
/// recorded in the overflow flag.
#[derive(Debug, Clone, PartialEq)]
pub struct SElement<S> {
    basis: Arc<GradedBasis>,
    cap: usize,
    terms: BTreeMap<WedgeMonomial, S>,
    overflow: bool,
}

impl<S: Scalar> SElement<S> {
    pub fn zero(basis: Arc<GradedBasis>, cap: usize) -> Self {
        Self {
            basis,
            cap,
            terms: BTreeMap::new(),
            overflow: false,
        }
    }

    pub fn from_monomial(basis: Arc<GradedBasis>, cap: usize, m: WedgeMonomial) -> Self {
        let mut out = Self::zero(basis, cap);
        out.add_term(m, S::one());
        out
    }

    /// `coeff · x_{f1} ∧ ... ∧ x_{fn}` for an arbitrary factor order.
    pub fn from_factors(basis: Arc<GradedBasis>, cap: usize, factors: &[usize], coeff: S) -> Result<Self> {
        for &f in factors {
            basis.check_index(f)?;
        }
        let mut out = Self::zero(basis, cap);
        out.add_factors(factors, coeff);
        Ok(out)
    }

    /// A weight-one element.
    pub fn from_vector(basis: Arc<GradedBasis>, cap: usize, v: &Vector<S>) -> Self {
        let mut out = Self::zero(basis, cap);
        for (i, c) in v.iter() {
            let m = WedgeMonomial::generator(&out.basis, i);
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn overflow(&self) -> bool {
        self.overflow
    }

    pub(crate) fn mark_overflow(&mut self) {
        self.overflow = true;
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

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeMonomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &WedgeMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Highest weight present, 0 for the zero element.
    pub fn max_weight(&self) -> usize {
        self.terms.keys().next_back().map_or(0, |m| m.weight())
    }

    /// Lowest weight present, 0 for the zero element.
    pub fn min_weight(&self) -> usize {
        self.terms.keys().next().map_or(0, |m| m.weight())
    }

    pub fn add_term(&mut self, m: WedgeMonomial, c: S) {
        if c.is_zero() {
            return;
        }
        if m.weight() > self.cap {
            self.overflow = true;
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let sum = slot.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Adds `c · x_{f1} ∧ ... ∧ x_{fn}` after normalizing the factor order.
    pub(crate) fn add_factors(&mut self, factors: &[usize], c: S) {
        if c.is_zero() {
            return;
        }
        if factors.len() > self.cap {
            self.overflow = true;
            return;
        }
        if let Some((sorted, neg)) = normalize_factors(&self.basis, factors) {
            let m = WedgeMonomial::unchecked(&self.basis, sorted);
            self.add_term(m, apply_sign(neg, c));
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, c: &S, other: &SElement<S>) {
        self.overflow |= other.overflow;
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c.clone() * x.clone());
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut out = Self::zero(self.basis.clone(), self.cap);
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

    /// Same terms, without the overflow flag. Used when comparing results.
    pub fn same_terms(&self, other: &Self) -> bool {
        self.terms == other.terms
    }

    /// The `∧ⁿA` component.
    pub fn weight_project(&self, n: usize) -> Self {
        let mut out = Self::zero(self.basis.clone(), self.cap);
        out.overflow = self.overflow;
        for (m, c) in &self.terms {
            if m.weight() == n {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// The weight-one component as a vector of the underlying space.
    pub fn linear_part(&self) -> Vector<S> {
        Vector::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.weight() == 1)
                .map(|(m, c)| (m.factors[0], c.clone())),
        )
    }

    /// Graded-commutative product `self ∧ other`; terms over the cap are
    /// dropped and flagged.
    pub fn wedge(&self, other: &SElement<S>) -> Result<SElement<S>> {
        if self.basis != other.basis || self.cap != other.cap {
            return Err(Error::Mismatch("wedge of elements of different SA".into()));
        }
        let mut out = Self::zero(self.basis.clone(), self.cap);
        out.overflow = self.overflow || other.overflow;
        let mut factors = Vec::new();
        for (l, a) in &self.terms {
            for (r, b) in &other.terms {
                factors.clear();
                factors.extend_from_slice(&l.factors);
                factors.extend_from_slice(&r.factors);
                out.add_factors(&factors, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    /// Degree of every term if they all agree.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(|m| m.degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn display(&self) -> String
    where
        S: fmt::Display,
    {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({c})·{}", m.display(&self.basis)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Reduced coproduct extended linearly.
    pub fn coproduct(&self) -> TensorSum<S> {
        let mut out = TensorSum::new(self.basis.clone(), 2);
        for (m, c) in &self.terms {
            out.add_scaled(c, &coproduct(&self.basis, m));
        }
        out
    }
}

/// A formal sum of `k`-fold tensors of canonical monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorSum<S> {
    basis: Arc<GradedBasis>,
    arity: usize,
    terms: BTreeMap<Vec<WedgeMonomial>, S>,
}

/// The codomain of the reduced coproduct.
pub type TensorPairSum<S> = TensorSum<S>;

impl<S: Scalar> TensorSum<S> {
    pub fn new(basis: Arc<GradedBasis>, arity: usize) -> Self {
        Self {
            basis,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
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

    pub fn terms(&self) -> impl Iterator<Item = (&[WedgeMonomial], &S)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn coeff(&self, key: &[WedgeMonomial]) -> S {
        self.terms.get(key).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, key: Vec<WedgeMonomial>, c: S) {
        debug_assert_eq!(key.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                let sum = slot.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &S, other: &TensorSum<S>) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_term(k.clone(), c.clone() * x.clone());
        }
    }

    /// Adds `c · u ⊗ v` expanded bilinearly (arity 2 only).
    pub fn add_tensor(&mut self, c: &S, u: &SElement<S>, v: &SElement<S>) {
        debug_assert_eq!(self.arity, 2);
        for (l, a) in &u.terms {
            for (r, b) in &v.terms {
                self.add_term(vec![l.clone(), r.clone()], c.clone() * a.clone() * b.clone());
            }
        }
    }

    /// The signed flip `u ⊗ v ↦ (-1)^{|u||v|} v ⊗ u` (arity 2 only).
    pub fn flip(&self) -> TensorSum<S> {
        assert_eq!(self.arity, 2, "flip is defined on pair sums");
        let mut out = TensorSum::new(self.basis.clone(), 2);
        for (k, c) in &self.terms {
            let neg = crate::algebra::is_odd(k[0].degree) && crate::algebra::is_odd(k[1].degree);
            out.add_term(vec![k[1].clone(), k[0].clone()], apply_sign(neg, c.clone()));
        }
        out
    }

    /// Human-readable form.
    pub fn display(&self) -> String
    where
        S: fmt::Display,
    {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, c)| {
                let parts: Vec<String> = k.iter().map(|m| m.display(&self.basis)).collect();
                format!("({c})·{}", parts.join(" ⊗ "))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Reduced coproduct of a canonical monomial: the sum over ordered pairs of
/// complementary nonempty position subsets, signed by moving the first
/// subset to the front. Weight-one monomials map to zero.
pub fn coproduct<S: Scalar>(basis: &Arc<GradedBasis>, w: &WedgeMonomial) -> TensorPairSum<S> {
    let n = w.weight();
    let mut out = TensorSum::new(basis.clone(), 2);
    if n < 2 {
        return out;
    }
    let odd = w.odd_flags(basis);
    let full: u32 = (1u32 << n) - 1;
    let mut order = Vec::with_capacity(n);
    for mask in 1..full {
        let left = mask_positions(mask, n);
        let right = mask_positions(full & !mask, n);
        order.clear();
        order.extend_from_slice(&left);
        order.extend_from_slice(&right);
        let neg = rearrangement_is_odd(&odd, &order);
        out.add_term(vec![w.select(basis, &left), w.select(basis, &right)], signed(neg));
    }
    out
}

/// The iterate `Δ^{k-1}(w)` as a sum of `k`-tuples: one term for every
/// ordered decomposition of the factor positions into `k` nonempty blocks.
pub fn iterated_coproduct<S: Scalar>(
    basis: &Arc<GradedBasis>,
    w: &WedgeMonomial,
    k: usize,
) -> Result<TensorSum<S>> {
    let n = w.weight();
    if k == 0 || k > n {
        return Err(Error::OutOfRange {
            what: "coproduct iterate",
            value: k,
            range: format!("1..={n}"),
        });
    }
    let odd = w.odd_flags(basis);
    let mut out = TensorSum::new(basis.clone(), k);
    let orders = permutations(k);
    let mut order = Vec::with_capacity(n);
    for partition in set_partitions_into(n, k) {
        for perm in &orders {
            order.clear();
            for &b in perm {
                order.extend_from_slice(&partition[b]);
            }
            let neg = rearrangement_is_odd(&odd, &order);
            let key = perm.iter().map(|&b| w.select(basis, &partition[b])).collect();
            out.add_term(key, signed(neg));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rational;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn e2() -> (Arc<GradedBasis>, usize, usize, usize) {
        let alg = fixtures::exterior_e2::<Q>();
        let b = alg.basis().clone();
        let (a, bb, g) = (
            b.index_of("a").unwrap(),
            b.index_of("b").unwrap(),
            b.index_of("g").unwrap(),
        );
        (b, a, bb, g)
    }

    /// Sign by explicit adjacent transpositions (bubble sort on target slots).
    fn bubble_sign(degrees: &[i64], perm: &[usize]) -> Q {
        let mut seq: Vec<usize> = (0..perm.len()).collect();
        let mut target_slot = vec![0; perm.len()];
        for (slot, &p) in perm.iter().enumerate() {
            target_slot[p] = slot;
        }
        let mut sign = q(1);
        for i in 0..seq.len() {
            for j in 0..seq.len() - 1 - i {
                if target_slot[seq[j]] > target_slot[seq[j + 1]] {
                    if degrees[seq[j]].rem_euclid(2) == 1 && degrees[seq[j + 1]].rem_euclid(2) == 1 {
                        sign = -sign;
                    }
                    seq.swap(j, j + 1);
                }
            }
        }
        sign
    }

    #[test]
    fn koszul_sign_examples() {
        assert_eq!(koszul_sign::<Q>(&[1, 1], &[1, 0]).unwrap(), q(-1));
        assert_eq!(koszul_sign::<Q>(&[0, 2, 4], &[2, 0, 1]).unwrap(), q(1));
        assert_eq!(koszul_sign::<Q>(&[1, 1, 1], &[2, 1, 0]).unwrap(), q(-1));
        assert_eq!(bubble_sign(&[1, 1, 1], &[2, 1, 0]), q(-1));
        assert_eq!(koszul_sign::<Q>(&[1, 2, 1], &[2, 1, 0]).unwrap(), q(-1));
    }

    #[test]
    fn koszul_sign_matches_transposition_oracle() {
        let degree_sets: [&[i64]; 4] = [&[1, 1, 1, 1], &[1, 0, 1, 1], &[2, 1, -1, 3], &[0, 0, 1, 1]];
        for degrees in degree_sets {
            for perm in permutations(degrees.len()) {
                assert_eq!(
                    koszul_sign::<Q>(degrees, &perm).unwrap(),
                    bubble_sign(degrees, &perm),
                    "degrees {degrees:?} perm {perm:?}"
                );
            }
        }
    }

    #[test]
    fn malformed_permutations() {
        assert!(koszul_sign::<Q>(&[1, 1], &[0, 0]).is_err());
        assert!(koszul_sign::<Q>(&[1, 1], &[0]).is_err());
        assert!(koszul_sign::<Q>(&[1, 1], &[0, 2]).is_err());
    }

    #[test]
    fn normalize_examples() {
        let (b, a, bb, g) = e2();
        let (m, s) = normalize_monomial::<Q>(&b, &[bb, a]).unwrap().unwrap();
        assert_eq!(m.factors(), &[a.min(bb), a.max(bb)]);
        assert_eq!(s, q(-1));
        assert!(normalize_monomial::<Q>(&b, &[a, a]).unwrap().is_none());
        let (m, s) = normalize_monomial::<Q>(&b, &[g, g]).unwrap().unwrap();
        assert_eq!(m.factors(), &[g, g]);
        assert_eq!(s, q(1));
        assert_eq!(m.degree(), 4);
    }

    #[test]
    fn normalize_is_equivariant() {
        let basis = GradedBasis::from_pairs(&[("u", 1), ("v", 0), ("w", 1), ("z", 3), ("e", 2)]).unwrap();
        let factor_sets: [&[usize]; 4] = [&[0, 1, 2, 3], &[3, 1, 0, 4], &[1, 1, 2, 0], &[4, 0, 2, 3]];
        for factors in factor_sets {
            let base = normalize_monomial::<Q>(&basis, factors).unwrap();
            let degrees: Vec<i64> = factors.iter().map(|&f| basis.degree(f)).collect();
            for perm in permutations(factors.len()) {
                let permuted: Vec<usize> = perm.iter().map(|&p| factors[p]).collect();
                let got = normalize_monomial::<Q>(&basis, &permuted).unwrap();
                let sigma = koszul_sign::<Q>(&degrees, &perm).unwrap();
                match (&base, got) {
                    (Some((m0, s0)), Some((m1, s1))) => {
                        assert_eq!(m0, &m1);
                        assert_eq!(s1, sigma * s0.clone());
                    }
                    (None, None) => {}
                    other => panic!("mismatch {other:?}"),
                }
            }
        }
    }

    #[test]
    fn monomial_validation() {
        let (b, a, bb, g) = e2();
        assert!(WedgeMonomial::new(&b, vec![a, a]).is_err());
        assert!(WedgeMonomial::new(&b, vec![g, g, g]).is_ok());
        assert!(WedgeMonomial::new(&b, vec![bb.max(a), bb.min(a)]).is_err());
        assert!(WedgeMonomial::new(&b, vec![]).is_err());
        assert!(WedgeMonomial::new(&b, vec![7]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let (b, ..) = e2();
        // a, b odd; g even: weight 2 -> ab, ag, bg, gg
        assert_eq!(canonical_monomials(&b, 2).len(), 4);
        // weight 3 -> abg, agg, bgg, ggg
        assert_eq!(canonical_monomials(&b, 3).len(), 4);
        let p = fixtures::truncated_polynomial::<Q>(8);
        // multisets of size 5 from 8 = C(12, 5)
        assert_eq!(canonical_monomials(p.basis(), 5).len(), 792);
        let all = canonical_monomials_up_to(p.basis(), 3);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn coproduct_examples() {
        let (b, a, bb, _) = e2();
        let ma = WedgeMonomial::generator(&b, a);
        assert!(coproduct::<Q>(&b, &ma).is_zero());

        let ab = WedgeMonomial::new(&b, vec![a, bb]).unwrap();
        let d = coproduct::<Q>(&b, &ab);
        let mb = WedgeMonomial::generator(&b, bb);
        assert_eq!(d.len(), 2);
        assert_eq!(d.coeff(&[ma.clone(), mb.clone()]), q(1));
        assert_eq!(d.coeff(&[mb, ma]), q(-1));

        let basis = GradedBasis::from_pairs(&[("x", 1), ("y", 0), ("z", 1)]).unwrap();
        let basis = Arc::new(basis);
        let xyz = WedgeMonomial::new(&basis, vec![0, 1, 2]).unwrap();
        assert_eq!(coproduct::<Q>(&basis, &xyz).len(), 6);
    }

    #[test]
    fn repeated_even_factor_merges() {
        let (b, _, _, g) = e2();
        let gg = WedgeMonomial::new(&b, vec![g, g]).unwrap();
        let d = coproduct::<Q>(&b, &gg);
        let mg = WedgeMonomial::generator(&b, g);
        assert_eq!(d.len(), 1);
        assert_eq!(d.coeff(&[mg.clone(), mg]), q(2));
    }

    #[test]
    fn iterated_coproduct_extremes() {
        let basis = Arc::new(GradedBasis::from_pairs(&[("x", 1), ("y", 0), ("z", 1), ("t", 3)]).unwrap());
        let w = WedgeMonomial::new(&basis, vec![0, 1, 2, 3]).unwrap();
        let one = iterated_coproduct::<Q>(&basis, &w, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.coeff(std::slice::from_ref(&w)), q(1));

        let full = iterated_coproduct::<Q>(&basis, &w, 4).unwrap();
        assert_eq!(full.len(), 24);
        let degrees: Vec<i64> = (0..4).map(|i| basis.degree(i)).collect();
        for perm in permutations(4) {
            let key: Vec<WedgeMonomial> = perm
                .iter()
                .map(|&p| WedgeMonomial::generator(&basis, w.factors()[p]))
                .collect();
            assert_eq!(full.coeff(&key), koszul_sign::<Q>(&degrees, &perm).unwrap());
        }
        assert!(iterated_coproduct::<Q>(&basis, &w, 5).is_err());
        assert!(iterated_coproduct::<Q>(&basis, &w, 0).is_err());
    }

    #[test]
    fn weight_projection_and_wedge() {
        let (b, a, bb, g) = e2();
        let cap = 4;
        let x = SElement::<Q>::from_vector(b.clone(), cap, &Vector::basis(g));
        let xy = SElement::from_factors(b.clone(), cap, &[a, bb], q(1)).unwrap();
        let v = x.plus(&xy);
        assert_eq!(v.weight_project(1), x);
        assert!(v.weight_project(3).is_zero());
        let mut sum = SElement::zero(b.clone(), cap);
        for n in 1..=cap {
            sum.add_scaled(&q(1), &v.weight_project(n));
        }
        assert_eq!(sum, v);

        let ea = SElement::from_vector(b.clone(), cap, &Vector::<Q>::basis(a));
        let eb = SElement::from_vector(b.clone(), cap, &Vector::<Q>::basis(bb));
        assert_eq!(ea.wedge(&eb).unwrap(), xy);
        assert_eq!(eb.wedge(&ea).unwrap(), xy.scaled(&q(-1)));
        assert!(ea.wedge(&ea).unwrap().is_zero());
        let w = xy.wedge(&x).unwrap();
        assert_eq!(w.homogeneous_degree(), Some(4));
    }

    #[test]
    fn wedge_over_cap_flags_overflow() {
        let (b, _, _, g) = e2();
        let x = SElement::<Q>::from_vector(b.clone(), 2, &Vector::basis(g));
        let xx = x.wedge(&x).unwrap();
        assert!(!xx.overflow());
        let xxx = xx.wedge(&x).unwrap();
        assert!(xxx.is_zero());
        assert!(xxx.overflow());
    }

    #[test]
    fn flip_is_involution_and_fixes_coproduct() {
        let basis = Arc::new(GradedBasis::from_pairs(&[("x", 1), ("y", 0), ("z", 1), ("t", 2)]).unwrap());
        for m in canonical_monomials_up_to(&basis, 4) {
            let d = coproduct::<Q>(&basis, &m);
            assert_eq!(d.flip(), d);
            assert_eq!(d.flip().flip(), d);
        }
    }
}
