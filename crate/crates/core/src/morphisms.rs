//! Coderivations and coalgebra maps on symmetric coalgebras, built from their
//! Taylor coefficients, together with the inverse operation (extracting the
//! coefficients of an arbitrary map) and checkers for the defining laws.
//!
//! Maps are handled through the [`SMorphism`] trait. Extensions of Taylor
//! families evaluate lazily, monomial by monomial; [`SMap`] is the
//! extensional form, a table of images of every canonical monomial up to the
//! weight cap, and is what compositions and conjugations produce.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use crate::algebra::{is_odd, GradedBasis, LinearMap, Vector};
use crate::coalgebra::{
    canonical_monomials, canonical_monomials_up_to, coproduct, normalize_factors, rearrangement_is_odd,
    SElement, TensorSum, WedgeMonomial,
};
use crate::error::{Error, Result};
use crate::partition::{mask_positions, set_partitions, Partition};
use crate::scalar::{apply_sign, signed, Scalar};

/// Largest weight for which partitions are cached.
const PARTITION_CACHE: usize = 12;

pub(crate) fn cached_partitions(n: usize) -> &'static [Partition] {
    static CACHE: [OnceLock<Vec<Partition>>; PARTITION_CACHE + 1] =
        [const { OnceLock::new() }; PARTITION_CACHE + 1];
    assert!(n <= PARTITION_CACHE, "weight {n} exceeds the partition cache");
    CACHE[n].get_or_init(|| set_partitions(n))
}

/// Arity-indexed symmetric multilinear maps `∧ⁿ(source) → target` of a fixed
/// operator degree, stored on canonical monomials only.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorFamily<S> {
    source: Arc<GradedBasis>,
    target: Arc<GradedBasis>,
    degree: i64,
    arities: BTreeMap<usize, BTreeMap<WedgeMonomial, Vector<S>>>,
}

impl<S: Scalar> TaylorFamily<S> {
    pub fn new(source: Arc<GradedBasis>, target: Arc<GradedBasis>, degree: i64) -> Self {
        Self {
            source,
            target,
            degree,
            arities: BTreeMap::new(),
        }
    }

    /// The family whose only nonzero coefficient is `f` in arity one.
    pub fn from_linear_map(f: &LinearMap<S>) -> Self {
        let mut family = Self::new(f.source().clone(), f.target().clone(), f.degree());
        let table: BTreeMap<_, _> = f
            .columns()
            .map(|(i, v)| (WedgeMonomial::generator(f.source(), i), v.clone()))
            .collect();
        if !table.is_empty() {
            family.arities.insert(1, table);
        }
        family
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

    /// Sets the value on a canonical monomial, replacing any previous value.
    pub fn set(&mut self, m: WedgeMonomial, value: Vector<S>) -> Result<()> {
        value.check_in(&self.target)?;
        let expected = m.degree() + self.degree;
        if !value.is_homogeneous_of(&self.target, expected) {
            return Err(Error::NonHomogeneousTaylor {
                monomial: m.display(&self.source),
                expected,
            });
        }
        let n = m.weight();
        if value.is_zero() {
            if let Some(table) = self.arities.get_mut(&n) {
                table.remove(&m);
                if table.is_empty() {
                    self.arities.remove(&n);
                }
            }
        } else {
            self.arities.entry(n).or_default().insert(m, value);
        }
        Ok(())
    }

    /// Sets the value on an arbitrary argument order: the stored canonical
    /// value absorbs the Koszul sign of sorting.
    pub fn set_factors(&mut self, factors: &[usize], value: Vector<S>) -> Result<()> {
        for &f in factors {
            self.source.check_index(f)?;
        }
        let (sorted, neg) = normalize_factors(&self.source, factors).ok_or_else(|| {
            Error::VanishingMonomial(
                factors
                    .iter()
                    .map(|&f| self.source.name(f))
                    .collect::<Vec<_>>()
                    .join("∧"),
            )
        })?;
        let m = WedgeMonomial::unchecked(&self.source, sorted);
        let value = if neg { value.scaled(&-S::one()) } else { value };
        self.set(m, value)
    }

    /// The stored value on a canonical monomial (zero when absent).
    pub fn value(&self, m: &WedgeMonomial) -> Vector<S> {
        self.get(m).cloned().unwrap_or_default()
    }

    pub fn get(&self, m: &WedgeMonomial) -> Option<&Vector<S>> {
        self.arities.get(&m.weight()).and_then(|t| t.get(m))
    }

    /// Evaluates at an argument list in any order.
    pub fn eval(&self, args: &[usize]) -> Result<Vector<S>> {
        for &a in args {
            self.source.check_index(a)?;
        }
        Ok(match normalize_factors(&self.source, args) {
            Some((sorted, neg)) => {
                let v = self.value(&WedgeMonomial::unchecked(&self.source, sorted));
                if neg {
                    v.scaled(&-S::one())
                } else {
                    v
                }
            }
            None => Vector::zero(),
        })
    }

    /// The arity-`n` table (nonzero entries only).
    pub fn table(&self, n: usize) -> BTreeMap<WedgeMonomial, Vector<S>> {
        self.arities.get(&n).cloned().unwrap_or_default()
    }

    pub fn tables(&self) -> impl Iterator<Item = (usize, &BTreeMap<WedgeMonomial, Vector<S>>)> {
        self.arities.iter().map(|(&n, t)| (n, t))
    }

    /// Highest arity carrying a nonzero value.
    pub fn max_arity(&self) -> usize {
        self.arities
            .iter()
            .filter(|(_, t)| !t.is_empty())
            .map(|(&n, _)| n)
            .max()
            .unwrap_or(0)
    }

    /// `true` when every coefficient of arity `>= from` is zero.
    pub fn vanishes_from(&self, from: usize) -> bool {
        self.arities.range(from..).all(|(_, t)| t.is_empty())
    }

    /// A copy with the arity-`n` coefficient removed.
    pub fn without_arity(&self, n: usize) -> Self {
        let mut out = self.clone();
        out.arities.remove(&n);
        out
    }

    /// Replaces the whole arity-`n` table.
    pub fn set_table(&mut self, n: usize, table: BTreeMap<WedgeMonomial, Vector<S>>) -> Result<()> {
        self.arities.remove(&n);
        for (m, v) in table {
            if m.weight() != n {
                return Err(Error::Schema(format!(
                    "monomial {} placed in arity {n}",
                    m.display(&self.source)
                )));
            }
            self.set(m, v)?;
        }
        Ok(())
    }

    /// The arity-one coefficient as a linear map.
    pub fn linear_part(&self) -> LinearMap<S> {
        let columns: Vec<(usize, Vector<S>)> = self
            .table(1)
            .into_iter()
            .map(|(m, v)| (m.factors()[0], v))
            .collect();
        LinearMap::new(self.source.clone(), self.target.clone(), self.degree, columns)
            .expect("stored values are homogeneous")
    }
}

/// A weight-respecting linear map `SA → SB`, evaluated monomial by monomial.
pub trait SMorphism<S: Scalar> {
    fn source(&self) -> &Arc<GradedBasis>;
    fn target(&self) -> &Arc<GradedBasis>;
    fn degree(&self) -> i64;
    fn cap(&self) -> usize;

    fn apply_monomial(&self, w: &WedgeMonomial) -> SElement<S>;

    fn apply(&self, v: &SElement<S>) -> SElement<S> {
        let mut out = SElement::zero(self.target().clone(), self.cap());
        if v.overflow() {
            out.mark_overflow();
        }
        for (m, c) in v.terms() {
            out.add_scaled(c, &self.apply_monomial(m));
        }
        out
    }
}

impl<S: Scalar, T: SMorphism<S> + ?Sized> SMorphism<S> for &T {
    fn source(&self) -> &Arc<GradedBasis> {
        (**self).source()
    }
    fn target(&self) -> &Arc<GradedBasis> {
        (**self).target()
    }
    fn degree(&self) -> i64 {
        (**self).degree()
    }
    fn cap(&self) -> usize {
        (**self).cap()
    }
    fn apply_monomial(&self, w: &WedgeMonomial) -> SElement<S> {
        (**self).apply_monomial(w)
    }
}

/// Extensional map: the image of every canonical monomial up to the cap.
#[derive(Debug, Clone, PartialEq)]
pub struct SMap<S> {
    source: Arc<GradedBasis>,
    target: Arc<GradedBasis>,
    cap: usize,
    degree: i64,
    images: BTreeMap<WedgeMonomial, SElement<S>>,
}

impl<S: Scalar> SMap<S> {
    /// Evaluates `m` on every canonical monomial of weight `<= m.cap()`.
    pub fn tabulate<M: SMorphism<S> + ?Sized>(m: &M) -> Self {
        let images = canonical_monomials_up_to(m.source(), m.cap())
            .into_iter()
            .map(|w| {
                let image = m.apply_monomial(&w);
                (w, image)
            })
            .collect();
        Self {
            source: m.source().clone(),
            target: m.target().clone(),
            cap: m.cap(),
            degree: m.degree(),
            images,
        }
    }

    pub(crate) fn from_images(
        source: Arc<GradedBasis>,
        target: Arc<GradedBasis>,
        cap: usize,
        degree: i64,
        images: BTreeMap<WedgeMonomial, SElement<S>>,
    ) -> Self {
        Self {
            source,
            target,
            cap,
            degree,
            images,
        }
    }

    pub fn identity(basis: Arc<GradedBasis>, cap: usize) -> Self {
        let images = canonical_monomials_up_to(&basis, cap)
            .into_iter()
            .map(|w| {
                let image = SElement::from_monomial(basis.clone(), cap, w.clone());
                (w, image)
            })
            .collect();
        Self {
            source: basis.clone(),
            target: basis,
            cap,
            degree: 0,
            images,
        }
    }

    pub fn zero(source: Arc<GradedBasis>, target: Arc<GradedBasis>, cap: usize, degree: i64) -> Self {
        let images = canonical_monomials_up_to(&source, cap)
            .into_iter()
            .map(|w| (w, SElement::zero(target.clone(), cap)))
            .collect();
        Self {
            source,
            target,
            cap,
            degree,
            images,
        }
    }

    pub fn image(&self, w: &WedgeMonomial) -> Option<&SElement<S>> {
        self.images.get(w)
    }

    pub fn images(&self) -> impl Iterator<Item = (&WedgeMonomial, &SElement<S>)> {
        self.images.iter()
    }

    /// Whether any stored image lost terms to the cap.
    pub fn overflow(&self) -> bool {
        self.images.values().any(|v| v.overflow())
    }

    /// `self + c · other`
    pub fn add_scaled(&self, c: &S, other: &SMap<S>) -> Result<SMap<S>> {
        if self.source != other.source || self.target != other.target || self.cap != other.cap {
            return Err(Error::Mismatch("sum of maps between different spaces".into()));
        }
        let mut out = self.clone();
        for (w, v) in &other.images {
            out.images
                .entry(w.clone())
                .or_insert_with(|| SElement::zero(self.target.clone(), self.cap))
                .add_scaled(c, v);
        }
        Ok(out)
    }

    pub fn minus(&self, other: &SMap<S>) -> Result<SMap<S>> {
        self.add_scaled(&-S::one(), other)
    }

    pub fn scaled(&self, c: &S) -> SMap<S> {
        let mut out = self.clone();
        for v in out.images.values_mut() {
            *v = v.scaled(c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(|v| v.is_zero())
    }

    /// The first canonical monomial on which the two maps disagree.
    pub fn first_difference(&self, other: &SMap<S>) -> Option<WedgeMonomial> {
        self.images
            .iter()
            .find(|(w, v)| match other.images.get(*w) {
                Some(u) => !u.same_terms(v),
                None => !v.is_zero(),
            })
            .map(|(w, _)| w.clone())
    }

    /// Agreement on every tabulated monomial, ignoring overflow flags.
    pub fn agrees_with(&self, other: &SMap<S>) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.first_difference(other).is_none()
            && other.first_difference(self).is_none()
    }
}

impl<S: Scalar> SMorphism<S> for SMap<S> {
    fn source(&self) -> &Arc<GradedBasis> {
        &self.source
    }
    fn target(&self) -> &Arc<GradedBasis> {
        &self.target
    }
    fn degree(&self) -> i64 {
        self.degree
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn apply_monomial(&self, w: &WedgeMonomial) -> SElement<S> {
        match self.images.get(w) {
            Some(v) => v.clone(),
            None => {
                let mut out = SElement::zero(self.target.clone(), self.cap);
                out.mark_overflow();
                out
            }
        }
    }
}

/// `outer ∘ inner`, tabulated on the source of `inner`.
pub fn compose<S, A, B>(outer: &A, inner: &B) -> Result<SMap<S>>
where
    S: Scalar,
    A: SMorphism<S> + ?Sized,
    B: SMorphism<S> + ?Sized,
{
    if inner.target() != outer.source() {
        return Err(Error::Mismatch("composition of incompatible maps".into()));
    }
    let cap = inner.cap().min(outer.cap());
    let images = canonical_monomials_up_to(inner.source(), cap)
        .into_iter()
        .map(|w| {
            let image = outer.apply(&inner.apply_monomial(&w));
            (w, image)
        })
        .collect();
    Ok(SMap::from_images(
        inner.source().clone(),
        outer.target().clone(),
        cap,
        outer.degree() + inner.degree(),
        images,
    ))
}

/// Graded commutator `D1∘D2 - (-1)^{|D1||D2|} D2∘D1`.
pub fn bracket<S, A, B>(d1: &A, d2: &B) -> Result<SMap<S>>
where
    S: Scalar,
    A: SMorphism<S> + ?Sized,
    B: SMorphism<S> + ?Sized,
{
    if d1.source() != d2.source()
        || d1.target() != d1.source()
        || d2.target() != d2.source()
        || d1.cap() != d2.cap()
    {
        return Err(Error::Mismatch(
            "bracket needs two endomorphisms of the same SA".into(),
        ));
    }
    let forward = compose(d1, d2)?;
    let backward = compose(d2, d1)?;
    let sign: S = signed(!(is_odd(d1.degree()) && is_odd(d2.degree())));
    forward.add_scaled(&sign, &backward)
}

/// Sums `Π_B value(x_B)` over all set partitions of the factor positions of
/// `w`, each term wedged in block order and signed by the Koszul sign of the
/// rearrangement.
pub(crate) fn partition_sum<S: Scalar>(
    source: &GradedBasis,
    target: &Arc<GradedBasis>,
    cap: usize,
    w: &WedgeMonomial,
    mut block_value: impl FnMut(&WedgeMonomial) -> Vector<S>,
) -> SElement<S> {
    let n = w.weight();
    let odd = w.odd_flags(source);
    let mut out = SElement::zero(target.clone(), cap);
    let mut values: HashMap<Vec<usize>, Vector<S>> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for partition in cached_partitions(n) {
        for block in partition {
            if !values.contains_key(block) {
                let v = block_value(&w.select(source, block));
                values.insert(block.clone(), v);
            }
        }
        let blocks: Vec<&Vector<S>> = partition.iter().map(|b| &values[b]).collect();
        if blocks.iter().any(|v| v.is_zero()) {
            continue;
        }
        order.clear();
        for block in partition {
            order.extend_from_slice(block);
        }
        let sign: S = signed(rearrangement_is_odd(&odd, &order));
        expand_wedge(&mut out, &blocks, &mut Vec::with_capacity(n), sign);
    }
    out
}

/// Adds `coeff · v_1 ∧ ... ∧ v_k` to `out`, expanding each vector.
pub(crate) fn expand_wedge<S: Scalar>(
    out: &mut SElement<S>,
    vectors: &[&Vector<S>],
    prefix: &mut Vec<usize>,
    coeff: S,
) {
    match vectors.split_first() {
        None => out.add_factors(prefix, coeff),
        Some((first, rest)) => {
            for (i, c) in first.iter() {
                prefix.push(i);
                expand_wedge(out, rest, prefix, coeff.clone() * c.clone());
                prefix.pop();
            }
        }
    }
}

/// The coalgebra map `SA → SB` determined by a degree-zero Taylor family.
#[derive(Debug, Clone)]
pub struct CoalgebraMap<S> {
    family: TaylorFamily<S>,
    cap: usize,
}

impl<S: Scalar> CoalgebraMap<S> {
    pub fn family(&self) -> &TaylorFamily<S> {
        &self.family
    }
}

/// Extends a Taylor family to a coalgebra map: `G(x_1∧...∧x_n)` is the sum
/// over unordered set partitions of `±∧_B G^{|B|}(x_B)`.
pub fn extend_coalgebra_map<S: Scalar>(family: TaylorFamily<S>, cap: usize) -> Result<CoalgebraMap<S>> {
    if family.degree != 0 {
        return Err(Error::NonzeroComorphismDegree(family.degree));
    }
    Ok(CoalgebraMap { family, cap })
}

impl<S: Scalar> SMorphism<S> for CoalgebraMap<S> {
    fn source(&self) -> &Arc<GradedBasis> {
        &self.family.source
    }
    fn target(&self) -> &Arc<GradedBasis> {
        &self.family.target
    }
    fn degree(&self) -> i64 {
        0
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn apply_monomial(&self, w: &WedgeMonomial) -> SElement<S> {
        partition_sum(&self.family.source, &self.family.target, self.cap, w, |m| {
            self.family.value(m)
        })
    }
}

/// The coderivation of `SA` determined by a Taylor family `∧ⁿA → A`.
#[derive(Debug, Clone)]
pub struct Coderivation<S> {
    family: TaylorFamily<S>,
    cap: usize,
}

impl<S: Scalar> Coderivation<S> {
    pub fn family(&self) -> &TaylorFamily<S> {
        &self.family
    }
}

/// Extends a Taylor family to a coderivation: for every subset `I` of factor
/// positions, move `x_I` to the front (Koszul sign) and replace it by
/// `D^{|I|}(x_I)`.
pub fn extend_coderivation<S: Scalar>(family: TaylorFamily<S>, cap: usize) -> Result<Coderivation<S>> {
    if family.source != family.target {
        return Err(Error::Mismatch(
            "coderivation coefficients must map ∧ⁿA into A".into(),
        ));
    }
    Ok(Coderivation { family, cap })
}

impl<S: Scalar> SMorphism<S> for Coderivation<S> {
    fn source(&self) -> &Arc<GradedBasis> {
        &self.family.source
    }
    fn target(&self) -> &Arc<GradedBasis> {
        &self.family.target
    }
    fn degree(&self) -> i64 {
        self.family.degree
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn apply_monomial(&self, w: &WedgeMonomial) -> SElement<S> {
        let basis = &self.family.source;
        let n = w.weight();
        let odd = w.odd_flags(basis);
        let mut out = SElement::zero(basis.clone(), self.cap);
        let full: u32 = (1u32 << n) - 1;
        let mut order = Vec::with_capacity(n);
        let mut factors = Vec::with_capacity(n);
        for mask in 1..=full {
            let chosen = mask_positions(mask, n);
            let Some(table) = self.family.arities.get(&chosen.len()) else {
                continue;
            };
            let Some(value) = table.get(&w.select(basis, &chosen)) else {
                continue;
            };
            let rest = mask_positions(full & !mask, n);
            order.clear();
            order.extend_from_slice(&chosen);
            order.extend_from_slice(&rest);
            let neg = rearrangement_is_odd(&odd, &order);
            for (i, c) in value.iter() {
                factors.clear();
                factors.push(i);
                factors.extend(rest.iter().map(|&p| w.factors()[p]));
                out.add_factors(&factors, apply_sign(neg, c.clone()));
            }
        }
        out
    }
}

/// Arity-`n` Taylor coefficient of `m`: the weight-one part of the image of
/// every canonical weight-`n` monomial.
pub fn taylor_extract<S, M>(m: &M, n: usize) -> BTreeMap<WedgeMonomial, Vector<S>>
where
    S: Scalar,
    M: SMorphism<S> + ?Sized,
{
    canonical_monomials(m.source(), n)
        .into_iter()
        .filter_map(|w| {
            let v = m.apply_monomial(&w).linear_part();
            (!v.is_zero()).then_some((w, v))
        })
        .collect()
}

/// All Taylor coefficients of `m` up to its cap.
pub fn taylor_family<S, M>(m: &M) -> TaylorFamily<S>
where
    S: Scalar,
    M: SMorphism<S> + ?Sized,
{
    let mut family = TaylorFamily::new(m.source().clone(), m.target().clone(), m.degree());
    for n in 1..=m.cap() {
        let table = taylor_extract(m, n);
        if !table.is_empty() {
            family.arities.insert(n, table);
        }
    }
    family
}

/// A monomial on which a checked identity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub monomial: Vec<String>,
    pub weight: usize,
}

impl Witness {
    pub fn new(basis: &GradedBasis, w: &WedgeMonomial) -> Self {
        Self {
            monomial: w.names(basis),
            weight: w.weight(),
        }
    }

    pub fn generator(name: &str) -> Self {
        Self {
            monomial: vec![name.to_string()],
            weight: 1,
        }
    }
}

/// Outcome of checking an identity on every canonical monomial up to a cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `lhs(w) == rhs(w)` for every canonical monomial of weight `<= cap`.
pub fn check_on_monomials<T: PartialEq>(
    law: &str,
    basis: &GradedBasis,
    cap: usize,
    mut lhs: impl FnMut(&WedgeMonomial) -> T,
    mut rhs: impl FnMut(&WedgeMonomial) -> T,
) -> LawReport {
    let mut checked = 0;
    for w in canonical_monomials_up_to(basis, cap) {
        checked += 1;
        if lhs(&w) != rhs(&w) {
            return LawReport {
                law: law.to_string(),
                checked,
                witness: Some(Witness::new(basis, &w)),
            };
        }
    }
    LawReport {
        law: law.to_string(),
        checked,
        witness: None,
    }
}

/// Checks that two maps agree on every canonical monomial up to the smaller cap.
pub fn check_maps_agree<S, A, B>(law: &str, a: &A, b: &B) -> LawReport
where
    S: Scalar,
    A: SMorphism<S> + ?Sized,
    B: SMorphism<S> + ?Sized,
{
    let cap = a.cap().min(b.cap());
    check_on_monomials(
        law,
        a.source(),
        cap,
        |w| {
            a.apply_monomial(w)
                .terms()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect::<Vec<_>>()
        },
        |w| {
            b.apply_monomial(w)
                .terms()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect::<Vec<_>>()
        },
    )
}

/// Verifies `Δ∘G = (G⊗G)∘Δ` up to the cap.
pub fn check_comorphism<S, M>(g: &M) -> LawReport
where
    S: Scalar,
    M: SMorphism<S> + ?Sized,
{
    let source = g.source().clone();
    let target = g.target().clone();
    let cap = g.cap();
    let degree = g.degree();
    check_on_monomials(
        "comorphism",
        &source,
        cap,
        |w| g.apply_monomial(w).coproduct(),
        |w| {
            let mut rhs = TensorSum::new(target.clone(), 2);
            for (key, c) in coproduct::<S>(&source, w).terms() {
                let sign = apply_sign(is_odd(degree) && is_odd(key[0].degree()), c.clone());
                rhs.add_tensor(&sign, &g.apply_monomial(&key[0]), &g.apply_monomial(&key[1]));
            }
            rhs
        },
    )
}

/// Verifies `Δ∘D = (D⊗id + id⊗D)∘Δ` up to the cap, with
/// `(id⊗D)(u⊗v) = (-1)^{|D||u|} u⊗D(v)`.
pub fn check_coderivation<S, M>(d: &M) -> LawReport
where
    S: Scalar,
    M: SMorphism<S> + ?Sized,
{
    let basis = d.source().clone();
    let cap = d.cap();
    let degree = d.degree();
    if d.target() != d.source() {
        return LawReport {
            law: "coderivation (source and target differ)".into(),
            checked: 0,
            witness: Some(Witness {
                monomial: Vec::new(),
                weight: 0,
            }),
        };
    }
    check_on_monomials(
        "coderivation",
        &basis,
        cap,
        |w| d.apply_monomial(w).coproduct(),
        |w| {
            let mut rhs = TensorSum::new(basis.clone(), 2);
            for (key, c) in coproduct::<S>(&basis, w).terms() {
                let left = SElement::from_monomial(basis.clone(), cap, key[0].clone());
                let right = SElement::from_monomial(basis.clone(), cap, key[1].clone());
                rhs.add_tensor(c, &d.apply_monomial(&key[0]), &right);
                let sign = apply_sign(is_odd(degree) && is_odd(key[0].degree()), c.clone());
                rhs.add_tensor(&sign, &left, &d.apply_monomial(&key[1]));
            }
            rhs
        },
    )
}
