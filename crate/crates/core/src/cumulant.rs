//! The tautologous map `τ: SA → A`, its lift `τ̃` to a coalgebra
//! automorphism of `SA` (the cumulant bijection), the inverse `τ̃⁻¹`, and
//! conjugation of extended maps by `τ̃`.
//!
//! Conjugating the coalgebra extension of `f: A → B` gives Taylor
//! coefficients `gⁿ` measuring how far `f` is from a homomorphism; conjugating
//! the coderivation extension of `d: A → A` gives `hⁿ` measuring how far `d`
//! is from a derivation. Both vanish above arity one exactly in the
//! homomorphism / derivation case.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, GradedBasis, LinearMap, Vector};
use crate::coalgebra::{
    canonical_monomials, canonical_monomials_up_to, iterated_coproduct, SElement, WedgeMonomial,
};
use crate::error::{Error, Result};
use crate::morphisms::{
    expand_wedge, extend_coalgebra_map, extend_coderivation, partition_sum, SMap, SMorphism, TaylorFamily,
};
use crate::scalar::{from_usize, Scalar};

/// `τ(x_1∧...∧x_n) = x_1 x_2 ... x_n`, multiplied left to right in canonical
/// factor order.
pub fn tau<S: Scalar>(alg: &Algebra<S>, w: &WedgeMonomial) -> Vector<S> {
    let mut factors = w.factors().iter();
    let Some(&first) = factors.next() else {
        return Vector::zero();
    };
    let mut acc = Vector::basis(first);
    for &f in factors {
        if acc.is_zero() {
            break;
        }
        acc = alg.mul(&acc, &Vector::basis(f));
    }
    acc
}

/// `τ` extended linearly to all of `SA`.
pub fn tau_element<S: Scalar>(alg: &Algebra<S>, v: &SElement<S>) -> Vector<S> {
    let mut out = Vector::zero();
    for (m, c) in v.terms() {
        out.add_scaled(c, &tau(alg, m));
    }
    out
}

/// The cumulant bijection as a lazily evaluated map: the sum over set
/// partitions of `±∧_B τ(x_B)`.
#[derive(Debug, Clone)]
pub struct TauTilde<S> {
    algebra: Arc<Algebra<S>>,
    cap: usize,
}

impl<S: Scalar> TauTilde<S> {
    pub fn new(algebra: Arc<Algebra<S>>, cap: usize) -> Self {
        Self { algebra, cap }
    }
}

impl<S: Scalar> SMorphism<S> for TauTilde<S> {
    fn source(&self) -> &Arc<GradedBasis> {
        self.algebra.basis()
    }
    fn target(&self) -> &Arc<GradedBasis> {
        self.algebra.basis()
    }
    fn degree(&self) -> i64 {
        0
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn apply_monomial(&self, w: &WedgeMonomial) -> SElement<S> {
        partition_sum(self.algebra.basis(), self.algebra.basis(), self.cap, w, |block| {
            tau(&self.algebra, block)
        })
    }
}

/// `τ̃(v)` by the set-partition formula.
pub fn tau_tilde<S: Scalar>(alg: &Algebra<S>, v: &SElement<S>) -> SElement<S> {
    TauTilde::new(Arc::new(alg.clone()), v.cap()).apply(v)
}

/// `τ̃(v)` by the coproduct series `τ + τ∧τ∘Δ + τ^{∧3}∘Δ² + ...`, each
/// `k`-fold term reassembled from ordered tensors with weight `1/k!`.
pub fn tau_tilde_series<S: Scalar>(alg: &Algebra<S>, v: &SElement<S>) -> SElement<S> {
    let basis = alg.basis();
    let mut out = SElement::zero(basis.clone(), v.cap());
    for (w, c) in v.terms() {
        let mut factorial = S::one();
        for k in 1..=w.weight() {
            factorial = factorial * from_usize::<S>(k);
            let scale = c.clone() / factorial.clone();
            let tensors = iterated_coproduct::<S>(basis, w, k).expect("1 <= k <= weight");
            for (tuple, coeff) in tensors.terms() {
                let values: Vec<Vector<S>> = tuple.iter().map(|m| tau(alg, m)).collect();
                let refs: Vec<&Vector<S>> = values.iter().collect();
                expand_wedge(&mut out, &refs, &mut Vec::new(), scale.clone() * coeff.clone());
            }
        }
    }
    out
}

/// Cached `τ̃` and `τ̃⁻¹` tables of one algebra up to a weight cap.
#[derive(Debug, Clone)]
pub struct CumulantContext<S> {
    algebra: Arc<Algebra<S>>,
    cap: usize,
    forward: SMap<S>,
    inverse: SMap<S>,
}

impl<S: Scalar> CumulantContext<S> {
    /// Tabulates `τ̃` and inverts it weight by weight: for a weight-`n`
    /// monomial `w`, `τ̃(w) - w` lies in `F_{n-1}`, so
    /// `τ̃⁻¹(w) = w - τ̃⁻¹(τ̃(w) - w)` only needs lower weights.
    pub fn new(algebra: &Algebra<S>, cap: usize) -> Self {
        let algebra = Arc::new(algebra.clone());
        let forward = SMap::tabulate(&TauTilde::new(algebra.clone(), cap));
        let inverse = triangular_inverse(&forward);
        Self {
            algebra,
            cap,
            forward,
            inverse,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<S>> {
        &self.algebra
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        self.algebra.basis()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn forward(&self) -> &SMap<S> {
        &self.forward
    }

    pub fn inverse(&self) -> &SMap<S> {
        &self.inverse
    }

    pub fn tau_tilde(&self, v: &SElement<S>) -> SElement<S> {
        self.forward.apply(v)
    }

    pub fn tau_tilde_inverse(&self, v: &SElement<S>) -> SElement<S> {
        self.inverse.apply(v)
    }
}

/// Inverts a filtration-preserving map whose image of every monomial `w` is
/// `w` plus terms of strictly lower weight.
pub fn triangular_inverse<S: Scalar>(map: &SMap<S>) -> SMap<S> {
    let basis = map.source().clone();
    let cap = map.cap();
    let mut images: BTreeMap<WedgeMonomial, SElement<S>> = BTreeMap::new();
    // canonical order is by increasing weight
    for w in canonical_monomials_up_to(&basis, cap) {
        let mut lower = map.apply_monomial(&w);
        lower.add_term(w.clone(), -S::one());
        let mut image = SElement::from_monomial(basis.clone(), cap, w.clone());
        for (m, c) in lower.terms() {
            let prior = images
                .get(m)
                .expect("lower-order terms have strictly smaller weight");
            image.add_scaled(&-c.clone(), prior);
        }
        images.insert(w, image);
    }
    SMap::from_images(basis.clone(), basis, cap, map.degree(), images)
}

/// `τ̃⁻¹(v)`, computed through a context sized to `v`.
pub fn tau_tilde_inverse<S: Scalar>(alg: &Algebra<S>, v: &SElement<S>) -> SElement<S> {
    CumulantContext::new(alg, v.cap()).tau_tilde_inverse(v)
}

/// Which side `τ̃` sits on when conjugating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `τ̃_B ∘ M ∘ τ̃_A⁻¹`
    Push,
    /// `τ̃_B⁻¹ ∘ M ∘ τ̃_A`; this is the side on which `τ ∘ result = m ∘ τ`
    /// for the bare extension `M` of `m`.
    Pull,
}

/// Conjugates `m: SA → SB` by the cumulant bijections of `A` and `B`.
pub fn conjugate<S, M>(
    source: &CumulantContext<S>,
    target: &CumulantContext<S>,
    m: &M,
    direction: Direction,
) -> Result<SMap<S>>
where
    S: Scalar,
    M: SMorphism<S> + ?Sized,
{
    if m.source() != source.basis() || m.target() != target.basis() {
        return Err(Error::Mismatch(
            "conjugated map does not run between the given algebras".into(),
        ));
    }
    let cap = source.cap.min(target.cap).min(m.cap());
    let (inner, outer) = match direction {
        Direction::Push => (&source.inverse, &target.forward),
        Direction::Pull => (&source.forward, &target.inverse),
    };
    let images = canonical_monomials_up_to(source.basis(), cap)
        .into_iter()
        .map(|w| {
            let image = outer.apply(&m.apply(&inner.apply_monomial(&w)));
            (w, image)
        })
        .collect();
    Ok(SMap::from_images(
        source.basis().clone(),
        target.basis().clone(),
        cap,
        m.degree(),
        images,
    ))
}

/// Conjugates an endomorphism of `SA`.
pub fn conjugate_endo<S, M>(ctx: &CumulantContext<S>, m: &M, direction: Direction) -> Result<SMap<S>>
where
    S: Scalar,
    M: SMorphism<S> + ?Sized,
{
    conjugate(ctx, ctx, m, direction)
}

fn check_arity(n: usize, cap: usize) -> Result<()> {
    if n == 0 || n > cap {
        return Err(Error::OutOfRange {
            what: "arity",
            value: n,
            range: format!("1..={cap}"),
        });
    }
    Ok(())
}

/// `gⁿ`: the arity-`n` Taylor coefficient of `τ̃_B⁻¹ ∘ F ∘ τ̃_A`, where `F` is
/// the coalgebra extension of the degree-zero map `f: A → B`.
pub fn homomorphism_defect<S: Scalar>(
    f: &LinearMap<S>,
    source: &Algebra<S>,
    target: &CumulantContext<S>,
    n: usize,
) -> Result<BTreeMap<WedgeMonomial, Vector<S>>> {
    check_arity(n, target.cap)?;
    if f.source() != source.basis() || f.target() != target.basis() {
        return Err(Error::Mismatch(
            "f must map the source algebra into the target".into(),
        ));
    }
    let cap = target.cap;
    let lift = extend_coalgebra_map(TaylorFamily::from_linear_map(f), cap)?;
    let tau_a = TauTilde::new(Arc::new(source.clone()), cap);
    Ok(canonical_monomials(source.basis(), n)
        .into_iter()
        .filter_map(|w| {
            let image = target
                .inverse
                .apply(&lift.apply(&tau_a.apply_monomial(&w)))
                .linear_part();
            (!image.is_zero()).then_some((w, image))
        })
        .collect())
}

/// All `gⁿ`, `1 <= n <= cap`, as a Taylor family `A → B`.
pub fn homomorphism_defects<S: Scalar>(
    f: &LinearMap<S>,
    source: &Algebra<S>,
    target: &CumulantContext<S>,
) -> Result<TaylorFamily<S>> {
    let mut family = TaylorFamily::new(f.source().clone(), f.target().clone(), 0);
    for n in 1..=target.cap {
        family.set_table(n, homomorphism_defect(f, source, target, n)?)?;
    }
    Ok(family)
}

/// `hⁿ`: the arity-`n` Taylor coefficient of `τ̃⁻¹ ∘ D ∘ τ̃`, where `D` is the
/// coderivation extension of `d: A → A`.
pub fn derivation_defect<S: Scalar>(
    d: &LinearMap<S>,
    ctx: &CumulantContext<S>,
    n: usize,
) -> Result<BTreeMap<WedgeMonomial, Vector<S>>> {
    check_arity(n, ctx.cap)?;
    if d.source() != ctx.basis() || d.target() != ctx.basis() {
        return Err(Error::Mismatch("d must be an endomorphism of the algebra".into()));
    }
    let ext = extend_coderivation(TaylorFamily::from_linear_map(d), ctx.cap)?;
    Ok(canonical_monomials(ctx.basis(), n)
        .into_iter()
        .filter_map(|w| {
            let image = ctx
                .inverse
                .apply(&ext.apply(&ctx.forward.apply_monomial(&w)))
                .linear_part();
            (!image.is_zero()).then_some((w, image))
        })
        .collect())
}

/// All `hⁿ`, `1 <= n <= cap`.
pub fn derivation_defects<S: Scalar>(d: &LinearMap<S>, ctx: &CumulantContext<S>) -> Result<TaylorFamily<S>> {
    let mut family = TaylorFamily::new(d.source().clone(), d.target().clone(), d.degree());
    for n in 1..=ctx.cap {
        family.set_table(n, derivation_defect(d, ctx, n)?)?;
    }
    Ok(family)
}

/// One weight-three monomial compared against the closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct H3Entry<S> {
    pub monomial: WedgeMonomial,
    pub computed: Vector<S>,
    pub literal: Vector<S>,
    pub corrected: Vector<S>,
}

/// Comparison of `h³` with two ungraded closed forms.
///
/// `literal` is
/// `d(xyz) - d(xy)z + xy d(z) - d(yz)x + yx d(x) - d(zx)y + zx d(y)`,
/// taken verbatim; `corrected` replaces the
/// `yx d(x)` term by `yz d(x)`. Both ignore Koszul signs, so they are only
/// meaningful on algebras concentrated in even degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct H3Comparison<S> {
    pub entries: Vec<H3Entry<S>>,
}

impl<S: Scalar> H3Comparison<S> {
    pub fn literal_mismatches(&self) -> Vec<&H3Entry<S>> {
        self.entries.iter().filter(|e| e.computed != e.literal).collect()
    }

    pub fn corrected_mismatches(&self) -> Vec<&H3Entry<S>> {
        self.entries
            .iter()
            .filter(|e| e.computed != e.corrected)
            .collect()
    }
}

pub fn compare_h3_closed_form<S: Scalar>(
    d: &LinearMap<S>,
    ctx: &CumulantContext<S>,
) -> Result<H3Comparison<S>> {
    let alg = ctx.algebra();
    let h3 = derivation_defect(d, ctx, 3)?;
    let apply = |v: &Vector<S>| d.apply_unchecked(v);
    let mul = |u: &Vector<S>, v: &Vector<S>| alg.mul(u, v);
    let mut entries = Vec::new();
    for w in canonical_monomials(ctx.basis(), 3) {
        let [x, y, z] = [0, 1, 2].map(|k| Vector::<S>::basis(w.factors()[k]));
        let (xy, yz, zx, yx) = (mul(&x, &y), mul(&y, &z), mul(&z, &x), mul(&y, &x));
        let xyz = mul(&xy, &z);
        let shared = apply(&xyz)
            .minus(&mul(&apply(&xy), &z))
            .plus(&mul(&xy, &apply(&z)))
            .minus(&mul(&apply(&yz), &x))
            .minus(&mul(&apply(&zx), &y))
            .plus(&mul(&zx, &apply(&y)));
        let literal = shared.plus(&mul(&yx, &apply(&x)));
        let corrected = shared.plus(&mul(&yz, &apply(&x)));
        entries.push(H3Entry {
            computed: h3.get(&w).cloned().unwrap_or_default(),
            monomial: w,
            literal,
            corrected,
        });
    }
    Ok(H3Comparison { entries })
}
