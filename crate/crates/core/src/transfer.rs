//! Cumulant bijections induced along a deformation retract.
//!
//! Given a retract `(A, ∂) ⇄ (C, ∂_C)` with homotopy `s`, a coderivation
//! `∂∞` on `SC` and a dg coalgebra map `ι: (SC, ∂̂∞) → (SA, d̃)` extending the
//! inclusion, the induced bijection is `τ̃_C = Ĩ ∘ τ̃ ∘ ι̂`. Here `d̃` is the
//! pull-conjugate of the coderivation extension of `∂`.
//!
//! `C` is a bare chain complex: the induced bijection is built without any
//! product on `C`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, GradedBasis, LinearMap, Vector};
use crate::coalgebra::{canonical_monomials, canonical_monomials_up_to, SElement, WedgeMonomial};
use crate::cumulant::{conjugate_endo, triangular_inverse, CumulantContext, Direction, TauTilde};
use crate::error::{Error, Result};
use crate::linsolve::{self, SparseRow};
use crate::morphisms::{
    check_coderivation, check_comorphism, check_on_monomials, compose, extend_coalgebra_map,
    extend_coderivation, taylor_family, LawReport, SMap, SMorphism, TaylorFamily, Witness,
};
use crate::scalar::Scalar;

/// A deformation retract of a dg commutative algebra onto a chain complex.
#[derive(Debug, Clone, PartialEq)]
pub struct RetractData<S> {
    algebra: Arc<Algebra<S>>,
    complex: Arc<GradedBasis>,
    differential: LinearMap<S>,
    complex_differential: LinearMap<S>,
    inclusion: LinearMap<S>,
    projection: LinearMap<S>,
    homotopy: LinearMap<S>,
}

fn expect_shape<S: Scalar>(
    name: &str,
    map: &LinearMap<S>,
    source: &Arc<GradedBasis>,
    target: &Arc<GradedBasis>,
    degree: i64,
) -> Result<()> {
    if map.source() != source || map.target() != target {
        return Err(Error::Mismatch(format!("{name} has the wrong source or target")));
    }
    if map.degree() != degree {
        return Err(Error::Mismatch(format!(
            "{name} must have degree {degree}, got {}",
            map.degree()
        )));
    }
    Ok(())
}

impl<S: Scalar> RetractData<S> {
    /// Checks shapes and degrees: `∂`, `∂_C` of degree `-1`, `i`, `I` of
    /// degree `0`, `s` of degree `+1`. The retract identities themselves are
    /// checked by [`validate_retract`].
    pub fn new(
        algebra: Arc<Algebra<S>>,
        complex: Arc<GradedBasis>,
        differential: LinearMap<S>,
        complex_differential: LinearMap<S>,
        inclusion: LinearMap<S>,
        projection: LinearMap<S>,
        homotopy: LinearMap<S>,
    ) -> Result<Self> {
        let a = algebra.basis();
        expect_shape("∂", &differential, a, a, -1)?;
        expect_shape("∂_C", &complex_differential, &complex, &complex, -1)?;
        expect_shape("i", &inclusion, &complex, a, 0)?;
        expect_shape("I", &projection, a, &complex, 0)?;
        expect_shape("s", &homotopy, a, a, 1)?;
        Ok(Self {
            algebra,
            complex,
            differential,
            complex_differential,
            inclusion,
            projection,
            homotopy,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra<S>> {
        &self.algebra
    }

    pub fn complex(&self) -> &Arc<GradedBasis> {
        &self.complex
    }

    pub fn differential(&self) -> &LinearMap<S> {
        &self.differential
    }

    pub fn complex_differential(&self) -> &LinearMap<S> {
        &self.complex_differential
    }

    pub fn inclusion(&self) -> &LinearMap<S> {
        &self.inclusion
    }

    pub fn projection(&self) -> &LinearMap<S> {
        &self.projection
    }

    pub fn homotopy(&self) -> &LinearMap<S> {
        &self.homotopy
    }

    /// The same retract with another homotopy.
    pub fn with_homotopy(&self, homotopy: LinearMap<S>) -> Result<Self> {
        expect_shape("s", &homotopy, self.algebra.basis(), self.algebra.basis(), 1)?;
        Ok(Self {
            homotopy,
            ..self.clone()
        })
    }
}

fn maps_agree<S: Scalar>(law: &str, lhs: &LinearMap<S>, rhs: &LinearMap<S>) -> LawReport {
    let witness = lhs
        .first_difference(rhs)
        .map(|i| Witness::generator(lhs.source().name(i)));
    LawReport {
        law: law.to_string(),
        checked: lhs.source().len(),
        witness,
    }
}

fn sum<S: Scalar>(a: &LinearMap<S>, b: &LinearMap<S>, c: i64) -> LinearMap<S> {
    a.add_scaled(&S::from_i64(c).expect("small integer"), b)
        .expect("shapes checked at construction")
}

fn comp<S: Scalar>(a: &LinearMap<S>, b: &LinearMap<S>) -> LinearMap<S> {
    a.compose(b).expect("shapes checked at construction")
}

/// Outcome of a list of identity checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckList {
    pub checks: Vec<LawReport>,
}

impl CheckList {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LawReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawReport> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, law: &str) -> Option<&LawReport> {
        self.checks.iter().find(|c| c.law == law)
    }
}

pub const LAW_RETRACTION: &str = "I∘i = id_C";
pub const LAW_INCLUSION_CHAIN: &str = "i∘∂_C = ∂∘i";
pub const LAW_PROJECTION_CHAIN: &str = "∂_C∘I = I∘∂";
pub const LAW_HOMOTOPY: &str = "∂s + s∂ = i∘I - id_A";
pub const LAW_SQUARE_ZERO: &str = "∂∘∂ = 0";
pub const LAW_COMPLEX_SQUARE_ZERO: &str = "∂_C∘∂_C = 0";

/// Checks the six retract identities exactly, each with a witness generator
/// on failure.
pub fn validate_retract<S: Scalar>(r: &RetractData<S>) -> CheckList {
    let a = r.algebra.basis();
    let (d, dc, i, p, s) = (
        &r.differential,
        &r.complex_differential,
        &r.inclusion,
        &r.projection,
        &r.homotopy,
    );
    let id_a = LinearMap::identity(a.clone());
    let id_c = LinearMap::identity(r.complex.clone());
    let zero_a = LinearMap::zero(a.clone(), a.clone(), -2);
    let zero_c = LinearMap::zero(r.complex.clone(), r.complex.clone(), -2);
    let checks = vec![
        maps_agree(LAW_RETRACTION, &comp(p, i), &id_c),
        maps_agree(LAW_INCLUSION_CHAIN, &comp(i, dc), &comp(d, i)),
        maps_agree(LAW_PROJECTION_CHAIN, &comp(dc, p), &comp(p, d)),
        maps_agree(
            LAW_HOMOTOPY,
            &sum(&comp(d, s), &comp(s, d), 1),
            &sum(&comp(i, p), &id_a, -1),
        ),
        maps_agree(LAW_SQUARE_ZERO, &comp(d, d), &zero_a),
        maps_agree(LAW_COMPLEX_SQUARE_ZERO, &comp(dc, dc), &zero_c),
    ];
    CheckList { checks }
}

/// A retract together with the coderivation `∂∞` on `SC` and the Taylor
/// coefficients of `ι: SC → SA`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferInput<S> {
    retract: RetractData<S>,
    d_infinity: TaylorFamily<S>,
    iota: TaylorFamily<S>,
}

impl<S: Scalar> TransferInput<S> {
    pub fn new(retract: RetractData<S>, d_infinity: TaylorFamily<S>, iota: TaylorFamily<S>) -> Result<Self> {
        let (a, c) = (retract.algebra.basis(), &retract.complex);
        if d_infinity.source() != c || d_infinity.target() != c {
            return Err(Error::Mismatch("∂∞ must map ∧ⁿC into C".into()));
        }
        if d_infinity.degree() != -1 {
            return Err(Error::Mismatch("∂∞ must have degree -1".into()));
        }
        if iota.source() != c || iota.target() != a {
            return Err(Error::Mismatch("ι must map ∧ⁿC into A".into()));
        }
        if iota.degree() != 0 {
            return Err(Error::NonzeroComorphismDegree(iota.degree()));
        }
        Ok(Self {
            retract,
            d_infinity,
            iota,
        })
    }

    pub fn retract(&self) -> &RetractData<S> {
        &self.retract
    }

    pub fn d_infinity(&self) -> &TaylorFamily<S> {
        &self.d_infinity
    }

    pub fn iota(&self) -> &TaylorFamily<S> {
        &self.iota
    }

    /// The same input with `ι` replaced.
    pub fn with_iota(&self, iota: TaylorFamily<S>) -> Result<Self> {
        Self::new(self.retract.clone(), self.d_infinity.clone(), iota)
    }
}

pub const LAW_IOTA_EXTENDS: &str = "ι¹ = i";
pub const LAW_D_INFINITY_COLEIBNIZ: &str = "∂̂∞ is a coderivation";
pub const LAW_D_INFINITY_SQUARE: &str = "∂̂∞∘∂̂∞ = 0";
pub const LAW_IOTA_COMORPHISM: &str = "ι̂ is a comorphism";
pub const LAW_IOTA_INTERTWINES: &str = "ι̂∘∂̂∞ = d̃∘ι̂";

/// Hypothesis report for a transfer input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferReport {
    pub cap: usize,
    pub retract: CheckList,
    pub input: CheckList,
}

impl TransferReport {
    pub fn passed(&self) -> bool {
        self.retract.passed() && self.input.passed()
    }

    /// One line listing every failed identity with its witness.
    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .retract
            .failures()
            .chain(self.input.failures())
            .map(|c| match &c.witness {
                Some(w) => format!("{} (witness {})", c.law, w.monomial.join("∧")),
                None => c.law.clone(),
            })
            .collect();
        if failed.is_empty() {
            format!("all hypotheses hold up to weight {}", self.cap)
        } else {
            failed.join("; ")
        }
    }
}

impl fmt::Display for TransferReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

fn terms<S: Scalar>(v: &SElement<S>) -> Vec<(WedgeMonomial, S)> {
    v.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// `d̃ = τ̃⁻¹ ∘ D ∘ τ̃` on `SA`, where `D` extends `∂` as a coderivation.
pub fn conjugated_differential<S: Scalar>(ctx: &CumulantContext<S>, d: &LinearMap<S>) -> Result<SMap<S>> {
    let bare = extend_coderivation(TaylorFamily::from_linear_map(d), ctx.cap())?;
    conjugate_endo(ctx, &bare, Direction::Pull)
}

fn intertwining_report<S, L, R>(law: &str, basis: &GradedBasis, cap: usize, lhs: L, rhs: R) -> LawReport
where
    S: Scalar,
    L: Fn(&WedgeMonomial) -> SElement<S>,
    R: Fn(&WedgeMonomial) -> SElement<S>,
{
    check_on_monomials(law, basis, cap, |w| terms(&lhs(w)), |w| terms(&rhs(w)))
}

/// Checks the hypotheses on `ι` and `∂∞` up to weight `cap`, after the
/// retract identities.
pub fn validate_transfer_input<S: Scalar>(input: &TransferInput<S>, cap: usize) -> Result<TransferReport> {
    let retract = validate_retract(&input.retract);
    let r = &input.retract;
    let c = &r.complex;
    let ctx = CumulantContext::new(&r.algebra, cap);
    let d_tilde = conjugated_differential(&ctx, &r.differential)?;
    let d_inf = extend_coderivation(input.d_infinity.clone(), cap)?;
    let iota = extend_coalgebra_map(input.iota.clone(), cap)?;
    let mut checks = vec![
        maps_agree(LAW_IOTA_EXTENDS, &input.iota.linear_part(), &r.inclusion),
        LawReport {
            law: LAW_D_INFINITY_COLEIBNIZ.into(),
            ..check_coderivation(&d_inf)
        },
    ];
    checks.push(intertwining_report(
        LAW_D_INFINITY_SQUARE,
        c,
        cap,
        |w| d_inf.apply(&d_inf.apply_monomial(w)),
        |_| SElement::zero(c.clone(), cap),
    ));
    checks.push(LawReport {
        law: LAW_IOTA_COMORPHISM.into(),
        ..check_comorphism(&iota)
    });
    checks.push(intertwining_report(
        LAW_IOTA_INTERTWINES,
        c,
        cap,
        |w| iota.apply(&d_inf.apply_monomial(w)),
        |w| d_tilde.apply(&iota.apply_monomial(w)),
    ));
    Ok(TransferReport {
        cap,
        retract,
        input: CheckList { checks },
    })
}

#[derive(Clone, Copy)]
enum Unknown {
    Iota(usize, usize),
    DInfinity(usize, usize),
}

/// Constructs `∂∞` and `ι` weight by weight from a retract.
///
/// The arity-one parts are `∂_C` and `i`. At weight `n` the unknowns are the
/// values of `ιⁿ` and `∂∞ⁿ` on canonical weight-`n` monomials of `C`, and the
/// equations are the weight-one part of `d̃∘ι̂ = ι̂∘∂̂∞` on those monomials.
/// The equations are affine in the unknowns and are solved exactly, with
/// free variables set to zero.
pub fn solve_transfer<S: Scalar>(retract: &RetractData<S>, cap: usize) -> Result<TransferInput<S>> {
    let a = retract.algebra.basis().clone();
    let c = retract.complex.clone();
    let ctx = CumulantContext::new(&retract.algebra, cap);
    let h = taylor_family(&conjugated_differential(&ctx, &retract.differential)?);
    let d_degree = retract.complex_differential.degree();
    let mut iota = TaylorFamily::from_linear_map(&retract.inclusion);
    let mut d_inf = TaylorFamily::from_linear_map(&retract.complex_differential);

    for n in 2..=cap {
        let monomials = canonical_monomials(&c, n);
        let mut unknowns = Vec::new();
        for (k, w) in monomials.iter().enumerate() {
            unknowns.extend(a.of_degree(w.degree()).into_iter().map(|j| Unknown::Iota(k, j)));
            unknowns.extend(
                c.of_degree(w.degree() + d_degree)
                    .into_iter()
                    .map(|j| Unknown::DInfinity(k, j)),
            );
        }
        let residual = |iota: &TaylorFamily<S>, d_inf: &TaylorFamily<S>| -> Result<Vec<Vector<S>>> {
            let iota_hat = extend_coalgebra_map(iota.clone(), cap)?;
            let d_hat = extend_coderivation(d_inf.clone(), cap)?;
            Ok(monomials
                .iter()
                .map(|w| {
                    let mut lhs = Vector::zero();
                    for (m, coeff) in iota_hat.apply_monomial(w).terms() {
                        lhs.add_scaled(coeff, &h.value(m));
                    }
                    lhs.minus(&iota_hat.apply(&d_hat.apply_monomial(w)).linear_part())
                })
                .collect())
        };
        let base = residual(&iota, &d_inf)?;
        let mut rows: BTreeMap<(usize, usize), SparseRow<S>> = BTreeMap::new();
        for (u, unknown) in unknowns.iter().enumerate() {
            let (mut iota_u, mut d_inf_u) = (iota.clone(), d_inf.clone());
            match *unknown {
                Unknown::Iota(k, j) => iota_u.set(monomials[k].clone(), Vector::basis(j))?,
                Unknown::DInfinity(k, j) => d_inf_u.set(monomials[k].clone(), Vector::basis(j))?,
            }
            for (k, (r, r0)) in residual(&iota_u, &d_inf_u)?.iter().zip(&base).enumerate() {
                for (j, coeff) in r.minus(r0).iter() {
                    rows.entry((k, j)).or_default().insert(u, coeff.clone());
                }
            }
        }
        // components untouched by any unknown still need r0 = 0
        for (k, r0) in base.iter().enumerate() {
            for (j, _) in r0.iter() {
                rows.entry((k, j)).or_default();
            }
        }
        let system: Vec<_> = rows
            .into_iter()
            .map(|((k, j), row)| (row, -base[k].coeff(j)))
            .collect();
        let x = linsolve::solve(&system, unknowns.len()).ok_or(Error::Unsolvable(n))?;
        let mut iota_values: BTreeMap<usize, Vector<S>> = BTreeMap::new();
        let mut d_inf_values: BTreeMap<usize, Vector<S>> = BTreeMap::new();
        for (unknown, value) in unknowns.iter().zip(x) {
            let (slot, k, j) = match *unknown {
                Unknown::Iota(k, j) => (&mut iota_values, k, j),
                Unknown::DInfinity(k, j) => (&mut d_inf_values, k, j),
            };
            slot.entry(k).or_default().add_term(j, value);
        }
        for (k, v) in iota_values {
            iota.set(monomials[k].clone(), v)?;
        }
        for (k, v) in d_inf_values {
            d_inf.set(monomials[k].clone(), v)?;
        }
    }
    TransferInput::new(retract.clone(), d_inf, iota)
}

pub const CERT_IDENTITY_ON_F1: &str = "(a) τ̃_C = id on F₁";
pub const CERT_COMORPHISM: &str = "(b) τ̃_C is a comorphism";
pub const CERT_INTERTWINES: &str = "(c) d_C∘τ̃_C = τ̃_C∘∂̂∞";
pub const CERT_IOTA_SQUARE: &str = "(c) ι̂∘∂̂∞ = d̃∘ι̂";
pub const CERT_PROJECTION_SQUARE: &str = "(c) Î∘D = d_C∘Î";
pub const CERT_TRIANGULAR: &str = "(d) τ̃_C(w) = w + lower weights";
pub const CERT_INVERSE: &str = "(d) τ̃_C⁻¹∘τ̃_C = id = τ̃_C∘τ̃_C⁻¹";
pub const CERT_IOTA_INJECTIVE: &str = "ι̂ injective on F_W";

/// Certification of `τ̃_C = Î ∘ τ̃ ∘ ι̂` up to a weight cap.
#[derive(Debug, Clone, PartialEq)]
pub struct Certification<S> {
    pub cap: usize,
    pub checks: CheckList,
    pub map: SMap<S>,
    pub inverse: Option<SMap<S>>,
}

impl<S: Scalar> Certification<S> {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

fn is_triangular<S: Scalar>(map: &SMap<S>, w: &WedgeMonomial) -> bool {
    let image = map.apply_monomial(w);
    image.coeff(w) == S::one() && image.terms().all(|(m, _)| m == w || m.weight() < w.weight())
}

/// Builds `τ̃_C` and checks every certified property without first
/// validating the hypotheses; failures are reported, not raised.
pub fn certify<S: Scalar>(input: &TransferInput<S>, cap: usize) -> Result<Certification<S>> {
    let r = &input.retract;
    let a = r.algebra.basis().clone();
    let c = r.complex.clone();
    let ctx = CumulantContext::new(&r.algebra, cap);
    let iota = extend_coalgebra_map(input.iota.clone(), cap)?;
    let project = extend_coalgebra_map(TaylorFamily::from_linear_map(&r.projection), cap)?;
    let tau = TauTilde::new(r.algebra.clone(), cap);
    let map = compose(&project, &compose(&tau, &iota)?)?;

    let d_inf = extend_coderivation(input.d_infinity.clone(), cap)?;
    let d_c = extend_coderivation(TaylorFamily::from_linear_map(&r.complex_differential), cap)?;
    let d_a = extend_coderivation(TaylorFamily::from_linear_map(&r.differential), cap)?;
    let d_tilde = conjugated_differential(&ctx, &r.differential)?;

    let mut checks = vec![intertwining_report(
        CERT_IDENTITY_ON_F1,
        &c,
        1,
        |w| map.apply_monomial(w),
        |w| SElement::from_monomial(c.clone(), cap, w.clone()),
    )];
    checks.push(LawReport {
        law: CERT_COMORPHISM.into(),
        ..check_comorphism(&map)
    });
    checks.push(intertwining_report(
        CERT_INTERTWINES,
        &c,
        cap,
        |w| d_c.apply(&map.apply_monomial(w)),
        |w| map.apply(&d_inf.apply_monomial(w)),
    ));
    checks.push(intertwining_report(
        CERT_IOTA_SQUARE,
        &c,
        cap,
        |w| iota.apply(&d_inf.apply_monomial(w)),
        |w| d_tilde.apply(&iota.apply_monomial(w)),
    ));
    checks.push(intertwining_report(
        CERT_PROJECTION_SQUARE,
        &a,
        cap,
        |w| project.apply(&d_a.apply_monomial(w)),
        |w| d_c.apply(&project.apply_monomial(w)),
    ));
    let triangular = check_on_monomials(CERT_TRIANGULAR, &c, cap, |w| is_triangular(&map, w), |_| true);
    let inverse = triangular.passed().then(|| triangular_inverse(&map));
    checks.push(triangular);
    checks.push(match &inverse {
        Some(inv) => {
            let id = SMap::identity(c.clone(), cap);
            let left = compose(inv, &map)?;
            let right = compose(&map, inv)?;
            check_on_monomials(
                CERT_INVERSE,
                &c,
                cap,
                |w| (terms(&left.apply_monomial(w)), terms(&right.apply_monomial(w))),
                |w| {
                    let e = terms(&id.apply_monomial(w));
                    (e.clone(), e)
                },
            )
        }
        None => LawReport {
            law: CERT_INVERSE.into(),
            checked: 0,
            witness: Some(Witness {
                monomial: Vec::new(),
                weight: 0,
            }),
        },
    });
    checks.push(injectivity(&iota, &c, &a, cap));
    Ok(Certification {
        cap,
        checks: CheckList { checks },
        map,
        inverse,
    })
}

/// Rank test: the images of all canonical monomials of `SC` up to the cap
/// are linearly independent in `SA`.
fn injectivity<S: Scalar, M: SMorphism<S>>(
    iota: &M,
    c: &GradedBasis,
    a: &GradedBasis,
    cap: usize,
) -> LawReport {
    let target_index: BTreeMap<WedgeMonomial, usize> = canonical_monomials_up_to(a, cap)
        .into_iter()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect();
    let sources = canonical_monomials_up_to(c, cap);
    let rows: Vec<SparseRow<S>> = sources
        .iter()
        .map(|w| {
            iota.apply_monomial(w)
                .terms()
                .map(|(m, coeff)| (target_index[m], coeff.clone()))
                .collect()
        })
        .collect();
    let rank = linsolve::rank(&rows);
    LawReport {
        law: CERT_IOTA_INJECTIVE.into(),
        checked: sources.len(),
        witness: (rank < sources.len()).then(|| Witness {
            monomial: vec![format!("rank {rank} < {}", sources.len())],
            weight: 0,
        }),
    }
}

/// The induced cumulant bijection with its Taylor family, inverse and
/// certification.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedBijection<S> {
    pub map: SMap<S>,
    pub family: TaylorFamily<S>,
    pub inverse: Option<SMap<S>>,
    pub report: TransferReport,
    pub certification: CheckList,
}

/// Validates the hypotheses, refusing to proceed if any fails, then builds
/// and certifies `τ̃_C`.
pub fn induced_cumulant_bijection<S: Scalar>(
    input: &TransferInput<S>,
    cap: usize,
) -> Result<InducedBijection<S>> {
    let report = validate_transfer_input(input, cap)?;
    if !report.passed() {
        return Err(Error::TransferHypotheses(Box::new(report)));
    }
    let cert = certify(input, cap)?;
    Ok(InducedBijection {
        family: taylor_family(&cert.map),
        map: cert.map,
        inverse: cert.inverse,
        report,
        certification: cert.checks,
    })
}
