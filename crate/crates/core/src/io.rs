//! JSON documents for algebras, maps, symmetric-coalgebra elements, Taylor
//! families, moment sequences and retracts. Scalars travel as strings
//! `"p/q"` or `"p"`; generators and monomial factors are referred to by name.
//!
//! Output values are built on `serde_json::Value`, whose objects keep their
//! keys sorted, so equal inputs serialize to identical bytes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Algebra, Generator, GradedBasis, LinearMap, Vector};
use crate::coalgebra::{normalize_monomial, SElement, WedgeMonomial};
use crate::error::{Error, Result};
use crate::morphisms::{LawReport, TaylorFamily};
use crate::probability::MomentSequence;
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::transfer::{CheckList, RetractData};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub gen: String,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub left: String,
    pub right: String,
    pub value: Vec<TermDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub generators: Vec<GeneratorDoc>,
    #[serde(default)]
    pub products: Vec<ProductDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub generators: Vec<GeneratorDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub gen: String,
    pub value: Vec<TermDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearMapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Value>,
    pub degree: i64,
    #[serde(default)]
    pub entries: Vec<EntryDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SElementTermDoc {
    pub monomial: Vec<String>,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaylorEntryDoc {
    pub monomial: Vec<String>,
    pub value: Vec<TermDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaylorFamilyDoc {
    pub degree: i64,
    #[serde(default)]
    pub arities: BTreeMap<String, Vec<TaylorEntryDoc>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentsDoc {
    pub moments: Vec<String>,
}

/// `{"algebra", "complex", "d", "d_c", "i", "I", "s"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RetractDoc {
    pub algebra: AlgebraDoc,
    pub complex: ComplexDoc,
    pub d: LinearMapDoc,
    pub d_c: LinearMapDoc,
    pub i: LinearMapDoc,
    #[serde(rename = "I")]
    pub projection: LinearMapDoc,
    pub s: LinearMapDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferDoc {
    pub retract: RetractDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_infinity: Option<TaylorFamilyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iota: Option<TaylorFamilyDoc>,
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

fn basis_from_docs(generators: &[GeneratorDoc]) -> Result<GradedBasis> {
    GradedBasis::new(
        generators
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.degree))
            .collect(),
    )
}

fn generator_docs(basis: &GradedBasis) -> Vec<GeneratorDoc> {
    basis
        .generators()
        .iter()
        .map(|g| GeneratorDoc {
            name: g.name.clone(),
            degree: g.degree,
        })
        .collect()
}

pub fn vector_from_docs(basis: &GradedBasis, terms: &[TermDoc]) -> Result<Vector<Rational>> {
    let mut v = Vector::zero();
    for t in terms {
        v.add_term(basis.index_of(&t.gen)?, parse_rational(&t.coeff)?);
    }
    Ok(v)
}

pub fn vector_docs(basis: &GradedBasis, v: &Vector<Rational>) -> Vec<TermDoc> {
    v.iter()
        .map(|(i, c)| TermDoc {
            gen: basis.name(i).to_string(),
            coeff: format_rational(c),
        })
        .collect()
}

pub fn algebra_from_doc(doc: &AlgebraDoc) -> Result<Algebra<Rational>> {
    let basis = basis_from_docs(&doc.generators)?;
    let mut products = Vec::with_capacity(doc.products.len());
    for p in &doc.products {
        products.push((
            basis.index_of(&p.left)?,
            basis.index_of(&p.right)?,
            vector_from_docs(&basis, &p.value)?,
        ));
    }
    Algebra::from_products(basis, products)
}

/// Every nonzero entry of the product table.
pub fn algebra_doc(alg: &Algebra<Rational>) -> AlgebraDoc {
    let b = alg.basis();
    let mut products = Vec::new();
    for i in 0..b.len() {
        for j in 0..b.len() {
            let v = alg.product_of(i, j);
            if !v.is_zero() {
                products.push(ProductDoc {
                    left: b.name(i).into(),
                    right: b.name(j).into(),
                    value: vector_docs(b, v),
                });
            }
        }
    }
    AlgebraDoc {
        generators: generator_docs(b),
        products,
    }
}

pub fn parse_algebra(text: &str) -> Result<Algebra<Rational>> {
    algebra_from_doc(&from_json(text)?)
}

pub fn linear_map_from_doc(
    doc: &LinearMapDoc,
    source: &Arc<GradedBasis>,
    target: &Arc<GradedBasis>,
) -> Result<LinearMap<Rational>> {
    let mut columns: BTreeMap<usize, Vector<Rational>> = BTreeMap::new();
    for entry in &doc.entries {
        let i = source.index_of(&entry.gen)?;
        if columns
            .insert(i, vector_from_docs(target, &entry.value)?)
            .is_some()
        {
            return Err(Error::Schema(format!("map entry {:?} given twice", entry.gen)));
        }
    }
    LinearMap::new(source.clone(), target.clone(), doc.degree, columns)
}

pub fn linear_map_doc(m: &LinearMap<Rational>) -> LinearMapDoc {
    LinearMapDoc {
        source: None,
        target: None,
        degree: m.degree(),
        entries: m
            .columns()
            .map(|(i, v)| EntryDoc {
                gen: m.source().name(i).into(),
                value: vector_docs(m.target(), v),
            })
            .collect(),
    }
}

pub fn parse_linear_map(
    text: &str,
    source: &Arc<GradedBasis>,
    target: &Arc<GradedBasis>,
) -> Result<LinearMap<Rational>> {
    linear_map_from_doc(&from_json(text)?, source, target)
}

fn factor_indices(basis: &GradedBasis, names: &[String]) -> Result<Vec<usize>> {
    if names.is_empty() {
        return Err(Error::Schema("empty monomial".into()));
    }
    names.iter().map(|n| basis.index_of(n)).collect()
}

/// Parses `[{"monomial": [...], "coeff": "p/q"}, ..]`; factors may come in
/// any order and are normalized with their Koszul sign.
pub fn selement_from_docs(
    basis: &Arc<GradedBasis>,
    cap: usize,
    terms: &[SElementTermDoc],
) -> Result<SElement<Rational>> {
    let mut out = SElement::zero(basis.clone(), cap);
    for t in terms {
        let factors = factor_indices(basis, &t.monomial)?;
        if factors.len() > cap {
            return Err(Error::OutOfRange {
                what: "monomial weight",
                value: factors.len(),
                range: format!("1..={cap}"),
            });
        }
        let c = parse_rational(&t.coeff)?;
        if let Some((m, sign)) = normalize_monomial::<Rational>(basis, &factors)? {
            out.add_term(m, sign * c);
        }
    }
    Ok(out)
}

pub fn selement_docs(v: &SElement<Rational>) -> Vec<SElementTermDoc> {
    v.terms()
        .map(|(m, c)| SElementTermDoc {
            monomial: m.names(v.basis()),
            coeff: format_rational(c),
        })
        .collect()
}

pub fn taylor_family_from_doc(
    doc: &TaylorFamilyDoc,
    source: &Arc<GradedBasis>,
    target: &Arc<GradedBasis>,
) -> Result<TaylorFamily<Rational>> {
    let mut family = TaylorFamily::new(source.clone(), target.clone(), doc.degree);
    for (arity, entries) in &doc.arities {
        let n: usize = arity
            .parse()
            .map_err(|_| Error::Schema(format!("arity key {arity:?} is not a number")))?;
        for entry in entries {
            let factors = factor_indices(source, &entry.monomial)?;
            if factors.len() != n {
                return Err(Error::Schema(format!(
                    "monomial {:?} listed under arity {n}",
                    entry.monomial
                )));
            }
            family.set_factors(&factors, vector_from_docs(target, &entry.value)?)?;
        }
    }
    Ok(family)
}

pub fn taylor_family_doc(family: &TaylorFamily<Rational>) -> TaylorFamilyDoc {
    let arities = family
        .tables()
        .filter(|(_, t)| !t.is_empty())
        .map(|(n, table)| {
            let entries = table
                .iter()
                .map(|(m, v)| TaylorEntryDoc {
                    monomial: m.names(family.source()),
                    value: vector_docs(family.target(), v),
                })
                .collect();
            (n.to_string(), entries)
        })
        .collect();
    TaylorFamilyDoc {
        degree: family.degree(),
        arities,
    }
}

pub fn parse_moments(text: &str) -> Result<MomentSequence<Rational>> {
    let doc: MomentsDoc = from_json(text)?;
    let moments = doc
        .moments
        .iter()
        .map(|m| parse_rational(m))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentSequence::new(moments))
}

pub fn retract_from_doc(doc: &RetractDoc) -> Result<RetractData<Rational>> {
    let alg = Arc::new(algebra_from_doc(&doc.algebra)?);
    let a = alg.basis().clone();
    let c = Arc::new(basis_from_docs(&doc.complex.generators)?);
    RetractData::new(
        alg,
        c.clone(),
        linear_map_from_doc(&doc.d, &a, &a)?,
        linear_map_from_doc(&doc.d_c, &c, &c)?,
        linear_map_from_doc(&doc.i, &c, &a)?,
        linear_map_from_doc(&doc.projection, &a, &c)?,
        linear_map_from_doc(&doc.s, &a, &a)?,
    )
}

pub fn retract_doc(r: &RetractData<Rational>) -> RetractDoc {
    RetractDoc {
        algebra: algebra_doc(r.algebra()),
        complex: ComplexDoc {
            generators: generator_docs(r.complex()),
        },
        d: linear_map_doc(r.differential()),
        d_c: linear_map_doc(r.complex_differential()),
        i: linear_map_doc(r.inclusion()),
        projection: linear_map_doc(r.projection()),
        s: linear_map_doc(r.homotopy()),
    }
}

/// A parsed transfer document; `∂∞` and `ι` may be left out for the solver
/// to fill in.
pub struct TransferDocument {
    pub retract: RetractData<Rational>,
    pub d_infinity: Option<TaylorFamily<Rational>>,
    pub iota: Option<TaylorFamily<Rational>>,
}

pub fn transfer_from_doc(doc: &TransferDoc) -> Result<TransferDocument> {
    let retract = retract_from_doc(&doc.retract)?;
    let c = retract.complex().clone();
    let a = retract.algebra().basis().clone();
    let d_infinity = doc
        .d_infinity
        .as_ref()
        .map(|d| taylor_family_from_doc(d, &c, &c))
        .transpose()?;
    let iota = doc
        .iota
        .as_ref()
        .map(|d| taylor_family_from_doc(d, &c, &a))
        .transpose()?;
    Ok(TransferDocument {
        retract,
        d_infinity,
        iota,
    })
}

pub fn parse_transfer(text: &str) -> Result<TransferDocument> {
    transfer_from_doc(&from_json(text)?)
}

/// Accepts either a transfer document or a bare retract document.
pub fn parse_retract_or_transfer(text: &str) -> Result<TransferDocument> {
    let value: Value = from_json(text)?;
    if value.get("retract").is_some() {
        transfer_from_doc(&serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?)
    } else {
        let doc: RetractDoc = serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
        Ok(TransferDocument {
            retract: retract_from_doc(&doc)?,
            d_infinity: None,
            iota: None,
        })
    }
}

pub fn to_value<T: Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

pub fn monomial_value(basis: &GradedBasis, m: &WedgeMonomial) -> Value {
    json!(m.names(basis))
}

pub fn law_value(report: &LawReport) -> Value {
    json!({
        "law": report.law,
        "checked": report.checked,
        "passed": report.passed(),
        "witness": report.witness.as_ref().map(|w| json!({
            "monomial": w.monomial,
            "weight": w.weight,
        })),
    })
}

pub fn checklist_value(list: &CheckList) -> Value {
    Value::Array(list.checks.iter().map(law_value).collect())
}
