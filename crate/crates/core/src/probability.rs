//! Classical cumulants of a single random variable as homomorphism defects
//! of its expectation functional.

use crate::coalgebra::WedgeMonomial;
use crate::cumulant::{CumulantContext, TauTilde};
use crate::error::{Error, Result};
use crate::fixtures::{expectation_map, point_algebra, truncated_polynomial};
use crate::morphisms::{extend_coalgebra_map, SMorphism, TaylorFamily};
use crate::scalar::{from_usize, Scalar};
use std::sync::Arc;

/// Moments `m_1, .., m_N` of one random variable.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence<S> {
    moments: Vec<S>,
}

impl<S: Scalar> MomentSequence<S> {
    pub fn new(moments: Vec<S>) -> Self {
        Self { moments }
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn moments(&self) -> &[S] {
        &self.moments
    }

    /// `m_k`, one-based.
    pub fn moment(&self, k: usize) -> &S {
        &self.moments[k - 1]
    }

    /// Moments of `X + c`: `E[(X+c)^k] = Σ_j C(k, j) c^{k-j} m_j`, `m_0 = 1`.
    pub fn shifted(&self, c: &S) -> Self {
        let moments = (1..=self.len())
            .map(|k| {
                let mut total = S::zero();
                let mut binom = S::one();
                for j in 0..=k {
                    let m_j = if j == 0 { S::one() } else { self.moment(j).clone() };
                    total = total + binom.clone() * pow(c, k - j) * m_j;
                    binom = binom * from_usize::<S>(k - j) / from_usize::<S>(j + 1);
                }
                total
            })
            .collect();
        Self { moments }
    }
}

fn pow<S: Scalar>(c: &S, e: usize) -> S {
    (0..e).fold(S::one(), |acc, _| acc * c.clone())
}

fn check_order<S: Scalar>(m: &MomentSequence<S>, n: usize) -> Result<()> {
    if n == 0 || n > m.len() {
        return Err(Error::OutOfRange {
            what: "cumulant order",
            value: n,
            range: format!("1..={}", m.len()),
        });
    }
    Ok(())
}

/// `κ_1, .., κ_n`, where `κ_j` is the coefficient of `gʲ(x, .., x)` for the
/// expectation `f(xᵏ) = m_k` on the truncated polynomial algebra.
pub fn cumulants_from_moments<S: Scalar>(m: &MomentSequence<S>, n: usize) -> Result<Vec<S>> {
    check_order(m, n)?;
    let source = Arc::new(truncated_polynomial::<S>(m.len()));
    let target = CumulantContext::new(&point_algebra::<S>(), n);
    let f = expectation_map(&source, target.algebra(), m.moments())?;
    let lift = extend_coalgebra_map(TaylorFamily::from_linear_map(&f), n)?;
    let tau_a = TauTilde::new(source.clone(), n);
    let x = source.basis();
    Ok((1..=n)
        .map(|j| {
            let w = WedgeMonomial::new(x, vec![0; j]).expect("x has degree 0");
            let g = target
                .tau_tilde_inverse(&lift.apply(&tau_a.apply_monomial(&w)))
                .linear_part();
            g.coeff(0)
        })
        .collect())
}

/// `κ_1, .., κ_n` by `κ_n = m_n - Σ_{k<n} C(n-1, k-1) κ_k m_{n-k}`.
pub fn oracle_cumulants<S: Scalar>(m: &MomentSequence<S>, n: usize) -> Result<Vec<S>> {
    check_order(m, n)?;
    let mut kappa: Vec<S> = Vec::with_capacity(n);
    for order in 1..=n {
        let mut value = m.moment(order).clone();
        let mut binom = S::one(); // C(order-1, k-1)
        for k in 1..order {
            value = value - binom.clone() * kappa[k - 1].clone() * m.moment(order - k).clone();
            binom = binom * from_usize::<S>(order - k) / from_usize::<S>(k);
        }
        kappa.push(value);
    }
    Ok(kappa)
}
