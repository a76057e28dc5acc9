//! Exact Gaussian elimination on sparse rows.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A sparse row `Σ coeffs[j] x_j`.
pub type SparseRow<S> = BTreeMap<usize, S>;

/// Reduced row echelon form, kept as pivot column → row with `1` at the pivot.
struct Echelon<S> {
    pivots: BTreeMap<usize, (SparseRow<S>, S)>,
}

impl<S: Scalar> Echelon<S> {
    fn new() -> Self {
        Self {
            pivots: BTreeMap::new(),
        }
    }

    /// Reduces `row = rhs` against the current pivots and adds it if it is
    /// independent. Returns `false` for an inconsistent row `0 = c != 0`.
    fn insert(&mut self, mut row: SparseRow<S>, mut rhs: S) -> bool {
        for (&p, (prow, prhs)) in &self.pivots {
            let Some(c) = row.get(&p).cloned() else {
                continue;
            };
            axpy(&mut row, &-c.clone(), prow);
            rhs = rhs - c * prhs.clone();
        }
        let Some((&p, lead)) = row.iter().next() else {
            return rhs.is_zero();
        };
        let inv = S::one() / lead.clone();
        for v in row.values_mut() {
            *v = v.clone() * inv.clone();
        }
        rhs = rhs * inv;
        // keep the echelon reduced: eliminate p from earlier pivot rows
        for (prow, prhs) in self.pivots.values_mut() {
            if let Some(c) = prow.get(&p).cloned() {
                axpy(prow, &-c.clone(), &row);
                *prhs = prhs.clone() - c * rhs.clone();
            }
        }
        self.pivots.insert(p, (row, rhs));
        true
    }
}

fn axpy<S: Scalar>(row: &mut SparseRow<S>, c: &S, other: &SparseRow<S>) {
    for (&j, v) in other {
        let entry = row.entry(j).or_insert_with(S::zero);
        *entry = entry.clone() + c.clone() * v.clone();
        if entry.is_zero() {
            row.remove(&j);
        }
    }
}

/// Solves `rows[k] · x = rhs[k]` for `x` of length `unknowns`, returning the
/// solution with every free variable set to zero, or `None` if the system is
/// inconsistent.
pub fn solve<S: Scalar>(rows: &[(SparseRow<S>, S)], unknowns: usize) -> Option<Vec<S>> {
    let mut ech = Echelon::new();
    for (row, rhs) in rows {
        debug_assert!(row.keys().all(|&j| j < unknowns));
        if !ech.insert(row.clone(), rhs.clone()) {
            return None;
        }
    }
    let mut x = vec![S::zero(); unknowns];
    for (p, (_, rhs)) in ech.pivots {
        x[p] = rhs;
    }
    Some(x)
}

/// Rank of a list of sparse rows.
pub fn rank<S: Scalar>(rows: &[SparseRow<S>]) -> usize {
    let mut ech = Echelon::new();
    for row in rows {
        ech.insert(row.clone(), S::zero());
    }
    ech.pivots.len()
}
