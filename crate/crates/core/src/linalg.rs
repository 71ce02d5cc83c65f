//! Exact sparse Gaussian elimination over the [`QScalar`] field.
//!
//! Rows are inserted one at a time. Each stored pivot row is normalised to
//! 1 at its smallest column and carries no entry in any pivot column that
//! existed when it was inserted, so back-substitution runs in reverse
//! insertion order.

use std::collections::BTreeMap;

use crate::operator::{vec_ops, SparseVec};
use crate::ring::QScalar;

#[derive(Clone, Debug, Default)]
pub struct RowReducer {
    /// pivot column -> row (without the pivot entry), plus right-hand side
    pivots: BTreeMap<usize, (SparseVec, QScalar)>,
    order: Vec<usize>,
    inconsistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<QScalar>),
    NoSolution,
    /// Rank deficiency: number of free variables.
    Underdetermined(usize),
}

impl RowReducer {
    pub fn new() -> Self {
        RowReducer::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Inserts the equation `row · x = rhs`; returns true if it raised the rank.
    pub fn insert(&mut self, mut row: SparseVec, mut rhs: QScalar) -> bool {
        loop {
            let Some((&col, _)) = row.iter().find(|(c, _)| self.pivots.contains_key(c)) else {
                break;
            };
            let c = row.remove(&col).unwrap();
            let (prow, prhs) = &self.pivots[&col];
            vec_ops::axpy(&mut row, &-&c, prow);
            rhs -= &(&c * prhs);
        }
        let Some((&col, _)) = row.iter().next() else {
            if !rhs.is_zero() {
                self.inconsistent = true;
            }
            return false;
        };
        let lead = row.remove(&col).unwrap();
        let inv = lead.inv().expect("nonzero pivot");
        let row = vec_ops::scale(&row, &inv);
        self.pivots.insert(col, (row, &rhs * &inv));
        self.order.push(col);
        true
    }

    /// Homogeneous insertion.
    pub fn insert_vector(&mut self, row: SparseVec) -> bool {
        self.insert(row, QScalar::zero())
    }

    /// Reduces a vector against the stored pivots; zero means it lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut row = v.clone();
        loop {
            let Some((&col, _)) = row.iter().find(|(c, _)| self.pivots.contains_key(c)) else {
                return row;
            };
            let c = row.remove(&col).unwrap();
            vec_ops::axpy(&mut row, &-&c, &self.pivots[&col].0);
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Solves for `nvars` unknowns with the free variables set as given.
    fn back_substitute(
        &self,
        nvars: usize,
        free: &BTreeMap<usize, QScalar>,
        homogeneous: bool,
    ) -> Vec<QScalar> {
        let mut x = vec![QScalar::zero(); nvars];
        for (k, v) in free {
            x[*k] = v.clone();
        }
        for &col in self.order.iter().rev() {
            let (row, rhs) = &self.pivots[&col];
            let mut acc = if homogeneous {
                QScalar::zero()
            } else {
                rhs.clone()
            };
            for (k, c) in row {
                if !x[*k].is_zero() {
                    acc -= &(c * &x[*k]);
                }
            }
            x[col] = acc;
        }
        x
    }

    pub fn solve(&self, nvars: usize) -> SolveOutcome {
        if self.inconsistent {
            return SolveOutcome::NoSolution;
        }
        let free = nvars - self.pivots.len();
        if free > 0 {
            return SolveOutcome::Underdetermined(free);
        }
        SolveOutcome::Unique(self.back_substitute(nvars, &BTreeMap::new(), false))
    }

    /// Basis of the solution space of the homogeneous system in `nvars` unknowns.
    pub fn nullspace(&self, nvars: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in 0..nvars {
            if self.pivots.contains_key(&f) {
                continue;
            }
            let mut free = BTreeMap::new();
            free.insert(f, QScalar::one());
            let x = self.back_substitute(nvars, &free, true);
            out.push(
                x.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        out
    }
}

/// Rank of a family of vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut red = RowReducer::new();
    for v in vectors {
        red.insert_vector(v.clone());
    }
    red.rank()
}

/// Whether two families span the same subspace.
pub fn same_span(a: &[SparseVec], b: &[SparseVec]) -> bool {
    let ra = rank(a);
    ra == rank(b) && rank(&[a, b].concat()) == ra
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries
            .iter()
            .map(|&(k, x)| (k, QScalar::from_int(x)))
            .collect()
    }

    #[test]
    fn unique_solution() {
        let mut red = RowReducer::new();
        // x + y = 3, x - y = 1
        red.insert(v(&[(0, 1), (1, 1)]), QScalar::from_int(3));
        red.insert(v(&[(0, 1), (1, -1)]), QScalar::from_int(1));
        assert_eq!(
            red.solve(2),
            SolveOutcome::Unique(vec![QScalar::from_int(2), QScalar::from_int(1)])
        );
    }

    #[test]
    fn inconsistency_and_nullspace() {
        let mut red = RowReducer::new();
        red.insert(v(&[(0, 1), (1, 1)]), QScalar::from_int(1));
        red.insert(v(&[(0, 2), (1, 2)]), QScalar::from_int(3));
        assert_eq!(red.solve(2), SolveOutcome::NoSolution);

        let mut hom = RowReducer::new();
        hom.insert_vector(v(&[(0, 1), (2, -1)]));
        let ns = hom.nullspace(3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            let dot =
                x.get(&0).cloned().unwrap_or_default() - x.get(&2).cloned().unwrap_or_default();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn later_pivot_in_earlier_column() {
        // first pivot is column 1 and mentions column 0, which pivots later
        let mut red = RowReducer::new();
        red.insert(v(&[(1, 1), (2, 1)]), QScalar::from_int(5));
        red.insert(v(&[(0, 1), (1, 1)]), QScalar::from_int(4));
        red.insert(v(&[(2, 1)]), QScalar::from_int(2));
        let SolveOutcome::Unique(x) = red.solve(3) else {
            panic!()
        };
        assert_eq!(
            x,
            vec![
                QScalar::from_int(1),
                QScalar::from_int(3),
                QScalar::from_int(2)
            ]
        );
    }

    #[test]
    fn spans() {
        let a = vec![v(&[(0, 1)]), v(&[(1, 1)])];
        let b = vec![v(&[(0, 1), (1, 1)]), v(&[(0, 1), (1, -1)])];
        assert!(same_span(&a, &b));
        assert!(!same_span(&a, &[v(&[(2, 1)])]));
        assert_eq!(rank(&b), 2);
    }
}
