//! Sparse linear maps over [`QScalar`], stored row by row.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ring::{QScalar, RingError};

/// A sparse vector: index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, QScalar>;

/// A linear map `K^ncols -> K^nrows`. Each row holds `(column, value)`
/// pairs sorted by column, all values nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseOperator {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, QScalar)>>,
}

/// A located difference between two operators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryWitness {
    pub row: usize,
    pub col: usize,
    pub left: QScalar,
    pub right: QScalar,
}

impl SparseOperator {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseOperator {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseOperator::diagonal((0..n).map(|_| QScalar::one()).collect())
    }

    pub fn scalar(n: usize, c: &QScalar) -> Self {
        SparseOperator::diagonal(vec![c.clone(); n])
    }

    pub fn diagonal(values: Vec<QScalar>) -> Self {
        let n = values.len();
        let rows = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                if v.is_zero() {
                    Vec::new()
                } else {
                    vec![(i, v)]
                }
            })
            .collect();
        SparseOperator {
            nrows: n,
            ncols: n,
            rows,
        }
    }

    /// Builds from triplets; repeated positions are summed.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, QScalar)>,
    {
        let mut acc: Vec<BTreeMap<usize, QScalar>> = vec![BTreeMap::new(); nrows];
        for (r, c, v) in entries {
            assert!(
                r < nrows && c < ncols,
                "entry ({r}, {c}) outside {nrows}x{ncols}"
            );
            if v.is_zero() {
                continue;
            }
            match acc[r].get_mut(&c) {
                Some(x) => *x += &v,
                None => {
                    acc[r].insert(c, v);
                }
            }
        }
        let rows = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseOperator { nrows, ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, QScalar)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> QScalar {
        match self.rows[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(pos) => self.rows[r][pos].1.clone(),
            Err(_) => QScalar::zero(),
        }
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &QScalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn map_values<F>(&self, mut f: F) -> Result<Self, RingError>
    where
        F: FnMut(&QScalar) -> Result<QScalar, RingError>,
    {
        let mut rows = Vec::with_capacity(self.nrows);
        for row in &self.rows {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let w = f(v)?;
                if !w.is_zero() {
                    out.push((*c, w));
                }
            }
            rows.push(out);
        }
        Ok(SparseOperator {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return SparseOperator::zero(self.nrows, self.ncols);
        }
        if c.is_one() {
            return self.clone();
        }
        self.map_values(|v| Ok(v * c)).expect("scaling cannot fail")
    }

    pub fn neg(&self) -> Self {
        self.map_values(|v| Ok(-v)).expect("negation cannot fail")
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        assert_eq!(
            (self.nrows, self.ncols),
            (other.nrows, other.ncols),
            "shape mismatch"
        );
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_rows(a, b, sign))
            .collect();
        SparseOperator {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &QScalar) -> Self {
        self.add(&other.scale(c))
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "composition shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, QScalar> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.rows[*k] {
                        let t = a * b;
                        match acc.get_mut(c) {
                            Some(x) => *x += &t,
                            None => {
                                acc.insert(*c, t);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseOperator {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    /// Kronecker product; basis index `a * dim(B) + b`.
    pub fn kron(&self, other: &Self) -> Self {
        let nrows = self.nrows * other.nrows;
        let ncols = self.ncols * other.ncols;
        let mut rows = Vec::with_capacity(nrows);
        for ra in &self.rows {
            for rb in &other.rows {
                let mut out = Vec::with_capacity(ra.len() * rb.len());
                for (ca, va) in ra {
                    for (cb, vb) in rb {
                        out.push((ca * other.ncols + cb, va * vb));
                    }
                }
                rows.push(out);
            }
        }
        SparseOperator { nrows, ncols, rows }
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, QScalar)>> = vec![Vec::new(); self.ncols];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.clone()));
        }
        SparseOperator {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    /// Conjugation by a permutation of basis indices: entry `(r, c)` moves to
    /// `(perm[r], perm[c])`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        SparseOperator::from_triplets(
            self.nrows,
            self.ncols,
            self.entries()
                .map(|(r, c, v)| (perm[r], perm[c], v.clone())),
        )
    }

    /// Left multiplication by a permutation matrix: row `r` moves to `perm[r]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut rows = vec![Vec::new(); self.nrows];
        for (r, row) in self.rows.iter().enumerate() {
            rows[perm[r]] = row.clone();
        }
        SparseOperator {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = QScalar::zero();
            for (c, a) in row {
                if let Some(x) = v.get(c) {
                    acc += &(a * x);
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.rows.iter().enumerate() {
            if let Ok(pos) = row.binary_search_by_key(&c, |(k, _)| *k) {
                out.insert(r, row[pos].1.clone());
            }
        }
        out
    }

    /// Keeps only the columns selected by `keep`.
    pub fn restrict_columns<F: Fn(usize) -> bool>(&self, keep: F) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().filter(|(c, _)| keep(*c)).cloned().collect())
            .collect();
        SparseOperator {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    /// First entry (row-major) where the operators disagree.
    pub fn first_difference(&self, other: &Self) -> Option<EntryWitness> {
        assert_eq!(
            (self.nrows, self.ncols),
            (other.nrows, other.ncols),
            "shape mismatch"
        );
        for r in 0..self.nrows {
            let (a, b) = (&self.rows[r], &other.rows[r]);
            if a == b {
                continue;
            }
            let (mut i, mut j) = (0, 0);
            loop {
                let ca = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
                let cb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
                if ca == usize::MAX && cb == usize::MAX {
                    break;
                }
                let col = ca.min(cb);
                let left = if ca == col {
                    a[i].1.clone()
                } else {
                    QScalar::zero()
                };
                let right = if cb == col {
                    b[j].1.clone()
                } else {
                    QScalar::zero()
                };
                if ca == col {
                    i += 1;
                }
                if cb == col {
                    j += 1;
                }
                if left != right {
                    return Some(EntryWitness {
                        row: r,
                        col,
                        left,
                        right,
                    });
                }
            }
        }
        None
    }

    /// The scalar `c` with `self = c * Id`, if any.
    pub fn as_scalar(&self) -> Option<QScalar> {
        if self.nrows != self.ncols {
            return None;
        }
        let mut value: Option<QScalar> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != 1 || row[0].0 != r {
                return if self.is_zero() {
                    Some(QScalar::zero())
                } else {
                    None
                };
            }
            match &value {
                None => value = Some(row[0].1.clone()),
                Some(v) if *v != row[0].1 => return None,
                _ => {}
            }
        }
        Some(value.unwrap_or_else(QScalar::zero))
    }

    /// The scalar `c` with `self = c * other`, if any (`other` nonzero).
    pub fn ratio_to(&self, other: &Self) -> Option<QScalar> {
        let (r, c, v) = other.entries().next()?;
        let c0 = &self.get(r, c) / v;
        if self == &other.scale(&c0) {
            Some(c0)
        } else {
            None
        }
    }

    /// Diagonal entries (zero where absent).
    pub fn diagonal_values(&self) -> Vec<QScalar> {
        (0..self.nrows.min(self.ncols))
            .map(|i| self.get(i, i))
            .collect()
    }
}

fn merge_rows(
    a: &[(usize, QScalar)],
    b: &[(usize, QScalar)],
    negate: bool,
) -> Vec<(usize, QScalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            let v = if negate { -&b[j].1 } else { b[j].1.clone() };
            out.push((cb, v));
            j += 1;
        } else {
            let v = if negate {
                &a[i].1 - &b[j].1
            } else {
                &a[i].1 + &b[j].1
            };
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sparse vector helpers.
pub mod vec_ops {
    use super::SparseVec;
    use crate::ring::QScalar;

    pub fn axpy(acc: &mut SparseVec, c: &QScalar, v: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (k, x) in v {
            let t = c * x;
            let remove = match acc.get_mut(k) {
                Some(y) => {
                    *y += &t;
                    y.is_zero()
                }
                None => {
                    acc.insert(*k, t);
                    false
                }
            };
            if remove {
                acc.remove(k);
            }
        }
    }

    pub fn scale(v: &SparseVec, c: &QScalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        v.iter().map(|(k, x)| (*k, x * c)).collect()
    }

    pub fn sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = a.clone();
        axpy(&mut out, &QScalar::from_int(-1), b);
        out
    }

    /// Scales so the first nonzero coordinate is one.
    pub fn normalize_first(v: &SparseVec) -> SparseVec {
        match v.values().next() {
            None => SparseVec::new(),
            Some(lead) => {
                let inv = lead.inv().expect("nonzero lead");
                scale(v, &inv)
            }
        }
    }

    /// The scalar `c` with `a = c * b`, if any (`b` nonzero).
    pub fn ratio(a: &SparseVec, b: &SparseVec) -> Option<QScalar> {
        let (k, x) = b.iter().next()?;
        let c = &a.get(k).cloned().unwrap_or_default() / x;
        if scale(b, &c) == *a {
            Some(c)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qint;

    fn op(n: usize, t: &[(usize, usize, i64)]) -> SparseOperator {
        SparseOperator::from_triplets(
            n,
            n,
            t.iter().map(|&(r, c, v)| (r, c, QScalar::from_int(v))),
        )
    }

    #[test]
    fn products_and_commutators() {
        let e = op(2, &[(0, 1, 1)]);
        let f = op(2, &[(1, 0, 1)]);
        let h = op(2, &[(0, 0, 1), (1, 1, -1)]);
        assert_eq!(e.commutator(&f), h);
        assert_eq!(h.commutator(&e), e.scale(&QScalar::from_int(2)));
        assert!(e.compose(&e).is_zero());
    }

    #[test]
    fn kron_indexing() {
        let e = op(2, &[(0, 1, 1)]);
        let id = SparseOperator::identity(2);
        let k = e.kron(&id);
        assert_eq!(k.get(1, 3), QScalar::one());
        assert_eq!(k.get(0, 2), QScalar::one());
        assert_eq!(k.nnz(), 2);
    }

    #[test]
    fn witness_location() {
        let a = op(3, &[(1, 2, 1)]);
        let b = op(3, &[(1, 2, 2)]);
        let w = a.first_difference(&b).unwrap();
        assert_eq!((w.row, w.col), (1, 2));
        assert!(a.first_difference(&a).is_none());
    }

    #[test]
    fn scalar_detection() {
        let s = SparseOperator::scalar(3, &qint(2));
        assert_eq!(s.as_scalar(), Some(qint(2)));
        assert_eq!(op(2, &[(0, 0, 1)]).as_scalar(), None);
        assert_eq!(s.ratio_to(&SparseOperator::identity(3)), Some(qint(2)));
    }
}
