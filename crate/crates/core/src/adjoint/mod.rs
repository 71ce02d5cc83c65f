//! The q-adjoint module with basis `g_{i,j}` (i ≠ j), `t_i`, its tensor
//! square, highest weight vectors and the decomposition of the square.

mod decompose;
mod vectors;

pub use decompose::{
    decompose, dominant_label, find_highest_weight_vectors, Component, Decomposition,
};
pub use vectors::{
    expected_square_multiplicities, named_vectors, verify_prop3, HighestWeightVector,
    InvariantForm, TensorBuilder, VectorRole,
};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::operator::SparseOperator;
use crate::repcore::{tensor_product, ChevalleySet, RepError, WeightModule};
use crate::report::VerificationReport;
use crate::ring::{ArithmeticMode, Exponent, QScalar};

/// Basis element of the adjoint module (indices are 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AdjBasisElement {
    OffDiagonal(usize, usize),
    Cartan(usize),
}

impl AdjBasisElement {
    pub fn label(&self) -> String {
        match self {
            AdjBasisElement::OffDiagonal(i, j) => format!("g{i},{j}"),
            AdjBasisElement::Cartan(i) => format!("t{i}"),
        }
    }

    /// ε-coordinates: `ε_i - ε_j` for `g_{i,j}`, zero for `t_i`.
    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut w = vec![0; n];
        if let AdjBasisElement::OffDiagonal(i, j) = *self {
            w[i - 1] += 1;
            w[j - 1] -= 1;
        }
        w
    }

    pub fn parse(s: &str) -> Option<AdjBasisElement> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('t') {
            return rest.parse().ok().map(AdjBasisElement::Cartan);
        }
        let rest = s.strip_prefix('g')?;
        let (a, b) = rest.split_once(',')?;
        Some(AdjBasisElement::OffDiagonal(
            a.parse().ok()?,
            b.parse().ok()?,
        ))
    }
}

/// `g_{i,j}` in lexicographic order of `(i, j)`, then `t_1, ..., t_{n-1}`.
pub fn adjoint_basis(n: usize) -> Vec<AdjBasisElement> {
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push(AdjBasisElement::OffDiagonal(i, j));
            }
        }
    }
    out.extend((1..n).map(AdjBasisElement::Cartan));
    out
}

pub struct AdjointIndex {
    pub n: usize,
    pub basis: Vec<AdjBasisElement>,
    index: HashMap<AdjBasisElement, usize>,
}

impl AdjointIndex {
    pub fn new(n: usize) -> Self {
        let basis = adjoint_basis(n);
        let index = basis.iter().enumerate().map(|(k, b)| (*b, k)).collect();
        AdjointIndex { n, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn of(&self, b: AdjBasisElement) -> usize {
        self.index[&b]
    }

    pub fn g(&self, i: usize, j: usize) -> usize {
        self.of(AdjBasisElement::OffDiagonal(i, j))
    }

    pub fn t(&self, i: usize) -> usize {
        self.of(AdjBasisElement::Cartan(i))
    }
}

/// The q-adjoint action. Nonzero matrix coefficients, for `a ∉ {i, i+1}`:
/// `e_i: g_{a,i} ↦ -g_{a,i+1}`, `g_{i+1,a} ↦ g_{i,a}`, `g_{i+1,i} ↦ t_i`,
/// `t_i ↦ -[2] g_{i,i+1}`, `t_{i±1} ↦ g_{i,i+1}`;
/// `f_i: g_{a,i+1} ↦ -g_{a,i}`, `g_{i,a} ↦ g_{i+1,a}`, `g_{i,i+1} ↦ -t_i`,
/// `t_i ↦ [2] g_{i+1,i}`, `t_{i±1} ↦ -g_{i+1,i}`.
pub fn adjoint_action(n: usize, mode: &ArithmeticMode) -> Result<WeightModule, RepError> {
    if n < 2 {
        return Err(RepError::InvalidSpec(
            "rank parameter n must be at least 2".into(),
        ));
    }
    let idx = AdjointIndex::new(n);
    let d = idx.dim();
    let two = mode.qint(2);
    let one = QScalar::one();
    let minus = QScalar::from_int(-1);
    let weights: Vec<Vec<i64>> = idx.basis.iter().map(|b| b.weight(n)).collect();
    let (mut e, mut f, mut h, mut qh, mut qhinv) = (vec![], vec![], vec![], vec![], vec![]);
    for i in 1..n {
        let mut te = Vec::new();
        let mut tf = Vec::new();
        for a in 1..=n {
            if a == i || a == i + 1 {
                continue;
            }
            te.push((idx.g(a, i + 1), idx.g(a, i), minus.clone()));
            te.push((idx.g(i, a), idx.g(i + 1, a), one.clone()));
            tf.push((idx.g(a, i), idx.g(a, i + 1), minus.clone()));
            tf.push((idx.g(i + 1, a), idx.g(i, a), one.clone()));
        }
        te.push((idx.t(i), idx.g(i + 1, i), one.clone()));
        te.push((idx.g(i, i + 1), idx.t(i), -&two));
        tf.push((idx.t(i), idx.g(i, i + 1), minus.clone()));
        tf.push((idx.g(i + 1, i), idx.t(i), two.clone()));
        for j in [i - 1, i + 1] {
            if (1..n).contains(&j) {
                te.push((idx.g(i, i + 1), idx.t(j), one.clone()));
                tf.push((idx.g(i + 1, i), idx.t(j), minus.clone()));
            }
        }
        let hv: Vec<Exponent> = weights
            .iter()
            .map(|w| Exponent::int(w[i - 1] - w[i]))
            .collect();
        e.push(SparseOperator::from_triplets(d, d, te));
        f.push(SparseOperator::from_triplets(d, d, tf));
        qh.push(SparseOperator::diagonal(
            hv.iter().map(|x| mode.q_pow(x.c)).collect(),
        ));
        qhinv.push(SparseOperator::diagonal(
            hv.iter().map(|x| mode.q_pow(-x.c)).collect(),
        ));
        h.push(hv);
    }
    Ok(WeightModule {
        name: format!("adjoint(n={n})"),
        n,
        mode: mode.clone(),
        labels: idx.basis.iter().map(AdjBasisElement::label).collect(),
        weights: weights
            .iter()
            .map(|w| w.iter().map(|&x| Exponent::int(x)).collect())
            .collect(),
        gens: ChevalleySet { e, f, h, qh, qhinv },
        truncation: None,
    })
}

/// The tensor square of the adjoint module, basis index `a·(n²-1) + b`.
pub fn tensor_square_action(n: usize, mode: &ArithmeticMode) -> Result<WeightModule, RepError> {
    let adj = adjoint_action(n, mode)?;
    tensor_product(&adj, &adj)
}

/// Integer weight of a basis vector (adjoint-derived modules only).
pub fn integer_weight(module: &WeightModule, k: usize) -> Vec<i64> {
    module.weights[k].iter().map(|e| e.c).collect()
}

/// The matrix of a basis element in the defining representation of sl(n):
/// `g_{i,j} ↦ E_{ij}`, `t_i ↦ E_{ii} - E_{i+1,i+1}`.
pub fn defining_matrix(n: usize, b: AdjBasisElement) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    match b {
        AdjBasisElement::OffDiagonal(i, j) => m[i - 1][j - 1] = 1,
        AdjBasisElement::Cartan(i) => {
            m[i - 1][i - 1] = 1;
            m[i][i] = -1;
        }
    }
    m
}

pub(crate) fn matrix_coordinates(idx: &AdjointIndex, m: &[Vec<i64>]) -> Vec<i64> {
    let n = idx.n;
    let mut out = vec![0; idx.dim()];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out[idx.g(i + 1, j + 1)] = m[i][j];
            }
        }
    }
    let mut partial = 0;
    for k in 1..n {
        partial += m[k - 1][k - 1];
        out[idx.t(k)] = partial;
    }
    out
}

pub(crate) fn bracket(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n).map(|k| a[i][k] * b[k][j] - b[i][k] * a[k][j]).sum();
        }
    }
    out
}

/// At `q = 1` the adjoint action must be the commutator action of sl(n)
/// with `e_i = E_{i,i+1}`, `f_i = E_{i+1,i}`, `h_i = E_{ii} - E_{i+1,i+1}`.
pub fn classical_structure_check(n: usize) -> Result<VerificationReport, RepError> {
    let mode = ArithmeticMode::Classical { mu: None };
    let adj = adjoint_action(n, &mode)?;
    let idx = AdjointIndex::new(n);
    let mut rep = VerificationReport::new("adjoint-classical").with_config("n", n);
    for i in 1..n {
        let e = defining_matrix(n, AdjBasisElement::OffDiagonal(i, i + 1));
        let f = defining_matrix(n, AdjBasisElement::OffDiagonal(i + 1, i));
        let h = defining_matrix(n, AdjBasisElement::Cartan(i));
        let hop = adj.gens.h_operator(i - 1, &mode)?;
        for (name, x, op) in [
            ("e", &e, &adj.gens.e[i - 1]),
            ("f", &f, &adj.gens.f[i - 1]),
            ("h", &h, &hop),
        ] {
            let mut bad = None;
            for (k, b) in idx.basis.iter().enumerate() {
                let expect = matrix_coordinates(&idx, &bracket(x, &defining_matrix(n, *b)));
                let got = op.column(k);
                let ok = (0..idx.dim()).all(|r| {
                    got.get(&r).cloned().unwrap_or_default() == QScalar::from_int(expect[r])
                });
                if !ok {
                    bad = Some(format!("ad {name}{i} on {}", b.label()));
                    break;
                }
            }
            rep.record(
                format!("classical-{name}{i}"),
                "q = 1 action equals the sl(n) commutator",
                bad.is_none(),
                bad,
            );
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::verify_uq_relations;
    use crate::ring::qint;

    #[test]
    fn adjoint_dimensions_and_entries() {
        for n in 2..=5 {
            assert_eq!(adjoint_basis(n).len(), n * n - 1);
        }
        let adj = adjoint_action(2, &ArithmeticMode::ExactIntegerWeight).unwrap();
        let idx = AdjointIndex::new(2);
        assert_eq!(adj.gens.e[0].get(idx.g(1, 2), idx.t(1)), -qint(2));
        for k in 0..adj.dim() {
            if let AdjBasisElement::Cartan(_) = idx.basis[k] {
                assert_eq!(adj.gens.h[0][k], Exponent::int(0));
            }
        }
    }

    #[test]
    fn adjoint_relations() {
        for n in 2..=4 {
            let adj = adjoint_action(n, &ArithmeticMode::ExactIntegerWeight).unwrap();
            let rep = verify_uq_relations(&adj);
            assert!(rep.all_passed(), "{}", rep.to_text());
        }
        assert!(classical_structure_check(3).unwrap().all_passed());
    }

    #[test]
    fn labels_parse() {
        for b in adjoint_basis(4) {
            assert_eq!(AdjBasisElement::parse(&b.label()), Some(b));
        }
    }
}
