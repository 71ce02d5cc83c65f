//! The braiding `S = σ∘(ad⊗ad)(R)` on the adjoint square, recovered as the
//! unique intertwiner with the triangular shape of the R-matrix image, and
//! its spectral data.

mod twist;

pub use twist::{build_involutive_twist, verify_qybe, InvolutiveTwist, TwistComponent};

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::adjoint::{
    find_highest_weight_vectors, named_vectors, tensor_square_action, AdjointIndex, InvariantForm,
    VectorRole,
};
use crate::linalg::{rank, RowReducer, SolveOutcome};
use crate::operator::{vec_ops, SparseOperator, SparseVec};
use crate::repcore::{RepError, WeightModule};
use crate::report::VerificationReport;
use crate::ring::{ArithmeticMode, Exponent, QScalar, RingError};

#[derive(Debug, Error)]
pub enum BraidingError {
    #[error("the triangular intertwiner equations have no solution")]
    NoSolution,
    #[error("the triangular intertwiner is not unique ({free} free parameters)")]
    NonUniqueSolution { free: usize },
    #[error("{0}")]
    InvalidMode(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Record of the linear solve behind a [`BraidingOperator`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidingCertificate {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub root_order: String,
    pub nonzero_corrections: usize,
    /// `(identity, holds)` for every commutation residual that was checked.
    pub residuals: Vec<(String, bool)>,
}

impl BraidingCertificate {
    pub fn residuals_zero(&self) -> bool {
        self.residuals.iter().all(|r| r.1)
    }
}

#[derive(Clone, Debug)]
pub struct BraidingOperator {
    pub n: usize,
    pub mode: ArithmeticMode,
    /// `S = σ∘T`.
    pub s: SparseOperator,
    /// `T = (ad⊗ad)(R)`, the Cartan factor plus the raising correction.
    pub t: SparseOperator,
    pub cartan: SparseOperator,
    pub square: WeightModule,
    pub certificate: BraidingCertificate,
}

fn weights(n: usize) -> (AdjointIndex, Vec<Vec<i64>>) {
    let idx = AdjointIndex::new(n);
    let w = idx.basis.iter().map(|b| b.weight(n)).collect();
    (idx, w)
}

fn inner(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Whether `v` is a nonzero sum of positive roots (partial sums nonnegative).
pub fn is_positive_root_sum(v: &[i64]) -> bool {
    let mut partial = 0;
    for x in &v[..v.len() - 1] {
        partial += x;
        if partial < 0 {
            return false;
        }
    }
    v.iter().any(|&x| x != 0)
}

/// The flip `x⊗y ↦ y⊗x` as a permutation of tensor indices.
pub fn flip_permutation(d: usize) -> Vec<usize> {
    (0..d * d).map(|k| (k % d) * d + k / d).collect()
}

/// Diagonal operator `x⊗y ↦ q^{(λ(x), λ(y))} x⊗y` with the standard
/// ε-coordinate pairing. The trace part of the gl(n) Cartan element drops
/// out since adjoint weights have coordinate sum zero.
pub fn cartan_factor(n: usize, mode: &ArithmeticMode) -> SparseOperator {
    let (_, w) = weights(n);
    let mut diag = Vec::with_capacity(w.len() * w.len());
    for a in &w {
        for b in &w {
            diag.push(mode.q_pow(inner(a, b)));
        }
    }
    SparseOperator::diagonal(diag)
}

/// Solves for `T` with `T Δ(u) = σΔ(u)σ T` for `u ∈ {e_i, f_i}`, where
/// `T` is the Cartan factor plus a correction sending `x⊗y` only to
/// `x'⊗y'` with `λ(x') - λ(x)` a nonzero sum of positive roots and total
/// weight preserved. Returns `S = σ T`.
pub fn construct_braiding(
    n: usize,
    mode: &ArithmeticMode,
) -> Result<BraidingOperator, BraidingError> {
    let sq = tensor_square_action(n, mode)?;
    let (_, w) = weights(n);
    let d = w.len();
    let dim = d * d;
    let cartan = cartan_factor(n, mode);
    let dc = cartan.diagonal_values();
    let perm = flip_permutation(d);

    let mut by_weight: HashMap<&[i64], Vec<usize>> = HashMap::new();
    for (k, x) in w.iter().enumerate() {
        by_weight.entry(x.as_slice()).or_default().push(k);
    }
    // unknown N[(a',b'), (a,b)]
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut by_col: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dim];
    let mut by_row: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dim];
    for a in 0..d {
        for b in 0..d {
            for a2 in 0..d {
                let dv: Vec<i64> = w[a2].iter().zip(&w[a]).map(|(x, y)| x - y).collect();
                if !is_positive_root_sum(&dv) {
                    continue;
                }
                let need: Vec<i64> = (0..n).map(|i| w[a][i] + w[b][i] - w[a2][i]).collect();
                for &b2 in by_weight
                    .get(need.as_slice())
                    .map(Vec::as_slice)
                    .unwrap_or(&[])
                {
                    let (r, c) = (a2 * d + b2, a * d + b);
                    let v = unknowns.len();
                    unknowns.push((r, c));
                    by_col[c].push((r, v));
                    by_row[r].push((c, v));
                }
            }
        }
    }

    let mut red = RowReducer::new();
    let mut equations = 0;
    for x in sq.gens.e.iter().chain(&sq.gens.f) {
        let xs = x.permute(&perm);
        let mut acc: HashMap<(usize, usize), (SparseVec, QScalar)> = HashMap::new();
        let mut add = |key: (usize, usize), var: Option<usize>, c: QScalar| {
            let ent = acc
                .entry(key)
                .or_insert_with(|| (SparseVec::new(), QScalar::zero()));
            match var {
                None => ent.1 += &c,
                Some(v) => {
                    let slot = ent.0.entry(v).or_insert_with(QScalar::zero);
                    *slot += &c;
                }
            }
        };
        // (D + N) X
        for (k, c, v) in x.entries() {
            add((k, c), None, &dc[k] * v);
            for &(r, var) in &by_col[k] {
                add((r, c), Some(var), v.clone());
            }
        }
        // - Xs (D + N)
        for (r, k, v) in xs.entries() {
            add((r, k), None, -&(v * &dc[k]));
            for &(c, var) in &by_row[k] {
                add((r, c), Some(var), -v);
            }
        }
        let mut keys: Vec<_> = acc.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let (mut lin, c) = acc.remove(&key).unwrap();
            lin.retain(|_, v| !v.is_zero());
            if lin.is_empty() && c.is_zero() {
                continue;
            }
            equations += 1;
            red.insert(lin, -c);
        }
    }
    let values = match red.solve(unknowns.len()) {
        SolveOutcome::Unique(v) => v,
        SolveOutcome::NoSolution => return Err(BraidingError::NoSolution),
        SolveOutcome::Underdetermined(free) => {
            return Err(BraidingError::NonUniqueSolution { free })
        }
    };
    let nonzero = values.iter().filter(|v| !v.is_zero()).count();
    let t = cartan.add(&SparseOperator::from_triplets(
        dim,
        dim,
        unknowns
            .iter()
            .zip(values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(&(r, c), v)| (r, c, v)),
    ));
    let s = t.permute_rows(&perm);

    let mut residuals = Vec::new();
    for i in 0..sq.gens.rank() {
        for (name, x) in [
            ("e", &sq.gens.e[i]),
            ("f", &sq.gens.f[i]),
            ("K", &sq.gens.qh[i]),
        ] {
            residuals.push((
                format!("[S, {name}{}] = 0", i + 1),
                s.compose(x) == x.compose(&s),
            ));
        }
    }
    let certificate = BraidingCertificate {
        unknowns: unknowns.len(),
        equations,
        rank: red.rank(),
        root_order: "dominance: first-factor weight raised by a nonzero sum of positive roots"
            .into(),
        nonzero_corrections: nonzero,
        residuals,
    };
    Ok(BraidingOperator {
        n,
        mode: mode.clone(),
        s,
        t,
        cartan,
        square: sq,
        certificate,
    })
}

impl BraidingOperator {
    pub fn dim(&self) -> usize {
        self.s.nrows()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.s.apply(v)
    }

    fn vector(&self, role: VectorRole) -> Option<SparseVec> {
        named_vectors(self.n, &self.mode, InvariantForm::Corrected)
            .into_iter()
            .find(|x| x.role == role)
            .map(|x| x.vector)
    }

    /// The combinations `q^{2-n} s¹ ± q^{-1} s²` of the two adjoint-weight vectors.
    pub fn adjoint_combination(&self, sign: i64) -> SparseVec {
        let s1 = self
            .vector(VectorRole::AdjointFirst)
            .expect("always present");
        let s2 = self
            .vector(VectorRole::AdjointSecond)
            .expect("always present");
        let mut v = vec_ops::scale(&s1, &self.mode.q_pow(2 - self.n as i64));
        vec_ops::axpy(
            &mut v,
            &(&QScalar::from_int(sign) * &self.mode.q_pow(-1)),
            &s2,
        );
        v
    }

    fn adjoint_weight(&self) -> Vec<Exponent> {
        VectorRole::AdjointFirst
            .weight(self.n)
            .into_iter()
            .map(Exponent::int)
            .collect()
    }
}

fn describe_mismatch(lhs: &SparseVec, rhs: &SparseVec, labels: &[String]) -> Option<String> {
    let diff = vec_ops::sub(lhs, rhs);
    diff.iter()
        .next()
        .map(|(k, c)| format!("difference {c} at {}", labels[*k]))
}

/// The action of `S` on the two adjoint-weight highest weight vectors:
/// `S s¹ = q^{-3} s²` and `S s² = q^{3-2n} s¹`. The top vector is also
/// checked to have eigenvalue `q²`.
pub fn verify_multiplicity_block(b: &BraidingOperator) -> VerificationReport {
    let n = b.n as i64;
    let mode = &b.mode;
    let mut rep = VerificationReport::new("braiding-multiplicity-block")
        .with_config("n", b.n)
        .with_config("arithmetic", mode.label());
    let s1 = b.vector(VectorRole::AdjointFirst).unwrap();
    let s2 = b.vector(VectorRole::AdjointSecond).unwrap();
    let top = b.vector(VectorRole::Top).unwrap();
    let labels = &b.square.labels;
    for (id, reference, v, expect) in [
        (
            "adjoint-1-image",
            "S s1 = q^-3 s2",
            &s1,
            vec_ops::scale(&s2, &mode.q_pow(-3)),
        ),
        (
            "adjoint-2-image",
            "S s2 = q^(3-2n) s1",
            &s2,
            vec_ops::scale(&s1, &mode.q_pow(3 - 2 * n)),
        ),
        (
            "top-eigenvalue",
            "S acts by q^2 on g_1n (x) g_1n",
            &top,
            vec_ops::scale(&top, &mode.q_pow(2)),
        ),
    ] {
        let got = b.apply(v);
        let w = describe_mismatch(&got, &expect, labels);
        rep.record(id, reference, w.is_none(), w);
    }
    rep.record(
        "certificate",
        "S commutes with every coproduct generator",
        b.certificate.residuals_zero(),
        Some(format!(
            "{} unknowns, {} equations, rank {}",
            b.certificate.unknowns, b.certificate.equations, b.certificate.rank
        )),
    );
    if b.n == 2 {
        rep.note(
            "n = 2: the two adjoint vectors are proportional, so the block is one-dimensional",
        );
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPair {
    pub sign: i64,
    pub eigenvalue: QScalar,
    pub vector: SparseVec,
    /// Whether `vector` is proportional to `q^{2-n}s¹ ± q^{-1}s²`.
    pub matches_formula: bool,
}

#[derive(Clone, Debug)]
pub struct EigenAnalysis {
    pub n: usize,
    pub pairs: Vec<EigenPair>,
    pub trace: QScalar,
    pub determinant: QScalar,
    pub report: VerificationReport,
}

/// Coordinates of `v` in the (independent) family `basis`.
fn coordinates(basis: &[SparseVec], v: &SparseVec) -> Option<Vec<QScalar>> {
    let mut keys: Vec<usize> = basis
        .iter()
        .flat_map(|b| b.keys().copied())
        .chain(v.keys().copied())
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let mut red = RowReducer::new();
    for k in keys {
        let row: SparseVec = basis
            .iter()
            .enumerate()
            .filter_map(|(j, b)| b.get(&k).map(|x| (j, x.clone())))
            .collect();
        red.insert(row, v.get(&k).cloned().unwrap_or_default());
    }
    match red.solve(basis.len()) {
        SolveOutcome::Unique(c) => Some(c),
        _ => None,
    }
}

fn combine(basis: &[SparseVec], coeffs: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (j, c) in coeffs {
        vec_ops::axpy(&mut out, c, &basis[*j]);
    }
    out
}

/// Restricts `S` to the highest weight vectors of weight `ω_1 + ω_{n-1}`
/// and finds its eigenvalues `±q^{-n}` and eigenvectors.
pub fn eigen_analysis(b: &BraidingOperator) -> Result<EigenAnalysis, BraidingError> {
    let n = b.n as i64;
    let mode = &b.mode;
    let mut rep = VerificationReport::new("braiding-eigen")
        .with_config("n", b.n)
        .with_config("arithmetic", mode.label());
    let basis = find_highest_weight_vectors(&b.square, &b.adjoint_weight())?;
    let k = basis.len();
    let mut m = vec![vec![QScalar::zero(); k]; k];
    for (j, v) in basis.iter().enumerate() {
        let c = coordinates(&basis, &b.apply(v)).ok_or(RepError::InvalidSpec(
            "S does not preserve the highest weight space".into(),
        ))?;
        for i in 0..k {
            m[i][j] = c[i].clone();
        }
    }
    let (trace, determinant) = match k {
        1 => (m[0][0].clone(), m[0][0].clone()),
        2 => (
            &m[0][0] + &m[1][1],
            &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        ),
        _ => return Err(RepError::InvalidSpec(format!("adjoint weight multiplicity {k}")).into()),
    };
    let lam = mode.q_pow(-n);
    let mut pairs = Vec::new();
    if k == 2 {
        rep.record(
            "trace",
            "the block has trace zero",
            trace.is_zero(),
            Some(format!("{trace}")),
        );
        let expect = -&mode.q_pow(-2 * n);
        rep.record(
            "determinant",
            "the block has determinant -q^-2n = -(q^-3)(q^(3-2n))",
            determinant == expect,
            Some(format!("{determinant}")),
        );
    }
    for sign in [1i64, -1] {
        let ev = &QScalar::from_int(sign) * &lam;
        let mut red = RowReducer::new();
        for (i, row) in m.iter().enumerate() {
            let r: SparseVec = row
                .iter()
                .enumerate()
                .map(|(j, x)| if i == j { (j, x - &ev) } else { (j, x.clone()) })
                .filter(|(_, x)| !x.is_zero())
                .collect();
            red.insert_vector(r);
        }
        let kernel = red.nullspace(k);
        let formula = b.adjoint_combination(sign);
        if kernel.is_empty() {
            let ok = k == 1 && sign == 1 && formula.is_empty();
            rep.record(
                format!("eigen-{}", if sign > 0 { "plus" } else { "minus" }),
                if k == 1 {
                    "for n = 2 the plus combination vanishes"
                } else {
                    "eigenvalue of the adjoint block"
                },
                ok,
                Some(format!("no eigenvector for {ev}")),
            );
            continue;
        }
        let vector = vec_ops::normalize_first(&combine(&basis, &kernel[0]));
        let matches = !formula.is_empty() && rank(&[vector.clone(), formula.clone()]) == 1;
        rep.record(
            format!("eigen-{}", if sign > 0 { "plus" } else { "minus" }),
            "eigenvector is proportional to q^(2-n) s1 +- q^-1 s2",
            matches && kernel.len() == 1,
            Some(format!("eigenvalue {ev}")),
        );
        pairs.push(EigenPair {
            sign,
            eigenvalue: ev,
            vector,
            matches_formula: matches,
        });
    }
    Ok(EigenAnalysis {
        n: b.n,
        pairs,
        trace,
        determinant,
        report: rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn cartan_factor_values() {
        let mode = ArithmeticMode::ExactIntegerWeight;
        let idx = AdjointIndex::new(3);
        let c = cartan_factor(3, &mode);
        let d = idx.dim();
        let top = idx.g(1, 3) * d + idx.g(1, 3);
        assert_eq!(c.get(top, top), QScalar::q_pow(2));
        let k = idx.g(1, 2) * d + idx.g(2, 3);
        assert_eq!(c.get(k, k), QScalar::q_pow(-1));
        let k = idx.t(1) * d + idx.g(1, 3);
        assert!(c.get(k, k).is_one());
    }

    #[test]
    fn rank_two_and_three() {
        for n in 2..=3 {
            let b = construct_braiding(n, &ArithmeticMode::ExactIntegerWeight).unwrap();
            assert!(b.certificate.residuals_zero());
            let rep = verify_multiplicity_block(&b);
            assert!(rep.all_passed(), "{}", rep.to_text());
            let e = eigen_analysis(&b).unwrap();
            assert!(e.report.all_passed(), "{}", e.report.to_text());
            let t = build_involutive_twist(&b).unwrap();
            assert!(t.report.all_passed(), "{}", t.report.to_text());
            assert!(verify_qybe(&b).all_passed());
        }
    }

    #[test]
    fn classical_limit_is_flip() {
        let b = construct_braiding(3, &ArithmeticMode::ExactIntegerWeight).unwrap();
        let one = rat(1);
        let s1 = b.s.map_values(|x| x.substitute(Some(&one), None)).unwrap();
        let d = AdjointIndex::new(3).dim();
        let flip = SparseOperator::identity(d * d).permute_rows(&flip_permutation(d));
        assert_eq!(s1, flip);
    }
}
