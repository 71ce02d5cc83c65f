use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::adjoint::{
    bracket, defining_matrix, matrix_coordinates, named_vectors, tensor_square_action,
    AdjBasisElement, AdjointIndex, InvariantForm, VectorRole,
};
use crate::braidedmod::{act_quadratic, build_intertwiner, lowering_closure};
use crate::operator::{vec_ops, SparseOperator, SparseVec};
use crate::repcore::{ModuleSpec, RepError};
use crate::report::VerificationReport;
use crate::ring::{rat, ratio, ArithmeticMode, QScalar, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalConstants {
    pub n: usize,
    #[serde(with = "crate::ring::rational_text")]
    pub mu: Rational,
    #[serde(with = "crate::ring::rational_text")]
    pub hbar: Rational,
    /// `(n-1)/n μ²`.
    #[serde(with = "crate::ring::rational_text")]
    pub c0: Rational,
    /// `2(n-2)/n μ`.
    #[serde(with = "crate::ring::rational_text")]
    pub c1: Rational,
    /// `(n-1)/n μ(μ + nħ)`.
    #[serde(with = "crate::ring::rational_text")]
    pub c0_hbar: Rational,
    /// `(n-2)/n (2μ + nħ)`.
    #[serde(with = "crate::ring::rational_text")]
    pub c1_hbar: Rational,
}

pub fn classical_constants(n: usize, mu: &Rational, hbar: &Rational) -> ClassicalConstants {
    let ni = rat(n as i64);
    let a = ratio(n as i64 - 1, n as i64);
    let b = ratio(n as i64 - 2, n as i64);
    ClassicalConstants {
        n,
        mu: mu.clone(),
        hbar: hbar.clone(),
        c0: &a * mu * mu,
        c1: &b * rat(2) * mu,
        c0_hbar: &a * mu * (mu + &ni * hbar),
        c1_hbar: &b * (rat(2) * mu + &ni * hbar),
    }
}

/// `ρ̄_ħ = ħ ρ_{μ/ħ}` on the Verma module truncated at degree `N`, with `ħ`
/// carried as the variable `q`. Basis vectors are `(m_2, ..., m_n)`; the
/// matrix unit `E_{ij}` acts by `ħ m_j` for `j ≥ 2` and by `μ - ħ Σ_{k≥2} m_k`
/// for `j = 1`. Returns the operators indexed like the adjoint basis and the
/// degree of each basis vector.
pub fn renormalized_operators(
    n: usize,
    mu: &Rational,
    max_degree: usize,
) -> (Vec<SparseOperator>, Vec<usize>) {
    let mut states: Vec<Vec<i64>> = vec![vec![0; n - 1]];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for s in &states {
            for k in 0..n - 1 {
                let mut t = s.clone();
                t[k] += 1;
                next.push(t);
            }
        }
        states.extend(next);
        states.sort();
        states.dedup();
    }
    states.sort_by_key(|s| (s.iter().sum::<i64>(), std::cmp::Reverse(s.clone())));
    let index: HashMap<Vec<i64>, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let hbar = QScalar::q();
    let mu = QScalar::from_rational(mu.clone());
    // coefficient of slot j (1-based) on a state
    let slot = |s: &[i64], j: usize| -> QScalar {
        if j == 1 {
            &mu - &(&hbar * &QScalar::from_int(s.iter().sum()))
        } else {
            &hbar * &QScalar::from_int(s[j - 2])
        }
    };
    let dim = states.len();
    let unit = |i: usize, j: usize| -> SparseOperator {
        let mut trip = Vec::new();
        for (c, s) in states.iter().enumerate() {
            let v = slot(s, j);
            if v.is_zero() {
                continue;
            }
            let mut t = s.clone();
            if i >= 2 {
                t[i - 2] += 1;
            }
            if j >= 2 {
                t[j - 2] -= 1;
            }
            if let Some(&r) = index.get(&t) {
                trip.push((r, c, v));
            }
        }
        SparseOperator::from_triplets(dim, dim, trip)
    };
    let idx = AdjointIndex::new(n);
    let ops = idx
        .basis
        .iter()
        .map(|b| match *b {
            AdjBasisElement::OffDiagonal(i, j) => unit(i, j),
            AdjBasisElement::Cartan(i) => unit(i, i).sub(&unit(i + 1, i + 1)),
        })
        .collect();
    let degree = states
        .iter()
        .map(|s| s.iter().sum::<i64>() as usize)
        .collect();
    (ops, degree)
}

fn restricted_difference(a: &SparseOperator, b: &SparseOperator, keep: &[bool]) -> Option<String> {
    let diff = a.sub(b);
    let found = diff
        .entries()
        .find(|(_, c, _)| keep[*c])
        .map(|(r, c, v)| format!("entry ({r}, {c}) differs by {v}"));
    found
}

fn quadratic(ops: &[SparseOperator], v: &SparseVec) -> SparseOperator {
    let d = ops.len();
    let dim = ops[0].nrows();
    let mut out = SparseOperator::zero(dim, dim);
    for (k, c) in v {
        out = out.add_scaled(&ops[k / d].compose(&ops[k % d]), c);
    }
    out
}

fn linear(ops: &[SparseOperator], coords: &[Rational]) -> SparseOperator {
    let dim = ops[0].nrows();
    let mut out = SparseOperator::zero(dim, dim);
    for (k, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            out = out.add_scaled(&ops[k], &QScalar::from_rational(c.clone()));
        }
    }
    out
}

fn coordinates(idx: &AdjointIndex, m: &[Vec<i64>]) -> Vec<Rational> {
    matrix_coordinates(idx, m).into_iter().map(rat).collect()
}

/// At `q = 1`: the renormalized operators satisfy `[ρ̄x, ρ̄y] = ħ ρ̄[x, y]` as
/// polynomials in ħ, the fibre ħ = 0 is commutative, and the quadratic
/// relations hold with the deformed constants.
pub fn classical_limit_check(
    n: usize,
    mu: &Rational,
    max_degree: usize,
) -> Result<VerificationReport, RepError> {
    if n < 2 {
        return Err(RepError::InvalidSpec(
            "rank parameter n must be at least 2".into(),
        ));
    }
    if max_degree < 1 {
        return Err(RepError::TruncationOverflow {
            needed: 1,
            available: 0,
        });
    }
    let mut rep = VerificationReport::new("classical-limit")
        .with_config("n", n)
        .with_config("mu", crate::ring::format_rational(mu))
        .with_config("truncation", max_degree);
    let (ops, degree) = renormalized_operators(n, mu, max_degree);
    let keep: Vec<bool> = degree.iter().map(|d| d + 1 <= max_degree).collect();
    let idx = AdjointIndex::new(n);
    let hbar = QScalar::q();
    let zero = rat(0);
    let mut bracket_bad = None;
    let mut fibre_bad = None;
    for (a, x) in idx.basis.iter().enumerate() {
        for (b, y) in idx.basis.iter().enumerate() {
            let comm = ops[a].commutator(&ops[b]);
            let expect = linear(
                &ops,
                &coordinates(
                    &idx,
                    &bracket(&defining_matrix(n, *x), &defining_matrix(n, *y)),
                ),
            )
            .scale(&hbar);
            if bracket_bad.is_none() {
                if let Some(w) = restricted_difference(&comm, &expect, &keep) {
                    bracket_bad = Some(format!("[{}, {}]: {w}", x.label(), y.label()));
                }
            }
            if fibre_bad.is_none() {
                let at_zero = comm.map_values(|v| v.substitute(Some(&zero), None))?;
                if let Some(w) = restricted_difference(
                    &at_zero,
                    &SparseOperator::zero(at_zero.nrows(), at_zero.ncols()),
                    &keep,
                ) {
                    fibre_bad = Some(format!("[{}, {}]: {w}", x.label(), y.label()));
                }
            }
        }
    }
    rep.record(
        "hbar-bracket",
        "commutators of the renormalized operators are hbar times the sl(n) bracket",
        bracket_bad.is_none(),
        bracket_bad.or(Some(format!("{} pairs", idx.dim() * idx.dim()))),
    );
    rep.record(
        "commutative-fibre",
        "at hbar = 0 all commutators vanish",
        fibre_bad.is_none(),
        fibre_bad,
    );

    let mode = ArithmeticMode::Classical { mu: None };
    let k = classical_constants(n, mu, &zero);
    let ni = rat(n as i64);
    // c0(ω, ħ) and c1(ω, ħ) as polynomials in ħ
    let c0 = &QScalar::from_rational(k.c0.clone())
        + &hbar.scale(&(&ni * &ratio(n as i64 - 1, n as i64) * mu));
    let c1 = &QScalar::from_rational(k.c1.clone()) + &hbar.scale(&ratio(n as i64 - 2, 1));
    let dim = degree.len();
    let vector = |role: VectorRole| {
        named_vectors(n, &mode, InvariantForm::Corrected)
            .into_iter()
            .find(|x| x.role == role)
            .map(|x| x.vector)
            .unwrap_or_default()
    };
    let s0 = quadratic(&ops, &vector(VectorRole::Invariant));
    let w = restricted_difference(&s0, &SparseOperator::scalar(dim, &c0), &keep);
    rep.record(
        "casimir-deformed",
        "the invariant element acts by c0(omega, hbar) = (n-1)/n mu (mu + n hbar)",
        w.is_none(),
        w.or(Some(format!("{c0}"))),
    );
    let s1 = vector(VectorRole::AdjointFirst);
    let s2 = vector(VectorRole::AdjointSecond);
    let g1n = &ops[idx.g(1, n)];
    let mut plus = s1.clone();
    vec_ops::axpy(&mut plus, &QScalar::one(), &s2);
    let w = restricted_difference(&quadratic(&ops, &plus), &g1n.scale(&c1), &keep);
    rep.record(
        "plus-deformed",
        "s+ = s1 + s2 acts as c1(omega, hbar) g_1n with c1 = (n-2)/n (2 mu + n hbar)",
        w.is_none(),
        w.or(Some(format!("{c1}"))),
    );
    // s- = s1 - s2 is antisymmetric at q = 1 and acts through the bracket
    let mut minus = s1;
    vec_ops::axpy(&mut minus, &QScalar::from_int(-1), &s2);
    let d = idx.dim();
    let antisymmetric = minus.iter().all(|(key, c)| {
        let swapped = (key % d) * d + key / d;
        minus.get(&swapped).map(|x| x == &-c).unwrap_or(false)
    });
    let mut br = vec![rat(0); d];
    for (key, c) in &minus {
        let m = bracket(
            &defining_matrix(n, idx.basis[key / d]),
            &defining_matrix(n, idx.basis[key % d]),
        );
        let c = c.as_rational().expect("rational coefficient");
        for (slot, v) in coordinates(&idx, &m).into_iter().enumerate() {
            br[slot] += &c * v;
        }
    }
    let half = QScalar::from_rational(ratio(1, 2));
    let expect = linear(&ops, &br).scale(&(&hbar * &half));
    let w = restricted_difference(&quadratic(&ops, &minus), &expect, &keep);
    rep.record(
        "minus-bracket",
        "s- is antisymmetric and acts as hbar/2 times its bracket image",
        antisymmetric && w.is_none(),
        w,
    );
    let sq = tensor_square_action(n, &mode)?;
    for role in [
        VectorRole::FirstMixed,
        VectorRole::SecondMixed,
        VectorRole::Inner,
    ] {
        if !role.exists(n) {
            continue;
        }
        let desc = lowering_closure(&vector(role), &sq.gens.f);
        let zero_op = SparseOperator::zero(dim, dim);
        let bad = desc
            .iter()
            .find_map(|x| restricted_difference(&quadratic(&ops, x), &zero_op, &keep));
        rep.record(
            format!("annihilates-{}", role.id()),
            "the summand acts as zero together with its descendants",
            bad.is_none(),
            bad.or(Some(format!("{} descendants", desc.len()))),
        );
    }
    Ok(rep)
}

/// The deformed constants: reduction at ħ = 0 and agreement with the
/// q = 1 action on `V_{Mω1}` with `α = ħ`, `μ = Mħ`.
pub fn verify_classical_constants(n: usize, mu: i64) -> Result<VerificationReport, RepError> {
    let mut rep = VerificationReport::new("classical-constants")
        .with_config("n", n)
        .with_config("mu", mu);
    let m = rat(mu);
    let k0 = classical_constants(n, &m, &rat(0));
    rep.record(
        "hbar-zero-reduction",
        "c_i(omega, 0) = c_i(omega)",
        k0.c0 == k0.c0_hbar && k0.c1 == k0.c1_hbar,
        Some(format!("c0 = {}, c1 = {}", k0.c0, k0.c1)),
    );
    let mode = ArithmeticMode::Classical { mu: None };
    let idx = AdjointIndex::new(n);
    let vector = |role: VectorRole| {
        named_vectors(n, &mode, InvariantForm::Corrected)
            .into_iter()
            .find(|x| x.role == role)
            .map(|x| x.vector)
            .unwrap_or_default()
    };
    let s0 = vector(VectorRole::Invariant);
    let mut plus = vector(VectorRole::AdjointFirst);
    vec_ops::axpy(
        &mut plus,
        &QScalar::one(),
        &vector(VectorRole::AdjointSecond),
    );
    for weight in 1..=3i64 {
        let hbar = &m / rat(weight);
        let k = classical_constants(n, &m, &hbar);
        let psi = build_intertwiner(
            &ModuleSpec::finite(n, weight, mode.clone()),
            &QScalar::from_rational(hbar.clone()),
        )?;
        let dim = psi.dim();
        let cas = act_quadratic(&s0, &psi)?;
        let ok0 = cas == SparseOperator::scalar(dim, &QScalar::from_rational(k.c0_hbar.clone()));
        let g1n = psi.ops[idx.g(1, n)].scale(&QScalar::from_rational(k.c1_hbar.clone()));
        let ok1 = act_quadratic(&plus, &psi)? == g1n;
        rep.record(
            format!("casimir-weight-{weight}"),
            "with alpha = hbar on V(M w1), M = mu/hbar, the invariant acts by c0(omega, hbar)",
            ok0,
            Some(format!("hbar = {hbar}, c0 = {}", k.c0_hbar)),
        );
        rep.record(
            format!("plus-weight-{weight}"),
            "with alpha = hbar on V(M w1), s+ acts as c1(omega, hbar) g_1n",
            ok1,
            Some(format!("hbar = {hbar}, c1 = {}", k.c1_hbar)),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_n3() {
        let k = classical_constants(3, &rat(2), &rat(0));
        assert_eq!((k.c0, k.c1), (ratio(8, 3), ratio(4, 3)));
        let k = classical_constants(3, &rat(2), &rat(1));
        assert_eq!(k.c0_hbar, ratio(20, 3));
    }

    #[test]
    fn checks_pass() {
        for (n, mu) in [(2, 2), (3, 1), (3, 3), (4, 2)] {
            let rep = verify_classical_constants(n, mu).unwrap();
            assert!(rep.all_passed(), "{}", rep.to_text());
        }
        for n in 2..=4 {
            let rep = classical_limit_check(n, &rat(3), 3).unwrap();
            assert!(rep.all_passed(), "{}", rep.to_text());
        }
    }
}
