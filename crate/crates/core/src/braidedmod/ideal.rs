use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::adjoint::{
    adjoint_action, dominant_label, named_vectors, tensor_square_action, AdjBasisElement,
    AdjointIndex, InvariantForm, VectorRole,
};
use crate::linalg::RowReducer;
use crate::operator::{vec_ops, SparseOperator, SparseVec};
use crate::repcore::{compare, weyl_dim, RepError};
use crate::report::VerificationReport;
use crate::ring::{ArithmeticMode, Exponent, QScalar};

use super::Intertwiner;

/// An element of `C ⊕ g_q ⊕ g_q⊗²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedElement {
    pub n: usize,
    pub constant: QScalar,
    /// Adjoint basis index -> coefficient.
    pub linear: SparseVec,
    /// Tensor square index `a·(n²-1) + b` -> coefficient.
    pub quadratic: SparseVec,
}

impl MixedElement {
    pub fn zero(n: usize) -> Self {
        MixedElement {
            n,
            constant: QScalar::zero(),
            linear: SparseVec::new(),
            quadratic: SparseVec::new(),
        }
    }

    pub fn quadratic(n: usize, v: SparseVec) -> Self {
        MixedElement {
            quadratic: v,
            ..MixedElement::zero(n)
        }
    }

    fn d(&self) -> usize {
        self.n * self.n - 1
    }

    /// Single vector over `1 + d + d²` coordinates.
    pub fn flatten(&self) -> SparseVec {
        let d = self.d();
        let mut out = SparseVec::new();
        if !self.constant.is_zero() {
            out.insert(0, self.constant.clone());
        }
        out.extend(self.linear.iter().map(|(k, c)| (1 + k, c.clone())));
        out.extend(self.quadratic.iter().map(|(k, c)| (1 + d + k, c.clone())));
        out
    }

    pub fn from_flat(n: usize, v: &SparseVec) -> Self {
        let d = n * n - 1;
        let mut out = MixedElement::zero(n);
        for (&k, c) in v {
            if k == 0 {
                out.constant = c.clone();
            } else if k <= d {
                out.linear.insert(k - 1, c.clone());
            } else {
                out.quadratic.insert(k - 1 - d, c.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.is_empty() && self.quadratic.is_empty()
    }
}

impl Serialize for MixedElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let idx = AdjointIndex::new(self.n);
        let d = idx.dim();
        let lab = |k: usize| idx.basis[k].label();
        let linear: Vec<(String, String)> = self
            .linear
            .iter()
            .map(|(k, c)| (lab(*k), c.to_string()))
            .collect();
        let quadratic: Vec<(String, String, String)> = self
            .quadratic
            .iter()
            .map(|(k, c)| (lab(k / d), lab(k % d), c.to_string()))
            .collect();
        let mut st = s.serialize_struct("MixedElement", 3)?;
        st.serialize_field("constant", &self.constant.to_string())?;
        st.serialize_field("linear", &linear)?;
        st.serialize_field("quadratic", &quadratic)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// A highest weight vector of the square that must act as zero.
    HighestWeight,
    /// A highest weight vector of the square minus its (nonzero) image.
    Combination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealGenerator {
    pub label: String,
    pub kind: GeneratorKind,
    /// ε-coordinates.
    pub weight: Vec<i64>,
    pub element: MixedElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealGenerators {
    pub n: usize,
    pub mu: String,
    pub alpha: QScalar,
    pub generators: Vec<IdealGenerator>,
    /// The ideal is generated as a module, so descendants are included.
    pub descendant_closure: bool,
}

/// Scalars by which the distinguished quadratic vectors act.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticConstants {
    /// `α² qⁿ [n-1]/[n] [μ][μ+n]`, the value of the invariant vector.
    pub invariant: QScalar,
    /// `α q^{n-2} ([n-1][μ+n] - [μ]) / [n]`, factor of `Ψ(g_{1,n})` for `s¹`.
    pub first: QScalar,
    /// `α q ([n-1][μ] - [μ+n]) / [n]`, factor for `s²`.
    pub second: QScalar,
    /// `α ([n-1] - 1)/[n] ([μ+n] + [μ])`, factor for `s₊`.
    pub plus: QScalar,
    /// `α ([n-1] + 1)/[n] ([μ+n] - [μ])`, factor for `s₋`.
    pub minus: QScalar,
}

pub fn expected_constants(
    n: usize,
    mu: Exponent,
    alpha: &QScalar,
    mode: &ArithmeticMode,
) -> Result<QuadraticConstants, RepError> {
    let ni = n as i64;
    let bn_inv = mode.qint(ni).inv().map_err(RepError::Ring)?;
    let bm = mode.qint_exp(mu)?;
    let bmn = mode.qint_exp(mu.shift(ni))?;
    let b1 = mode.qint(ni - 1);
    let one = QScalar::one();
    let invariant = &(&(&(alpha * alpha) * &mode.q_pow(ni)) * &(&b1 * &bn_inv)) * &(&bm * &bmn);
    let first = &(&(alpha * &mode.q_pow(ni - 2)) * &(&(&b1 * &bmn) - &bm)) * &bn_inv;
    let second = &(&(alpha * &mode.q_pow(1)) * &(&(&b1 * &bm) - &bmn)) * &bn_inv;
    let plus = &(&(alpha * &(&b1 - &one)) * &bn_inv) * &(&bmn + &bm);
    let minus = &(&(alpha * &(&b1 + &one)) * &bn_inv) * &(&bmn - &bm);
    Ok(QuadraticConstants {
        invariant,
        first,
        second,
        plus,
        minus,
    })
}

fn check_depth(psi: &Intertwiner) -> Result<(), RepError> {
    match psi.spec.max_degree() {
        Some(nmax) if nmax < 2 => Err(RepError::TruncationOverflow {
            needed: 2,
            available: nmax,
        }),
        _ => Ok(()),
    }
}

/// `x⊗y ↦ Ψ(x) Ψ(y)`, the left factor acting last.
pub fn act_quadratic(v: &SparseVec, psi: &Intertwiner) -> Result<SparseOperator, RepError> {
    check_depth(psi)?;
    let d = AdjointIndex::new(psi.n()).dim();
    let mut out = SparseOperator::zero(psi.dim(), psi.dim());
    let mut k = v.iter().peekable();
    while let Some((&first, _)) = k.peek() {
        let a = first / d;
        let mut right = SparseVec::new();
        while let Some((&key, c)) = k.peek() {
            if key / d != a {
                break;
            }
            right.insert(key % d, (*c).clone());
            k.next();
        }
        out = out.add(&psi.ops[a].compose(&psi.linear(&right)));
    }
    Ok(out)
}

/// `c·Id + Σ Ψ(g) + Σ Ψ(x)Ψ(y)`.
pub fn act_mixed(x: &MixedElement, psi: &Intertwiner) -> Result<SparseOperator, RepError> {
    let dim = psi.dim();
    let mut out = SparseOperator::scalar(dim, &x.constant).add(&psi.linear(&x.linear));
    if !x.quadratic.is_empty() {
        out = out.add(&act_quadratic(&x.quadratic, psi)?);
    }
    Ok(out)
}

/// The invariant vector acts by the scalar `α² qⁿ [n-1]/[n] [μ][μ+n]`.
pub fn verify_casimir(psi: &Intertwiner) -> Result<VerificationReport, RepError> {
    let n = psi.n();
    let mode = psi.mode();
    let k = expected_constants(n, psi.mu(), &psi.alpha, mode)?;
    let mut rep = VerificationReport::new("casimir")
        .with_config("module", &psi.spec.label())
        .with_config("arithmetic", mode.label())
        .with_config("alpha", &psi.alpha);
    let s0 = role_vector(n, mode, VectorRole::Invariant, InvariantForm::Corrected);
    let op = act_quadratic(&s0, psi)?;
    let w = compare(
        &psi.module,
        2,
        &op,
        &SparseOperator::scalar(psi.dim(), &k.invariant),
    );
    rep.record(
        "invariant-scalar",
        "the invariant vector acts by alpha^2 q^n [n-1]/[n] [mu][mu+n]",
        w.is_none(),
        w.or(Some(format!("scalar {}", k.invariant))),
    );
    let unscaled = role_vector(n, mode, VectorRole::Invariant, InvariantForm::Unscaled);
    let op = act_quadratic(&unscaled, psi)?;
    let scalar = compare(
        &psi.module,
        2,
        &op,
        &SparseOperator::scalar(psi.dim(), &k.invariant),
    )
    .is_none();
    rep.note(format!(
        "with the unscaled i > j coefficients the invariant vector {} the expected scalar",
        if scalar {
            "still gives"
        } else {
            "does not give"
        }
    ));
    Ok(rep)
}

fn role_vector(
    n: usize,
    mode: &ArithmeticMode,
    role: VectorRole,
    form: InvariantForm,
) -> SparseVec {
    named_vectors(n, mode, form)
        .into_iter()
        .find(|x| x.role == role)
        .map(|x| x.vector)
        .unwrap_or_default()
}

/// The submodule generated by `start` under the given lowering operators.
pub fn lowering_closure(start: &SparseVec, lowering: &[SparseOperator]) -> Vec<SparseVec> {
    let mut red = RowReducer::new();
    let mut out = Vec::new();
    if start.is_empty() || !red.insert_vector(start.clone()) {
        return out;
    }
    out.push(start.clone());
    let mut queue = vec![start.clone()];
    while let Some(v) = queue.pop() {
        for f in lowering {
            let w = f.apply(&v);
            if !w.is_empty() && red.insert_vector(w.clone()) {
                out.push(w.clone());
                queue.push(w);
            }
        }
    }
    out
}

/// Images of the adjoint-weight vectors and of the vanishing summands.
pub fn verify_hwv_images(psi: &Intertwiner) -> Result<VerificationReport, RepError> {
    let n = psi.n();
    let mode = psi.mode();
    let k = expected_constants(n, psi.mu(), &psi.alpha, mode)?;
    let mut rep = VerificationReport::new("hwv-images")
        .with_config("module", &psi.spec.label())
        .with_config("arithmetic", mode.label())
        .with_config("alpha", &psi.alpha);
    let g1n = psi.op(AdjBasisElement::OffDiagonal(1, n)).clone();
    let s1 = role_vector(n, mode, VectorRole::AdjointFirst, InvariantForm::Corrected);
    let s2 = role_vector(n, mode, VectorRole::AdjointSecond, InvariantForm::Corrected);
    let combo = |sign: i64| {
        let mut v = vec_ops::scale(&s1, &mode.q_pow(2 - n as i64));
        vec_ops::axpy(&mut v, &(&QScalar::from_int(sign) * &mode.q_pow(-1)), &s2);
        v
    };
    for (id, reference, v, c) in [
        (
            "first-adjoint",
            "s1 acts as alpha q^(n-2) ([n-1][mu+n] - [mu])/[n] Psi(g_1n)",
            s1.clone(),
            &k.first,
        ),
        (
            "second-adjoint",
            "s2 acts as alpha q ([n-1][mu] - [mu+n])/[n] Psi(g_1n)",
            s2.clone(),
            &k.second,
        ),
        (
            "plus-combination",
            "s+ acts as alpha ([n-1] - 1)/[n] ([mu+n] + [mu]) Psi(g_1n)",
            combo(1),
            &k.plus,
        ),
        (
            "minus-combination",
            "s- acts as alpha ([n-1] + 1)/[n] ([mu+n] - [mu]) Psi(g_1n)",
            combo(-1),
            &k.minus,
        ),
    ] {
        let op = act_quadratic(&v, psi)?;
        let w = compare(&psi.module, 2, &op, &g1n.scale(c));
        rep.record(id, reference, w.is_none(), w);
    }
    if n == 2 {
        rep.record(
            "plus-vanishes",
            "for n = 2 the plus combination is the zero vector",
            combo(1).is_empty() && k.plus.is_zero(),
            None,
        );
    }
    let sq = tensor_square_action(n, mode)?;
    for role in [
        VectorRole::FirstMixed,
        VectorRole::SecondMixed,
        VectorRole::Inner,
    ] {
        if !role.exists(n) {
            continue;
        }
        let v = role_vector(n, mode, role, InvariantForm::Corrected);
        let desc = lowering_closure(&v, &sq.gens.f);
        let mut witness = None;
        for x in &desc {
            if let Some(w) = compare(
                &psi.module,
                2,
                &act_quadratic(x, psi)?,
                &SparseOperator::zero(psi.dim(), psi.dim()),
            ) {
                witness = Some(w);
                break;
            }
        }
        rep.record(
            format!("annihilates-{}", role.id()),
            "the summand acts as zero together with all its descendants",
            witness.is_none(),
            witness.or(Some(format!("{} descendants", desc.len()))),
        );
    }
    Ok(rep)
}

/// Generators of the quadratic part of the kernel of the action of the
/// tensor algebra on the module with highest weight `μω1`.
pub fn ideal_generators(
    n: usize,
    mu: Exponent,
    alpha: &QScalar,
    mode: &ArithmeticMode,
) -> Result<IdealGenerators, RepError> {
    let k = expected_constants(n, mu, alpha, mode)?;
    Ok(IdealGenerators {
        n,
        mu: if mu.mu != 0 {
            "mu".into()
        } else {
            mu.c.to_string()
        },
        alpha: alpha.clone(),
        generators: generators_with_constants(n, mode, &k.first, &k.second, &k.invariant),
        descendant_closure: true,
    })
}

/// The generator family with prescribed images: `s¹ - first·g_{1,n}`,
/// `s² - second·g_{1,n}`, `s₀ - invariant`, and the summands that vanish.
pub fn generators_with_constants(
    n: usize,
    mode: &ArithmeticMode,
    first: &QScalar,
    second: &QScalar,
    invariant: &QScalar,
) -> Vec<IdealGenerator> {
    let idx = AdjointIndex::new(n);
    let vectors = named_vectors(n, mode, InvariantForm::Corrected);
    let mut generators = Vec::new();
    for hv in &vectors {
        let fundamental: Vec<i64> = hv.weight.windows(2).map(|p| p[0] - p[1]).collect();
        let label = dominant_label(&fundamental);
        let mut element = MixedElement::quadratic(n, hv.vector.clone());
        let kind = match hv.role {
            VectorRole::FirstMixed | VectorRole::SecondMixed | VectorRole::Inner => {
                GeneratorKind::HighestWeight
            }
            VectorRole::AdjointFirst => {
                element.linear.insert(idx.g(1, n), -first);
                GeneratorKind::Combination
            }
            VectorRole::AdjointSecond => {
                element.linear.insert(idx.g(1, n), -second);
                GeneratorKind::Combination
            }
            VectorRole::Invariant => {
                element.constant = -invariant;
                GeneratorKind::Combination
            }
            VectorRole::Top => continue,
        };
        element.linear.retain(|_, c| !c.is_zero());
        generators.push(IdealGenerator {
            label: format!("{}:{}", hv.role.id(), label),
            kind,
            weight: hv.weight.clone(),
            element,
        });
    }
    generators
}

/// Lowering operators on `C ⊕ g_q ⊕ g_q⊗²`.
pub fn mixed_lowering(n: usize, mode: &ArithmeticMode) -> Result<Vec<SparseOperator>, RepError> {
    let adj = adjoint_action(n, mode)?;
    let sq = tensor_square_action(n, mode)?;
    let d = adj.dim();
    let total = 1 + d + d * d;
    Ok((0..n - 1)
        .map(|i| {
            let lin = adj.gens.f[i]
                .entries()
                .map(|(r, c, v)| (1 + r, 1 + c, v.clone()));
            let quad = sq.gens.f[i]
                .entries()
                .map(|(r, c, v)| (1 + d + r, 1 + d + c, v.clone()));
            SparseOperator::from_triplets(total, total, lin.chain(quad).collect::<Vec<_>>())
        })
        .collect())
}

/// Every generator, and every descendant of it, acts as zero; each
/// generator spans an irreducible submodule of the expected dimension.
pub fn verify_ideal(
    psi: &Intertwiner,
    gens: &IdealGenerators,
) -> Result<VerificationReport, RepError> {
    let n = psi.n();
    let mode = psi.mode();
    let lowering = mixed_lowering(n, mode)?;
    let mut rep = VerificationReport::new("ideal")
        .with_config("module", &psi.spec.label())
        .with_config("arithmetic", mode.label())
        .with_config("alpha", &psi.alpha);
    let zero = SparseOperator::zero(psi.dim(), psi.dim());
    for g in &gens.generators {
        let desc = if gens.descendant_closure {
            lowering_closure(&g.element.flatten(), &lowering)
        } else {
            vec![g.element.flatten()]
        };
        let mut witness = None;
        for x in &desc {
            let op = act_mixed(&MixedElement::from_flat(n, x), psi)?;
            if let Some(w) = compare(&psi.module, 2, &op, &zero) {
                witness = Some(w);
                break;
            }
        }
        rep.record(
            format!("annihilates-{}", g.label),
            "the generator and its descendants act as zero",
            witness.is_none(),
            witness.or(Some(format!("{} descendants", desc.len()))),
        );
        let fundamental: Vec<i64> = g.weight.windows(2).map(|p| p[0] - p[1]).collect();
        let expect = weyl_dim(n, &fundamental)? as usize;
        rep.record(
            format!("closure-{}", g.label),
            "the descendants span an irreducible module of the Weyl dimension",
            !gens.descendant_closure || desc.len() == expect,
            Some(format!("{} vs {}", desc.len(), expect)),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidedmod::build_intertwiner;
    use crate::repcore::{HighestWeight, ModuleSpec};
    use crate::ring::qint;

    #[test]
    fn casimir_n2_mu2() {
        let spec = ModuleSpec::finite(2, 2, ArithmeticMode::ExactIntegerWeight);
        let psi = build_intertwiner(&spec, &QScalar::one()).unwrap();
        let k = expected_constants(2, Exponent::int(2), &QScalar::one(), psi.mode()).unwrap();
        assert_eq!(k.invariant, &QScalar::q_pow(2) * &qint(4));
        let rep = verify_casimir(&psi).unwrap();
        assert!(rep.all_passed(), "{}", rep.to_text());
    }

    #[test]
    fn images_and_ideal_small() {
        for (n, mu) in [(2, 2), (3, 1), (3, 2)] {
            let spec = ModuleSpec::finite(n, mu, ArithmeticMode::ExactIntegerWeight);
            let alpha = QScalar::from_int(3);
            let psi = build_intertwiner(&spec, &alpha).unwrap();
            let rep = verify_hwv_images(&psi).unwrap();
            assert!(rep.all_passed(), "{}", rep.to_text());
            let gens = ideal_generators(n, Exponent::int(mu), &alpha, psi.mode()).unwrap();
            let rep = verify_ideal(&psi, &gens).unwrap();
            assert!(rep.all_passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn generic_verma() {
        let spec = ModuleSpec::verma(3, HighestWeight::Generic, 3, ArithmeticMode::GenericWeight);
        let psi = build_intertwiner(&spec, &QScalar::one()).unwrap();
        assert!(verify_casimir(&psi).unwrap().all_passed());
        let rep = verify_hwv_images(&psi).unwrap();
        assert!(rep.all_passed(), "{}", rep.to_text());
    }
}
