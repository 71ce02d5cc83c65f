use crate::operator::SparseOperator;
use crate::ring::Exponent;

use super::{ChevalleySet, RepError, WeightModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoproductGenerator {
    E(usize),
    F(usize),
    Qh(usize),
    QhInv(usize),
}

/// `Δe = e⊗1 + q^{-h}⊗e`, `Δf = 1⊗f + f⊗q^{h}`, `Δq^{±h} = q^{±h}⊗q^{±h}`
/// on the basis `a·dim(B) + b`.
pub fn coproduct_action(
    a: &ChevalleySet,
    b: &ChevalleySet,
    g: CoproductGenerator,
) -> SparseOperator {
    let ia = SparseOperator::identity(a.dim());
    let ib = SparseOperator::identity(b.dim());
    match g {
        CoproductGenerator::E(i) => a.e[i].kron(&ib).add(&a.qhinv[i].kron(&b.e[i])),
        CoproductGenerator::F(i) => ia.kron(&b.f[i]).add(&a.f[i].kron(&b.qh[i])),
        CoproductGenerator::Qh(i) => a.qh[i].kron(&b.qh[i]),
        CoproductGenerator::QhInv(i) => a.qhinv[i].kron(&b.qhinv[i]),
    }
}

/// The tensor product module `A ⊗ B` with the coproduct action.
pub fn tensor_product(a: &WeightModule, b: &WeightModule) -> Result<WeightModule, RepError> {
    a.check_same_algebra(b)?;
    if a.is_truncated() || b.is_truncated() {
        return Err(RepError::ModuleMismatch(
            "tensor products of truncated modules are not supported".into(),
        ));
    }
    let r = a.gens.rank();
    let (ga, gb) = (&a.gens, &b.gens);
    let mut labels = Vec::with_capacity(a.dim() * b.dim());
    let mut weights = Vec::with_capacity(a.dim() * b.dim());
    for x in 0..a.dim() {
        for y in 0..b.dim() {
            labels.push(format!("{}(x){}", a.labels[x], b.labels[y]));
            weights.push(
                a.weights[x]
                    .iter()
                    .zip(&b.weights[y])
                    .map(|(u, v)| u.add(*v))
                    .collect::<Vec<Exponent>>(),
            );
        }
    }
    let h = (0..r)
        .map(|i| {
            let mut out = Vec::with_capacity(a.dim() * b.dim());
            for x in 0..a.dim() {
                for y in 0..b.dim() {
                    out.push(ga.h[i][x].add(gb.h[i][y]));
                }
            }
            out
        })
        .collect();
    let gens = ChevalleySet {
        e: (0..r)
            .map(|i| coproduct_action(ga, gb, CoproductGenerator::E(i)))
            .collect(),
        f: (0..r)
            .map(|i| coproduct_action(ga, gb, CoproductGenerator::F(i)))
            .collect(),
        h,
        qh: (0..r)
            .map(|i| coproduct_action(ga, gb, CoproductGenerator::Qh(i)))
            .collect(),
        qhinv: (0..r)
            .map(|i| coproduct_action(ga, gb, CoproductGenerator::QhInv(i)))
            .collect(),
    };
    Ok(WeightModule {
        name: format!("{} (x) {}", a.name, b.name),
        n: a.n,
        mode: a.mode.clone(),
        labels,
        weights,
        gens,
        truncation: None,
    })
}
