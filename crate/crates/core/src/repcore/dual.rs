use crate::operator::SparseOperator;
use crate::report::VerificationReport;
use crate::ring::{QScalar, RingError};

use super::{ChevalleySet, RepError, WeightModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    E(usize),
    F(usize),
    H(usize),
    K(usize),
    KInv(usize),
}

/// A noncommutative polynomial in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UqElement {
    pub terms: Vec<(QScalar, Vec<Generator>)>,
}

impl UqElement {
    pub fn generator(g: Generator) -> Self {
        UqElement {
            terms: vec![(QScalar::one(), vec![g])],
        }
    }

    pub fn word(coeff: QScalar, w: Vec<Generator>) -> Self {
        UqElement {
            terms: vec![(coeff, w)],
        }
    }

    pub fn add(&self, other: &UqElement) -> UqElement {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        UqElement { terms }
    }

    pub fn scale(&self, c: &QScalar) -> UqElement {
        UqElement {
            terms: self.terms.iter().map(|(a, w)| (a * c, w.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &UqElement) -> UqElement {
        let mut terms = Vec::new();
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let mut w = u.clone();
                w.extend(v.iter().copied());
                terms.push((a * b, w));
            }
        }
        UqElement { terms }
    }

    /// The antipode of a single generator:
    /// `S(e) = -K e`, `S(f) = -f K^-1`, `S(h) = -h`, `S(K^{±1}) = K^{∓1}`.
    pub fn antipode_of(g: Generator) -> UqElement {
        let minus = QScalar::from_int(-1);
        match g {
            Generator::E(i) => UqElement::word(minus, vec![Generator::K(i), Generator::E(i)]),
            Generator::F(i) => UqElement::word(minus, vec![Generator::F(i), Generator::KInv(i)]),
            Generator::H(i) => UqElement::word(minus, vec![Generator::H(i)]),
            Generator::K(i) => UqElement::generator(Generator::KInv(i)),
            Generator::KInv(i) => UqElement::generator(Generator::K(i)),
        }
    }

    /// Anti-multiplicative extension of [`UqElement::antipode_of`].
    pub fn antipode(&self) -> UqElement {
        let mut out = UqElement::default();
        for (c, w) in &self.terms {
            let mut acc = UqElement::word(c.clone(), Vec::new());
            for g in w.iter().rev() {
                acc = acc.mul(&UqElement::antipode_of(*g));
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn evaluate(&self, module: &WeightModule) -> Result<SparseOperator, RingError> {
        let dim = module.dim();
        let gens = &module.gens;
        let mut total = SparseOperator::zero(dim, dim);
        for (c, w) in &self.terms {
            let mut acc = SparseOperator::scalar(dim, c);
            for g in w {
                let m = match *g {
                    Generator::E(i) => gens.e[i].clone(),
                    Generator::F(i) => gens.f[i].clone(),
                    Generator::H(i) => gens.h_operator(i, &module.mode)?,
                    Generator::K(i) => gens.qh[i].clone(),
                    Generator::KInv(i) => gens.qhinv[i].clone(),
                };
                acc = acc.compose(&m);
            }
            total = total.add(&acc);
        }
        Ok(total)
    }
}

/// The contragredient module: `u` acts on the dual basis by the transpose of `S(u)`.
pub fn dual_action(module: &WeightModule) -> Result<WeightModule, RepError> {
    if module.is_truncated() {
        return Err(RepError::NotFiniteDim);
    }
    let g = &module.gens;
    let minus = QScalar::from_int(-1);
    let r = g.rank();
    let gens = ChevalleySet {
        e: (0..r)
            .map(|i| g.qh[i].compose(&g.e[i]).transpose().scale(&minus))
            .collect(),
        f: (0..r)
            .map(|i| g.f[i].compose(&g.qhinv[i]).transpose().scale(&minus))
            .collect(),
        h: g.h
            .iter()
            .map(|d| d.iter().map(|x| x.neg()).collect())
            .collect(),
        qh: g.qhinv.iter().map(SparseOperator::transpose).collect(),
        qhinv: g.qh.iter().map(SparseOperator::transpose).collect(),
    };
    Ok(WeightModule {
        name: format!("dual of {}", module.name),
        n: module.n,
        mode: module.mode.clone(),
        labels: module.labels.iter().map(|l| format!("{l}*")).collect(),
        weights: module
            .weights
            .iter()
            .map(|w| w.iter().map(|x| x.neg()).collect())
            .collect(),
        gens,
        truncation: None,
    })
}

/// Antipode checks on a finite module: the square of the antipode is
/// conjugation by `K`, and the dual action satisfies the pairing identity
/// `(v, u·ξ) = (S(u)v, ξ)` for `u` in `{e_i, f_i, h_i}`.
pub fn verify_antipode(module: &WeightModule) -> Result<VerificationReport, RepError> {
    let dual = dual_action(module)?;
    let mut rep = VerificationReport::new("antipode").with_config("module", &module.name);
    for i in 0..module.gens.rank() {
        let e = UqElement::generator(Generator::E(i));
        let s2 = e.antipode().antipode().evaluate(module)?;
        let conj = module.gens.qh[i]
            .compose(&module.gens.e[i])
            .compose(&module.gens.qhinv[i]);
        let w = s2
            .first_difference(&conj)
            .map(|w| format!("entry ({}, {})", w.row, w.col));
        rep.record(
            format!("s2-e{}", i + 1),
            "S^2(e_i) = K_i e_i K_i^-1",
            w.is_none(),
            w,
        );

        let cases: Vec<(&str, Generator, Option<SparseOperator>)> = vec![
            ("e", Generator::E(i), Some(dual.gens.e[i].clone())),
            ("f", Generator::F(i), Some(dual.gens.f[i].clone())),
            (
                "h",
                Generator::H(i),
                dual.gens.h_operator(i, &dual.mode).ok(),
            ),
        ];
        for (name, g, dual_op) in cases {
            let Some(dual_op) = dual_op else {
                rep.note(format!(
                    "h{} pairing skipped: symbolic Cartan eigenvalue",
                    i + 1
                ));
                continue;
            };
            let s = UqElement::generator(g).antipode().evaluate(module)?;
            let w = dual_op
                .first_difference(&s.transpose())
                .map(|w| format!("pairing ({}, {})", w.row, w.col));
            rep.record(
                format!("pairing-{name}{}", i + 1),
                "(v, u.xi) = (S(u) v, xi)",
                w.is_none(),
                w,
            );
        }
    }
    rep.absorb("dual-", super::verify_uq_relations(&dual));
    Ok(rep)
}
