//! Weight-basis U_q(sl(n))-modules and their Chevalley generators.

mod dual;
mod relations;
mod tensor;
mod weyl;

pub use dual::{dual_action, verify_antipode, Generator, UqElement};
pub(crate) use relations::compare;
pub use relations::verify_uq_relations;
pub use tensor::{coproduct_action, tensor_product, CoproductGenerator};
pub use weyl::weyl_dim;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::operator::SparseOperator;
use crate::ring::{ArithmeticMode, Exponent, QScalar, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("invalid module: {0}")]
    InvalidSpec(String),
    #[error(
        "computation needs lowering degree {needed} but the truncation only trusts {available}"
    )]
    TruncationOverflow { needed: usize, available: usize },
    #[error("modules are not over the same algebra: {0}")]
    ModuleMismatch(String),
    #[error("operation needs a finite-dimensional module")]
    NotFiniteDim,
    #[error("weight is not dominant integral")]
    NonDominant,
    #[error("weight space is empty")]
    EmptyWeightSpace,
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HighestWeight {
    /// μ a nonnegative integer.
    Integer(i64),
    /// μ symbolic: `z = q^μ`, or the value bound by the arithmetic mode.
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleKind {
    FiniteDim,
    /// Basis states of total lowering degree at most `max_degree`.
    VermaTruncated {
        max_degree: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub n: usize,
    pub weight: HighestWeight,
    pub kind: ModuleKind,
    pub arithmetic: ArithmeticMode,
}

impl ModuleSpec {
    pub fn finite(n: usize, mu: i64, arithmetic: ArithmeticMode) -> Self {
        ModuleSpec {
            n,
            weight: HighestWeight::Integer(mu),
            kind: ModuleKind::FiniteDim,
            arithmetic,
        }
    }

    pub fn verma(
        n: usize,
        weight: HighestWeight,
        max_degree: usize,
        arithmetic: ArithmeticMode,
    ) -> Self {
        ModuleSpec {
            n,
            weight,
            kind: ModuleKind::VermaTruncated { max_degree },
            arithmetic,
        }
    }

    pub fn validate(&self) -> Result<(), RepError> {
        if self.n < 2 {
            return Err(RepError::InvalidSpec(
                "rank parameter n must be at least 2".into(),
            ));
        }
        match (&self.kind, &self.weight) {
            (ModuleKind::FiniteDim, HighestWeight::Integer(mu)) if *mu < 0 => {
                return Err(RepError::InvalidSpec("finite modules need mu >= 0".into()))
            }
            (ModuleKind::FiniteDim, HighestWeight::Generic) => {
                return Err(RepError::InvalidSpec(
                    "finite modules need an integer weight".into(),
                ))
            }
            (ModuleKind::VermaTruncated { max_degree: 0 }, _) => {
                return Err(RepError::InvalidSpec(
                    "truncation degree must be at least 1".into(),
                ))
            }
            _ => {}
        }
        if self.weight == HighestWeight::Generic && !self.arithmetic.supports_generic_weight() {
            return Err(RepError::InvalidSpec(format!(
                "generic weight is not available in mode '{}'",
                self.arithmetic.label()
            )));
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.kind == ModuleKind::FiniteDim
    }

    pub fn max_degree(&self) -> Option<usize> {
        match self.kind {
            ModuleKind::FiniteDim => None,
            ModuleKind::VermaTruncated { max_degree } => Some(max_degree),
        }
    }

    pub fn label(&self) -> String {
        let w = match &self.weight {
            HighestWeight::Integer(mu) => mu.to_string(),
            HighestWeight::Generic => "mu".into(),
        };
        match self.kind {
            ModuleKind::FiniteDim => format!("V(n={}, weight={}*w1)", self.n, w),
            ModuleKind::VermaTruncated { max_degree } => {
                format!("M(n={}, weight={}*w1, degree<={})", self.n, w, max_degree)
            }
        }
    }
}

/// Occupation vector `(m_1, ..., m_n)`. With a generic weight `m_1` is stored
/// relative to μ, i.e. `occupations[0] = m_1 - μ = -(m_2 + ... + m_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisState {
    pub occupations: Vec<i64>,
}

impl BasisState {
    pub fn lowering_degree(&self) -> usize {
        self.occupations[1..].iter().sum::<i64>() as usize
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.occupations.iter().map(|m| m.to_string()).collect();
        format!("|{}>", parts.join(","))
    }
}

/// Basis in lexicographic order of `(m_2, ..., m_n)`.
pub fn enumerate_basis(spec: &ModuleSpec) -> Vec<BasisState> {
    let budget = match (&spec.kind, &spec.weight) {
        (ModuleKind::FiniteDim, HighestWeight::Integer(mu)) => *mu,
        (ModuleKind::VermaTruncated { max_degree }, _) => *max_degree as i64,
        _ => return Vec::new(),
    };
    let mut tails: Vec<Vec<i64>> = Vec::new();
    fn rec(slots: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if slots == 0 {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(slots - 1, left - x, cur, out);
            cur.pop();
        }
    }
    rec(spec.n - 1, budget, &mut Vec::new(), &mut tails);
    tails
        .into_iter()
        .map(|tail| {
            let s: i64 = tail.iter().sum();
            let first = match spec.weight {
                HighestWeight::Integer(mu) => mu - s,
                HighestWeight::Generic => -s,
            };
            let mut occ = vec![first];
            occ.extend(tail);
            BasisState { occupations: occ }
        })
        .collect()
}

/// The Chevalley generators of one module. The Cartan elements `h_i` are
/// kept as their diagonal eigenvalues, which may involve μ symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleySet {
    pub e: Vec<SparseOperator>,
    pub f: Vec<SparseOperator>,
    pub h: Vec<Vec<Exponent>>,
    pub qh: Vec<SparseOperator>,
    pub qhinv: Vec<SparseOperator>,
}

impl ChevalleySet {
    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn dim(&self) -> usize {
        self.qh.first().map(|k| k.nrows()).unwrap_or(0)
    }

    /// `h_i` as an operator; fails when an eigenvalue involves a symbolic μ.
    pub fn h_operator(&self, i: usize, mode: &ArithmeticMode) -> Result<SparseOperator, RingError> {
        let values = self.h[i]
            .iter()
            .map(|e| exponent_value(*e, mode))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparseOperator::diagonal(values))
    }
}

/// The number `a·μ + c` as a scalar of the given mode.
pub fn exponent_value(e: Exponent, mode: &ArithmeticMode) -> Result<QScalar, RingError> {
    if e.mu == 0 {
        return Ok(QScalar::from_int(e.c));
    }
    match mode {
        ArithmeticMode::Classical { mu: Some(mu) } => Ok(QScalar::from_rational(
            crate::ring::rat(e.mu) * mu + crate::ring::rat(e.c),
        )),
        _ => Err(RingError::InvalidMode(
            "Cartan eigenvalue involves symbolic mu".into(),
        )),
    }
}

/// A module with an ordered weight basis and generator matrices.
#[derive(Clone, Debug)]
pub struct WeightModule {
    pub name: String,
    pub n: usize,
    pub mode: ArithmeticMode,
    pub labels: Vec<String>,
    /// Weight of each basis vector in ε-coordinates.
    pub weights: Vec<Vec<Exponent>>,
    pub gens: ChevalleySet,
    /// Lowering degree of each basis vector and the truncation degree, for
    /// truncated Verma modules.
    pub truncation: Option<(Vec<usize>, usize)>,
}

impl WeightModule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Whether a product of `depth` degree-raising operators is exact on column `c`.
    pub fn trusted(&self, c: usize, depth: usize) -> bool {
        match &self.truncation {
            None => true,
            Some((deg, n)) => deg[c] + depth <= *n,
        }
    }

    pub fn is_truncated(&self) -> bool {
        self.truncation.is_some()
    }

    /// Indices of basis vectors with the given weight.
    pub fn weight_space(&self, weight: &[Exponent]) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| self.weights[k] == weight)
            .collect()
    }

    pub fn check_same_algebra(&self, other: &WeightModule) -> Result<(), RepError> {
        if self.n != other.n {
            return Err(RepError::ModuleMismatch(format!(
                "n = {} vs n = {}",
                self.n, other.n
            )));
        }
        if self.mode != other.mode {
            return Err(RepError::ModuleMismatch(format!(
                "'{}' vs '{}'",
                self.mode.label(),
                other.mode.label()
            )));
        }
        Ok(())
    }
}

fn occupation(state: &BasisState, k: usize, weight: &HighestWeight) -> Exponent {
    if k == 0 && *weight == HighestWeight::Generic {
        Exponent::mu_plus(state.occupations[0])
    } else {
        Exponent::int(state.occupations[k])
    }
}

/// Occupations of a state as exponents `a·μ + c`.
pub fn occupation_exponents(state: &BasisState, weight: &HighestWeight) -> Vec<Exponent> {
    (0..state.occupations.len())
        .map(|k| occupation(state, k, weight))
        .collect()
}

/// Builds the module `V_{μω1}` or its truncated Verma counterpart with the
/// generators `e_i|m> = [m_{i+1}] |.., m_i+1, m_{i+1}-1, ..>`,
/// `f_i|m> = [m_i] |.., m_i-1, m_{i+1}+1, ..>` and `h_i = m_i - m_{i+1}`.
/// Lowering past the truncation window is dropped.
pub fn chevalley_action(spec: &ModuleSpec) -> Result<WeightModule, RepError> {
    spec.validate()?;
    let basis = enumerate_basis(spec);
    let dim = basis.len();
    let index: std::collections::HashMap<Vec<i64>, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.occupations.clone(), i))
        .collect();
    let mode = &spec.arithmetic;
    let n = spec.n;
    let occ: Vec<Vec<Exponent>> = basis
        .iter()
        .map(|b| occupation_exponents(b, &spec.weight))
        .collect();
    let mut e = Vec::new();
    let mut f = Vec::new();
    let mut h = Vec::new();
    let mut qh = Vec::new();
    let mut qhinv = Vec::new();
    for i in 0..n - 1 {
        let mut te = Vec::new();
        let mut tf = Vec::new();
        let mut hv = Vec::new();
        for (c, b) in basis.iter().enumerate() {
            let m = &b.occupations;
            // raising: m_{i+1} must be a positive integer (never the symbolic slot)
            if m[i + 1] > 0 {
                let mut t = m.clone();
                t[i] += 1;
                t[i + 1] -= 1;
                if let Some(&r) = index.get(&t) {
                    te.push((r, c, mode.qint_exp(occ[c][i + 1])?));
                }
            }
            // m_1 of a Verma module is formal and may be lowered indefinitely;
            // the index only contains states inside the window
            if i == 0 || m[i] > 0 {
                let mut t = m.clone();
                t[i] -= 1;
                t[i + 1] += 1;
                if let Some(&r) = index.get(&t) {
                    let v = mode.qint_exp(occ[c][i])?;
                    if !v.is_zero() {
                        tf.push((r, c, v));
                    }
                }
            }
            hv.push(occ[c][i].sub(occ[c][i + 1]));
        }
        e.push(SparseOperator::from_triplets(dim, dim, te));
        f.push(SparseOperator::from_triplets(dim, dim, tf));
        qh.push(SparseOperator::diagonal(
            hv.iter()
                .map(|w| mode.q_exp(*w))
                .collect::<Result<Vec<_>, _>>()?,
        ));
        qhinv.push(SparseOperator::diagonal(
            hv.iter()
                .map(|w| mode.q_exp(w.neg()))
                .collect::<Result<Vec<_>, _>>()?,
        ));
        h.push(hv);
    }
    let truncation = spec.max_degree().map(|nmax| {
        (
            basis.iter().map(BasisState::lowering_degree).collect(),
            nmax,
        )
    });
    Ok(WeightModule {
        name: spec.label(),
        n,
        mode: mode.clone(),
        labels: basis.iter().map(BasisState::label).collect(),
        weights: occ,
        gens: ChevalleySet { e, f, h, qh, qhinv },
        truncation,
    })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
