use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::linalg::RowReducer;
use crate::operator::{vec_ops, SparseVec};
use crate::repcore::{weyl_dim, RepError, WeightModule};
use crate::ring::Exponent;

/// Basis of `{v of the given weight : e_i v = 0 for all i}`, each vector
/// scaled so its first nonzero coordinate is one.
pub fn find_highest_weight_vectors(
    module: &WeightModule,
    weight: &[Exponent],
) -> Result<Vec<SparseVec>, RepError> {
    let cols = module.weight_space(weight);
    if cols.is_empty() {
        return Err(RepError::EmptyWeightSpace);
    }
    let mut local = vec![usize::MAX; module.dim()];
    for (k, &c) in cols.iter().enumerate() {
        local[c] = k;
    }
    let mut red = RowReducer::new();
    for e in &module.gens.e {
        for r in 0..e.nrows() {
            let row: SparseVec = e
                .row(r)
                .iter()
                .filter(|(c, _)| local[*c] != usize::MAX)
                .map(|(c, v)| (local[*c], v.clone()))
                .collect();
            if !row.is_empty() {
                red.insert_vector(row);
            }
        }
    }
    Ok(red
        .nullspace(cols.len())
        .into_iter()
        .map(|v| {
            let global: SparseVec = v.into_iter().map(|(k, x)| (cols[k], x)).collect();
            vec_ops::normalize_first(&global)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// ε-coordinates.
    pub weight: Vec<i64>,
    /// Coordinates in fundamental weights.
    pub fundamental: Vec<i64>,
    pub label: String,
    pub multiplicity: usize,
    pub weyl_dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: usize,
    pub module: String,
    pub components: Vec<Component>,
    pub dimension: usize,
    /// `Σ multiplicity · weyl_dim`.
    pub audit_sum: u64,
}

impl Decomposition {
    pub fn multiplicity(&self, fundamental: &[i64]) -> usize {
        self.components
            .iter()
            .find(|c| c.fundamental == fundamental)
            .map(|c| c.multiplicity)
            .unwrap_or(0)
    }

    pub fn summands(&self) -> usize {
        self.components.iter().map(|c| c.multiplicity).sum()
    }

    pub fn audit_ok(&self) -> bool {
        self.audit_sum == self.dimension as u64
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("decomposition of {}\n", self.module);
        for c in &self.components {
            out.push_str(&format!(
                "  {:<16} multiplicity {}  dim {}\n",
                c.label, c.multiplicity, c.weyl_dim
            ));
        }
        out.push_str(&format!(
            "  dimension audit: sum = {} vs dim = {} ({})\n",
            self.audit_sum,
            self.dimension,
            if self.audit_ok() { "ok" } else { "MISMATCH" }
        ));
        out
    }
}

pub fn dominant_label(fundamental: &[i64]) -> String {
    let parts: Vec<String> = fundamental
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| {
            if c == 1 {
                format!("w{}", k + 1)
            } else {
                format!("{c}w{}", k + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn to_fundamental(w: &[i64]) -> Vec<i64> {
    w.windows(2).map(|p| p[0] - p[1]).collect()
}

/// Height in simple-root coordinates of a traceless ε-weight.
fn height(w: &[i64]) -> i64 {
    let mut acc = 0;
    let mut partial = 0;
    for x in &w[..w.len() - 1] {
        partial += x;
        acc += partial;
    }
    acc
}

/// Multiplicities of irreducible summands, read off as dimensions of the
/// highest-weight kernels at each dominant weight, highest first.
pub fn decompose(module: &WeightModule) -> Result<Decomposition, RepError> {
    if module.weights.iter().flatten().any(|e| e.mu != 0) {
        return Err(RepError::InvalidSpec(
            "decomposition needs integer weights".into(),
        ));
    }
    let weights: BTreeSet<Vec<i64>> = module
        .weights
        .iter()
        .map(|w| w.iter().map(|e| e.c).collect())
        .collect();
    let mut dominant: Vec<Vec<i64>> = weights
        .into_iter()
        .filter(|w| to_fundamental(w).iter().all(|&x| x >= 0))
        .collect();
    dominant.sort_by(|a, b| height(b).cmp(&height(a)).then(b.cmp(a)));
    let mut components = Vec::new();
    let mut audit = 0u64;
    for w in dominant {
        let exps: Vec<Exponent> = w.iter().map(|&x| Exponent::int(x)).collect();
        let mult = find_highest_weight_vectors(module, &exps)?.len();
        if mult == 0 {
            continue;
        }
        let fundamental = to_fundamental(&w);
        let wd = weyl_dim(module.n, &fundamental)?;
        audit += wd * mult as u64;
        components.push(Component {
            label: dominant_label(&fundamental),
            weight: w,
            fundamental,
            multiplicity: mult,
            weyl_dim: wd,
        });
    }
    Ok(Decomposition {
        n: module.n,
        module: module.name.clone(),
        components,
        dimension: module.dim(),
        audit_sum: audit,
    })
}
