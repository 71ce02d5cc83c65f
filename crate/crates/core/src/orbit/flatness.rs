use serde::Serialize;

use crate::adjoint::AdjBasisElement;
use crate::braidedmod::Intertwiner;
use crate::linalg::RowReducer;
use crate::operator::{SparseOperator, SparseVec};
use crate::repcore::{weyl_dim, HighestWeight, RepError};

/// Dimensions of the spans of products of at most `k` operators `Ψ(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub module: String,
    pub dims: Vec<usize>,
    /// `Σ_{j ≤ k} dim V_{j(ω1+ω_{n-1})}`, capped at `j ≤ μ` for finite modules.
    pub oracle: Vec<usize>,
    /// Truncation degree for Verma modules; products of `k` factors are
    /// compared on basis vectors of degree at most `N - k`.
    pub truncation: Option<usize>,
    /// `Ψ(g_{1,n})^k ≠ 0` for `k = 0..=d`.
    pub top_powers_nonzero: Vec<bool>,
}

impl GradedDims {
    pub fn matches_oracle(&self) -> bool {
        self.dims == self.oracle
    }

    /// `dim_0 = 1` and the sequence never decreases.
    pub fn is_filtration(&self) -> bool {
        self.dims.first() == Some(&1) && self.dims.windows(2).all(|p| p[0] <= p[1])
    }
}

fn flatten(op: &SparseOperator, columns: &[bool]) -> SparseVec {
    let d = op.ncols();
    op.entries()
        .filter(|(_, c, _)| columns[*c])
        .map(|(r, c, v)| (r * d + c, v.clone()))
        .collect()
}

/// Ranks of products of at most `k` generators for `k = 0..=d`. On a
/// truncated Verma module of degree `N` this needs `N ≥ 2d`, so that the
/// columns where `k`-fold products are exact still separate them.
pub fn graded_dimensions(psi: &Intertwiner, d: usize) -> Result<GradedDims, RepError> {
    let n = psi.n();
    let truncation = psi.spec.max_degree();
    if let Some(nmax) = truncation {
        if nmax < 2 * d {
            return Err(RepError::TruncationOverflow {
                needed: 2 * d,
                available: nmax,
            });
        }
    }
    let dim = psi.dim();
    let degree: Vec<usize> = (0..dim)
        .map(|c| psi.module.truncation.as_ref().map_or(0, |(deg, _)| deg[c]))
        .collect();
    let cap = match psi.spec.weight {
        HighestWeight::Integer(mu) if psi.spec.is_finite() => Some(mu.max(0) as usize),
        _ => None,
    };
    let mut adj = vec![0; n - 1];
    adj[0] += 1;
    adj[n - 2] += 1;
    let mut oracle = Vec::with_capacity(d + 1);
    let mut total = 0usize;
    for k in 0..=d {
        if cap.is_none_or(|m| k <= m) {
            let w: Vec<i64> = adj.iter().map(|a| a * k as i64).collect();
            total += weyl_dim(n, &w)? as usize;
        }
        oracle.push(total);
    }

    let mut basis = vec![SparseOperator::identity(dim)];
    let mut dims = vec![1];
    for k in 1..=d {
        let columns: Vec<bool> = (0..dim)
            .map(|c| truncation.is_none_or(|nmax| degree[c] + k <= nmax))
            .collect();
        let mut red = RowReducer::new();
        let mut next = Vec::new();
        for b in &basis {
            if red.insert_vector(flatten(b, &columns)) {
                next.push(b.clone());
            }
        }
        for b in &basis {
            for g in &psi.ops {
                let p = g.compose(b);
                if red.insert_vector(flatten(&p, &columns)) {
                    next.push(p);
                }
            }
        }
        dims.push(next.len());
        basis = next;
    }

    let g1n = psi.op(AdjBasisElement::OffDiagonal(1, n));
    let mut power = SparseOperator::identity(dim);
    let mut top_powers_nonzero = vec![true];
    for _ in 1..=d {
        power = g1n.compose(&power);
        top_powers_nonzero.push(!power.is_zero());
    }
    Ok(GradedDims {
        module: psi.spec.label(),
        dims,
        oracle,
        truncation,
        top_powers_nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidedmod::build_intertwiner;
    use crate::repcore::ModuleSpec;
    use crate::ring::{rat, ArithmeticMode, QScalar};

    #[test]
    fn finite_small() {
        let psi = build_intertwiner(
            &ModuleSpec::finite(2, 2, ArithmeticMode::ExactIntegerWeight),
            &QScalar::one(),
        )
        .unwrap();
        let g = graded_dimensions(&psi, 2).unwrap();
        assert_eq!(g.dims, vec![1, 4, 9]);
        assert!(g.matches_oracle() && g.is_filtration());
        let psi = build_intertwiner(
            &ModuleSpec::finite(3, 1, ArithmeticMode::ExactIntegerWeight),
            &QScalar::one(),
        )
        .unwrap();
        let g = graded_dimensions(&psi, 2).unwrap();
        assert_eq!(g.dims, vec![1, 9, 9]);
        assert!(g.matches_oracle());
    }

    #[test]
    fn verma_within_trust() {
        let mode = ArithmeticMode::numeric(rat(2), Some(rat(3))).unwrap();
        let spec = ModuleSpec::verma(3, HighestWeight::Generic, 4, mode);
        let psi = build_intertwiner(&spec, &QScalar::one()).unwrap();
        let g = graded_dimensions(&psi, 2).unwrap();
        assert_eq!(g.dims, vec![1, 9, 36]);
        assert!(g.top_powers_nonzero.iter().all(|b| *b));
        assert!(matches!(
            graded_dimensions(&psi, 3),
            Err(RepError::TruncationOverflow { .. })
        ));
    }
}
