use crate::operator::SparseOperator;
use crate::report::VerificationReport;
use crate::ring::Exponent;

use super::WeightModule;

fn cartan_entry(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

fn describe(w: &crate::operator::EntryWitness, labels: &[String]) -> String {
    let lab = |k: usize| labels.get(k).cloned().unwrap_or_else(|| k.to_string());
    format!(
        "entry ({}, {}): {} vs {}",
        lab(w.row),
        lab(w.col),
        w.left,
        w.right
    )
}

/// Compares two operators on the columns trusted for products of `depth` generators.
pub(crate) fn compare(
    module: &WeightModule,
    depth: usize,
    lhs: &SparseOperator,
    rhs: &SparseOperator,
) -> Option<String> {
    let (l, r) = if module.is_truncated() {
        (
            lhs.restrict_columns(|c| module.trusted(c, depth)),
            rhs.restrict_columns(|c| module.trusted(c, depth)),
        )
    } else {
        (lhs.clone(), rhs.clone())
    };
    l.first_difference(&r).map(|w| describe(&w, &module.labels))
}

/// Checks that generator `x` shifts the `h_i` eigenvalue by exactly `shift`.
fn weight_shift(diag: &[Exponent], x: &SparseOperator, shift: i64) -> Option<String> {
    for (r, c, _) in x.entries() {
        let d = diag[r].sub(diag[c]);
        if d != Exponent::int(shift) {
            return Some(format!("entry ({r}, {c}) shifts by {}mu{:+}", d.mu, d.c));
        }
    }
    None
}

/// Checks every defining relation of U_q(sl(n)) as an exact operator identity:
/// Cartan weights of `e_j`, `f_j`; group-like behaviour of `q^{h_i}`; the
/// raising/lowering commutator; commutation of distant generators; both Serre families.
pub fn verify_uq_relations(module: &WeightModule) -> VerificationReport {
    let gens = &module.gens;
    let mode = &module.mode;
    let r = gens.rank();
    let dim = module.dim();
    let mut rep = VerificationReport::new("uq-relations")
        .with_config("module", &module.name)
        .with_config("arithmetic", mode.label());
    let id = SparseOperator::identity(dim);
    let two = mode.qint(2);
    for i in 0..r {
        for j in 0..r {
            let a = cartan_entry(i, j);
            let w = weight_shift(&gens.h[i], &gens.e[j], a);
            rep.record(
                format!("h{}-e{}", i + 1, j + 1),
                "[h_i, e_j] = a_ij e_j",
                w.is_none(),
                w,
            );
            let w = weight_shift(&gens.h[i], &gens.f[j], -a);
            rep.record(
                format!("h{}-f{}", i + 1, j + 1),
                "[h_i, f_j] = -a_ij f_j",
                w.is_none(),
                w,
            );

            let qa = mode.q_pow(a);
            let lhs = gens.qh[i].compose(&gens.e[j]);
            let rhs = gens.e[j].compose(&gens.qh[i]).scale(&qa);
            let w = compare(module, 1, &lhs, &rhs);
            rep.record(
                format!("K{}-e{}", i + 1, j + 1),
                "q^{h_i} e_j = q^{a_ij} e_j q^{h_i}",
                w.is_none(),
                w,
            );
            let lhs = gens.qh[i].compose(&gens.f[j]);
            let rhs = gens.f[j].compose(&gens.qh[i]).scale(&mode.q_pow(-a));
            let w = compare(module, 1, &lhs, &rhs);
            rep.record(
                format!("K{}-f{}", i + 1, j + 1),
                "q^{h_i} f_j = q^{-a_ij} f_j q^{h_i}",
                w.is_none(),
                w,
            );

            let lhs = gens.e[i].commutator(&gens.f[j]);
            let rhs = if i != j {
                Ok(SparseOperator::zero(dim, dim))
            } else if mode.is_classical() {
                gens.h_operator(i, mode)
            } else {
                let k = gens.qh[i].sub(&gens.qhinv[i]);
                Ok(k.scale(&mode.q_minus_q_inv().inv().expect("q - 1/q is nonzero")))
            };
            match rhs {
                Ok(rhs) => {
                    let w = compare(module, 2, &lhs, &rhs);
                    rep.record(
                        format!("e{}-f{}", i + 1, j + 1),
                        "[e_i, f_j] = delta_ij (q^{h_i} - q^{-h_i})/(q - q^-1)",
                        w.is_none(),
                        w,
                    );
                }
                Err(err) => rep.fail(
                    format!("e{}-f{}", i + 1, j + 1),
                    "[e_i, f_j]",
                    err.to_string(),
                ),
            }

            if i < j && j - i > 1 {
                for (name, x) in [("e", &gens.e), ("f", &gens.f)] {
                    let lhs = x[i].commutator(&x[j]);
                    let w = compare(module, 2, &lhs, &SparseOperator::zero(dim, dim));
                    rep.record(
                        format!("{name}{}-{name}{}", i + 1, j + 1),
                        "distant generators commute",
                        w.is_none(),
                        w,
                    );
                }
            }
            if i.abs_diff(j) == 1 {
                for (name, x) in [("e", &gens.e), ("f", &gens.f)] {
                    let xii = x[i].compose(&x[i]);
                    let lhs = xii
                        .compose(&x[j])
                        .sub(&x[i].compose(&x[j]).compose(&x[i]).scale(&two))
                        .add(&x[j].compose(&xii));
                    let w = compare(module, 3, &lhs, &SparseOperator::zero(dim, dim));
                    rep.record(
                        format!("serre-{name}{}-{name}{}", i + 1, j + 1),
                        "x_i^2 x_j - [2]_q x_i x_j x_i + x_j x_i^2 = 0",
                        w.is_none(),
                        w,
                    );
                }
            }
        }
        let w = compare(module, 0, &gens.qh[i].compose(&gens.qhinv[i]), &id);
        rep.record(
            format!("K{}-inverse", i + 1),
            "q^{h_i} q^{-h_i} = 1",
            w.is_none(),
            w,
        );
    }
    rep
}
