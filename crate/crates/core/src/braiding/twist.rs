use num_traits::Signed;
use serde::Serialize;

use crate::adjoint::{decompose, find_highest_weight_vectors, AdjointIndex};
use crate::operator::{vec_ops, SparseOperator, SparseVec};
use crate::report::VerificationReport;
use crate::ring::{rat, ArithmeticMode, Exponent, Poly, QScalar};

use super::{eigen_analysis, flip_permutation, BraidingError, BraidingOperator};

/// One eigenvalue of `S` together with the summands it acts on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistComponent {
    pub labels: Vec<String>,
    pub eigenvalue: QScalar,
    /// Sign of the eigenvalue as `q → 1`.
    pub sign: i64,
    pub dimension: u64,
}

#[derive(Clone, Debug)]
pub struct InvolutiveTwist {
    pub op: SparseOperator,
    pub components: Vec<TwistComponent>,
    pub plus_dim: u64,
    pub minus_dim: u64,
    pub report: VerificationReport,
}

fn limit_sign(ev: &QScalar, mode: &ArithmeticMode) -> Result<i64, BraidingError> {
    let value = match mode {
        ArithmeticMode::NumericRational { q, .. } => {
            if !q.is_positive() {
                return Err(BraidingError::InvalidMode(
                    "the q -> 1 sign needs a positive numeric q".into(),
                ));
            }
            ev.as_rational()
                .ok_or_else(|| BraidingError::InvalidMode("eigenvalue is not a number".into()))?
        }
        _ => ev.specialize(&rat(1), None)?,
    };
    if value.is_positive() {
        Ok(1)
    } else if value.is_negative() {
        Ok(-1)
    } else {
        Err(BraidingError::InvalidMode(format!(
            "eigenvalue {ev} vanishes at q = 1"
        )))
    }
}

/// Replaces every eigenvalue of `S` by its sign at `q = 1`, via the
/// Lagrange projectors of the distinct eigenvalues.
pub fn build_involutive_twist(b: &BraidingOperator) -> Result<InvolutiveTwist, BraidingError> {
    let mode = &b.mode;
    let sq = &b.square;
    let dim = b.dim();
    let mut rep = VerificationReport::new("braiding-twist")
        .with_config("n", b.n)
        .with_config("arithmetic", mode.label());

    let dec = decompose(sq)?;
    let eig = eigen_analysis(b)?;
    let adj_label = crate::adjoint::dominant_label(&{
        let mut v = vec![0; b.n - 1];
        v[0] += 1;
        v[b.n - 2] += 1;
        v
    });
    let mut components: Vec<TwistComponent> = Vec::new();
    let mut push = |label: String, ev: QScalar, dimension: u64, sign: i64| {
        if let Some(c) = components.iter_mut().find(|c| c.eigenvalue == ev) {
            c.labels.push(label);
            c.dimension += dimension;
        } else {
            components.push(TwistComponent {
                labels: vec![label],
                eigenvalue: ev,
                sign,
                dimension,
            });
        }
    };
    let mut eigen_ok = true;
    for comp in &dec.components {
        if comp.label == adj_label && comp.multiplicity == eig.pairs.len() && comp.multiplicity > 1
        {
            for p in &eig.pairs {
                let tag = if p.sign > 0 { "+" } else { "-" };
                push(
                    format!("{}{tag}", comp.label),
                    p.eigenvalue.clone(),
                    comp.weyl_dim,
                    limit_sign(&p.eigenvalue, mode)?,
                );
            }
            continue;
        }
        let w: Vec<Exponent> = comp.weight.iter().map(|&x| Exponent::int(x)).collect();
        for v in find_highest_weight_vectors(sq, &w)? {
            match vec_ops::ratio(&b.apply(&v), &v) {
                Some(ev) => {
                    let sign = limit_sign(&ev, mode)?;
                    push(comp.label.clone(), ev, comp.weyl_dim, sign);
                }
                None => eigen_ok = false,
            }
        }
    }
    rep.record(
        "component-eigenvalues",
        "S acts by a scalar on each highest weight vector",
        eigen_ok,
        Some(
            components
                .iter()
                .map(|c| format!("{}: {}", c.labels.join(","), c.eigenvalue))
                .collect::<Vec<_>>()
                .join("; "),
        ),
    );

    let id = SparseOperator::identity(dim);
    let shifted: Vec<SparseOperator> = components
        .iter()
        .map(|c| b.s.sub(&SparseOperator::scalar(dim, &c.eigenvalue)))
        .collect();
    let mut minimal = id.clone();
    for f in &shifted {
        minimal = minimal.compose(f);
    }
    rep.record(
        "semisimple",
        "the product of (S - lambda) over the eigenvalues vanishes",
        minimal.is_zero(),
        Some(format!("{} distinct eigenvalues", components.len())),
    );

    // interpolating polynomial p with p(lambda_k) = sign_k, evaluated at S by Horner
    let mut coeffs = vec![QScalar::zero(); components.len()];
    for (k, c) in components.iter().enumerate() {
        let mut basis = vec![QScalar::from_int(c.sign)];
        for (j, other) in components.iter().enumerate() {
            if j != k {
                let denom = (&c.eigenvalue - &other.eigenvalue).inv()?;
                let root = -&(&other.eigenvalue * &denom);
                let mut next = vec![QScalar::zero(); basis.len() + 1];
                for (i, a) in basis.iter().enumerate() {
                    next[i + 1] += &(a * &denom);
                    next[i] += &(a * &root);
                }
                basis = next;
            }
        }
        for (i, a) in basis.into_iter().enumerate() {
            coeffs[i] += &a;
        }
    }
    // clear denominators so that Horner and the checks run on Laurent entries
    let mut common = Poly::one();
    for a in &coeffs {
        let g = Poly::gcd(&common, a.denominator());
        common = common.mul(&a.denominator().div_exact(&g).expect("gcd divides"));
    }
    let scale = QScalar::from_parts(0, 0, common, Poly::one())?;
    let mut cleared = SparseOperator::zero(dim, dim);
    for a in coeffs.iter().rev() {
        cleared = cleared
            .compose(&b.s)
            .add(&SparseOperator::scalar(dim, &(a * &scale)));
    }

    let w = cleared
        .compose(&cleared)
        .first_difference(&SparseOperator::scalar(dim, &(&scale * &scale)))
        .map(|w| format!("entry ({}, {})", w.row, w.col));
    rep.record(
        "involution",
        "the twist squares to the identity",
        w.is_none(),
        w,
    );
    let commutes = cleared.compose(&b.s) == b.s.compose(&cleared);
    rep.record(
        "same-eigenspaces",
        "the twist commutes with S",
        commutes,
        None,
    );
    for i in 0..sq.gens.rank() {
        for (name, x) in [("e", &sq.gens.e[i]), ("f", &sq.gens.f[i])] {
            let ok = cleared.compose(x) == x.compose(&cleared);
            rep.record(
                format!("intertwiner-{name}{}", i + 1),
                "the twist commutes with the coproduct",
                ok,
                None,
            );
        }
    }
    let twist = cleared.scale(&scale.inv()?);
    let idx = AdjointIndex::new(b.n);
    let top_k = idx.g(1, b.n) * idx.dim() + idx.g(1, b.n);
    let top: SparseVec = [(top_k, QScalar::one())].into_iter().collect();
    rep.record(
        "top-fixed",
        "the twist fixes g_1n (x) g_1n",
        twist.apply(&top) == top,
        None,
    );
    for p in &eig.pairs {
        let img = twist.apply(&p.vector);
        let ok = img == vec_ops::scale(&p.vector, &QScalar::from_int(p.sign));
        rep.record(
            format!("twist-{}", if p.sign > 0 { "plus" } else { "minus" }),
            "the twist acts by the sign on the adjoint eigenvectors",
            ok,
            None,
        );
    }
    if mode.is_symbolic() {
        let one = rat(1);
        let limit = twist.map_values(|x| x.substitute(Some(&one), None))?;
        let flip = SparseOperator::identity(dim).permute_rows(&flip_permutation(idx.dim()));
        let w = limit
            .first_difference(&flip)
            .map(|w| format!("entry ({}, {})", w.row, w.col));
        rep.record(
            "classical-limit",
            "at q = 1 the twist is the flip",
            w.is_none(),
            w,
        );
    }
    let plus_dim: u64 = components
        .iter()
        .filter(|c| c.sign > 0)
        .map(|c| c.dimension)
        .sum();
    let minus_dim: u64 = components
        .iter()
        .filter(|c| c.sign < 0)
        .map(|c| c.dimension)
        .sum();
    let d = idx.dim() as u64;
    rep.record(
        "splitting-dimensions",
        "the +1 and -1 parts have the dimensions of the symmetric and exterior squares",
        plus_dim == d * (d + 1) / 2 && minus_dim == d * (d - 1) / 2,
        Some(format!("{plus_dim} + {minus_dim}")),
    );
    Ok(InvolutiveTwist {
        op: twist,
        components,
        plus_dim,
        minus_dim,
        report: rep,
    })
}

/// The braid relation `S₁₂ S₂₃ S₁₂ = S₂₃ S₁₂ S₂₃` on the third tensor power.
pub fn verify_qybe(b: &BraidingOperator) -> VerificationReport {
    let d = AdjointIndex::new(b.n).dim();
    let id = SparseOperator::identity(d);
    let s12 = b.s.kron(&id);
    let s23 = id.kron(&b.s);
    let lhs = s12.compose(&s23).compose(&s12);
    let rhs = s23.compose(&s12).compose(&s23);
    let mut rep = VerificationReport::new("braiding-qybe")
        .with_config("n", b.n)
        .with_config("arithmetic", b.mode.label());
    let w = lhs
        .first_difference(&rhs)
        .map(|w| format!("entry ({}, {}): {} vs {}", w.row, w.col, w.left, w.right));
    rep.record(
        "braid-relation",
        "S12 S23 S12 = S23 S12 S23 on the third tensor power",
        w.is_none(),
        w,
    );
    rep
}
