//! Property tests for the invariants of each layer.

use proptest::prelude::*;

use qverma::adjoint::adjoint_action;
use qverma::braidedmod::{build_intertwiner, verify_ideal};
use qverma::braiding::{build_involutive_twist, construct_braiding, eigen_analysis};
use qverma::operator::SparseOperator;
use qverma::orbit::{
    classical_constants, graded_dimensions, hbar_to_mu, mu_to_hbar, orbit_intertwiner,
    specialized_constants, specialized_ideal, OrbitAlgebraConfig, OrbitError, Regime,
};
use qverma::repcore::{
    binomial, chevalley_action, tensor_product, verify_uq_relations, ModuleSpec,
};
use qverma::ring::{qint, rat, ratio, ArithmeticMode, QScalar, Rational};

const SYM: ArithmeticMode = ArithmeticMode::ExactIntegerWeight;

fn rational_q() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=5)
        .prop_map(|(p, d)| ratio(p, d))
        .prop_filter("|q| != 0, 1", |q| {
            *q != rat(0) && *q != rat(1) && *q != rat(-1)
        })
}

fn positive_q() -> impl Strategy<Value = Rational> {
    (1i64..=7, 1i64..=5)
        .prop_map(|(p, d)| ratio(p, d))
        .prop_filter("q != 1", |q| *q != rat(1))
}

fn laurent() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((-5i64..=5, -4i32..=4, -2i32..=2), 1..5)
        .prop_map(|terms| QScalar::laurent(terms.into_iter().map(|(c, a, b)| (rat(c), a, b))))
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), laurent()).prop_map(|(a, b)| if b.is_zero() { a } else { &a / &b })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_text_round_trip(x in scalar()) {
        let text = x.to_string();
        let back: QScalar = text.parse().unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn field_identities(x in scalar(), y in scalar()) {
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) / &y, x.clone());
        }
        // canonical forms are fixed points
        let again = &x * &QScalar::one();
        prop_assert_eq!(again.to_string(), x.to_string());
    }

    #[test]
    fn q_integers(m in 1i64..=12, a in 0i64..=8, b in 0i64..=8) {
        let lhs = &qint(m) * &(&QScalar::q() - &QScalar::q_pow(-1));
        prop_assert_eq!(lhs, &QScalar::q_pow(m) - &QScalar::q_pow(-m));
        let pascal = &(&QScalar::q_pow(b) * &qint(a)) + &(&QScalar::q_pow(-a) * &qint(b));
        prop_assert_eq!(qint(a + b), pascal);
        prop_assert_eq!(qint(m).specialize(&rat(1), None).unwrap(), rat(m));
    }

    #[test]
    fn finite_dimension_is_binomial(n in 2usize..=5, mu in 0i64..=6) {
        let m = chevalley_action(&ModuleSpec::finite(n, mu, SYM)).unwrap();
        prop_assert_eq!(m.dim() as u64, binomial(mu as u64 + n as u64 - 1, n as u64 - 1));
    }

    #[test]
    fn generators_shift_weights(n in 2usize..=4, mu in 1i64..=4) {
        let m = chevalley_action(&ModuleSpec::finite(n, mu, SYM)).unwrap();
        for i in 0..n - 1 {
            for (op, sign) in [(&m.gens.e[i], 1i64), (&m.gens.f[i], -1)] {
                for (r, c, _) in op.entries() {
                    for k in 0..n {
                        let root = i64::from(k == i) - i64::from(k == i + 1);
                        let shifted = m.weights[c][k].shift(sign * root);
                        prop_assert_eq!(m.weights[r][k], shifted);
                    }
                }
            }
            let qh = &m.gens.qh[i];
            prop_assert_eq!(qh.nnz(), m.dim());
        }
    }

    #[test]
    fn mu_hbar_round_trip(n in 2usize..=5, mu in 1i64..=8, q in positive_q()) {
        let regime = if q > rat(1) { Regime::Gt1 } else { Regime::Lt1 };
        let hbar = mu_to_hbar(n, mu, regime, Some(&q)).unwrap();
        let cfg = OrbitAlgebraConfig::new(n, regime, hbar, Some(q));
        let back = hbar_to_mu(&cfg).unwrap();
        prop_assert_eq!(back.mu, Some(mu));
    }

    #[test]
    fn defect_vanishes_exactly_at_one(n in 2usize..=5, q in rational_q(), num in -6i64..=6, den in 1i64..=4) {
        let regime = if q.numer().magnitude() > q.denom().magnitude() { Regime::Gt1 } else { Regime::Lt1 };
        let hbar = QScalar::from_rational(ratio(num, den));
        let cfg = OrbitAlgebraConfig::new(n, regime, hbar, Some(q));
        let k = specialized_constants(&cfg).unwrap();
        let c = cfg.gamma_plus_hbar().unwrap();
        prop_assert_eq!(k.minus.is_zero(), c.is_one());
    }

    #[test]
    fn hbar_zero_reduction(n in 2usize..=6, mu in 1i64..=6, num in -5i64..=5, den in 1i64..=4) {
        let m = rat(mu);
        let k0 = classical_constants(n, &m, &rat(0));
        prop_assert_eq!(&k0.c0_hbar, &k0.c0);
        prop_assert_eq!(&k0.c1_hbar, &k0.c1);
        // the deformation is affine in hbar with slope ((n-1) mu, n - 2)
        let h = ratio(num, den);
        let kh = classical_constants(n, &m, &h);
        let nr = rat(n as i64);
        prop_assert_eq!(&kh.c0_hbar - &k0.c0, (&nr - rat(1)) * &m * &h);
        prop_assert_eq!(&kh.c1_hbar - &k0.c1, (&nr - rat(2)) * &h);
    }

    #[test]
    fn hbar_zero_is_singular(n in 2usize..=5, q in positive_q()) {
        let regime = if q > rat(1) { Regime::Gt1 } else { Regime::Lt1 };
        let cfg = OrbitAlgebraConfig::new(n, regime, QScalar::zero(), Some(q));
        let singular = matches!(
            hbar_to_mu(&cfg),
            Err(OrbitError::DegenerateDenominator { .. } | OrbitError::WeightAtInfinity { .. })
        );
        prop_assert!(singular);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn filtration_is_monotone(n in 2usize..=3, mu in 1i64..=4) {
        let psi = build_intertwiner(&ModuleSpec::finite(n, mu, SYM), &QScalar::one()).unwrap();
        let d = if n == 2 { mu as usize + 1 } else { 2 };
        let g = graded_dimensions(&psi, d).unwrap();
        prop_assert!(g.is_filtration());
        prop_assert!(g.matches_oracle(), "{:?} vs {:?}", g.dims, g.oracle);
    }

    #[test]
    fn specialized_ideal_annihilates(n in 2usize..=3, mu in 1i64..=3, q in positive_q()) {
        let regime = if q > rat(1) { Regime::Gt1 } else { Regime::Lt1 };
        let hbar = mu_to_hbar(n, mu, regime, Some(&q)).unwrap();
        let cfg = OrbitAlgebraConfig::new(n, regime, hbar, Some(q));
        let psi = orbit_intertwiner(&cfg).unwrap();
        let ideal = specialized_ideal(&cfg).unwrap();
        let mut gens = ideal.clone();
        gens.alpha = psi.alpha.clone();
        let rep = verify_ideal(&psi, &gens).unwrap();
        prop_assert!(rep.all_passed(), "{}", rep.to_text());
    }

    #[test]
    fn tensor_products_are_modules(n in 2usize..=3, a in 0i64..=2, b in 1i64..=2) {
        let x = chevalley_action(&ModuleSpec::finite(n, a, SYM)).unwrap();
        let y = chevalley_action(&ModuleSpec::finite(n, b, SYM)).unwrap();
        let t = tensor_product(&x, &y).unwrap();
        prop_assert!(verify_uq_relations(&t).all_passed());
    }
}

#[test]
fn classical_adjoint_is_the_commutator_action() {
    for n in 2..=4 {
        let adj = adjoint_action(n, &ArithmeticMode::Classical { mu: None }).unwrap();
        assert!(verify_uq_relations(&adj).all_passed());
        let rep = qverma::adjoint::classical_structure_check(n).unwrap();
        assert!(rep.all_passed(), "{}", rep.to_text());
    }
}

#[test]
fn braiding_invariants_through_rank_four() {
    for n in 2..=4 {
        let b = construct_braiding(n, &SYM).unwrap();
        let tw = build_involutive_twist(&b).unwrap();
        assert!(tw.report.all_passed(), "{}", tw.report.to_text());
        let id = SparseOperator::identity(b.dim());
        assert_eq!(tw.op.compose(&tw.op), id);
        for i in 0..n - 1 {
            assert!(tw.op.commutator(&b.square.gens.e[i]).is_zero());
            assert!(tw.op.commutator(&b.square.gens.f[i]).is_zero());
        }
        let top = b.s.get(0, 0);
        assert!(!top.is_zero());
        if n >= 3 {
            let e = eigen_analysis(&b).unwrap();
            let evs: Vec<QScalar> = e.pairs.iter().map(|p| p.eigenvalue.clone()).collect();
            let lam = QScalar::q_pow(-(n as i64));
            assert_eq!(evs, vec![lam.clone(), -&lam]);
        }
    }
}

#[test]
fn adjoint_block_spectrum_rank_five() {
    let b = construct_braiding(5, &SYM).unwrap();
    let e = eigen_analysis(&b).unwrap();
    assert!(e.report.all_passed(), "{}", e.report.to_text());
    let lam = QScalar::q_pow(-5);
    let evs: Vec<QScalar> = e.pairs.iter().map(|p| p.eigenvalue.clone()).collect();
    assert_eq!(evs, vec![lam.clone(), -&lam]);
    assert!(e.pairs.iter().all(|p| p.matches_formula));
}

#[test]
fn braiding_tends_to_the_flip() {
    for n in 2..=3 {
        let b = construct_braiding(n, &SYM).unwrap();
        let d = n * n - 1;
        let flip = SparseOperator::from_triplets(
            d * d,
            d * d,
            (0..d).flat_map(|a| (0..d).map(move |c| (c * d + a, a * d + c, QScalar::one()))),
        );
        let at_one =
            b.s.map_values(|v| v.substitute(Some(&rat(1)), None))
                .unwrap();
        assert_eq!(at_one, flip);
    }
}
