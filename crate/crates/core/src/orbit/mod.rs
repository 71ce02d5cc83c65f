//! The two-parameter family A_{ħ,q}: the weight μ expressed through ħ,
//! the ideal with `α = α₀/[μ]_q` substituted, graded dimensions of the
//! represented algebra and the q = 1 checks.

mod classical;
mod flatness;

pub use classical::{
    classical_constants, classical_limit_check, renormalized_operators, verify_classical_constants,
    ClassicalConstants,
};
pub use flatness::{graded_dimensions, GradedDims};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adjoint::{named_vectors, AdjBasisElement, InvariantForm, VectorRole};
use crate::braidedmod::{
    act_quadratic, build_intertwiner, expected_constants, generators_with_constants,
    lowering_closure, mixed_lowering, verify_ideal, IdealGenerators, Intertwiner,
};
use crate::linalg::rank;
use crate::operator::vec_ops;
use crate::repcore::{compare, HighestWeight, ModuleSpec, RepError};
use crate::report::VerificationReport;
use crate::ring::{
    format_rational, rational_sqrt, rpow, ArithmeticMode, Exponent, QScalar, Rational, RingError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("hbar = {hbar} sits on the pole of the weight binding")]
    DegenerateDenominator { hbar: String },
    #[error("hbar = {hbar} sends z^2 to zero, the weight escapes to infinity")]
    WeightAtInfinity { hbar: String },
    #[error("regime violation: {0}")]
    RegimeViolation(String),
    #[error("no module realises this member: {0}")]
    Unrepresentable(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Which branch of `γ(q)` the family uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `|q| > 1`, `γ(q) = qⁿ`.
    Gt1,
    /// `|q| < 1`, `γ(q) = q⁻ⁿ`.
    Lt1,
}

impl Regime {
    pub fn parse(s: &str) -> Option<Regime> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gt1" | "modgt1" => Some(Regime::Gt1),
            "lt1" | "modlt1" => Some(Regime::Lt1),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Regime::Gt1 => "gt1",
            Regime::Lt1 => "lt1",
        }
    }

    fn gamma_exponent(&self, n: usize) -> i64 {
        match self {
            Regime::Gt1 => n as i64,
            Regime::Lt1 => -(n as i64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitAlgebraConfig {
    pub n: usize,
    pub regime: Regime,
    /// May involve `q`, and `z` for a symbolic weight.
    pub hbar: QScalar,
    pub alpha0: QScalar,
    /// `None` keeps `q` symbolic.
    pub q: Option<Rational>,
    pub truncation: usize,
}

impl OrbitAlgebraConfig {
    pub fn new(n: usize, regime: Regime, hbar: QScalar, q: Option<Rational>) -> Self {
        OrbitAlgebraConfig {
            n,
            regime,
            hbar,
            alpha0: QScalar::one(),
            q,
            truncation: 4,
        }
    }

    /// The member whose weight is μ: `ħ = [μ+n]/[μ] - γ` with a symbolic `z = q^μ`.
    pub fn generic(n: usize, regime: Regime) -> Self {
        let mode = ArithmeticMode::GenericWeight;
        let ratio = &mode
            .qint_exp(Exponent::mu_plus(n as i64))
            .expect("generic mode")
            / &mode.qint_exp(Exponent::mu_plus(0)).expect("generic mode");
        let hbar = &ratio - &QScalar::q_pow(regime.gamma_exponent(n));
        OrbitAlgebraConfig::new(n, regime, hbar, None)
    }

    pub fn validate(&self) -> Result<(), OrbitError> {
        if self.n < 2 {
            return Err(OrbitError::InvalidConfig(
                "rank parameter n must be at least 2".into(),
            ));
        }
        if self.alpha0.is_zero() {
            return Err(OrbitError::InvalidConfig("alpha0 must be nonzero".into()));
        }
        if let Some(q) = &self.q {
            if q.is_zero() || q.abs().is_one() {
                return Err(OrbitError::InvalidConfig(format!(
                    "q = {} has modulus 0 or 1",
                    format_rational(q)
                )));
            }
            let big = q.abs() > Rational::one();
            if big != (self.regime == Regime::Gt1) {
                return Err(OrbitError::RegimeViolation(format!(
                    "|q| {} 1 with q = {} does not match regime {}",
                    if big { ">" } else { "<" },
                    format_rational(q),
                    self.regime.label()
                )));
            }
            if self.hbar.mentions_z() || self.alpha0.mentions_z() {
                return Err(OrbitError::InvalidConfig(
                    "numeric q needs hbar and alpha0 free of z".into(),
                ));
            }
        }
        Ok(())
    }

    /// Arithmetic in which the binding and the specialized ideal live.
    pub fn mode(&self) -> ArithmeticMode {
        match &self.q {
            Some(q) => ArithmeticMode::NumericRational {
                q: q.clone(),
                z: None,
            },
            None => ArithmeticMode::ExactIntegerWeight,
        }
    }

    fn realize(&self, s: &QScalar) -> Result<QScalar, OrbitError> {
        Ok(match &self.q {
            Some(q) => s.substitute(Some(q), None)?,
            None => s.clone(),
        })
    }

    pub fn gamma(&self) -> QScalar {
        self.mode().q_pow(self.regime.gamma_exponent(self.n))
    }

    /// `γ(q) + ħ`, the value of `[μ+n]/[μ]`.
    pub fn gamma_plus_hbar(&self) -> Result<QScalar, OrbitError> {
        Ok(&self.gamma() + &self.realize(&self.hbar)?)
    }

    pub fn alpha0(&self) -> Result<QScalar, OrbitError> {
        self.realize(&self.alpha0)
    }

    pub fn label(&self) -> String {
        format!(
            "n={}, regime={}, hbar={}, alpha0={}, q={}",
            self.n,
            self.regime.label(),
            self.hbar,
            self.alpha0,
            self.q
                .as_ref()
                .map(format_rational)
                .unwrap_or_else(|| "symbolic".into())
        )
    }

    fn report(&self, suite: &str) -> VerificationReport {
        VerificationReport::new(suite)
            .with_config("n", self.n)
            .with_config("regime", self.regime.label())
            .with_config("hbar", &self.hbar)
            .with_config("alpha0", &self.alpha0)
            .with_config(
                "q",
                self.q
                    .as_ref()
                    .map(format_rational)
                    .unwrap_or_else(|| "symbolic".into()),
            )
    }
}

/// The value of `z² = q^{2μ}` fixed by ħ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightBinding {
    pub z_squared: QScalar,
    /// The positive rational root, when `q` is numeric and one exists.
    #[serde(serialize_with = "crate::ring::rational_text::option")]
    pub z: Option<Rational>,
    /// `μ` when `z² = q^{2μ}` for an integer μ.
    pub mu: Option<i64>,
    /// `z²` is the symbolic `z²` itself, so μ stays generic.
    pub generic: bool,
}

/// Solves `[μ+n]/[μ] = γ(q) + ħ` for `z²`:
/// `z² = (γ + ħ - q⁻ⁿ) / (γ + ħ - qⁿ)`.
pub fn hbar_to_mu(config: &OrbitAlgebraConfig) -> Result<WeightBinding, OrbitError> {
    config.validate()?;
    let mode = config.mode();
    let n = config.n as i64;
    let c = config.gamma_plus_hbar()?;
    let den = &c - &mode.q_pow(n);
    if den.is_zero() {
        return Err(OrbitError::DegenerateDenominator {
            hbar: config.hbar.to_string(),
        });
    }
    let num = &c - &mode.q_pow(-n);
    if num.is_zero() {
        return Err(OrbitError::WeightAtInfinity {
            hbar: config.hbar.to_string(),
        });
    }
    let z_squared = &num / &den;
    let generic = z_squared == QScalar::z_pow(2);
    let (z, mu) = match &config.q {
        Some(q) => {
            let v = z_squared.as_rational().expect("numeric binding");
            (rational_sqrt(&v).map(|r| r.abs()), integer_exponent(q, &v))
        }
        None => (None, symbolic_exponent(&z_squared)),
    };
    Ok(WeightBinding {
        z_squared,
        z,
        mu,
        generic,
    })
}

fn integer_exponent(q: &Rational, zsq: &Rational) -> Option<i64> {
    let q2 = q * q;
    (0..=256i64)
        .flat_map(|k| [k, -k])
        .find(|&k| rpow(&q2, k) == *zsq)
}

fn symbolic_exponent(zsq: &QScalar) -> Option<i64> {
    if zsq.mentions_z() || !zsq.is_laurent() || !zsq.numerator().is_monomial() {
        return None;
    }
    let (m, c) = zsq.numerator().leading()?.clone();
    let total = zsq.shift().0 as i64 + m.q as i64;
    (c.is_one() && total % 2 == 0).then_some(total / 2)
}

/// `ħ = [μ+n]/[μ] - γ(q)` for an integer weight μ ≠ 0.
pub fn mu_to_hbar(
    n: usize,
    mu: i64,
    regime: Regime,
    q: Option<&Rational>,
) -> Result<QScalar, OrbitError> {
    let mode = match q {
        Some(q) => ArithmeticMode::numeric(q.clone(), None)?,
        None => ArithmeticMode::ExactIntegerWeight,
    };
    let ratio = mode.qint(mu + n as i64).checked_div(&mode.qint(mu))?;
    Ok(&ratio - &mode.q_pow(regime.gamma_exponent(n)))
}

/// Value and first derivative at `q = 1` of a scalar in `q` alone, i.e.
/// its image in `Q[ε]/(ε²)` under `q = 1 + ε`.
pub fn first_order_at_one(s: &QScalar) -> Result<(Rational, Rational), OrbitError> {
    if s.mentions_z() {
        return Err(OrbitError::InvalidConfig(
            "first-order expansion needs a scalar in q alone".into(),
        ));
    }
    let eval = |p: &crate::ring::Poly| -> (Rational, Rational) {
        p.terms()
            .iter()
            .fold((Rational::zero(), Rational::zero()), |(v, d), (m, c)| {
                (v + c, d + c * Rational::from_integer((m.q as i64).into()))
            })
    };
    let (nv, nd) = eval(s.numerator());
    let (dv, dd) = eval(s.denominator());
    if dv.is_zero() {
        return Err(OrbitError::Ring(RingError::DenominatorVanishes));
    }
    let value = &nv / &dv;
    let shift = Rational::from_integer((s.shift().0 as i64).into());
    let deriv = (&nd * &dv - &nv * &dd) / (&dv * &dv) + &shift * &value;
    Ok((value, deriv))
}

/// `ħ(1 + ε)` to first order for the member with weight μ: the constant
/// term is `n/μ` and the slope is `∓n` by regime.
pub fn hbar_series_at_one(
    n: usize,
    mu: i64,
    regime: Regime,
) -> Result<(Rational, Rational), OrbitError> {
    first_order_at_one(&mu_to_hbar(n, mu, regime, None)?)
}

/// The three scalars of the specialized generators, computed from `γ + ħ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializedConstants {
    /// `α₀ q^{n-2} ([n-1](γ+ħ) - 1)/[n]`.
    pub first: QScalar,
    /// `α₀ q ([n-1] - (γ+ħ))/[n]`.
    pub second: QScalar,
    /// `α₀² qⁿ [n-1]/[n] (γ+ħ)`.
    pub invariant: QScalar,
    /// `α₀ ([n-1]+1)/[n] ((γ+ħ) - 1)`.
    pub minus: QScalar,
}

pub fn specialized_constants(
    config: &OrbitAlgebraConfig,
) -> Result<SpecializedConstants, OrbitError> {
    let mode = config.mode();
    let n = config.n as i64;
    let c = config.gamma_plus_hbar()?;
    let a0 = config.alpha0()?;
    let one = QScalar::one();
    let b1 = mode.qint(n - 1);
    let bn_inv = mode.qint(n).inv()?;
    let first = &(&(&a0 * &mode.q_pow(n - 2)) * &(&(&b1 * &c) - &one)) * &bn_inv;
    let second = &(&(&a0 * &mode.q_pow(1)) * &(&b1 - &c)) * &bn_inv;
    let invariant = &(&(&(&a0 * &a0) * &mode.q_pow(n)) * &(&b1 * &bn_inv)) * &c;
    let minus = &(&(&a0 * &(&b1 + &one)) * &bn_inv) * &(&c - &one);
    Ok(SpecializedConstants {
        first,
        second,
        invariant,
        minus,
    })
}

/// The quadratic generators of the kernel with `α = α₀/[μ]` and μ expressed
/// through ħ. The `alpha` field holds α₀.
pub fn specialized_ideal(config: &OrbitAlgebraConfig) -> Result<IdealGenerators, OrbitError> {
    hbar_to_mu(config)?;
    let k = specialized_constants(config)?;
    Ok(IdealGenerators {
        n: config.n,
        mu: format!("hbar = {}", config.hbar),
        alpha: config.alpha0()?,
        generators: generators_with_constants(
            config.n,
            &config.mode(),
            &k.first,
            &k.second,
            &k.invariant,
        ),
        descendant_closure: true,
    })
}

/// The constants of the weight-μ ideal with `α = α₀/[μ]`, rewritten through
/// the binding `z² ↦ z²(ħ)`. They must agree with [`specialized_constants`].
pub fn constants_from_weight(
    config: &OrbitAlgebraConfig,
) -> Result<SpecializedConstants, OrbitError> {
    let binding = hbar_to_mu(config)?;
    let mode = ArithmeticMode::GenericWeight;
    let mu = Exponent::mu_plus(0);
    let alpha = config.alpha0.checked_div(&mode.qint_exp(mu)?)?;
    let k = expected_constants(config.n, mu, &alpha, &mode)?;
    let bind = |s: &QScalar| -> Result<QScalar, OrbitError> {
        let v = s.substitute_z_squared(&binding.z_squared)?;
        config.realize(&v)
    };
    Ok(SpecializedConstants {
        first: bind(&k.first)?,
        second: bind(&k.second)?,
        invariant: bind(&k.invariant)?,
        minus: bind(&k.minus)?,
    })
}

/// The module carrying the member fixed by `config`: the finite module for
/// an integer weight, else a truncated Verma module with a generic or
/// rational `z`.
pub fn orbit_intertwiner(config: &OrbitAlgebraConfig) -> Result<Intertwiner, OrbitError> {
    let binding = hbar_to_mu(config)?;
    let n = config.n;
    let (spec, mu) = if binding.generic {
        let spec = ModuleSpec::verma(
            n,
            HighestWeight::Generic,
            config.truncation,
            ArithmeticMode::GenericWeight,
        );
        (spec, Exponent::mu_plus(0))
    } else if let Some(m) = binding.mu.filter(|m| *m > 0) {
        (ModuleSpec::finite(n, m, config.mode()), Exponent::int(m))
    } else if let (Some(q), Some(z)) = (&config.q, &binding.z) {
        let mode = ArithmeticMode::numeric(q.clone(), Some(z.clone()))?;
        (
            ModuleSpec::verma(n, HighestWeight::Generic, config.truncation, mode),
            Exponent::mu_plus(0),
        )
    } else {
        return Err(OrbitError::Unrepresentable(format!(
            "z^2 = {} is neither q^(2 mu) with mu > 0 nor a rational square",
            binding.z_squared
        )));
    };
    let alpha = config
        .alpha0()?
        .checked_div(&spec.arithmetic.qint_exp(mu)?)?;
    Ok(build_intertwiner(&spec, &alpha)?)
}

/// `s₋ = q^{2-n}s¹ - q⁻¹s²` acts as `α₀([n-1]+1)/[n]((γ+ħ) - 1) Ψ(g_{1,n})`;
/// the coefficient vanishes exactly when `γ + ħ = 1`.
pub fn s_minus_defect(config: &OrbitAlgebraConfig) -> Result<VerificationReport, OrbitError> {
    let mut rep = config.report("s-minus-defect");
    let n = config.n;
    let k = specialized_constants(config)?;
    let from_weight = constants_from_weight(config)?;
    rep.record(
        "defect-closed-form",
        "the s- coefficient rewritten through hbar matches the weight formula",
        k.minus == from_weight.minus,
        Some(format!("coefficient {}", k.minus)),
    );
    let c = config.gamma_plus_hbar()?;
    let vanishes_iff = k.minus.is_zero() == (&c - &QScalar::one()).is_zero();
    rep.record(
        "defect-vanishing",
        "the s- coefficient vanishes iff gamma + hbar = 1",
        vanishes_iff,
        Some(format!("gamma + hbar = {c}")),
    );
    let at_zero = OrbitAlgebraConfig {
        hbar: QScalar::zero(),
        ..config.clone()
    };
    let zero_defect = specialized_constants(&at_zero)?.minus;
    rep.record(
        "defect-at-hbar-zero",
        "at hbar = 0 the s- image is nonzero, the algebra is not twisted-commutative",
        !zero_defect.is_zero(),
        Some(format!("coefficient {zero_defect}")),
    );
    if config.q.is_none() && !config.hbar.mentions_z() && !config.hbar.mentions_q() {
        // q = 1 with γ(1) = 1: the coefficient is α₀ ħ
        let one = Rational::one();
        let at_one = k.minus.substitute(Some(&one), None)?;
        let expect = (&config.alpha0 * &config.hbar).substitute(Some(&one), None)?;
        rep.record(
            "defect-classical",
            "at q = 1 the s- coefficient reduces to alpha0 hbar",
            at_one == expect,
            Some(format!("{at_one}")),
        );
    }
    match orbit_intertwiner(config) {
        Ok(psi) => {
            let mode = psi.mode().clone();
            let s1 = role_vector(n, &mode, VectorRole::AdjointFirst);
            let s2 = role_vector(n, &mode, VectorRole::AdjointSecond);
            let mut sm = vec_ops::scale(&s1, &mode.q_pow(2 - n as i64));
            vec_ops::axpy(&mut sm, &-&mode.q_pow(-1), &s2);
            let op = act_quadratic(&sm, &psi)?;
            let coeff = module_value(&k.minus, &psi)?;
            let g1n = psi.op(AdjBasisElement::OffDiagonal(1, n)).scale(&coeff);
            let w = compare(&psi.module, 2, &op, &g1n);
            rep.record(
                "defect-represented",
                "s- acts on the module as the coefficient times Psi(g_1n)",
                w.is_none(),
                w.or(Some(psi.spec.label())),
            );
        }
        Err(OrbitError::Unrepresentable(why)) => rep.note(format!("no module check: {why}")),
        Err(e) => return Err(e),
    }
    if n == 2 {
        // the relations span one adjoint triplet and one invariant line
        let gens = specialized_ideal(config)?;
        let lowering = mixed_lowering(2, &config.mode())?;
        let mut span = Vec::new();
        for g in &gens.generators {
            span.extend(lowering_closure(&g.element.flatten(), &lowering));
        }
        let r = rank(&span);
        rep.record(
            "sphere-shape",
            "for n = 2 the relations form a triplet and a scalar, four in all",
            r == 4,
            Some(format!("{r} independent relations")),
        );
    }
    Ok(rep)
}

fn role_vector(n: usize, mode: &ArithmeticMode, role: VectorRole) -> crate::operator::SparseVec {
    named_vectors(n, mode, InvariantForm::Corrected)
        .into_iter()
        .find(|x| x.role == role)
        .map(|x| x.vector)
        .unwrap_or_default()
}

/// A coefficient of the binding arithmetic read in the module's arithmetic:
/// a symbolic `z` is left alone, a rational `z` is substituted.
fn module_value(s: &QScalar, psi: &Intertwiner) -> Result<QScalar, OrbitError> {
    Ok(match psi.mode() {
        ArithmeticMode::NumericRational { q, z } => s.substitute(Some(q), z.as_ref())?,
        _ => s.clone(),
    })
}

/// Binding, agreement of the specialized constants with the weight formulas,
/// annihilation on the member's module, and the s- defect.
pub fn verify_orbit(config: &OrbitAlgebraConfig) -> Result<VerificationReport, OrbitError> {
    let mut rep = config.report("orbit");
    let binding = hbar_to_mu(config)?;
    rep.pass(
        "weight-binding",
        "z^2 = (gamma + hbar - q^-n) / (gamma + hbar - q^n)",
        match binding.mu {
            Some(m) => format!("z^2 = {}, mu = {m}", binding.z_squared),
            None => format!("z^2 = {}", binding.z_squared),
        },
    );
    let k = specialized_constants(config)?;
    let w = constants_from_weight(config)?;
    for (id, a, b) in [
        ("specialized-first", &k.first, &w.first),
        ("specialized-second", &k.second, &w.second),
        ("specialized-invariant", &k.invariant, &w.invariant),
    ] {
        rep.record(
            id,
            "the hbar form of the constant equals the weight form with alpha = alpha0/[mu]",
            a == b,
            Some(format!("{a}")),
        );
    }
    match orbit_intertwiner(config) {
        Ok(psi) => {
            let mut gens = specialized_ideal(config)?;
            for g in &mut gens.generators {
                g.element.constant = module_value(&g.element.constant, &psi)?;
                for c in g.element.linear.values_mut() {
                    *c = module_value(c, &psi)?;
                }
            }
            rep.absorb("ideal-", verify_ideal(&psi, &gens)?);
        }
        Err(OrbitError::Unrepresentable(why)) => rep.note(format!("no module check: {why}")),
        Err(e) => return Err(e),
    }
    rep.absorb("", s_minus_defect(config)?);
    if config.regime == Regime::Gt1 {
        rep.note(
            "hbar = 0 is the pole of the weight binding in this regime: mu escapes to infinity",
        );
    } else {
        rep.note("hbar = 0 sends z^2 to zero in this regime: mu escapes to infinity");
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{qint, rat, ratio};

    #[test]
    fn pole_at_hbar_zero() {
        let cfg = OrbitAlgebraConfig::new(3, Regime::Gt1, QScalar::zero(), None);
        assert!(matches!(
            hbar_to_mu(&cfg),
            Err(OrbitError::DegenerateDenominator { .. })
        ));
        let cfg = OrbitAlgebraConfig::new(3, Regime::Lt1, QScalar::zero(), Some(ratio(1, 2)));
        assert!(matches!(
            hbar_to_mu(&cfg),
            Err(OrbitError::WeightAtInfinity { .. })
        ));
    }

    #[test]
    fn regime_is_checked() {
        let cfg = OrbitAlgebraConfig::new(3, Regime::Lt1, QScalar::one(), Some(rat(2)));
        assert!(matches!(
            hbar_to_mu(&cfg),
            Err(OrbitError::RegimeViolation(_))
        ));
    }

    #[test]
    fn round_trip_n2_mu2() {
        let q = rat(2);
        let h = mu_to_hbar(2, 2, Regime::Gt1, Some(&q)).unwrap();
        // [4]/[2] = q^2 + q^-2
        assert_eq!(h, QScalar::from_rational(ratio(1, 4)));
        let b = hbar_to_mu(&OrbitAlgebraConfig::new(2, Regime::Gt1, h, Some(q))).unwrap();
        assert_eq!(b.z_squared, QScalar::from_int(16));
        assert_eq!(b.mu, Some(2));
        assert_eq!(b.z, Some(rat(4)));
    }

    #[test]
    fn symbolic_round_trip_and_generic() {
        let h = mu_to_hbar(3, 2, Regime::Gt1, None).unwrap();
        assert_eq!(h, &(&qint(5) / &qint(2)) - &QScalar::q_pow(3));
        let b = hbar_to_mu(&OrbitAlgebraConfig::new(3, Regime::Gt1, h, None)).unwrap();
        assert_eq!(b.mu, Some(2));
        let b = hbar_to_mu(&OrbitAlgebraConfig::generic(3, Regime::Lt1)).unwrap();
        assert!(b.generic);
    }

    #[test]
    fn series_at_one() {
        let (v, d) = hbar_series_at_one(3, 2, Regime::Gt1).unwrap();
        assert_eq!(v, ratio(3, 2));
        assert_eq!(d, rat(-3));
        let (v, d) = hbar_series_at_one(4, 5, Regime::Lt1).unwrap();
        assert_eq!(v, ratio(4, 5));
        assert_eq!(d, rat(4));
    }

    #[test]
    fn orbit_reports() {
        let q = rat(2);
        let h = mu_to_hbar(3, 2, Regime::Gt1, Some(&q)).unwrap();
        let rep = verify_orbit(&OrbitAlgebraConfig::new(3, Regime::Gt1, h, Some(q))).unwrap();
        assert!(rep.all_passed(), "{}", rep.to_text());
        let mut cfg = OrbitAlgebraConfig::generic(3, Regime::Gt1);
        cfg.truncation = 2;
        let rep = verify_orbit(&cfg).unwrap();
        assert!(rep.all_passed(), "{}", rep.to_text());
        // a rational q with a rational z that is not an integer power
        let q = ratio(1, 2);
        let cfg =
            OrbitAlgebraConfig::new(2, Regime::Lt1, QScalar::from_rational(ratio(1, 3)), Some(q));
        let rep = verify_orbit(&cfg).unwrap();
        assert!(rep.all_passed(), "{}", rep.to_text());
    }

    #[test]
    fn defect_vanishes_when_gamma_plus_hbar_is_one() {
        let q = rat(3);
        let cfg = OrbitAlgebraConfig::new(2, Regime::Gt1, QScalar::from_int(1 - 9), Some(q));
        assert!(specialized_constants(&cfg).unwrap().minus.is_zero());
        let rep = s_minus_defect(&OrbitAlgebraConfig::new(
            3,
            Regime::Gt1,
            QScalar::from_int(2),
            None,
        ))
        .unwrap();
        assert!(rep.all_passed(), "{}", rep.to_text());
    }
}
