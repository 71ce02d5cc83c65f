//! Exact coefficient arithmetic in Q(q, z), z standing for q^μ.

mod poly;
mod scalar;
mod text;
pub use text::rational_text;

pub use poly::{rational_sqrt, Monomial, Poly, Rational};
pub use scalar::QScalar;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the requested point")]
    DenominatorVanishes,
    #[error("no value bound for symbol {0}")]
    MissingBinding(String),
    #[error("scalar is not a function of z^2")]
    NotEvenInZ,
    #[error("operation not available in this arithmetic mode: {0}")]
    InvalidMode(String),
    #[error("q must satisfy q != 0 and |q| != 1, got {0}")]
    UnitModulus(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, RingError> {
    let s = s.trim();
    let bad = || RingError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The symmetric q-integer `[m]_q = (q^m - q^-m)/(q - q^-1)` as a Laurent polynomial.
pub fn qint(m: i64) -> QScalar {
    if m == 0 {
        return QScalar::zero();
    }
    let sign = if m < 0 { -1 } else { 1 };
    let m = m.abs();
    // q^{m-1} + q^{m-3} + ... + q^{1-m}
    QScalar::laurent((0..m).map(|k| (rat(sign), (m - 1 - 2 * k) as i32, 0)))
}

/// `[μ + k]_q = (z q^k - z^-1 q^-k)/(q - q^-1)` with `z = q^μ`.
pub fn qint_shifted(k: i64) -> QScalar {
    let num = QScalar::laurent([(rat(1), k as i32, 1), (rat(-1), -k as i32, -1)]);
    &num / &q_minus_q_inv()
}

pub fn q_minus_q_inv() -> QScalar {
    QScalar::laurent([(rat(1), 1, 0), (rat(-1), -1, 0)])
}

/// An exponent of the form `a·μ + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Exponent {
    pub mu: i64,
    pub c: i64,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { mu: 0, c: 0 };

    pub fn int(c: i64) -> Self {
        Exponent { mu: 0, c }
    }

    pub fn mu_plus(c: i64) -> Self {
        Exponent { mu: 1, c }
    }

    pub fn add(self, o: Exponent) -> Self {
        Exponent {
            mu: self.mu + o.mu,
            c: self.c + o.c,
        }
    }

    pub fn sub(self, o: Exponent) -> Self {
        Exponent {
            mu: self.mu - o.mu,
            c: self.c - o.c,
        }
    }

    pub fn neg(self) -> Self {
        Exponent {
            mu: -self.mu,
            c: -self.c,
        }
    }

    pub fn shift(self, c: i64) -> Self {
        Exponent {
            mu: self.mu,
            c: self.c + c,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.mu == 0
    }
}

/// How scalars are realised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArithmeticMode {
    /// Symbolic `q`; weights are integers.
    ExactIntegerWeight,
    /// Symbolic `q` and `z = q^μ`.
    GenericWeight,
    /// `q` (and optionally `z`) bound to exact rationals with `|q| != 1`.
    NumericRational { q: Rational, z: Option<Rational> },
    /// `q = 1`; a rational `μ` may be bound for generic weights.
    Classical { mu: Option<Rational> },
}

impl ArithmeticMode {
    pub fn numeric(q: Rational, z: Option<Rational>) -> Result<Self, RingError> {
        if q.is_zero() || q.abs().is_one() {
            return Err(RingError::UnitModulus(format_rational(&q)));
        }
        if let Some(zv) = &z {
            if zv.is_zero() {
                return Err(RingError::Parse("z must be nonzero".into()));
            }
        }
        Ok(ArithmeticMode::NumericRational { q, z })
    }

    pub fn is_classical(&self) -> bool {
        matches!(self, ArithmeticMode::Classical { .. })
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(
            self,
            ArithmeticMode::ExactIntegerWeight | ArithmeticMode::GenericWeight
        )
    }

    pub fn supports_generic_weight(&self) -> bool {
        match self {
            ArithmeticMode::ExactIntegerWeight => false,
            ArithmeticMode::GenericWeight => true,
            ArithmeticMode::NumericRational { z, .. } => z.is_some(),
            ArithmeticMode::Classical { mu } => mu.is_some(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ArithmeticMode::ExactIntegerWeight => "symbolic q".into(),
            ArithmeticMode::GenericWeight => "symbolic q, z".into(),
            ArithmeticMode::NumericRational { q, z } => match z {
                Some(z) => format!("q = {}, z = {}", format_rational(q), format_rational(z)),
                None => format!("q = {}", format_rational(q)),
            },
            ArithmeticMode::Classical { mu } => match mu {
                Some(m) => format!("q = 1, mu = {}", format_rational(m)),
                None => "q = 1".into(),
            },
        }
    }

    /// Mode-aware construction of the scalars that enter module actions.
    pub fn q_pow(&self, k: i64) -> QScalar {
        match self {
            ArithmeticMode::ExactIntegerWeight | ArithmeticMode::GenericWeight => QScalar::q_pow(k),
            ArithmeticMode::NumericRational { q, .. } => QScalar::from_rational(rpow(q, k)),
            ArithmeticMode::Classical { .. } => QScalar::one(),
        }
    }

    /// `q^e` for an exponent `a·μ + c`.
    pub fn q_exp(&self, e: Exponent) -> Result<QScalar, RingError> {
        if e.mu == 0 {
            return Ok(self.q_pow(e.c));
        }
        match self {
            ArithmeticMode::ExactIntegerWeight => Err(RingError::InvalidMode(
                "symbolic weight in integer-weight mode".into(),
            )),
            ArithmeticMode::GenericWeight => Ok(&QScalar::z_pow(e.mu) * &QScalar::q_pow(e.c)),
            ArithmeticMode::NumericRational { q, z } => {
                let z = z
                    .as_ref()
                    .ok_or_else(|| RingError::MissingBinding("z".into()))?;
                Ok(QScalar::from_rational(rpow(z, e.mu) * rpow(q, e.c)))
            }
            ArithmeticMode::Classical { .. } => Ok(QScalar::one()),
        }
    }

    pub fn qint(&self, m: i64) -> QScalar {
        self.qint_exp(Exponent::int(m)).expect("integer q-number")
    }

    /// `[a·μ + c]_q`.
    pub fn qint_exp(&self, e: Exponent) -> Result<QScalar, RingError> {
        match self {
            ArithmeticMode::Classical { mu } => Ok(QScalar::from_rational(classical_value(e, mu)?)),
            ArithmeticMode::ExactIntegerWeight | ArithmeticMode::GenericWeight if e.mu == 0 => {
                Ok(qint(e.c))
            }
            _ => {
                let num = &self.q_exp(e)? - &self.q_exp(e.neg())?;
                Ok(&num / &self.q_minus_q_inv())
            }
        }
    }

    /// `[μ + k]_q`; needs a generic weight.
    pub fn qint_shifted(&self, k: i64) -> Result<QScalar, RingError> {
        if !self.supports_generic_weight() {
            return Err(RingError::InvalidMode(
                "[mu + k]_q needs a generic weight".into(),
            ));
        }
        self.qint_exp(Exponent::mu_plus(k))
    }

    pub fn q_minus_q_inv(&self) -> QScalar {
        &self.q_pow(1) - &self.q_pow(-1)
    }

    /// `([2]_q q^x - q^{y+1} - q^{-y-1}) / (q - q^-1)`; its value at `q = 1` is `x`.
    pub fn cartan_bracket(&self, x: Exponent, y: Exponent) -> Result<QScalar, RingError> {
        if let ArithmeticMode::Classical { mu } = self {
            return Ok(QScalar::from_rational(classical_value(x, mu)?));
        }
        let two = self.qint(2);
        let num = &(&two * &self.q_exp(x)?)
            - &(&self.q_exp(y.shift(1))? + &self.q_exp(y.neg().shift(-1))?);
        Ok(&num / &self.q_minus_q_inv())
    }

    /// Right side of `[e_i, f_i]` on a diagonal entry with weight `w`:
    /// `(q^w - q^-w)/(q - q^-1)`, or `w` itself when `q = 1`.
    pub fn cartan_quotient(&self, w: Exponent) -> Result<QScalar, RingError> {
        self.qint_exp(w)
    }

    /// Evaluates a symbolic-mode scalar in this mode.
    pub fn realize(&self, s: &QScalar) -> Result<QScalar, RingError> {
        match self {
            ArithmeticMode::ExactIntegerWeight | ArithmeticMode::GenericWeight => Ok(s.clone()),
            ArithmeticMode::NumericRational { q, z } => s.substitute(Some(q), z.as_ref()),
            ArithmeticMode::Classical { .. } => s.substitute(Some(&Rational::one()), None),
        }
    }
}

fn classical_value(e: Exponent, mu: &Option<Rational>) -> Result<Rational, RingError> {
    if e.mu == 0 {
        return Ok(rat(e.c));
    }
    let mu = mu
        .as_ref()
        .ok_or_else(|| RingError::MissingBinding("mu".into()))?;
    Ok(rat(e.mu) * mu + rat(e.c))
}

pub fn rpow(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_q_integers() {
        assert_eq!(qint(2), QScalar::laurent([(rat(1), 1, 0), (rat(1), -1, 0)]));
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(
            qint(3),
            QScalar::laurent([(rat(1), 2, 0), (rat(1), 0, 0), (rat(1), -2, 0)])
        );
        assert_eq!(qint(-4), -qint(4));
    }

    #[test]
    fn telescoping() {
        for m in 1..=12 {
            let lhs = &qint(m) * &q_minus_q_inv();
            let rhs = QScalar::laurent([(rat(1), m as i32, 0), (rat(-1), -m as i32, 0)]);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn q_pascal() {
        for a in 0..=8 {
            for b in 0..=8 {
                let rhs = &(&QScalar::q_pow(b) * &qint(a)) + &(&QScalar::q_pow(-a) * &qint(b));
                assert_eq!(qint(a + b), rhs);
            }
        }
    }

    #[test]
    fn shifted_matches_integer_weight() {
        for n in 2..=5 {
            let ratio = &qint_shifted(n) / &qint_shifted(0);
            for mu in 1..=6 {
                assert_eq!(ratio.bind_z_to_q_power(mu), &qint(mu + n) / &qint(mu));
            }
        }
        let s = qint_shifted(0);
        let expect = &QScalar::laurent([(rat(1), 0, 1), (rat(-1), 0, -1)]) / &q_minus_q_inv();
        assert_eq!(s, expect);
        assert_eq!(
            qint_shifted(1).specialize(&rat(2), Some(&rat(2))).unwrap(),
            ratio(5, 2)
        );
    }

    #[test]
    fn specialization() {
        assert_eq!(qint(2).specialize(&rat(2), None).unwrap(), ratio(5, 2));
        for m in 1..=12 {
            assert_eq!(qint(m).specialize(&rat(1), None).unwrap(), rat(m));
        }
        let pole = q_minus_q_inv().inv().unwrap();
        assert_eq!(
            pole.specialize(&rat(-1), None),
            Err(RingError::DenominatorVanishes)
        );
        // [4]/[2] reduces to q^2 + q^-2, which is regular at q = -1
        assert_eq!(
            (&qint(4) / &qint(2)).specialize(&rat(-1), None).unwrap(),
            rat(2)
        );
        assert!(matches!(
            qint_shifted(0).specialize(&rat(2), None),
            Err(RingError::MissingBinding(_))
        ));
    }

    #[test]
    fn mode_values_agree() {
        let num = ArithmeticMode::numeric(ratio(3, 2), Some(ratio(5, 7))).unwrap();
        for e in [
            Exponent::int(3),
            Exponent::mu_plus(2),
            Exponent { mu: -1, c: 4 },
        ] {
            let sym = ArithmeticMode::GenericWeight.qint_exp(e).unwrap();
            let val = sym.specialize(&ratio(3, 2), Some(&ratio(5, 7))).unwrap();
            assert_eq!(num.qint_exp(e).unwrap().as_rational().unwrap(), val);
            let bracket = ArithmeticMode::GenericWeight.cartan_bracket(e, e).unwrap();
            assert_eq!(
                bracket,
                &QScalar::q_pow(-1) * &ArithmeticMode::GenericWeight.qint_exp(e).unwrap()
            );
        }
        assert!(ArithmeticMode::numeric(rat(-1), None).is_err());
        assert!(ArithmeticMode::ExactIntegerWeight.qint_shifted(1).is_err());
        let classical = ArithmeticMode::Classical {
            mu: Some(ratio(1, 2)),
        };
        assert_eq!(
            classical
                .cartan_bracket(Exponent::mu_plus(1), Exponent::int(0))
                .unwrap(),
            QScalar::from_rational(ratio(3, 2))
        );
    }
}
