use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{pow_rat, Monomial, Poly, Rational};
use super::RingError;

/// An element of Q(q, z) in canonical form
/// `q^shift_q * z^shift_z * num / den`.
///
/// Canonical means: `num` and `den` are coprime, neither is divisible by
/// `q` or `z`, `den` is monic in degree-lexicographic order, and zero is
/// `0 / 1` with zero shift. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    shift_q: i32,
    shift_z: i32,
    num: Poly,
    den: Poly,
}

impl Default for QScalar {
    fn default() -> Self {
        QScalar::zero()
    }
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            shift_q: 0,
            shift_z: 0,
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        QScalar::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_rational(c: Rational) -> Self {
        QScalar::monomial(c, 0, 0)
    }

    /// `c * q^a * z^b`.
    pub fn monomial(c: Rational, a: i32, b: i32) -> Self {
        if c.is_zero() {
            return QScalar::zero();
        }
        QScalar {
            shift_q: a,
            shift_z: b,
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn q() -> Self {
        QScalar::q_pow(1)
    }

    pub fn z() -> Self {
        QScalar::z_pow(1)
    }

    pub fn q_pow(a: i64) -> Self {
        QScalar::monomial(Rational::one(), a as i32, 0)
    }

    pub fn z_pow(b: i64) -> Self {
        QScalar::monomial(Rational::one(), 0, b as i32)
    }

    /// Laurent polynomial from terms `(coefficient, q-exponent, z-exponent)`.
    pub fn laurent<I: IntoIterator<Item = (Rational, i32, i32)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|t| !t.0.is_zero()).collect();
        if terms.is_empty() {
            return QScalar::zero();
        }
        let mq = terms.iter().map(|t| t.1).min().unwrap();
        let mz = terms.iter().map(|t| t.2).min().unwrap();
        let num = Poly::from_terms(
            terms
                .into_iter()
                .map(|(c, a, b)| (Monomial::new((a - mq) as u32, (b - mz) as u32), c)),
        );
        QScalar::normalized(mq, mz, num, Poly::one())
    }

    /// Raw constructor: `q^a z^b num / den`, brought to canonical form.
    pub fn from_parts(a: i32, b: i32, num: Poly, den: Poly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(QScalar::normalized(a, b, num, den))
    }

    fn normalized(mut a: i32, mut b: i32, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return QScalar::zero();
        }
        let mn = num.monomial_content();
        let md = den.monomial_content();
        let mut num = num.div_monomial(mn);
        let mut den = den.div_monomial(md);
        a += mn.q as i32 - md.q as i32;
        b += mn.z as i32 - md.z as i32;
        if !den.is_constant() {
            let g = Poly::gcd(&num, &den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        QScalar {
            shift_q: a,
            shift_z: b,
            num,
            den,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift_q == 0 && self.shift_z == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a constant (a Laurent polynomial).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn shift(&self) -> (i32, i32) {
        (self.shift_q, self.shift_z)
    }

    pub fn mentions_z(&self) -> bool {
        !self.is_zero() && (self.shift_z != 0 || self.num.mentions_z() || self.den.mentions_z())
    }

    pub fn mentions_q(&self) -> bool {
        !self.is_zero() && (self.shift_q != 0 || self.num.mentions_q() || self.den.mentions_q())
    }

    /// The rational value, if this scalar is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.shift_q == 0 && self.shift_z == 0 && self.num.is_constant() && self.den.is_one() {
            Some(self.num.leading_coeff())
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let lc = self.num.leading_coeff();
        let inv = lc.recip();
        Ok(QScalar {
            shift_q: -self.shift_q,
            shift_z: -self.shift_z,
            num: self.den.scale(&inv),
            den: self.num.scale(&inv),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, RingError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().expect("negative power of zero").pow(-k);
        }
        let mut base = self.clone();
        let mut acc = QScalar::one();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QScalar::zero();
        }
        QScalar {
            shift_q: self.shift_q,
            shift_z: self.shift_z,
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact value at `q = qval`, `z = zval`.
    ///
    /// Reduction happens before substitution, so removable poles such as the
    /// one of `[m]_q` at `q = 1` never trigger.
    pub fn specialize(
        &self,
        qval: &Rational,
        zval: Option<&Rational>,
    ) -> Result<Rational, RingError> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let z = match zval {
            Some(z) => z.clone(),
            None if self.mentions_z() => return Err(RingError::MissingBinding("z".into())),
            None => Rational::one(),
        };
        let den = self.den.eval(qval, &z);
        if den.is_zero() {
            return Err(RingError::DenominatorVanishes);
        }
        let mut value = self.num.eval(qval, &z) / den;
        value *= signed_pow(qval, self.shift_q)?;
        value *= signed_pow(&z, self.shift_z)?;
        Ok(value)
    }

    /// Substitutes values for some of the variables, keeping the others symbolic.
    pub fn substitute(
        &self,
        qval: Option<&Rational>,
        zval: Option<&Rational>,
    ) -> Result<Self, RingError> {
        if self.is_zero() {
            return Ok(QScalar::zero());
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let mut prefactor = Rational::one();
        let (mut a, mut b) = (self.shift_q, self.shift_z);
        if let Some(qv) = qval {
            num = num.subst_q(qv);
            den = den.subst_q(qv);
            prefactor *= signed_pow(qv, a)?;
            a = 0;
        }
        if let Some(zv) = zval {
            num = num.subst_z(zv);
            den = den.subst_z(zv);
            prefactor *= signed_pow(zv, b)?;
            b = 0;
        }
        if den.is_zero() {
            return Err(RingError::DenominatorVanishes);
        }
        Ok(QScalar::normalized(a, b, num.scale(&prefactor), den))
    }

    /// Replaces `z` by `q^k`, producing a scalar in `q` only.
    pub fn bind_z_to_q_power(&self, k: i64) -> Self {
        if !self.mentions_z() {
            return self.clone();
        }
        let lift = |p: &Poly| -> QScalar {
            QScalar::laurent(
                p.terms()
                    .iter()
                    .map(|(m, c)| (c.clone(), (m.q as i64 + k * m.z as i64) as i32, 0)),
            )
        };
        let num = lift(&self.num);
        let den = lift(&self.den);
        let shift = QScalar::q_pow(self.shift_q as i64 + k * self.shift_z as i64);
        &(&num * &shift) * &den.inv().expect("denominator stays nonzero under z = q^k")
    }

    /// True if only even powers of `z` occur.
    pub fn is_even_in_z(&self) -> bool {
        self.shift_z % 2 == 0
            && self.num.terms().iter().all(|(m, _)| m.z % 2 == 0)
            && self.den.terms().iter().all(|(m, _)| m.z % 2 == 0)
    }

    /// Replaces `z^2` by `value`. Fails unless the scalar is even in `z`.
    pub fn substitute_z_squared(&self, value: &QScalar) -> Result<Self, RingError> {
        if !self.is_even_in_z() {
            return Err(RingError::NotEvenInZ);
        }
        let lift = |p: &Poly| -> QScalar {
            let mut acc = QScalar::zero();
            for (m, c) in p.terms() {
                let term =
                    &QScalar::monomial(c.clone(), m.q as i32, 0) * &value.pow((m.z / 2) as i64);
                acc = &acc + &term;
            }
            acc
        };
        let num = lift(&self.num);
        let den = lift(&self.den);
        if den.is_zero() {
            return Err(RingError::DenominatorVanishes);
        }
        let shift = &QScalar::q_pow(self.shift_q as i64) * &value.pow((self.shift_z / 2) as i64);
        Ok(&(&num * &shift) * &den.inv()?)
    }

    /// Maximum absolute exponent of either variable, a crude size measure.
    pub fn complexity(&self) -> usize {
        self.num.terms().len() + self.den.terms().len()
    }

    /// Structural sign: sign of the leading coefficient of the numerator.
    pub fn leading_sign(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.num.leading_coeff().is_positive() {
            1
        } else {
            -1
        }
    }
}

fn signed_pow(x: &Rational, k: i32) -> Result<Rational, RingError> {
    if k >= 0 {
        Ok(pow_rat(x, k as u32))
    } else if x.is_zero() {
        Err(RingError::DenominatorVanishes)
    } else {
        Ok(pow_rat(&x.recip(), (-k) as u32))
    }
}

fn add_impl(x: &QScalar, y: &QScalar, negate: bool) -> QScalar {
    if y.is_zero() {
        return x.clone();
    }
    if x.is_zero() {
        return if negate { -y } else { y.clone() };
    }
    let a = x.shift_q.min(y.shift_q);
    let b = x.shift_z.min(y.shift_z);
    let mx = Monomial::new((x.shift_q - a) as u32, (x.shift_z - b) as u32);
    let my = Monomial::new((y.shift_q - a) as u32, (y.shift_z - b) as u32);
    let nx = x.num.mul_monomial(mx);
    let mut ny = y.num.mul_monomial(my);
    if negate {
        ny = ny.neg();
    }
    if x.den == y.den {
        return QScalar::normalized_over(a, b, nx.add(&ny), x.den.clone());
    }
    if x.den.is_one() {
        return QScalar::normalized_over(a, b, nx.mul(&y.den).add(&ny), y.den.clone());
    }
    if y.den.is_one() {
        return QScalar::normalized_over(a, b, nx.add(&ny.mul(&x.den)), x.den.clone());
    }
    let g = Poly::gcd(&x.den, &y.den);
    let (dx, dy) = if g.is_one() {
        (x.den.clone(), y.den.clone())
    } else {
        (x.den.div_exact(&g).unwrap(), y.den.div_exact(&g).unwrap())
    };
    let num = nx.mul(&dy).add(&ny.mul(&dx));
    let den = dx.mul(&y.den);
    QScalar::normalized(a, b, num, den)
}

impl QScalar {
    /// Normalisation when the denominator is already canonical (monic, no
    /// monomial content); only the gcd with the numerator needs removing.
    fn normalized_over(a: i32, b: i32, num: Poly, den: Poly) -> QScalar {
        if num.is_zero() {
            return QScalar::zero();
        }
        if den.is_one() {
            let mn = num.monomial_content();
            return QScalar {
                shift_q: a + mn.q as i32,
                shift_z: b + mn.z as i32,
                num: num.div_monomial(mn),
                den,
            };
        }
        QScalar::normalized(a, b, num, den)
    }
}

fn mul_impl(x: &QScalar, y: &QScalar) -> QScalar {
    if x.is_zero() || y.is_zero() {
        return QScalar::zero();
    }
    let a = x.shift_q + y.shift_q;
    let b = x.shift_z + y.shift_z;
    if x.den.is_one() && y.den.is_one() {
        return QScalar {
            shift_q: a,
            shift_z: b,
            num: x.num.mul(&y.num),
            den: Poly::one(),
        };
    }
    // cross-cancel; the results stay coprime and monomial-free
    let g1 = if y.den.is_one() {
        Poly::one()
    } else {
        Poly::gcd(&x.num, &y.den)
    };
    let g2 = if x.den.is_one() {
        Poly::one()
    } else {
        Poly::gcd(&y.num, &x.den)
    };
    let cut = |p: &Poly, g: &Poly| {
        if g.is_one() {
            p.clone()
        } else {
            p.div_exact(g).unwrap()
        }
    };
    let num = cut(&x.num, &g1).mul(&cut(&y.num, &g2));
    let den = cut(&x.den, &g2).mul(&cut(&y.den, &g1));
    let lc = den.leading_coeff();
    let (num, den) = if lc.is_one() {
        (num, den)
    } else {
        let inv = lc.recip();
        (num.scale(&inv), den.scale(&inv))
    };
    QScalar {
        shift_q: a,
        shift_z: b,
        num,
        den,
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            shift_q: self.shift_q,
            shift_z: self.shift_z,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                $body(self, rhs)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                $body(&self, &rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                $body(&self, rhs)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |x, y| add_impl(x, y, false));
binop!(Sub, sub, |x, y| add_impl(x, y, true));
binop!(Mul, mul, mul_impl);
binop!(Div, div, |x: &QScalar, y: &QScalar| x
    .checked_div(y)
    .expect("division by zero QScalar"));

impl std::ops::AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = add_impl(self, rhs, false);
    }
}

impl std::ops::SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = add_impl(self, rhs, true);
    }
}

impl std::ops::MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = mul_impl(self, rhs);
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl From<BigRational> for QScalar {
    fn from(c: BigRational) -> Self {
        QScalar::from_rational(c)
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({})", self)
    }
}
