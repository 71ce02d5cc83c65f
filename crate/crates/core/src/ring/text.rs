//! Text form `num / den`, e.g. `q^2 + 1 - 3/2*q^-1*z / z + 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use super::{format_rational, parse_rational, QScalar, Rational, RingError};

fn write_term(out: &mut String, c: &Rational, a: i64, b: i64, first: bool) {
    let neg = c.is_negative();
    if !first {
        out.push_str(if neg { " - " } else { " + " });
    } else if neg {
        out.push('-');
    }
    let mag = c.abs();
    let mut factors = Vec::new();
    if a != 0 {
        factors.push(format!("q^{a}"));
    }
    if b != 0 {
        factors.push(format!("z^{b}"));
    }
    if factors.is_empty() {
        out.push_str(&format_rational(&mag));
    } else {
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
            out.push('*');
        }
        out.push_str(&factors.join("*"));
    }
}

fn write_poly(out: &mut String, terms: &[(super::Monomial, Rational)], sq: i64, sz: i64) {
    if terms.is_empty() {
        out.push('0');
        return;
    }
    for (idx, (m, c)) in terms.iter().rev().enumerate() {
        write_term(out, c, m.q as i64 + sq, m.z as i64 + sz, idx == 0);
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sq, sz) = self.shift();
        let mut out = String::new();
        write_poly(&mut out, self.numerator().terms(), sq as i64, sz as i64);
        out.push_str(" / ");
        write_poly(&mut out, self.denominator().terms(), 0, 0);
        f.write_str(&out)
    }
}

fn parse_term(t: &str) -> Result<(Rational, i32, i32), RingError> {
    let bad = || RingError::Parse(t.to_string());
    let (sign, body) = match t.as_bytes().first() {
        Some(b'-') => (-1, &t[1..]),
        Some(b'+') => (1, &t[1..]),
        _ => (1, t),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let mut coeff = Rational::one();
    let (mut a, mut b) = (0i32, 0i32);
    for factor in body.split('*') {
        let (sym, exp) = match factor.split_once('^') {
            Some((s, e)) => (s, Some(e.parse::<i32>().map_err(|_| bad())?)),
            None => (factor, None),
        };
        match sym {
            "q" => a += exp.unwrap_or(1),
            "z" => b += exp.unwrap_or(1),
            _ if exp.is_none() => coeff *= parse_rational(sym)?,
            _ => return Err(bad()),
        }
    }
    if sign < 0 {
        coeff = -coeff;
    }
    Ok((coeff, a, b))
}

fn parse_laurent(s: &str) -> Result<QScalar, RingError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(RingError::Parse(s.to_string()));
    }
    let bytes = compact.as_bytes();
    let mut pieces = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
            pieces.push(&compact[start..i]);
            start = i;
        }
    }
    pieces.push(&compact[start..]);
    let terms = pieces
        .into_iter()
        .map(parse_term)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QScalar::laurent(terms))
}

impl FromStr for QScalar {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split(" / ");
        let num = parse_laurent(parts.next().unwrap_or(""))?;
        let den = match parts.next() {
            Some(d) => parse_laurent(d)?,
            None => QScalar::one(),
        };
        if parts.next().is_some() {
            return Err(RingError::Parse(s.to_string()));
        }
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(&num / &den)
    }
}

impl serde::Serialize for QScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{qint, qint_shifted};

    #[test]
    fn display_forms() {
        assert_eq!(QScalar::zero().to_string(), "0 / 1");
        assert_eq!(qint(2).to_string(), "q^1 + q^-1 / 1");
        assert_eq!(
            QScalar::from_rational(crate::ring::ratio(-3, 2)).to_string(),
            "-3/2 / 1"
        );
    }

    #[test]
    fn round_trip() {
        let samples = [
            qint(3),
            qint_shifted(2),
            &qint_shifted(3) / &qint(5),
            -&(&qint(2) / &QScalar::z_pow(3)),
            QScalar::zero(),
            QScalar::from_rational(crate::ring::ratio(7, 9)),
        ];
        for s in samples {
            let text = s.to_string();
            assert_eq!(text.parse::<QScalar>().unwrap(), s, "{text}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("q^x".parse::<QScalar>().is_err());
        assert!("1 / 0".parse::<QScalar>().is_err());
        assert!("w".parse::<QScalar>().is_err());
    }
}

/// Serde helpers writing rationals in their text form.
pub mod rational_text {
    use super::super::{format_rational, Rational};

    pub fn serialize<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn option<S: serde::Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&format_rational(r)),
            None => s.serialize_none(),
        }
    }
}
