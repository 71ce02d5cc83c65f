//! Sparse polynomials in two commuting variables `q`, `z` over the rationals.
//!
//! Terms are kept sorted ascending in degree-lexicographic order, so the
//! leading term is the last one. Exponents are nonnegative; Laurent shifts
//! live one level up in [`crate::ring::QScalar`].

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// A monomial `q^q * z^z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub q: u32,
    pub z: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, z: 0 };

    pub fn new(q: u32, z: u32) -> Self {
        Monomial { q, z }
    }

    pub fn degree(&self) -> u32 {
        self.q + self.z
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.q + other.q, self.z + other.z)
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.q <= other.q && self.z <= other.z
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(self, other: Monomial) -> Monomial {
        Monomial::new(other.q - self.q, other.z - self.z)
    }

    pub fn gcd(self, other: Monomial) -> Monomial {
        Monomial::new(self.q.min(other.q), self.z.min(other.z))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.q.cmp(&other.q))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.last()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .last()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn mentions_z(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.z > 0)
    }

    pub fn mentions_q(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.q > 0)
    }

    pub fn degree_z(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.z).max().unwrap_or(0)
    }

    pub fn degree_q(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.q).max().unwrap_or(0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (m, _)| acc.gcd(*m)),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Poly {
        if m == Monomial::ONE {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: Monomial) -> Poly {
        if m == Monomial::ONE {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| {
                    debug_assert!(m.divides(*t));
                    (m.quotient_of(*t), c.clone())
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(*m).scale(c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(*m).scale(c);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(*mb)).or_insert_with(Rational::zero);
                *e += ca * cb;
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if divisor.is_constant() {
            let inv = divisor.leading_coeff().recip();
            return Some(self.scale(&inv));
        }
        if divisor.is_monomial() {
            let (m, c) = &divisor.terms[0];
            if !self.terms.iter().all(|(t, _)| m.divides(*t)) {
                return None;
            }
            return Some(self.div_monomial(*m).scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading().cloned().unwrap();
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            if !lm.divides(rm) {
                return None;
            }
            let m = lm.quotient_of(rm);
            let c = &rc * &lc_inv;
            rem = rem.sub(&divisor.mul_monomial(m).scale(&c));
            quot.push((m, c));
        }
        Some(Poly::from_terms(quot))
    }

    /// Monic (in degree-lexicographic order) greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        let mc = a.monomial_content().gcd(b.monomial_content());
        let a = a.div_monomial(a.monomial_content());
        let b = b.div_monomial(b.monomial_content());
        let g = if !a.mentions_z() && !b.mentions_z() {
            from_upoly_q(&upoly::gcd(&to_upoly_q(&a), &to_upoly_q(&b)))
        } else {
            from_zpoly(&zpoly_gcd(&to_zpoly(&a), &to_zpoly(&b)))
        };
        g.mul_monomial(mc).monic()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading_coeff();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    pub fn eval(&self, q: &Rational, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * pow_rat(q, m.q) * pow_rat(z, m.z);
        }
        acc
    }

    /// Substitutes a value for `q`, keeping `z`.
    pub fn subst_q(&self, q: &Rational) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(0, m.z), c * pow_rat(q, m.q))),
        )
    }

    /// Substitutes a value for `z`, keeping `q`.
    pub fn subst_z(&self, z: &Rational) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.q, 0), c * pow_rat(z, m.z))),
        )
    }

    /// Exact square root, if one exists with rational coefficients.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (lm, lc) = self.leading().cloned().unwrap();
        if lm.q % 2 != 0 || lm.z % 2 != 0 {
            return None;
        }
        let root_lm = Monomial::new(lm.q / 2, lm.z / 2);
        let root_lc = rational_sqrt(&lc)?;
        let two_lc = &root_lc * Rational::from_integer(2.into());
        let mut root = Poly::monomial(root_lm, root_lc);
        loop {
            let rem = self.sub(&root.mul(&root));
            let Some((rm, rc)) = rem.leading().cloned() else {
                return Some(root);
            };
            if !root_lm.divides(rm) {
                return None;
            }
            let m = root_lm.quotient_of(rm);
            // every further term must sit strictly below the leading one
            if m >= root_lm {
                return None;
            }
            if let Some((tail, _)) = root.terms.first() {
                if m >= *tail && root.terms.len() > 1 {
                    return None;
                }
            }
            root = root.add(&Poly::monomial(m, &rc / &two_lc));
        }
    }

    /// Variables swapped: `q <-> z`.
    pub fn swap_vars(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.z, m.q), c.clone())),
        )
    }
}

pub fn pow_rat(x: &Rational, k: u32) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    num_traits::pow(x.clone(), k as usize)
}

pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Dense univariate polynomials over the rationals (index = degree).
pub(crate) mod upoly {
    use super::Rational;
    use num_traits::{One, Zero};

    pub type UPoly = Vec<Rational>;

    pub fn trim(p: &mut UPoly) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn monic(p: &UPoly) -> UPoly {
        match p.last() {
            None => Vec::new(),
            Some(lc) if lc.is_one() => p.clone(),
            Some(lc) => {
                let inv = lc.recip();
                p.iter().map(|c| c * &inv).collect()
            }
        }
    }

    pub fn mul(a: &UPoly, b: &UPoly) -> UPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &UPoly, b: &UPoly) -> UPoly {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            out.push(x - y);
        }
        trim(&mut out);
        out
    }

    /// Quotient and remainder of `a / b`, `b` nonzero.
    pub fn divrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
        assert!(!b.is_empty());
        let mut r = a.clone();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let inv = b[db].recip();
        let mut quot = vec![Rational::zero(); r.len() - db];
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let c = &r[r.len() - 1] * &inv;
            for (i, y) in b.iter().enumerate() {
                r[k + i] -= &c * y;
            }
            quot[k] = c;
            r.pop();
            trim(&mut r);
        }
        trim(&mut quot);
        (quot, r)
    }

    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let mut x = monic(a);
        let mut y = monic(b);
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = monic(&r);
        }
        monic(&x)
    }

    pub fn div_exact(a: &UPoly, b: &UPoly) -> UPoly {
        let (q, r) = divrem(a, b);
        debug_assert!(r.is_empty(), "inexact univariate division");
        q
    }

    pub fn one() -> UPoly {
        vec![Rational::one()]
    }
}

use upoly::UPoly;

fn to_upoly_q(p: &Poly) -> UPoly {
    let mut out = vec![Rational::zero(); p.degree_q() as usize + 1];
    for (m, c) in p.terms() {
        out[m.q as usize] = c.clone();
    }
    upoly::trim(&mut out);
    out
}

fn from_upoly_q(p: &UPoly) -> Poly {
    Poly::from_terms(
        p.iter()
            .enumerate()
            .map(|(i, c)| (Monomial::new(i as u32, 0), c.clone())),
    )
}

/// Polynomial in `z` with coefficients in Q[q] (index = z-degree).
type ZPoly = Vec<UPoly>;

fn to_zpoly(p: &Poly) -> ZPoly {
    let mut out: ZPoly = vec![Vec::new(); p.degree_z() as usize + 1];
    for (m, c) in p.terms() {
        let slot = &mut out[m.z as usize];
        if slot.len() <= m.q as usize {
            slot.resize(m.q as usize + 1, Rational::zero());
        }
        slot[m.q as usize] = c.clone();
    }
    for s in &mut out {
        upoly::trim(s);
    }
    zp_trim(&mut out);
    out
}

fn from_zpoly(p: &ZPoly) -> Poly {
    Poly::from_terms(p.iter().enumerate().flat_map(|(zi, coeff)| {
        coeff
            .iter()
            .enumerate()
            .map(move |(qi, c)| (Monomial::new(qi as u32, zi as u32), c.clone()))
    }))
}

fn zp_trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn zp_content(p: &ZPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in p {
        if c.is_empty() {
            continue;
        }
        g = if g.is_empty() {
            upoly::monic(c)
        } else {
            upoly::gcd(&g, c)
        };
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn zp_primitive(p: &ZPoly) -> ZPoly {
    let c = zp_content(p);
    if c.is_empty() {
        return Vec::new();
    }
    let mut out: ZPoly = p.iter().map(|x| upoly::div_exact(x, &c)).collect();
    // normalise the leading q-coefficient to be monic
    if let Some(lead) = out.last().and_then(|l| l.last()).cloned() {
        let inv = lead.recip();
        for x in &mut out {
            for c in x.iter_mut() {
                *c *= &inv;
            }
        }
    }
    out
}

fn zp_prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x = upoly::mul(x, &lb);
        }
        for (i, y) in b.iter().enumerate() {
            let t = upoly::mul(&lr, y);
            r[shift + i] = upoly::sub(&r[shift + i], &t);
        }
        zp_trim(&mut r);
        debug_assert!(r.len() <= dr);
    }
    r
}

fn zpoly_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let cg = upoly::gcd(&zp_content(a), &zp_content(b));
    let mut x = zp_primitive(a);
    let mut y = zp_primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.is_empty() {
            break;
        }
        if y.len() == 1 {
            // primitive and z-free means a unit
            x = vec![upoly::one()];
            break;
        }
        let r = zp_prem(&x, &y);
        x = y;
        y = zp_primitive(&r);
    }
    x.iter().map(|c| upoly::mul(c, &cg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn p(terms: &[(u32, u32, i64)]) -> Poly {
        Poly::from_terms(terms.iter().map(|&(a, b, c)| (Monomial::new(a, b), r(c))))
    }

    #[test]
    fn deglex_order() {
        assert!(Monomial::new(0, 2) > Monomial::new(1, 0));
        assert!(Monomial::new(2, 0) > Monomial::new(1, 1));
    }

    #[test]
    fn univariate_gcd() {
        // (q+1)(q-2) and (q+1)(q+3)
        let a = p(&[(2, 0, 1), (1, 0, -1), (0, 0, -2)]);
        let b = p(&[(2, 0, 1), (1, 0, 4), (0, 0, 3)]);
        assert_eq!(Poly::gcd(&a, &b), p(&[(1, 0, 1), (0, 0, 1)]));
    }

    #[test]
    fn bivariate_gcd() {
        // g = q z + 1, a = g (z - q), b = g (q^2 + z)
        let g = p(&[(1, 1, 1), (0, 0, 1)]);
        let a = g.mul(&p(&[(0, 1, 1), (1, 0, -1)]));
        let b = g.mul(&p(&[(2, 0, 1), (0, 1, 1)]));
        assert_eq!(Poly::gcd(&a, &b), g);
        let c = p(&[(0, 1, 1), (0, 0, 3)]);
        assert_eq!(Poly::gcd(&a, &c), Poly::one());
    }

    #[test]
    fn mixed_gcd_content() {
        // a = (q+1) z, b = (q+1)
        let a = p(&[(1, 1, 1), (0, 1, 1)]);
        let b = p(&[(1, 0, 1), (0, 0, 1)]);
        assert_eq!(Poly::gcd(&a, &b), b);
    }

    #[test]
    fn exact_division() {
        let a = p(&[(2, 0, 1), (0, 0, -1)]);
        let b = p(&[(1, 0, 1), (0, 0, 1)]);
        assert_eq!(a.div_exact(&b).unwrap(), p(&[(1, 0, 1), (0, 0, -1)]));
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn square_roots() {
        let a = p(&[(1, 1, 2), (0, 0, 3)]);
        let sq = a.mul(&a);
        let root = sq.sqrt().unwrap();
        assert!(root == a || root == a.neg());
        assert!(p(&[(2, 0, 1), (0, 0, 1)]).sqrt().is_none());
    }
}
