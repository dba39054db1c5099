//! Sparse multivariate Laurent polynomials with big-integer coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::num::Complex;

/// Maximum number of generators a polynomial may use.
pub const MAX_VARS: usize = 6;

/// Exponent vector. Ordered lexicographically with generator 0 most
/// significant, which is also the term order used for leading terms.
pub type Monomial = [i32; MAX_VARS];

pub const ONE_MONO: Monomial = [0; MAX_VARS];

pub fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut r = *a;
    for (x, y) in r.iter_mut().zip(b) {
        *x += *y;
    }
    r
}

pub fn mono_div(a: &Monomial, b: &Monomial) -> Monomial {
    let mut r = *a;
    for (x, y) in r.iter_mut().zip(b) {
        *x -= *y;
    }
    r
}

pub fn mono_pow(a: &Monomial, k: i32) -> Monomial {
    let mut r = *a;
    for x in r.iter_mut() {
        *x *= k;
    }
    r
}

pub fn mono_var(i: usize, e: i32) -> Monomial {
    let mut m = ONE_MONO;
    m[i] = e;
    m
}

/// Laurent polynomial: a finite map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::monomial(ONE_MONO, c)
    }

    pub fn from_i64(c: i64) -> Self {
        Poly::constant(BigInt::from(c))
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// The generator with index `i`, raised to `e`.
    pub fn var(i: usize, e: i32) -> Self {
        Poly::monomial(mono_var(i, e), BigInt::one())
    }

    /// Builds from (monomial, coefficient) pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&ONE_MONO).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == ONE_MONO)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&ONE_MONO)
    }

    /// Leading term under the lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Whether this is a single term.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Componentwise minimum exponent; `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let mut m = *it.next()?;
        for k in it {
            for i in 0..MAX_VARS {
                m[i] = m[i].min(k[i]);
            }
        }
        Some(m)
    }

    pub fn max_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let mut m = *it.next()?;
        for k in it {
            for i in 0..MAX_VARS {
                m[i] = m[i].max(k[i]);
            }
        }
        Some(m)
    }

    pub fn degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|m| m[v]).max().unwrap_or(i32::MIN)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m[v] != 0)
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (mono_mul(k, m), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (mono_mul(k, m), v * c))
                .collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub fn div_exact_int(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (*k, v / c)).collect(),
        }
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one();
        let mut b = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Replaces each generator by a monomial image (a ring endomorphism of
    /// the Laurent ring).
    pub fn substitute_monomials(&self, images: &[Monomial; MAX_VARS]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut img = ONE_MONO;
            for (i, &e) in m.iter().enumerate() {
                if e != 0 {
                    img = mono_mul(&img, &mono_pow(&images[i], e));
                }
            }
            out.add_term(img, c.clone());
        }
        out
    }

    /// Evaluates at complex values of the generators (missing ones must not
    /// occur).
    pub fn eval(&self, values: &[Complex]) -> Complex {
        let prec = values.first().map(|v| v.precision()).unwrap_or_default();
        let mut acc = Complex::zero(prec);
        let mut cache: BTreeMap<(usize, i32), Complex> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = Complex::from_bigint(c, prec);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = cache
                    .entry((i, e))
                    .or_insert_with(|| values[i].powi(e as i64));
                t = &t * &*v;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Exact division by `d`, or `None` when `d` does not divide `self` in the
    /// Laurent ring with integer coefficients.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((m, c)) = d.as_monomial() {
            let mut out = BTreeMap::new();
            for (k, v) in &self.terms {
                let (q, r) = v.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.insert(mono_div(k, m), q);
            }
            return Some(Poly { terms: out });
        }
        // Every quotient exponent lies in a box fixed by the extreme exponents.
        let (pmin, pmax) = (self.min_exponents()?, self.max_exponents()?);
        let (dmin, dmax) = (d.min_exponents()?, d.max_exponents()?);
        let (dm, dc) = d.leading().map(|(m, c)| (*m, c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((lm, lc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            let (qc, r) = lc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm = mono_div(&lm, &dm);
            for i in 0..MAX_VARS {
                if qm[i] < pmin[i] - dmin[i] || qm[i] > pmax[i] - dmax[i] {
                    return None;
                }
            }
            for (k, v) in &d.terms {
                rem.add_term(mono_mul(k, &qm), -(v * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Human-readable form using the given generator names.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = names.get(i).copied().unwrap_or("x");
                if e == 1 {
                    factors.push(name.into());
                } else {
                    let mut f = String::new();
                    let _ = write!(f, "{name}^{e}");
                    factors.push(f);
                }
            }
            if factors.is_empty() {
                let _ = write!(s, "{a}");
            } else {
                if !a.is_one() {
                    let _ = write!(s, "{a}*");
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(*m, c.clone());
        }
        r
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &rhs.terms {
            r.add_term(*m, -c);
        }
        r
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                r.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(e: i32) -> Poly {
        Poly::var(0, e)
    }

    #[test]
    fn difference_of_squares_divides() {
        let p = &a(8) - &Poly::one();
        let d = &a(4) - &Poly::one();
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, &a(4) + &Poly::one());
    }

    #[test]
    fn non_divisor_rejected() {
        let p = &a(4) + &Poly::one();
        let d = &a(1) - &Poly::one();
        assert!(p.div_exact(&d).is_none());
        let two = Poly::from_i64(2);
        assert!(a(1).div_exact(&two).is_none());
    }

    #[test]
    fn laurent_division() {
        // (a - a^-1)(a + b^-2) / (a + b^-2)
        let x = &a(1) - &a(-1);
        let y = &a(1) + &Poly::var(1, -2);
        let p = &x * &y;
        assert_eq!(p.div_exact(&y).unwrap(), x);
    }

    #[test]
    fn display() {
        let p = &(&a(2).scale(&BigInt::from(3)) - &Poly::var(1, -1)) + &Poly::from_i64(-2);
        assert_eq!(p.to_string_with(&["a", "b"]), "3*a^2 - 2 - b^-1");
    }
}
