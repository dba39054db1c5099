//! Canonical rational functions over the integers.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::poly_gcd;
use super::poly::{mono_div, Monomial, Poly, MAX_VARS, ONE_MONO};
use crate::error::{Error, Result};
use crate::num::Complex;

/// Named generator lists. Generator `i` of a polynomial is the `i`-th name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generators {
    /// `a = q^(1/4)`, `b = u^(1/4)`.
    AB,
    /// `a`, `b` and the τ parameter `s`.
    ABS,
    /// Independent bases `q1`, `q2` and `u`.
    Q1Q2U,
    /// Surface coordinates `Z, q, F, G`.
    Surface,
    /// A single variable `sigma`.
    Sigma,
}

impl Generators {
    pub fn names(&self) -> &'static [&'static str] {
        match self {
            Generators::AB => &["a", "b"],
            Generators::ABS => &["a", "b", "s"],
            Generators::Q1Q2U => &["q1", "q2", "u"],
            Generators::Surface => &["Z", "q", "F", "G"],
            Generators::Sigma => &["sigma"],
        }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| *n == name)
    }
}

/// A reduced fraction `num/den` of Laurent polynomials.
///
/// Canonical form: `den` is a polynomial whose minimum exponent in every
/// generator is zero, `gcd(num, den) = 1`, the integer contents are coprime
/// and the leading coefficient of `den` is positive. Equal values therefore
/// have identical representations and `==` is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    num: Poly,
    den: Poly,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        ExactScalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_i64(v: i64) -> Self {
        ExactScalar {
            num: Poly::from_i64(v),
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        ExactScalar::new(
            Poly::constant(r.numer().clone()),
            Poly::constant(r.denom().clone()),
        )
        .expect("rational denominators are nonzero")
    }

    /// The generator `i` raised to `e`.
    pub fn var(i: usize, e: i32) -> Self {
        ExactScalar::from_poly(Poly::var(i, e))
    }

    pub fn from_poly(p: Poly) -> Self {
        ExactScalar::new(p, Poly::one()).expect("unit denominator")
    }

    /// Builds the canonical form of `n/d`.
    pub fn new(n: Poly, d: Poly) -> Result<Self> {
        ExactScalar::build(n, d, true)
    }

    /// Builds the canonical form of `n/d` when no nonmonomial factor is
    /// shared, skipping the polynomial gcd.
    pub fn from_coprime(n: Poly, d: Poly) -> Result<Self> {
        ExactScalar::build(n, d, false)
    }

    fn build(n: Poly, d: Poly, reduce: bool) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if n.is_zero() {
            return Ok(ExactScalar::zero());
        }
        let nmin = n.min_exponents().unwrap_or(ONE_MONO);
        let dmin = d.min_exponents().unwrap_or(ONE_MONO);
        let n0 = n.shift(&mono_div(&ONE_MONO, &nmin));
        let d0 = d.shift(&mono_div(&ONE_MONO, &dmin));
        let (n1, d1) = if !reduce || d0.is_constant() || n0.is_constant() {
            (n0, d0)
        } else {
            let g = poly_gcd(&n0, &d0);
            if g.is_one() {
                (n0, d0)
            } else {
                (
                    n0.div_exact(&g).expect("gcd divides"),
                    d0.div_exact(&g).expect("gcd divides"),
                )
            }
        };
        let cn = n1.content();
        let cd = d1.content();
        let c = cn.gcd(&cd);
        let (mut n2, mut d2) = if c.is_one() {
            (n1, d1)
        } else {
            (n1.div_exact_int(&c), d1.div_exact_int(&c))
        };
        if d2.leading().is_some_and(|(_, lc)| lc.is_negative()) {
            n2 = -n2;
            d2 = -d2;
        }
        let net: Monomial = mono_div(&nmin, &dmin);
        Ok(ExactScalar {
            num: n2.shift(&net),
            den: d2,
        })
    }

    /// Alias for [`ExactScalar::new`] under its operational name.
    pub fn normalize(n: Poly, d: Poly) -> Result<Self> {
        ExactScalar::new(n, d)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(ExactScalar::new(self.den.clone(), self.num.clone()).expect("nonzero"))
    }

    pub fn pow(&self, k: i32) -> Self {
        if k < 0 {
            return self.inv().expect("power of zero").pow(-k);
        }
        ExactScalar {
            num: self.num.pow(k as u32),
            den: self.den.pow(k as u32),
        }
    }

    /// Applies a monomial substitution of generators.
    pub fn substitute_monomials(&self, images: &[Monomial; MAX_VARS]) -> Self {
        ExactScalar::new(
            self.num.substitute_monomials(images),
            self.den.substitute_monomials(images),
        )
        .expect("monomial substitution keeps denominators nonzero")
    }

    /// Evaluates at generator values indexed by generator position.
    pub fn eval(&self, values: &[Complex]) -> Result<Complex> {
        let d = self.den.eval(values);
        let n = self.num.eval(values);
        let scale = n.log10_abs().max(0.0);
        let digits = values.first().map(|v| v.precision().get()).unwrap_or(50) as f64;
        if d.is_zero() || d.log10_abs() < scale - digits + 3.0 {
            return Err(Error::DenominatorVanishes);
        }
        Ok(&n / &d)
    }

    /// Evaluates with an assignment by generator name.
    pub fn eval_named(
        &self,
        gens: Generators,
        assignment: &BTreeMap<&str, Complex>,
    ) -> Result<Complex> {
        let names = gens.names();
        let prec = assignment
            .values()
            .next()
            .map(|v| v.precision())
            .unwrap_or_default();
        let mut vals = alloc::vec::Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let used = self.num.uses_var(i) || self.den.uses_var(i);
            match assignment.get(n) {
                Some(v) => vals.push(v.clone()),
                None if !used => vals.push(Complex::one(prec)),
                None => return Err(Error::InvalidInput(format!("no value for generator {n}"))),
            }
        }
        self.eval(&vals)
    }

    /// Exact evaluation at rational generator values.
    pub fn eval_rational(&self, values: &[BigRational]) -> Result<BigRational> {
        let d = eval_poly_rational(&self.den, values)?;
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(eval_poly_rational(&self.num, values)? / d)
    }

    /// Returns the value as a rational constant if it has no generators.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(BigRational::new(
                self.num.constant_term(),
                self.den.constant_term(),
            ))
        } else {
            None
        }
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.den.is_one() {
            return self.num.to_string_with(names);
        }
        format!(
            "({})/({})",
            self.num.to_string_with(names),
            self.den.to_string_with(names)
        )
    }
}

fn eval_poly_rational(p: &Poly, values: &[BigRational]) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (m, c) in p.terms() {
        let mut t = BigRational::from_integer(c.clone());
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = values
                .get(i)
                .ok_or(Error::InvalidInput("missing generator value".into()))?;
            if v.is_zero() && e < 0 {
                return Err(Error::DenominatorVanishes);
            }
            t *= num_traits::Pow::pow(v, e);
        }
        acc += t;
    }
    Ok(acc)
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&["x0", "x1", "x2", "x3", "x4", "x5"]))
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return ExactScalar::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ExactScalar::new(n, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ExactScalar {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            };
        }
        ExactScalar::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
owned!(Add, add);
owned!(Sub, sub);
owned!(Mul, mul);
owned!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -(&self)
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        ExactScalar::from_i64(v)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(v: BigInt) -> Self {
        ExactScalar::from_poly(Poly::constant(v))
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::one()
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Precision;

    fn a(e: i32) -> Poly {
        Poly::var(0, e)
    }

    #[test]
    fn normalize_examples() {
        let x = ExactScalar::new(&a(8) - &Poly::one(), &a(4) - &Poly::one()).unwrap();
        assert_eq!(x, ExactScalar::from_poly(&a(4) + &Poly::one()));
        assert!(ExactScalar::new(Poly::zero(), a(4)).unwrap().is_zero());
        let h = ExactScalar::new(a(4).scale(&BigInt::from(2)), Poly::from_i64(4)).unwrap();
        assert_eq!(h.num(), &a(4));
        assert_eq!(h.den(), &Poly::from_i64(2));
        assert_eq!(
            ExactScalar::new(Poly::one(), Poly::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn laurent_cleared() {
        // a^-1 / (1 - a^-2) = a / (a^2 - 1)
        let x = ExactScalar::new(a(-1), &Poly::one() - &a(-2)).unwrap();
        let y = ExactScalar::new(a(1), &a(2) - &Poly::one()).unwrap();
        assert_eq!(x, y);
        assert_eq!(y.den().min_exponents().unwrap(), ONE_MONO);
    }

    #[test]
    fn evaluation_examples() {
        let p = Precision::digits(30);
        let x = ExactScalar::new(&a(4) - &Poly::one(), &a(4) + &Poly::one()).unwrap();
        let v = x.eval(&[Complex::zero(p)]).unwrap();
        assert!((&v + &Complex::one(p)).is_zero());
        let u = ExactScalar::var(1, 4);
        let w = u.eval(&[Complex::one(p), Complex::from_i64(2, p)]).unwrap();
        assert_eq!(w.re_f64(), 16.0);
        let pole = ExactScalar::new(Poly::one(), &Poly::one() - &Poly::var(1, 4)).unwrap();
        assert_eq!(
            pole.eval(&[Complex::one(p), Complex::one(p)]),
            Err(Error::DenominatorVanishes)
        );
    }

    #[test]
    fn self_difference_is_literal_zero() {
        let x = ExactScalar::new(&a(3) + &Poly::var(1, -2), &a(1) - &Poly::var(1, 1)).unwrap();
        let z = &x - &x;
        assert_eq!(z, ExactScalar::zero());
    }
}
