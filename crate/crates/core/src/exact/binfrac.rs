//! Fractions whose denominators are products of cyclotomic binomial factors.
//!
//! Nekrasov sums and their normalizing weights only ever divide by factors
//! `1 - m` with `m` a monomial. Writing `m = p^e` for a primitive monomial `p`,
//! `1 - p^e` splits into irreducible pieces `Phi_d(p)` for `d | e`. Keeping the
//! denominator as a multiset of these pieces makes common denominators a
//! multiset maximum, and reduction to lowest terms a short sequence of trial
//! divisions instead of a general polynomial gcd.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{mono_pow, Monomial, Poly, MAX_VARS, ONE_MONO};
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

static CYCLO: spin::Mutex<BTreeMap<u32, Vec<BigInt>>> = spin::Mutex::new(BTreeMap::new());

/// Coefficients of the `d`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic(d: u32) -> Vec<BigInt> {
    if let Some(c) = CYCLO.lock().get(&d) {
        return c.clone();
    }
    // x^d - 1 divided by Phi_k for every proper divisor k
    let mut num: Vec<BigInt> = alloc::vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    for k in 1..d {
        if d.is_multiple_of(k) {
            let div = cyclotomic(k);
            num = poly_div_monic(&num, &div);
        }
    }
    CYCLO.lock().insert(d, num.clone());
    num
}

fn poly_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = alloc::vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    q
}

fn gcd_exponents(m: &Monomial) -> i32 {
    m.iter().fold(0i32, |g, &e| g.gcd(&e))
}

/// Splits `m` into `(p, e)` with `m = p^e`, `p` primitive and its first
/// nonzero exponent positive.
pub fn primitive_root(m: &Monomial) -> Option<(Monomial, i32)> {
    let g = gcd_exponents(m);
    if g == 0 {
        return None;
    }
    let mut p = *m;
    for x in p.iter_mut() {
        *x /= g;
    }
    let first = p.iter().copied().find(|&x| x != 0).unwrap_or(0);
    if first < 0 {
        Some((mono_pow(&p, -1), -g))
    } else {
        Some((p, g))
    }
}

/// `Phi_d(p)` as a Laurent polynomial.
pub fn cyclotomic_at(p: &Monomial, d: u32) -> Poly {
    let cs = cyclotomic(d);
    Poly::from_terms(
        cs.into_iter()
            .enumerate()
            .map(|(k, c)| (mono_pow(p, k as i32), c)),
    )
}

type FactorKey = (Monomial, u32);

/// `num / (den_int * prod Phi_d(p)^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialFraction {
    num: Poly,
    den_int: BigInt,
    factors: BTreeMap<FactorKey, u32>,
}

impl BinomialFraction {
    pub fn zero() -> Self {
        BinomialFraction {
            num: Poly::zero(),
            den_int: BigInt::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        BinomialFraction::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        BinomialFraction {
            num: p,
            den_int: BigInt::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn from_i64(v: i64) -> Self {
        BinomialFraction::from_poly(Poly::from_i64(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        BinomialFraction::from_poly(Poly::monomial(m, BigInt::one()))
    }

    /// `1 / (1 - m)`; fails when `m = 1`.
    pub fn inv_one_minus(m: &Monomial) -> Result<Self> {
        BinomialFraction::inv_one_minus_product(core::slice::from_ref(m))
    }

    /// `prod 1 / (1 - m_i)`.
    pub fn inv_one_minus_product(ms: &[Monomial]) -> Result<Self> {
        let mut num_mono = ONE_MONO;
        let mut sign = 1i32;
        let mut factors: BTreeMap<FactorKey, u32> = BTreeMap::new();
        for m in ms {
            let (p, e) = primitive_root(m).ok_or(Error::PoleHit)?;
            // 1 - p^k = -prod_{d|k} Phi_d(p) and 1/(1 - p^-k) = -p^k / (1 - p^k)
            let k = if e < 0 {
                for (x, y) in num_mono.iter_mut().zip(p.iter()) {
                    *x += y * (-e);
                }
                (-e) as u32
            } else {
                sign = -sign;
                e as u32
            };
            for d in 1..=k {
                if k % d == 0 {
                    *factors.entry((p, d)).or_insert(0) += 1;
                }
            }
        }
        Ok(BinomialFraction {
            num: Poly::monomial(num_mono, BigInt::from(sign)),
            den_int: BigInt::one(),
            factors,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return BinomialFraction::zero();
        }
        let mut factors = self.factors.clone();
        for (k, c) in &o.factors {
            *factors.entry(*k).or_insert(0) += c;
        }
        BinomialFraction {
            num: &self.num * &o.num,
            den_int: &self.den_int * &o.den_int,
            factors,
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        BinomialFraction {
            num: &self.num * p,
            den_int: self.den_int.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> Self {
        BinomialFraction {
            num: self.num.mul_term(m, c),
            den_int: self.den_int.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn div_int(&self, c: &BigInt) -> Self {
        let mut r = self.clone();
        if c.is_negative() {
            r.num = -r.num;
        }
        r.den_int *= c.abs();
        r
    }

    pub fn neg(&self) -> Self {
        BinomialFraction {
            num: -&self.num,
            den_int: self.den_int.clone(),
            factors: self.factors.clone(),
        }
    }

    fn raise(&self, target: &BTreeMap<FactorKey, u32>, den_int: &BigInt) -> Poly {
        let mut n = self.num.clone();
        for (k, &c) in target {
            let have = self.factors.get(k).copied().unwrap_or(0);
            for _ in have..c {
                n = &n * &cyclotomic_at(&k.0, k.1);
            }
        }
        let mult = den_int / &self.den_int;
        if mult.is_one() {
            n
        } else {
            n.scale(&mult)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut factors = self.factors.clone();
        for (k, &c) in &o.factors {
            let e = factors.entry(*k).or_insert(0);
            *e = (*e).max(c);
        }
        let den_int = self.den_int.lcm(&o.den_int);
        let num = &self.raise(&factors, &den_int) + &o.raise(&factors, &den_int);
        let mut r = BinomialFraction {
            num,
            den_int,
            factors,
        };
        r.tidy();
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Drops trivial bookkeeping after a cancellation to zero.
    fn tidy(&mut self) {
        if self.num.is_zero() {
            self.den_int = BigInt::one();
            self.factors.clear();
        }
    }

    /// Applies a monomial substitution to generators. Factor keys are mapped
    /// through the substitution and re-split.
    pub fn substitute_monomials(&self, images: &[Monomial; MAX_VARS]) -> Result<Self> {
        let mut out = BinomialFraction::from_poly(self.num.substitute_monomials(images))
            .div_int(&self.den_int);
        for ((p, d), &c) in &self.factors {
            let q = Poly::monomial(*p, BigInt::one()).substitute_monomials(images);
            let (qm, _) = q.as_monomial().expect("monomial image");
            let (root, e) = primitive_root(qm).ok_or(Error::PoleHit)?;
            // Phi_d(root^e) is a product of Phi_k(root), with a monomial and a
            // sign when e < 0. Recover it as (1 - x^d) / prod_{k|d,k<d} Phi_k(x).
            let phi = phi_of_power(&root, e, *d)?;
            for _ in 0..c {
                out = out.mul(&phi);
            }
        }
        Ok(out)
    }

    /// Reduces to canonical form.
    pub fn to_exact(&self) -> ExactScalar {
        if self.num.is_zero() {
            return ExactScalar::zero();
        }
        let mut num = self.num.clone();
        let mut den = Poly::constant(self.den_int.clone());
        for (k, &c) in &self.factors {
            let phi = cyclotomic_at(&k.0, k.1);
            let mut left = c;
            while left > 0 {
                match num.div_exact(&phi) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            for _ in 0..left {
                den = &den * &phi;
            }
        }
        // the remaining factors are irreducible and divide nothing in `num`
        ExactScalar::from_coprime(num, den).expect("nonzero denominator")
    }

    /// Evaluates numerically.
    pub fn eval(&self, values: &[crate::num::Complex]) -> Result<crate::num::Complex> {
        let prec = values.first().map(|v| v.precision()).unwrap_or_default();
        let mut d = crate::num::Complex::from_bigint(&self.den_int, prec);
        for (k, &c) in &self.factors {
            let f = cyclotomic_at(&k.0, k.1).eval(values);
            d = &d * &f.powi(c as i64);
        }
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(&self.num.eval(values) / &d)
    }
}

/// `1 / Phi_d(root^e)` as a binomial fraction.
fn phi_of_power(root: &Monomial, e: i32, d: u32) -> Result<BinomialFraction> {
    // Phi_d(y) = prod_{k | d} (1 - y^k)^{mu(d/k)} up to sign; invert via the
    // Mobius form: 1/Phi_d(y) = prod_{k|d} (1 - y^k)^{-mu(d/k)} * sign.
    let mut out = BinomialFraction::one();
    let mut extra = Poly::one();
    for k in 1..=d {
        if !d.is_multiple_of(k) {
            continue;
        }
        let mu = mobius(d / k);
        if mu == 0 {
            continue;
        }
        let m = mono_pow(root, e * k as i32);
        if mu == 1 {
            out = out.mul(&BinomialFraction::inv_one_minus(&m)?);
        } else {
            extra = &extra * &(&Poly::one() - &Poly::monomial(m, BigInt::one()));
        }
    }
    // For d = 1, Phi_1(y) = y - 1 = -(1 - y).
    let sign = if d == 1 { -1 } else { 1 };
    Ok(out
        .mul_poly(&extra)
        .mul_monomial(&ONE_MONO, &BigInt::from(sign)))
}

fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::mono_var;

    #[test]
    fn cyclotomic_small() {
        let c6 = cyclotomic(6);
        let v: Vec<i64> = c6.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(v, [1, -1, 1]);
        let c12 = cyclotomic(12);
        let v: Vec<i64> = c12.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(v, [1, 0, -1, 0, 1]);
    }

    #[test]
    fn split_and_reduce() {
        // 1/(1-a^4) + 1/(1+a^2) = (2 - a^2)/(1 - a^4)
        let a4 = mono_var(0, 4);
        let x = BinomialFraction::inv_one_minus(&a4).unwrap();
        let mut y = BinomialFraction::inv_one_minus(&mono_var(0, 4)).unwrap();
        y = y.mul_poly(&(&Poly::one() - &Poly::var(0, 2)));
        let s = x.add(&y).to_exact();
        let expect = ExactScalar::new(
            &Poly::from_i64(2) - &Poly::var(0, 2),
            &Poly::one() - &Poly::var(0, 4),
        )
        .unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn negative_power_inverse() {
        let m = mono_var(1, -3);
        let f = BinomialFraction::inv_one_minus(&m).unwrap().to_exact();
        let expect = ExactScalar::new(Poly::one(), &Poly::one() - &Poly::var(1, -3)).unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn substitution_matches_exact() {
        let mut m = ONE_MONO;
        m[0] = 2;
        m[1] = -1;
        let f = BinomialFraction::inv_one_minus_product(&[m, mono_var(0, 6)]).unwrap();
        let mut images = [ONE_MONO; MAX_VARS];
        images[0] = mono_var(0, 1);
        images[1] = mono_var(0, -3);
        let g = f.substitute_monomials(&images).unwrap().to_exact();
        let direct = f.to_exact().substitute_monomials(&images);
        assert_eq!(g, direct);
    }

    #[test]
    fn pole_rejected() {
        assert_eq!(
            BinomialFraction::inv_one_minus(&ONE_MONO),
            Err(Error::PoleHit)
        );
    }
}
