//! Nekrasov factors and conformal-block series.
//!
//! Every block in this crate is a double sum over pairs of partitions of an
//! inverse product of factors `1 - w q2^x q1^y`, where `w` is one of
//! `1, u, u^-1`. A [`BlockBackend`] turns a list of `(e, x, y)` triples, with
//! `w = u^e`, into a scalar, so the same enumeration serves the exact, the
//! numeric and the four-dimensional limit blocks.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::error::{Error, Result};
use crate::exact::poly::{mono_mul, mono_pow, mono_var, Monomial, ONE_MONO};
use crate::exact::{BinomialFraction, ExactScalar, Poly};
use crate::num::Complex;
use crate::partitions::{partitions_up_to, Partition};
use crate::scalar::Scalar;
use crate::series::GradedSeries;

/// A factor `1 - u^e q2^x q1^y`.
pub type Factor = (i32, i32, i32);

/// Turns factor lists into scalars.
pub trait BlockBackend {
    type S: Scalar;

    /// `prod (1 - u^e q2^x q1^y)`.
    fn factor_product(&self, factors: &[Factor]) -> Result<Self::S>;

    /// `prod 1 / (1 - u^e q2^x q1^y)`.
    fn inverse_of_product(&self, factors: &[Factor]) -> Result<Self::S>;
}

/// Appends the factors of `N_{lambda,mu}(u^e; q1, q2)`.
///
/// With `lozenge`, only cells whose `a + l + 1` is even are kept.
pub fn nekrasov_factors(
    lambda: &Partition,
    mu: &Partition,
    e: i32,
    lozenge: bool,
    out: &mut Vec<Factor>,
) {
    for (i, j) in lambda.cells() {
        let a = mu.arm(i, j);
        let l = lambda.leg(i, j);
        if !lozenge || (a + l + 1) % 2 == 0 {
            out.push((e, -a - 1, l));
        }
    }
    for (i, j) in mu.cells() {
        let a = lambda.arm(i, j);
        let l = mu.leg(i, j);
        if !lozenge || (a + l + 1) % 2 == 0 {
            out.push((e, a, -l - 1));
        }
    }
}

/// `N_{lambda,mu}(u^e; q1, q2)` as printed.
pub fn nekrasov_factor<B: BlockBackend>(
    b: &B,
    lambda: &Partition,
    mu: &Partition,
    e: i32,
) -> Result<B::S> {
    let mut f = Vec::new();
    nekrasov_factors(lambda, mu, e, false, &mut f);
    b.factor_product(&f)
}

fn block_sum<B: BlockBackend>(
    b: &B,
    max_size: u32,
    step: i32,
    lozenge: bool,
    order: i32,
) -> Result<GradedSeries<B::S>> {
    let parts = partitions_up_to(max_size);
    let mut diag: BTreeMap<&Partition, B::S> = BTreeMap::new();
    let mut buf = Vec::new();
    for level in parts.iter() {
        for p in level {
            buf.clear();
            nekrasov_factors(p, p, 0, lozenge, &mut buf);
            diag.insert(p, b.inverse_of_product(&buf)?);
        }
    }
    let mut out = GradedSeries::zero(order);
    for n in 0..=max_size {
        let mut level: Option<B::S> = None;
        for k in 0..=n {
            for l1 in &parts[k as usize] {
                for l2 in &parts[(n - k) as usize] {
                    buf.clear();
                    nekrasov_factors(l1, l2, 1, lozenge, &mut buf);
                    nekrasov_factors(l2, l1, -1, lozenge, &mut buf);
                    let cross = b.inverse_of_product(&buf)?;
                    let term = cross.times(&diag[l1]).times(&diag[l2]);
                    level = Some(match level {
                        Some(acc) => acc.plus(&term),
                        None => term,
                    });
                }
            }
        }
        if let Some(c) = level {
            out.add_term(step * n as i32, c);
        }
    }
    Ok(out)
}

/// The block `F(u; q1, q2 | Z)` through `Z^order`, as a series in `zeta`.
pub fn conformal_block<B: BlockBackend>(b: &B, order: u32) -> Result<GradedSeries<B::S>> {
    block_sum(b, order, 4, false, 4 * order as i32)
}

/// The parity-filtered block `F_lozenge`, a series in `Z^(1/2)`, through
/// `Z^(half_order/2)`.
pub fn conformal_block_lozenge<B: BlockBackend>(
    b: &B,
    half_order: u32,
) -> Result<GradedSeries<B::S>> {
    block_sum(b, half_order, 2, true, 2 * half_order as i32)
}

/// Numeric parameters `(u, q1, q2)`.
pub struct NumericBlock {
    u: Complex,
    u_inv: Complex,
    q1: Complex,
    q2: Complex,
    pole_exp10: i32,
    pows: RefCell<BTreeMap<(u8, i32), Complex>>,
    factors: RefCell<BTreeMap<Factor, Complex>>,
}

impl NumericBlock {
    pub fn new(u: &Complex, q1: &Complex, q2: &Complex) -> Result<Self> {
        if u.is_zero() || q1.is_zero() || q2.is_zero() {
            return Err(Error::InvalidInput("u, q1, q2 must be nonzero".into()));
        }
        let digits = u.precision().get() as i32;
        Ok(NumericBlock {
            u: u.clone(),
            u_inv: u.inv(),
            q1: q1.clone(),
            q2: q2.clone(),
            pole_exp10: -(digits - 8),
            pows: RefCell::new(BTreeMap::new()),
            factors: RefCell::new(BTreeMap::new()),
        })
    }

    /// The specialization `(q1, q2) = (q^-1, q)`.
    pub fn standard(u: &Complex, q: &Complex) -> Result<Self> {
        NumericBlock::new(u, &q.inv(), q)
    }

    fn pow(&self, which: u8, k: i32) -> Complex {
        if let Some(v) = self.pows.borrow().get(&(which, k)) {
            return v.clone();
        }
        let base = if which == 1 { &self.q1 } else { &self.q2 };
        let v = base.powi(k as i64);
        self.pows.borrow_mut().insert((which, k), v.clone());
        v
    }

    fn factor(&self, f: &Factor) -> Result<Complex> {
        if let Some(v) = self.factors.borrow().get(f) {
            return Ok(v.clone());
        }
        let (e, x, y) = *f;
        let mut m = &self.pow(2, x) * &self.pow(1, y);
        match e {
            1 => m = &m * &self.u,
            -1 => m = &m * &self.u_inv,
            0 => {}
            _ => m = &m * &self.u.powi(e as i64),
        }
        let v = &Complex::one(self.u.precision()) - &m;
        if v.below(self.pole_exp10) {
            return Err(Error::PoleAtResonance);
        }
        self.factors.borrow_mut().insert(*f, v.clone());
        Ok(v)
    }
}

impl BlockBackend for NumericBlock {
    type S = Complex;

    fn factor_product(&self, factors: &[Factor]) -> Result<Complex> {
        let mut acc = Complex::one(self.u.precision());
        for f in factors {
            acc = &acc * &self.factor(f)?;
        }
        Ok(acc)
    }

    fn inverse_of_product(&self, factors: &[Factor]) -> Result<Complex> {
        Ok(self.factor_product(factors)?.inv())
    }
}

/// Exact parameters: `u`, `q1`, `q2` as monomials in the generators.
#[derive(Debug, Clone)]
pub struct ExactBlock {
    pub u: Monomial,
    pub q1: Monomial,
    pub q2: Monomial,
}

impl ExactBlock {
    /// `u = b^4`, `q1 = a^-4`, `q2 = a^4` in generators `a = q^(1/4)`,
    /// `b = u^(1/4)`.
    pub fn standard() -> Self {
        ExactBlock {
            u: mono_var(1, 4),
            q1: mono_var(0, -4),
            q2: mono_var(0, 4),
        }
    }

    /// The standard block at `u q^k` (so `u -> b^4 a^(4k)`).
    pub fn standard_shifted(k: i32) -> Self {
        let mut b = ExactBlock::standard();
        b.u = mono_mul(&b.u, &mono_var(0, 4 * k));
        b
    }

    fn monomial(&self, f: &Factor) -> Monomial {
        let (e, x, y) = *f;
        mono_mul(
            &mono_mul(&mono_pow(&self.u, e), &mono_pow(&self.q2, x)),
            &mono_pow(&self.q1, y),
        )
    }
}

impl BlockBackend for ExactBlock {
    type S = BinomialFraction;

    fn factor_product(&self, factors: &[Factor]) -> Result<BinomialFraction> {
        let mut p = Poly::one();
        for f in factors {
            let m = self.monomial(f);
            p = &p * &(&Poly::one() - &Poly::monomial(m, 1.into()));
        }
        Ok(BinomialFraction::from_poly(p))
    }

    fn inverse_of_product(&self, factors: &[Factor]) -> Result<BinomialFraction> {
        let ms: Vec<Monomial> = factors.iter().map(|f| self.monomial(f)).collect();
        if ms.contains(&ONE_MONO) {
            return Err(Error::PoleAtResonance);
        }
        BinomialFraction::inv_one_minus_product(&ms)
    }
}

/// Scalars with a (partial) inverse.
pub trait Field: Scalar {
    fn inverse(&self) -> Option<Self>;
}

impl Field for Complex {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }
}

impl Field for ExactScalar {
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}

/// The `q -> 1` limit: each factor `1 - u^e q2^x q1^y` with `q = e^h`,
/// `u = e^(2 sigma h)` and `(q1, q2) = (q^-1, q)` is replaced by its leading
/// coefficient `2 sigma e + x - y` (the `-h` prefactors cancel against
/// `Z = h^4 z`).
pub struct LimitBlock<S> {
    two_sigma: S,
}

impl<S: Field> LimitBlock<S> {
    pub fn new(sigma: &S) -> Self {
        LimitBlock {
            two_sigma: sigma.plus(sigma),
        }
    }
}

impl<S: Field> BlockBackend for LimitBlock<S> {
    type S = S;

    fn factor_product(&self, factors: &[Factor]) -> Result<S> {
        let mut acc = self.two_sigma.one_like();
        for &(e, x, y) in factors {
            // q2^x q1^y = q^(x - y)
            let lin = self
                .two_sigma
                .times(&self.two_sigma.int_like(e as i64))
                .plus(&self.two_sigma.int_like((x - y) as i64));
            acc = acc.times(&lin);
        }
        Ok(acc)
    }

    fn inverse_of_product(&self, factors: &[Factor]) -> Result<S> {
        self.factor_product(factors)?
            .inverse()
            .ok_or(Error::ResonantSigma)
    }
}

/// The `c = 1` irregular block `F(sigma^2 | z)` through `z^order`, as a series
/// in `zeta` with `zeta^4 = z`.
pub fn block_4d<S: Field>(sigma: &S, order: u32) -> Result<GradedSeries<S>> {
    conformal_block(&LimitBlock::new(sigma), order)
}

/// Converts a block over binomial fractions to canonical exact scalars.
pub fn to_exact_series(s: &GradedSeries<BinomialFraction>) -> GradedSeries<ExactScalar> {
    s.map(|c| c.to_exact())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Precision;

    #[test]
    fn single_cell_factors() {
        let b = ExactBlock::standard();
        let one = Partition::new(&[1]).unwrap();
        let e = Partition::empty();
        let n = nekrasov_factor(&b, &one, &e, 1).unwrap().to_exact();
        assert_eq!(n, ExactScalar::from_poly(&Poly::one() - &Poly::var(1, 4)));
        let n11 = nekrasov_factor(&b, &one, &one, 0).unwrap().to_exact();
        let expect = ExactScalar::from_poly(
            &(&Poly::one() - &Poly::var(0, -4)) * &(&Poly::one() - &Poly::var(0, 4)),
        );
        assert_eq!(n11, expect);
    }

    #[test]
    fn order_one_coefficient() {
        let f = to_exact_series(&conformal_block(&ExactBlock::standard(), 1).unwrap());
        let q = || Poly::var(0, 4);
        let u = || Poly::var(1, 4);
        let den = &(&(&Poly::one() - &q()) * &(&Poly::one() - &Poly::var(0, -4)))
            * &(&(&Poly::one() - &u()) * &(&Poly::one() - &Poly::var(1, -4)));
        let expect = ExactScalar::new(Poly::from_i64(2), den).unwrap();
        assert_eq!(f.coeff(4), Some(&expect));
        assert_eq!(f.coeff(0), Some(&ExactScalar::one()));
    }

    #[test]
    fn limit_block_order_one() {
        let p = Precision::digits(30);
        let s = Complex::from_f64(0.3, p);
        let f = block_4d(&s, 1).unwrap();
        let c = f.coeff(4).unwrap();
        let expect = (&s * &s).scale_i64(2).inv();
        assert!((c - &expect).below(-25));
    }

    #[test]
    fn numeric_matches_exact() {
        let p = Precision::digits(40);
        let u = Complex::from_f64_parts(0.37, 0.11, p);
        let q = Complex::from_f64(0.45, p);
        let num = conformal_block(&NumericBlock::standard(&u, &q).unwrap(), 3).unwrap();
        let ex = to_exact_series(&conformal_block(&ExactBlock::standard(), 3).unwrap());
        let a = q.powc(&Complex::from_f64(0.25, p));
        let b = u.powc(&Complex::from_f64(0.25, p));
        for k in [4, 8, 12] {
            let v = ex.coeff(k).unwrap().eval(&[a.clone(), b.clone()]).unwrap();
            let d = &v - num.coeff(k).unwrap();
            assert!(d.log10_abs() - v.log10_abs() < -30.0, "k={k}");
        }
    }

    #[test]
    fn resonance_detected() {
        let p = Precision::digits(30);
        let q = Complex::from_f64(0.5, p);
        let u = q.clone();
        assert_eq!(
            conformal_block(&NumericBlock::standard(&u, &q).unwrap(), 3).err(),
            Some(Error::PoleAtResonance)
        );
    }
}
