//! Residuals of the bilinear relations between conformal blocks and tau
//! functions.
//!
//! The block relations are computed over a [`QRing`]: coefficients that can
//! represent monomials `u^e q^(f/4)`, inverses of products of `1 - u^e q^(f/4)`
//! and blocks at such arguments. [`ExactRing`] works with binomial fractions
//! in the generators `a = q^(1/4)`, `b = u^(1/4)`; [`NumericRing`] with
//! complex numbers.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigInt;

use crate::block::{conformal_block, conformal_block_lozenge, ExactBlock, NumericBlock};
use crate::error::{Error, Result};
use crate::exact::poly::{mono_mul, mono_var, Monomial};
use crate::exact::{BinomialFraction, ExactScalar};
use crate::num::Complex;
use crate::qspecial::qpoch;
use crate::scalar::Scalar;
use crate::series::GradedSeries;
use crate::tau::{p_n_algebraic_factors, LogVar, Tau, TauForm};

/// Coefficient rings for the block identities.
pub trait QRing {
    type S: Scalar;

    /// `u^e q^(f/4)`.
    fn mono(&self, e: i32, f: i32) -> Self::S;

    /// `prod 1 / (1 - u^e q^(f/4))` over the listed `(e, f)`.
    fn inv_one_minus(&self, list: &[(i32, i32)]) -> Result<Self::S>;

    /// `F(u^e q^(f/4); q^-1, q | Z)` through `Z^order`.
    fn block(&self, e: i32, f: i32, order: u32) -> Result<GradedSeries<Self::S>>;

    fn int(&self, v: i64) -> Self::S;

    fn div_int(&self, x: &Self::S, d: i64) -> Self::S;
}

/// Exact coefficients in `a = q^(1/4)` (generator 0) and `b = u^(1/4)`
/// (generator 1).
#[derive(Default)]
pub struct ExactRing {
    blocks: RefCell<BTreeMap<(i32, i32), GradedSeries<BinomialFraction>>>,
}

impl ExactRing {
    pub fn new() -> Self {
        ExactRing::default()
    }

    fn monomial(e: i32, f: i32) -> Monomial {
        mono_mul(&mono_var(1, 4 * e), &mono_var(0, f))
    }
}

impl QRing for ExactRing {
    type S = BinomialFraction;

    fn mono(&self, e: i32, f: i32) -> BinomialFraction {
        BinomialFraction::monomial(ExactRing::monomial(e, f))
    }

    fn inv_one_minus(&self, list: &[(i32, i32)]) -> Result<BinomialFraction> {
        let ms: Vec<Monomial> = list
            .iter()
            .map(|&(e, f)| ExactRing::monomial(e, f))
            .collect();
        BinomialFraction::inv_one_minus_product(&ms).map_err(|_| Error::ResonantU)
    }

    fn block(&self, e: i32, f: i32, order: u32) -> Result<GradedSeries<BinomialFraction>> {
        if let Some(b) = self.blocks.borrow().get(&(e, f)) {
            if b.order() >= 4 * order as i32 {
                return Ok(b.truncate(4 * order as i32));
            }
        }
        let eb = ExactBlock {
            u: ExactRing::monomial(e, f),
            q1: mono_var(0, -4),
            q2: mono_var(0, 4),
        };
        let b = conformal_block(&eb, order)?;
        self.blocks.borrow_mut().insert((e, f), b.clone());
        Ok(b)
    }

    fn int(&self, v: i64) -> BinomialFraction {
        BinomialFraction::from_i64(v)
    }

    fn div_int(&self, x: &BinomialFraction, d: i64) -> BinomialFraction {
        x.div_int(&BigInt::from(d))
    }
}

/// Numeric coefficients at fixed `u`, `q`.
pub struct NumericRing {
    u: LogVar,
    q: LogVar,
    blocks: RefCell<BTreeMap<(i32, i32), GradedSeries<Complex>>>,
}

impl NumericRing {
    pub fn new(u: LogVar, q: LogVar) -> Self {
        NumericRing {
            u,
            q,
            blocks: RefCell::new(BTreeMap::new()),
        }
    }

    fn value(&self, e: i32, f: i32) -> Complex {
        (&self.u.ln().scale_i64(e as i64) + &self.q.ln().scale_i64(f as i64).div_i64(4)).exp()
    }
}

impl QRing for NumericRing {
    type S = Complex;

    fn mono(&self, e: i32, f: i32) -> Complex {
        self.value(e, f)
    }

    fn inv_one_minus(&self, list: &[(i32, i32)]) -> Result<Complex> {
        let p = self.q.precision();
        let mut d = Complex::one(p);
        for &(e, f) in list {
            d = &d * &(&Complex::one(p) - &self.value(e, f));
        }
        if d.below(-(p.get() as i32) + 8) {
            return Err(Error::ResonantU);
        }
        Ok(d.inv())
    }

    fn block(&self, e: i32, f: i32, order: u32) -> Result<GradedSeries<Complex>> {
        if let Some(b) = self.blocks.borrow().get(&(e, f)) {
            if b.order() >= 4 * order as i32 {
                return Ok(b.truncate(4 * order as i32));
            }
        }
        let nb = NumericBlock::standard(&self.value(e, f), &self.q.value())?;
        let b = conformal_block(&nb, order)?;
        self.blocks.borrow_mut().insert((e, f), b.clone());
        Ok(b)
    }

    fn int(&self, v: i64) -> Complex {
        Complex::from_i64(v, self.q.precision())
    }

    fn div_int(&self, x: &Complex, d: i64) -> Complex {
        x.div_i64(d)
    }
}

/// Factors of the weight `w_n` with `k = 2n`: the weight is
/// `prod 1 / (1 - u^e q^f)` over the returned `(e, f)`.
///
/// `w_n = prod_e (u^e q; q,q)^2 / prod_{e,e'} (u^e q^(1+2e'n); q,q)`; with
/// `(x; q,q) / (xq; q,q) = (x; q)` the infinite parts telescope and leave
/// `(1 - u^(+-1) q^i)` with multiplicity `k - i` for `1 <= i < k` and `k + i`
/// for `1 - k <= i <= 0`.
pub fn weight_factors(k: i32) -> Vec<(i32, i32)> {
    let k = k.abs();
    let mut out = Vec::new();
    for e in [1, -1] {
        for i in (1 - k)..k {
            let mult = if i >= 1 { k - i } else { k + i };
            for _ in 0..mult {
                out.push((e, i));
            }
        }
    }
    out
}

/// `w_n` for `k = 2n` in the given ring.
pub fn weight<R: QRing>(r: &R, k: i32) -> Result<R::S> {
    let list: Vec<(i32, i32)> = weight_factors(k)
        .into_iter()
        .map(|(e, f)| (e, 4 * f))
        .collect();
    r.inv_one_minus(&list)
}

/// `w_n` from its definition through numeric double Pochhammer symbols.
pub fn weight_from_pochhammers(u: &LogVar, q: &LogVar, k: i32) -> Result<Complex> {
    let qv = q.value();
    let qq = [qv.clone(), qv.clone()];
    let d = |e: i64, f: i64| -> Result<Complex> { qpoch(&u.pow(e).mul(&q.pow(f)).value(), &qq) };
    let num = (&d(1, 1)? * &d(-1, 1)?).sqr();
    let k = k as i64;
    let den = &(&d(1, 1 + k)? * &d(1, 1 - k)?) * &(&d(-1, 1 + k)? * &d(-1, 1 - k)?);
    Ok(&num / &den)
}

/// Re-declares a block series (support on multiples of 4) as known through
/// `zeta^(4m+3)`.
fn block_known<S: Scalar>(b: &GradedSeries<S>) -> GradedSeries<S> {
    let m = b.order() / 4;
    GradedSeries::from_coeffs(b.terms().map(|(k, v)| (k, v.clone())), 4 * m + 3)
}

/// Which `n` the main residual includes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sectors {
    All,
    /// Drops `n = +-1/2` (a negative control).
    WithoutHalf,
}

impl Sectors {
    fn includes(self, k: i32) -> bool {
        match self {
            Sectors::All => true,
            Sectors::WithoutHalf => k.abs() != 1,
        }
    }
}

/// The main block relation multiplied through by `prod_e (u^e q; q,q)^2`:
///
/// `sum_{2n^2 <= D} w_n [u^(2n) Z^(2n^2) F(u q^-2n | Z/q) F(u q^2n | qZ)
///   - (1 - Z^(1/2)) Z^(2n^2) F(u q^-2n | Z) F(u q^2n | Z)]`
///
/// through `Z^D`, as a series in `zeta = Z^(1/4)`.
pub fn bilinear_residual_main<R: QRing>(
    r: &R,
    order: u32,
    sectors: Sectors,
) -> Result<GradedSeries<R::S>> {
    let top = 4 * order as i32;
    let mut out = GradedSeries::zero(top);
    let mut k = 0i32;
    while k * k <= 2 * order as i32 {
        for kk in if k == 0 { [0, 0] } else { [k, -k] } {
            if !sectors.includes(kk) {
                continue;
            }
            let shift = 2 * kk * kk;
            let m = ((top - shift) / 4) as u32;
            let fm = block_known(&r.block(1, -4 * kk, m)?);
            let fp = block_known(&r.block(1, 4 * kk, m)?);
            let fm_q = fm.scale_z_by(|j| r.mono(0, -j));
            let fp_q = fp.scale_z_by(|j| r.mono(0, j));
            let lhs = fm_q.mul(&fp_q).scale(&r.mono(kk, 0));
            let prod = fm.mul(&fp);
            let rhs = prod.sub(&prod.shift(2));
            let term = lhs.sub(&rhs).shift(shift).scale(&weight(r, kk)?);
            out = out.add(&term);
            if k == 0 {
                break;
            }
        }
        k += 1;
    }
    Ok(out)
}

/// The Pochhammer `(x; t, t)` with `x = c Z^(1/2) q^(1/2)`, `t = q^(1/2)`,
/// expanded through `Z^order` from `log (x; t, t) = -sum_m x^m / (m (1 - t^m)^2)`.
pub fn algebraic_pochhammer<R: QRing>(r: &R, c: i64, order: u32) -> Result<GradedSeries<R::S>> {
    let top = 4 * order as i32;
    let jmax = (top / 2) as usize;
    // g_m: coefficient of zeta^(2m) in the logarithm
    let mut g = Vec::with_capacity(jmax + 1);
    g.push(r.int(0));
    for m in 1..=jmax as i32 {
        let pref = r.mono(0, 2 * m).times(&r.int(-c.pow(m as u32)));
        let v = pref.times(&r.inv_one_minus(&[(0, 2 * m), (0, 2 * m)])?);
        g.push(r.div_int(&v, m as i64));
    }
    // f = exp(g):  j f_j = sum_i i g_i f_(j-i)
    let mut f = Vec::with_capacity(jmax + 1);
    f.push(r.int(1));
    for j in 1..=jmax {
        let mut acc = r.int(0);
        for i in 1..=j {
            acc = acc.plus(&g[i].times(&f[j - i]).times(&r.int(i as i64)));
        }
        f.push(r.div_int(&acc, j as i64));
    }
    Ok(GradedSeries::from_coeffs(
        f.into_iter().enumerate().map(|(j, v)| (2 * j as i32, v)),
        top,
    ))
}

/// `P_n(q)` of the algebraic point in the ring (`q^(1/2) = q^(2/4)`).
pub fn p_n_algebraic_in<R: QRing>(r: &R, n: i64) -> Result<R::S> {
    let list: Vec<(i32, i32)> = p_n_algebraic_factors(n)
        .into_iter()
        .map(|e| (0, 2 * e))
        .collect();
    r.inv_one_minus(&list)
}

/// Algebraic-point identity at `s = sign`:
///
/// `(-s Z^(1/2) q^(1/2); q^(1/2), q^(1/2))
///   - sum_n (-s)^n Z^(n^2 + n/2) P_n(q) F(q^(2n+1/2); q^-1, q | Z)`
///
/// through `Z^order`.
pub fn algebraic_identity_residual<R: QRing>(
    r: &R,
    order: u32,
    sign: i64,
) -> Result<GradedSeries<R::S>> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidInput("sign must be +1 or -1".into()));
    }
    let top = 4 * order as i32;
    let mut out = algebraic_pochhammer(r, -sign, order)?;
    let mut n_lo = 0i64;
    while 4 * (n_lo - 1) * (n_lo - 1) + 2 * (n_lo - 1) <= top as i64 {
        n_lo -= 1;
    }
    let mut n = n_lo;
    loop {
        let shift = (4 * n * n + 2 * n) as i32;
        if shift > top {
            if n > 0 {
                break;
            }
            n += 1;
            continue;
        }
        let m = ((top - shift) / 4) as u32;
        let f = block_known(&r.block(0, 8 * n as i32 + 2, m)?);
        let c = p_n_algebraic_in(r, n)?.times(&r.int((-sign).pow(n.unsigned_abs() as u32)));
        out = out.sub(&f.shift(shift).scale(&c));
        n += 1;
    }
    Ok(out.truncate(top))
}

/// Converts a residual over binomial fractions to canonical form.
pub fn canonical(s: &GradedSeries<BinomialFraction>) -> GradedSeries<ExactScalar> {
    s.map(|c| c.to_exact())
}

/// The q-Toda residual `Z^(1/4) T(qZ) T(Z/q) - T(Z)^2 - Z^(1/2) T_(uq)(Z) T_(u/q)(Z)`
/// divided by the largest of the three terms.
pub fn qtoda_residual(tau: &Tau, z: &LogVar) -> Result<Complex> {
    let q = &tau.params().q;
    let t = |j: i64, zz: &LogVar| tau.eval(TauForm::Ratio, j, zz);
    let a = &(&z.frac_pow(1, 4) * &t(0, &q.mul(z))?) * &t(0, &q.inv().mul(z))?;
    let b = t(0, z)?.sqr();
    let c = &(&z.frac_pow(1, 2) * &t(1, z)?) * &t(-1, z)?;
    relative(&(&(&a - &b) - &c), &[&a, &b, &c])
}

/// `|r| / max |terms|`.
pub fn relative(r: &Complex, terms: &[&Complex]) -> Result<Complex> {
    let scale = terms
        .iter()
        .map(|t| t.abs())
        .fold(Complex::zero(r.precision()), |m, x| {
            if x.cmp_abs(&m) == core::cmp::Ordering::Greater {
                x
            } else {
                m
            }
        });
    if scale.is_zero() {
        return Err(Error::ZeroTau);
    }
    Ok(&r.abs() / &scale)
}

/// The q-Painleve residual `G(qZ) G(Z/q) (G - 1)^2 - (G - Z)^2` at `Z`, with
/// `G` built from the tau function, relative to `|G - Z|^2`.
pub fn qpp_residual(tau: &Tau, z: &LogVar) -> Result<Complex> {
    let q = &tau.params().q;
    let (_, g) = tau.fg(z)?;
    let (_, gp) = tau.fg(&q.mul(z))?;
    let (_, gm) = tau.fg(&q.inv().mul(z))?;
    let one = Complex::one(g.precision());
    let l = &(&gp * &gm) * &(&g - &one).sqr();
    let r = (&g - &z.value()).sqr();
    relative(&(&l - &r), &[&l, &r])
}

/// `beta_k` and `gamma_k` from their recursion
/// `x_k = Z x_(k-1)^2 / x_(k-2)`, `x_0 = 1`, `beta_1 = -Z^(1/2)`,
/// `gamma_1 = -u Z^(1/2)`, with `zeta = Z^(1/4)` as generator 0 and
/// `b = u^(1/4)` as generator 1. Returns `(beta_k, gamma_k)` for `k <= kmax`.
pub fn beta_gamma_recursion(kmax: usize) -> Vec<(ExactScalar, ExactScalar)> {
    let z = ExactScalar::var(0, 4);
    let mut out = Vec::with_capacity(kmax + 1);
    out.push((ExactScalar::one(), ExactScalar::one()));
    if kmax == 0 {
        return out;
    }
    let b1 = -ExactScalar::var(0, 2);
    let g1 = -(&ExactScalar::var(1, 4) * &ExactScalar::var(0, 2));
    out.push((b1, g1));
    for k in 2..=kmax {
        let step =
            |x1: &ExactScalar, x2: &ExactScalar| &(&z * &(x1 * x1)) * &x2.inv().expect("nonzero");
        let b = step(&out[k - 1].0, &out[k - 2].0);
        let g = step(&out[k - 1].1, &out[k - 2].1);
        out.push((b, g));
    }
    out
}

/// The closed forms `beta_k = (-1)^k Z^(k^2/2)`, `gamma_k = (-1)^k u^k Z^(k^2/2)`.
pub fn beta_gamma_closed(k: i32) -> (ExactScalar, ExactScalar) {
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let zpart = ExactScalar::var(0, 2 * k * k);
    let beta = &ExactScalar::from_i64(sign) * &zpart;
    let gamma = &beta * &ExactScalar::var(1, 4 * k);
    (beta, gamma)
}

/// Inputs of the generic-base relations.
pub struct GenericBase {
    pub u: Complex,
    pub q1: Complex,
    pub q2: Complex,
}

impl GenericBase {
    pub fn new(u: &Complex, q1: &Complex, q2: &Complex) -> Result<Self> {
        if !(q2.log10_abs() < 0.0 && q1.log10_abs() > 0.0) {
            return Err(Error::InvalidInput("need |q2| < 1 < |q1|".into()));
        }
        Ok(GenericBase {
            u: u.clone(),
            q1: q1.clone(),
            q2: q2.clone(),
        })
    }

    /// `F_lozenge(u, q1, q2 | Z)` through `Z^order`, in `zeta`.
    pub fn lozenge(&self, order: u32) -> Result<GradedSeries<Complex>> {
        let nb = NumericBlock::new(&self.u, &self.q1, &self.q2)?;
        conformal_block_lozenge(&nb, 2 * order)
    }

    fn weight_den(&self, k: i64) -> Result<Complex> {
        // k = 2n
        let (u, q1, q2) = (&self.u, &self.q1, &self.q2);
        let ui = u.inv();
        let b1 = [q1.powi(-2), &q1.inv() * q2];
        let b2 = [&q1.inv() * q2, q2.sqr()];
        let d1 =
            &qpoch(&(u * &q1.powi(2 * k - 2)), &b1)? * &qpoch(&(&ui * &q1.powi(-2 * k - 2)), &b1)?;
        let d2 = &qpoch(&(&(u * &q1.inv()) * &q2.powi(2 * k + 1)), &b2)?
            * &qpoch(&(&(&ui * &q1.inv()) * &q2.powi(-2 * k + 1)), &b2)?;
        Ok(&d1 * &d2)
    }

    /// `F^_d` through `Z^order`, with every weight divided by the `n = 0`
    /// weight so that the series starts at 1.
    pub fn hat(&self, d: i64, order: u32) -> Result<GradedSeries<Complex>> {
        let top = 4 * order as i32;
        let (u, q1, q2) = (&self.u, &self.q1, &self.q2);
        let d0 = self.weight_den(0)?;
        let mut out = GradedSeries::zero(top);
        let kmax = ((2 * order) as f64).sqrt().floor() as i64;
        for k in -kmax..=kmax {
            let shift = (2 * k * k) as i32;
            if shift > top {
                continue;
            }
            let m = ((top - shift) / 4) as u32;
            // F^(1)_n = F(u q1^(4n); q1^2, q1^-1 q2), F^(2)_n = F(u q2^(4n); q1 q2^-1, q2^2)
            let b1 = NumericBlock::new(&(u * &q1.powi(2 * k)), &q1.sqr(), &(&q1.inv() * q2))?;
            let b2 = NumericBlock::new(&(u * &q2.powi(2 * k)), &(q1 * &q2.inv()), &q2.sqr())?;
            let f1 = block_known(&conformal_block(&b1, m)?);
            let f2 = block_known(&conformal_block(&b2, m)?);
            let s1 = q1.powi(2 * d);
            let s2 = q2.powi(2 * d);
            let f1 = f1.scale_z_by(|j| s1.powi((j / 4) as i64));
            let f2 = f2.scale_z_by(|j| s2.powi((j / 4) as i64));
            // u^(2dn) (q1 q2)^(4 d n^2) = u^(dk) (q1 q2)^(d k^2)
            let pref = &u.powi(d * k) * &(q1 * q2).powi(d * k * k);
            let w = &(&pref * &d0) / &self.weight_den(k)?;
            out = out.add(&f1.mul(&f2).shift(shift).scale(&w));
        }
        Ok(out)
    }

    /// `F_lozenge`, `F^_0` and `F^_1` through `Z^order`.
    pub fn series(&self, order: u32) -> Result<GenericBaseSeries> {
        Ok(GenericBaseSeries {
            lozenge: self.lozenge(order)?,
            hat0: self.hat(0, order)?,
            hat1: self.hat(1, order)?,
            c: &self.q1 * &self.q2,
        })
    }

    /// `(F_lozenge - F^_1, F_lozenge - (1 - q2 q1 Z^(1/2)) F^_0)` through `Z^order`.
    pub fn residuals(&self, order: u32) -> Result<(GradedSeries<Complex>, GradedSeries<Complex>)> {
        Ok(self.series(order)?.residuals())
    }
}

/// The three series entering the generic-base relations.
pub struct GenericBaseSeries {
    pub lozenge: GradedSeries<Complex>,
    pub hat0: GradedSeries<Complex>,
    pub hat1: GradedSeries<Complex>,
    c: Complex,
}

impl GenericBaseSeries {
    fn hat0_twisted(&self) -> GradedSeries<Complex> {
        self.hat0.sub(&self.hat0.shift(2).scale(&self.c))
    }

    /// `(F_lozenge - F^_1, F_lozenge - (1 - q2 q1 Z^(1/2)) F^_0)`.
    pub fn residuals(&self) -> (GradedSeries<Complex>, GradedSeries<Complex>) {
        (
            self.lozenge.sub(&self.hat1),
            self.lozenge.sub(&self.hat0_twisted()),
        )
    }

    /// `(F_lozenge - chi(Z) F^_0, F^_1 - (1 - q2 q1 Z^(1/2)) F^_0)` with
    /// `chi(Z) = sum_{k >= 0} Z^(k(k+1)/2)`, the relations the series
    /// actually satisfy.
    pub fn observed_residuals(&self) -> (GradedSeries<Complex>, GradedSeries<Complex>) {
        let chi = two_core_series(self.lozenge.order(), self.c.precision());
        (
            self.lozenge.sub(&chi.mul(&self.hat0)),
            self.hat1.sub(&self.hat0_twisted()),
        )
    }
}

/// `sum_{k >= 0} Z^(k(k+1)/2)` in `zeta = Z^(1/4)` through `zeta^order`:
/// the generating function of 2-core partitions.
pub fn two_core_series(order: i32, p: crate::num::Precision) -> GradedSeries<Complex> {
    let mut out = GradedSeries::zero(order);
    let mut k = 0;
    while 2 * k * (k + 1) <= order {
        out.add_term(2 * k * (k + 1), Complex::one(p));
        k += 1;
    }
    out
}

/// Both sides of the fiber-base relation
/// `F(u | Z) / (uq; q,q)^2` and `F(uZ | 1/Z) / (uZq; q,q)^2`, each block
/// summed through `Z^order` at the numeric point.
pub fn fiber_base_sides(
    u: &Complex,
    q: &Complex,
    z: &Complex,
    order: u32,
) -> Result<(Complex, Complex)> {
    let qq = [q.clone(), q.clone()];
    let zeta = LogVar::new(z)?;
    let lhs_block = conformal_block(&NumericBlock::standard(u, q)?, order)?;
    let uz = u * z;
    let rhs_block = conformal_block(&NumericBlock::standard(&uz, q)?, order)?;
    let l = &lhs_block.eval(&zeta.frac_pow(1, 4)) / &qpoch(&(u * q), &qq)?.sqr();
    let r = &rhs_block.eval(&zeta.frac_pow(-1, 4)) / &qpoch(&(&uz * q), &qq)?.sqr();
    Ok((l, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Precision;
    use crate::tau::p_n_coefficient;

    #[test]
    fn weight_small_cases() {
        assert!(weight_factors(0).is_empty());
        let p = Precision::digits(40);
        let u = LogVar::new(&Complex::from_f64_parts(0.3, 0.2, p)).unwrap();
        let q = LogVar::new(&Complex::from_f64_parts(0.5, 0.1, p)).unwrap();
        let r = NumericRing::new(u.clone(), q.clone());
        let w1 = weight(&r, 2).unwrap();
        let pp = &p_n_coefficient(1, &u, &q).unwrap() * &p_n_coefficient(1, &u.inv(), &q).unwrap();
        assert!((&w1 - &pp).below(-30));
        let one = Complex::one(p);
        let half = (&(&one - &u.value()) * &(&one - &u.inv().value())).inv();
        assert!((&weight(&r, 1).unwrap() - &half).below(-30));
    }

    #[test]
    fn exact_order_two_vanishes() {
        let r = ExactRing::new();
        let res = canonical(&bilinear_residual_main(&r, 2, Sectors::All).unwrap());
        assert!(
            res.is_zero(),
            "{:?}",
            res.terms().map(|(k, _)| k).collect::<Vec<_>>()
        );
    }

    #[test]
    fn beta_gamma() {
        for (k, (b, g)) in beta_gamma_recursion(8).into_iter().enumerate() {
            let (cb, cg) = beta_gamma_closed(k as i32);
            assert_eq!(b, cb);
            assert_eq!(g, cg);
        }
    }
}
