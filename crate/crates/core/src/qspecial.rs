//! q-special functions at arbitrary precision.
//!
//! Multiple q-Pochhammer symbols are the building block. With all bases inside
//! the unit disc they are evaluated through the exponential form
//! `exp(-sum_m Z^m / m prod_k 1/(1 - t_k^m))` when `|Z| < 1/2`, which has an
//! explicit geometric tail bound, and by peeling factors
//! `(Z; t) = (Z; t \ t1) (Z t1; t)` otherwise. Bases outside the disc are
//! first inverted with `(Z; 1/t, ...) = 1 / (Z t; t, ...)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::num::{rational_to_complex, Complex, Precision};

/// A Pochhammer value with the bound on its truncation error.
#[derive(Debug, Clone)]
pub struct QPochhammer {
    pub value: Complex,
    /// log10 of the absolute error bound.
    pub tail_bound_exp10: f64,
}

fn unit_tolerance(p: Precision) -> f64 {
    -(p.get() as f64) + 5.0
}

fn default_target(p: Precision) -> i32 {
    -(p.get() as i32) - 5
}

/// `(Z; t_1, ..., t_N)_inf` with absolute error at most `10^target_exp10`.
pub fn qpoch_checked(z: &Complex, bases: &[Complex], target_exp10: i32) -> Result<QPochhammer> {
    let tol = unit_tolerance(z.precision());
    for t in bases {
        if t.log10_abs().abs() < 10f64.powf(tol) {
            return Err(Error::UnitModulusBase);
        }
    }
    if let Some(idx) = bases.iter().position(|t| t.log10_abs() > 0.0) {
        // (Z; 1/s, rest) = 1 / (Z s; s, rest)
        let s = bases[idx].inv();
        let mut rest: Vec<Complex> = bases.to_vec();
        rest[idx] = s.clone();
        let inner = qpoch_checked(&(z * &s), &rest, target_exp10)?;
        if inner.value.is_zero() || inner.value.below(target_exp10) {
            return Err(Error::PoleHit);
        }
        return Ok(QPochhammer {
            value: inner.value.inv(),
            tail_bound_exp10: inner.tail_bound_exp10,
        });
    }
    let value = qpoch_inside(z, bases, target_exp10)?;
    Ok(QPochhammer {
        value,
        tail_bound_exp10: target_exp10 as f64,
    })
}

fn qpoch_inside(z: &Complex, bases: &[Complex], target_exp10: i32) -> Result<Complex> {
    let p = z.precision();
    if bases.is_empty() {
        return Ok(&Complex::one(p) - z);
    }
    if z.is_zero() {
        return Ok(Complex::one(p));
    }
    if z.abs_f64() < 0.5 {
        return Ok(pexpr(z, bases, target_exp10));
    }
    // Peel along the base of smallest modulus until the argument is small.
    let (k, _) = bases
        .iter()
        .enumerate()
        .map(|(i, t)| (i, t.abs_f64()))
        .fold(
            (0, f64::INFINITY),
            |best, x| if x.1 < best.1 { x } else { best },
        );
    let t = &bases[k];
    let rest: Vec<Complex> = bases
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, v)| v.clone())
        .collect();
    let mut acc = Complex::one(p);
    let mut arg = z.clone();
    let mut guard = 0u64;
    while arg.abs_f64() >= 0.5 {
        acc = &acc * &qpoch_inside(&arg, &rest, target_exp10 - 2)?;
        arg = &arg * t;
        guard += 1;
        if guard > 10_000_000 {
            return Err(Error::NoConvergence);
        }
    }
    Ok(&acc * &pexpr(&arg, bases, target_exp10 - 2))
}

/// The exponential form, valid for `|Z| < 1` and all `|t_k| < 1`.
fn pexpr(z: &Complex, bases: &[Complex], target_exp10: i32) -> Complex {
    let p = z.precision();
    let zabs = z.abs_f64();
    // |1/(1 - t^m)| <= 1/(1 - |t|) bounds every term
    let c: f64 = bases.iter().map(|t| -(1.0 - t.abs_f64()).log10()).sum();
    let mut sum = Complex::zero(p);
    let mut zm = z.clone();
    let mut tm: Vec<Complex> = bases.to_vec();
    let one = Complex::one(p);
    let mut m: i64 = 1;
    loop {
        let mut prod = one.clone();
        for t in &tm {
            prod = &prod * &(&one - t);
        }
        let term = (&zm / &prod).div_i64(m);
        sum = &sum + &term;
        // tail sum_{k>m} |Z|^k / k * C <= C |Z|^(m+1) / ((m+1)(1-|Z|))
        let tail =
            c + (m + 1) as f64 * zabs.log10() - ((m + 1) as f64).log10() - (1.0 - zabs).log10();
        if tail < target_exp10 as f64 - 2.0 || m > 100_000 {
            break;
        }
        m += 1;
        zm = &zm * z;
        for (k, t) in tm.iter_mut().enumerate() {
            *t = &*t * &bases[k];
        }
    }
    (-sum).exp()
}

/// `(Z; t_1, ..., t_N)_inf` at the default target precision.
pub fn qpoch(z: &Complex, bases: &[Complex]) -> Result<Complex> {
    Ok(qpoch_checked(z, bases, default_target(z.precision()))?.value)
}

/// `theta(Z; q) = (Z; q)(q/Z; q)`.
pub fn theta(z: &Complex, q: &Complex) -> Result<Complex> {
    if z.is_zero() {
        return Err(Error::PoleHit);
    }
    Ok(&qpoch(z, core::slice::from_ref(q))? * &qpoch(&(q / z), core::slice::from_ref(q))?)
}

/// The series side of the Jacobi triple product,
/// `sum_k (-1)^k q^(k(k-1)/2) Z^k / (q; q)`.
pub fn theta_series(z: &Complex, q: &Complex) -> Result<Complex> {
    let p = z.precision();
    let digits = p.get() as f64;
    let lq = q.log10_abs();
    let lz = z.log10_abs();
    let mut sum = Complex::zero(p);
    // terms decay like |q|^(k^2/2); stop once both tails are negligible
    let mut k: i64 = 0;
    loop {
        let mut done = true;
        for kk in if k == 0 { [0i64, i64::MAX] } else { [k, -k] } {
            if kk == i64::MAX {
                continue;
            }
            let mag = lq * (kk * (kk - 1)) as f64 / 2.0 + lz * kk as f64;
            if mag > -(digits + 10.0) {
                done = false;
            }
            let sign = if kk.rem_euclid(2) == 0 { 1 } else { -1 };
            let t = (&q.powi(kk * (kk - 1) / 2) * &z.powi(kk)).scale_i64(sign);
            sum = &sum + &t;
        }
        if (done && k > 2) || k > 100_000 {
            break;
        }
        k += 1;
    }
    Ok(&sum / &qpoch(q, core::slice::from_ref(q))?)
}

/// Elliptic Gamma `Gamma(Z; t, q) = (t q / Z; t, q) / (Z; t, q)`.
pub fn elliptic_gamma(z: &Complex, t: &Complex, q: &Complex) -> Result<Complex> {
    if z.is_zero() {
        return Err(Error::PoleHit);
    }
    let bases = [t.clone(), q.clone()];
    let num = qpoch(&(&(t * q) / z), &bases)?;
    let den = qpoch(z, &bases)?;
    if den.below(default_target(z.precision()) + 5) {
        return Err(Error::PoleHit);
    }
    Ok(&num / &den)
}

/// `q^x` on the principal branch.
pub fn qpow(q: &Complex, x: &Complex) -> Complex {
    q.powc(x)
}

/// q-Gamma `Gamma(x; q) = (1-q)^(1-x) (q;q) / (q^x; q)`.
pub fn q_gamma(x: &Complex, q: &Complex) -> Result<Complex> {
    let p = x.precision();
    let one = Complex::one(p);
    let qs = core::slice::from_ref(q);
    // poles sit at x = 0, -1, -2, ... where one factor 1 - q^(x+i) vanishes
    let n0 = (-x.re_f64()).round();
    if n0 >= 0.0 {
        let near = &one - &qpow(q, &(x + &Complex::from_f64(n0, p)));
        if near.below(default_target(p) + 10) {
            return Err(Error::PoleHit);
        }
    }
    let den = qpoch(&qpow(q, x), qs)?;
    let pref = (&one - q).powc(&(&one - x));
    Ok(&(&pref * &qpoch(q, qs)?) / &den)
}

/// q-Barnes `G(x; q) = (1-q)^(-(x-1)(x-2)/2) (q;q)^(x-1) (q^x; q,q) / (q; q,q)`.
pub fn q_barnes_g(x: &Complex, q: &Complex) -> Result<Complex> {
    let p = x.precision();
    let one = Complex::one(p);
    let two = Complex::from_i64(2, p);
    let qs = core::slice::from_ref(q);
    let qq = [q.clone(), q.clone()];
    let e = (&(x - &one) * &(x - &two)).div_i64(2);
    let pref = (&one - q).powc(&(-e));
    let qq_q = qpoch(q, qs)?.powc(&(x - &one));
    let num = qpoch(&qpow(q, x), &qq)?;
    let den = qpoch(q, &qq)?;
    Ok(&(&(&pref * &qq_q) * &num) / &den)
}

/// The q-number `[u]_q = (1 - q^u)/(1 - q)`.
pub fn q_number(u: &Complex, q: &Complex) -> Complex {
    let one = Complex::one(u.precision());
    &(&one - &qpow(q, u)) / &(&one - q)
}

static BERNOULLI: spin::Mutex<Vec<BigRational>> = spin::Mutex::new(Vec::new());

/// Bernoulli number `B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> BigRational {
    let mut cache = BERNOULLI.lock();
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= n {
        let m = cache.len();
        // B_m = -1/(m+1) sum_{k<m} C(m+1, k) B_k
        let mut s = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in cache.iter().enumerate() {
            s += bk * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let v = -s / BigRational::from_integer(BigInt::from(m + 1));
        cache.push(v);
    }
    cache[n].clone()
}

/// Classical Gamma by reflection, upward shift and the Stirling series.
pub fn classical_gamma(x: &Complex) -> Result<Complex> {
    let p = x.precision();
    let re = x.re_f64();
    let im = x.im_f64();
    if im == 0.0 && re <= 0.0 && re == re.round() {
        return Err(Error::PoleHit);
    }
    let one = Complex::one(p);
    if re < 0.5 {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        let pi = Complex::pi(p);
        let s = (&pi * x).sin();
        if s.is_zero() {
            return Err(Error::PoleHit);
        }
        let g = classical_gamma(&(&one - x))?;
        return Ok(&pi / &(&s * &g));
    }
    let digits = p.get() as f64;
    let r = (digits * 0.6 + 10.0).ceil();
    let shift = if re < r { (r - re).ceil() as i64 } else { 0 };
    let mut denom = one.clone();
    let mut z = x.clone();
    for _ in 0..shift {
        denom = &denom * &z;
        z = &z + &one;
    }
    let lg = ln_gamma_stirling(&z, digits);
    Ok(&lg.exp() / &denom)
}

fn ln_gamma_stirling(z: &Complex, digits: f64) -> Complex {
    let p = z.precision();
    let half = Complex::from_f64(0.5, p);
    let two_pi = Complex::pi(p).scale_i64(2);
    let mut s = &(&(z - &half) * &z.ln()) - z;
    s = &s + &(&two_pi.ln() * &half);
    let zinv = z.inv();
    let zinv2 = zinv.sqr();
    let mut zpow = zinv.clone();
    let zmag = z.abs_f64().log10();
    for k in 1..200usize {
        let b = bernoulli(2 * k);
        let c = rational_to_complex(&b, p).div_i64((2 * k * (2 * k - 1)) as i64);
        let term = &c * &zpow;
        s = &s + &term;
        if term.log10_abs() < -(digits + 8.0) || (k as f64) * 2.0 * zmag > digits * 3.0 {
            break;
        }
        zpow = &zpow * &zinv2;
    }
    s
}
