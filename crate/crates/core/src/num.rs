//! Arbitrary-precision complex numbers.
//!
//! [`Complex`] is a pair of `astro_float::BigFloat` values carrying its own
//! working precision. Binary operations run at the larger precision of the two
//! operands. Transcendental functions share one lazily built constants cache.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 50;

static CONSTS: spin::Mutex<Option<Consts>> = spin::Mutex::new(None);

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    let mut guard = CONSTS.lock();
    if guard.is_none() {
        *guard = Some(Consts::new().expect("astro-float constants cache"));
    }
    f(guard.as_mut().unwrap())
}

/// Working precision, in decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub fn digits(digits: u32) -> Self {
        Precision {
            digits: digits.max(8),
        }
    }

    pub fn get(&self) -> u32 {
        self.digits
    }

    /// Mantissa bits, with a guard word's worth of headroom.
    pub fn bits(&self) -> usize {
        (self.digits as f64 * core::f64::consts::LOG2_10).ceil() as usize + 32
    }

    /// log10 of the relative unit roundoff, e.g. `-50` at 50 digits.
    pub fn eps_exp10(&self) -> i32 {
        -(self.digits as i32)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::digits(DEFAULT_DIGITS)
    }
}

fn bits_to_digits(bits: usize) -> u32 {
    ((bits.saturating_sub(32)) as f64 / core::f64::consts::LOG2_10).round() as u32
}

/// Converts a finite `BigFloat` to the nearest `f64` (saturating).
pub(crate) fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _n, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *words.last().unwrap_or(&0) as f64 / 18446744073709551616.0;
    let v = if e > 1030 {
        f64::INFINITY
    } else if e < -1080 {
        0.0
    } else {
        top * libm_pow2(e)
    };
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

fn libm_pow2(e: i32) -> f64 {
    num_traits::Float::powi(2.0f64, e)
}

/// log10 |x| for a finite nonzero `BigFloat`, valid far outside the f64 range.
fn big_log10_abs(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _n, _s, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *words.last().unwrap_or(&0) as f64 / 18446744073709551616.0;
    num_traits::Float::log10(top) + e as f64 * core::f64::consts::LOG10_2
}

/// Complex number with `prec` bits of mantissa in each component.
#[derive(Debug)]
pub struct Complex {
    re: BigFloat,
    im: BigFloat,
    prec: usize,
}

impl Clone for Complex {
    fn clone(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: self.im.clone(),
            prec: self.prec,
        }
    }
}

impl Complex {
    pub fn zero(p: Precision) -> Self {
        let b = p.bits();
        Complex {
            re: BigFloat::new(b),
            im: BigFloat::new(b),
            prec: b,
        }
    }

    pub fn one(p: Precision) -> Self {
        Complex::from_f64(1.0, p)
    }

    pub fn i(p: Precision) -> Self {
        Complex::from_f64_parts(0.0, 1.0, p)
    }

    pub fn from_f64(re: f64, p: Precision) -> Self {
        Complex::from_f64_parts(re, 0.0, p)
    }

    pub fn from_f64_parts(re: f64, im: f64, p: Precision) -> Self {
        let b = p.bits();
        Complex {
            re: BigFloat::from_f64(re, b),
            im: BigFloat::from_f64(im, b),
            prec: b,
        }
    }

    pub fn from_i64(v: i64, p: Precision) -> Self {
        let b = p.bits();
        Complex {
            re: BigFloat::from_i64(v, b),
            im: BigFloat::new(b),
            prec: b,
        }
    }

    pub fn from_bigint(v: &BigInt, p: Precision) -> Self {
        let b = p.bits();
        let re = match v.to_i64() {
            Some(small) => BigFloat::from_i64(small, b),
            None => parse_big(&v.to_str_radix(10), b),
        };
        Complex {
            re,
            im: BigFloat::new(b),
            prec: b,
        }
    }

    pub fn from_rational(v: &BigRational, p: Precision) -> Self {
        let n = Complex::from_bigint(v.numer(), p);
        let d = Complex::from_bigint(v.denom(), p);
        &n / &d
    }

    /// Parses `"x"`, `"x+yi"`, `"x-yi"`, `"yi"` with decimal components.
    pub fn parse(s: &str, p: Precision) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let b = p.bits();
        if let Some(body) = s.strip_suffix('i') {
            // split at the last sign that is not part of an exponent
            let bytes = body.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                    split = Some(k);
                    break;
                }
            }
            let (re_s, im_s) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let im_s = match im_s {
                "" | "+" => "1",
                "-" => "-1",
                other => other,
            };
            let re = parse_real(re_s, b)?;
            let im = parse_real(im_s, b)?;
            Some(Complex { re, im, prec: b })
        } else {
            let re = parse_real(&s, b)?;
            Some(Complex {
                re,
                im: BigFloat::new(b),
                prec: b,
            })
        }
    }

    pub fn precision(&self) -> Precision {
        Precision::digits(bits_to_digits(self.prec))
    }

    pub fn with_precision(&self, p: Precision) -> Self {
        let b = p.bits();
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        let _ = re.set_precision(b, RM);
        let _ = im.set_precision(b, RM);
        Complex { re, im, prec: b }
    }

    pub fn re_f64(&self) -> f64 {
        big_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        big_to_f64(&self.im)
    }

    pub fn real(&self) -> Complex {
        Complex {
            re: self.re.clone(),
            im: BigFloat::new(self.prec),
            prec: self.prec,
        }
    }

    pub fn imag(&self) -> Complex {
        Complex {
            re: self.im.clone(),
            im: BigFloat::new(self.prec),
            prec: self.prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    pub fn conj(&self) -> Complex {
        Complex {
            re: self.re.clone(),
            im: self.im.clone().neg(),
            prec: self.prec,
        }
    }

    fn norm_sqr_big(&self) -> BigFloat {
        let p = self.prec;
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    /// |z| as a real complex number.
    pub fn abs(&self) -> Complex {
        let p = self.prec;
        let r = abs_big(&self.re, &self.im, p);
        Complex {
            re: r,
            im: BigFloat::new(p),
            prec: p,
        }
    }

    /// |z| rounded to f64 (saturating; 0 for tiny values).
    pub fn abs_f64(&self) -> f64 {
        big_to_f64(&abs_big(&self.re, &self.im, self.prec))
    }

    /// log10 |z|, finite far outside the f64 exponent range; `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        big_log10_abs(&abs_big(&self.re, &self.im, self.prec))
    }

    /// Whether |z| < 10^exp10.
    pub fn below(&self, exp10: i32) -> bool {
        self.is_zero() || self.log10_abs() < exp10 as f64
    }

    pub fn cmp_abs(&self, other: &Complex) -> Ordering {
        let a = self.norm_sqr_big();
        let b = other.norm_sqr_big();
        match a.cmp(&b) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    pub fn inv(&self) -> Complex {
        let p = self.prec;
        let d = self.norm_sqr_big();
        Complex {
            re: self.re.div(&d, p, RM),
            im: self.im.clone().neg().div(&d, p, RM),
            prec: p,
        }
    }

    pub fn scale_i64(&self, k: i64) -> Complex {
        let p = self.prec;
        let f = BigFloat::from_i64(k, p);
        Complex {
            re: self.re.mul(&f, p, RM),
            im: self.im.mul(&f, p, RM),
            prec: p,
        }
    }

    pub fn div_i64(&self, k: i64) -> Complex {
        let p = self.prec;
        let f = BigFloat::from_i64(k, p);
        Complex {
            re: self.re.div(&f, p, RM),
            im: self.im.div(&f, p, RM),
            prec: p,
        }
    }

    pub fn mul_i(&self) -> Complex {
        Complex {
            re: self.im.clone().neg(),
            im: self.re.clone(),
            prec: self.prec,
        }
    }

    pub fn sqr(&self) -> Complex {
        self * self
    }

    /// Integer power by repeated squaring; negative powers invert.
    pub fn powi(&self, n: i64) -> Complex {
        if n < 0 {
            return self.powi(-n).inv();
        }
        let mut result = Complex::one(self.precision()).with_bits(self.prec);
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    fn with_bits(mut self, bits: usize) -> Self {
        let _ = self.re.set_precision(bits, RM);
        let _ = self.im.set_precision(bits, RM);
        self.prec = bits;
        self
    }

    pub fn exp(&self) -> Complex {
        let p = self.prec;
        with_consts(|cc| {
            let m = self.re.exp(p, RM, cc);
            let c = self.im.cos(p, RM, cc);
            let s = self.im.sin(p, RM, cc);
            Complex {
                re: m.mul(&c, p, RM),
                im: m.mul(&s, p, RM),
                prec: p,
            }
        })
    }

    /// Principal logarithm, imaginary part in (-pi, pi].
    pub fn ln(&self) -> Complex {
        let p = self.prec;
        with_consts(|cc| {
            let r = abs_big(&self.re, &self.im, p);
            let re = r.ln(p, RM, cc);
            let im = atan2_big(&self.im, &self.re, p, cc);
            Complex { re, im, prec: p }
        })
    }

    /// Principal power `self^w = exp(w ln self)`; `0^w = 0`.
    pub fn powc(&self, w: &Complex) -> Complex {
        if self.is_zero() {
            return Complex::zero(self.precision()).with_bits(self.prec);
        }
        (&self.ln() * w).exp()
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Complex {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.prec;
        let r = abs_big(&self.re, &self.im, p);
        let two = BigFloat::from_i64(2, p);
        // sqrt((r + re)/2) + i sign(im) sqrt((r - re)/2)
        let a = r.add(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
        let b = r.sub(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
        let b = if self.im.is_negative() { b.neg() } else { b };
        Complex {
            re: a,
            im: b,
            prec: p,
        }
    }

    pub fn sin(&self) -> Complex {
        // sin z = (e^{iz} - e^{-iz}) / 2i
        let iz = self.mul_i();
        let e1 = iz.exp();
        let e2 = e1.inv();
        (&e1 - &e2).mul_i().neg().div_i64(2)
    }

    pub fn cos(&self) -> Complex {
        let iz = self.mul_i();
        let e1 = iz.exp();
        let e2 = e1.inv();
        (&e1 + &e2).div_i64(2)
    }

    pub fn pi(p: Precision) -> Complex {
        let b = p.bits();
        with_consts(|cc| Complex {
            re: cc.pi(b, RM),
            im: BigFloat::new(b),
            prec: b,
        })
    }

    /// `e^{i pi x}`, the branch of `(-1)^x` used throughout.
    pub fn minus_one_pow(x: &Complex) -> Complex {
        (&Complex::pi(x.precision()).mul_i() * x).exp()
    }

    /// Scientific decimal string with `digits` significant digits,
    /// e.g. `"1.2345e-31"` or `"1.5e0-2.25e-3i"`.
    pub fn to_decimal(&self, digits: usize) -> String {
        let re = real_to_decimal(&self.re, digits);
        if self.im.is_zero() {
            return re;
        }
        let im = real_to_decimal(&self.im, digits);
        if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}

fn abs_big(re: &BigFloat, im: &BigFloat, p: usize) -> BigFloat {
    if im.is_zero() {
        return re.abs();
    }
    if re.is_zero() {
        return im.abs();
    }
    re.mul(re, p, RM).add(&im.mul(im, p, RM), p, RM).sqrt(p, RM)
}

fn atan2_big(y: &BigFloat, x: &BigFloat, p: usize, cc: &mut Consts) -> BigFloat {
    let pi = cc.pi(p, RM);
    if x.is_zero() {
        if y.is_zero() {
            return BigFloat::new(p);
        }
        let half = pi.div(&BigFloat::from_i64(2, p), p, RM);
        return if y.is_negative() { half.neg() } else { half };
    }
    let base = y.div(x, p, RM).atan(p, RM, cc);
    if x.is_positive() {
        base
    } else if y.is_negative() {
        base.sub(&pi, p, RM)
    } else {
        base.add(&pi, p, RM)
    }
}

fn parse_big(s: &str, bits: usize) -> BigFloat {
    with_consts(|cc| BigFloat::parse(s, Radix::Dec, bits, RM, cc))
}

fn parse_real(s: &str, bits: usize) -> Option<BigFloat> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if !is_decimal(s) {
        return None;
    }
    let v = parse_big(s, bits);
    if v.is_nan() {
        None
    } else {
        Some(v)
    }
}

/// `[-]digits[.digits][e[+-]digits]` with at least one mantissa digit.
fn is_decimal(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], Some(&s[k + 1..])),
        None => (s, None),
    };
    let mut parts = mant.splitn(2, '.');
    let int = parts.next().unwrap_or("");
    let frac = parts.next().unwrap_or("");
    let digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    let mant_ok = digits(int) && digits(frac) && !(int.is_empty() && frac.is_empty());
    let exp_ok = exp.is_none_or(|e| {
        let e = e.strip_prefix(['+', '-']).unwrap_or(e);
        !e.is_empty() && digits(e)
    });
    mant_ok && exp_ok
}

fn real_to_decimal(x: &BigFloat, digits: usize) -> String {
    if x.is_zero() {
        return String::from("0");
    }
    let raw =
        with_consts(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| String::from("NaN"));
    // astro-float prints "d.ddddde-n"
    let (mant, exp) = match raw.find(['e', 'E']) {
        Some(k) => (&raw[..k], &raw[k + 1..]),
        None => (raw.as_str(), "0"),
    };
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mant),
    };
    let mut exp: i64 = exp.trim_start_matches('+').parse().unwrap_or(0);
    // mantissa digits with the point after the first one; round half up
    let all: Vec<u8> = mant
        .bytes()
        .filter(u8::is_ascii_digit)
        .map(|b| b - b'0')
        .collect();
    let lead = all.iter().position(|&d| d != 0).unwrap_or(0);
    exp -= lead as i64;
    let all = &all[lead..];
    let digits = digits.max(1);
    let mut kept: Vec<u8> = all.iter().copied().take(digits).collect();
    if all.get(digits).is_some_and(|&d| d >= 5) {
        let mut i = kept.len();
        loop {
            if i == 0 {
                kept.insert(0, 1);
                kept.pop();
                exp += 1;
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    while kept.len() > 1 && kept.last() == Some(&0) {
        kept.pop();
    }
    let mut out = String::from(sign);
    out.push((b'0' + kept[0]) as char);
    if kept.len() > 1 {
        out.push('.');
        out.extend(kept[1..].iter().map(|&d| (b'0' + d) as char));
    }
    format!("{out}e{exp}")
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.re.cmp(&other.re) == Some(0) && self.im.cmp(&other.im) == Some(0)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(bits_to_digits(self.prec) as usize);
        f.write_str(&self.to_decimal(digits))
    }
}

impl From<&Complex> for f64 {
    fn from(c: &Complex) -> f64 {
        c.re_f64()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Complex> for &'a Complex {
            type Output = Complex;
            fn $method(self, rhs: &'a Complex) -> Complex {
                let f: fn(&Complex, &Complex) -> Complex = $body;
                f(self, rhs)
            }
        }
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &'a Complex) -> Complex {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Complex> for &'a Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    let p = a.prec.max(b.prec);
    Complex {
        re: a.re.add(&b.re, p, RM),
        im: a.im.add(&b.im, p, RM),
        prec: p,
    }
});

forward_binop!(Sub, sub, |a, b| {
    let p = a.prec.max(b.prec);
    Complex {
        re: a.re.sub(&b.re, p, RM),
        im: a.im.sub(&b.im, p, RM),
        prec: p,
    }
});

forward_binop!(Mul, mul, |a, b| {
    let p = a.prec.max(b.prec);
    if a.im.is_zero() && b.im.is_zero() {
        return Complex {
            re: a.re.mul(&b.re, p, RM),
            im: BigFloat::new(p),
            prec: p,
        };
    }
    let re = a.re.mul(&b.re, p, RM).sub(&a.im.mul(&b.im, p, RM), p, RM);
    let im = a.re.mul(&b.im, p, RM).add(&a.im.mul(&b.re, p, RM), p, RM);
    Complex { re, im, prec: p }
});

forward_binop!(Div, div, |a, b| {
    let p = a.prec.max(b.prec);
    if b.im.is_zero() {
        return Complex {
            re: a.re.div(&b.re, p, RM),
            im: a.im.div(&b.re, p, RM),
            prec: p,
        };
    }
    let d = b.norm_sqr_big();
    let re =
        a.re.mul(&b.re, p, RM)
            .add(&a.im.mul(&b.im, p, RM), p, RM)
            .div(&d, p, RM);
    let im =
        a.im.mul(&b.re, p, RM)
            .sub(&a.re.mul(&b.im, p, RM), p, RM)
            .div(&d, p, RM);
    Complex { re, im, prec: p }
});

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: self.re.clone().neg(),
            im: self.im.clone().neg(),
            prec: self.prec,
        }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: self.re.clone().neg(),
            im: self.im.clone().neg(),
            prec: self.prec,
        }
    }
}

/// Rational number as a complex value; exact rationals feed numeric checks.
pub fn rational_to_complex(r: &BigRational, p: Precision) -> Complex {
    if r.is_zero() {
        return Complex::zero(p);
    }
    let neg = r.is_negative();
    let c = Complex::from_rational(&r.abs(), p);
    if neg {
        -c
    } else {
        c
    }
}
