//! The `q -> 1` limits.
//!
//! With `q = e^h`, `Z = h^4 z` and `u = q^(2 sigma)`, the q-deformed objects
//! tend to the Painleve III(D8) ones: [`gil_tau`] is the continuous tau
//! function, and the three `limit_*` checks measure how fast the deformed
//! equations and tau functions approach theirs as `h -> 0`.
//!
//! Tau functions here are finite sums of powers `c z^a` with known complex
//! exponents ([`PowerSum`]), so `z`-derivatives act termwise and no finite
//! differences are ever taken. Overall constants are never fixed: every
//! coefficient is normalized by the `n = 0` Barnes factor, and limit
//! comparisons use ratios at two values of `z`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::block::{block_4d, conformal_block, Field, NumericBlock};
use crate::error::{Error, Result};
use crate::num::{Complex, Precision};
use crate::qspecial::{classical_gamma, q_gamma};
use crate::scalar::Scalar;
use crate::series::GradedSeries;
use crate::tau::LogVar;

/// Parameters of the continuous tau function `tau(sigma, s | z)`.
#[derive(Clone, Debug)]
pub struct GilParams {
    pub sigma: Complex,
    pub s: Complex,
    /// Sum over `|n| <= n_max`.
    pub n_max: u32,
    /// Blocks through `z^k_max`.
    pub k_max: u32,
}

impl GilParams {
    /// Defaults: `n_max = 3`, `k_max = 8`.
    pub fn new(sigma: &Complex, s: &Complex) -> Result<Self> {
        let two = sigma.scale_i64(2);
        let near = Complex::from_f64(two.re_f64().round(), sigma.precision());
        if (&two - &near).below(-(sigma.precision().get() as i32) + 8) {
            return Err(Error::ResonantSigma);
        }
        Ok(GilParams {
            sigma: sigma.clone(),
            s: s.clone(),
            n_max: 3,
            k_max: 8,
        })
    }

    pub fn with_cutoffs(mut self, n_max: u32, k_max: u32) -> Self {
        self.n_max = n_max.max(1);
        self.k_max = k_max.max(1);
        self
    }

    pub fn precision(&self) -> Precision {
        self.sigma.precision()
    }
}

/// `C((x + m)/2) / C(x/2)` for `C(sigma) = 1/(G(1 - 2 sigma) G(1 + 2 sigma))`,
/// reduced with `G(y + 1) = Gamma(y) G(y)` to
/// `prod_{j=1..m} Gamma(1 - x - j) / prod_{j=0..m-1} Gamma(1 + x + j)` for
/// `m > 0`. `C` is even, so `m < 0` is the same with `x -> -x`.
///
/// `gamma` selects the classical Gamma or a q-Gamma.
pub fn c_ratio(
    x: &Complex,
    m: i64,
    gamma: &dyn Fn(&Complex) -> Result<Complex>,
) -> Result<Complex> {
    if m < 0 {
        return c_ratio(&-x, -m, gamma);
    }
    let p = x.precision();
    let one = Complex::one(p);
    let mut r = one.clone();
    for j in 0..m {
        let up = &(&one - x) - &Complex::from_i64(j + 1, p);
        let down = &(&one + x) + &Complex::from_i64(j, p);
        r = &(&r * &gamma(&up)?) / &gamma(&down)?;
    }
    Ok(r)
}

/// One term `coeff z^exponent`, tagged with the shift `m = j + 2n` of
/// `sigma` (in half units) and the block degree `k`.
#[derive(Clone, Debug)]
pub struct Term {
    pub m: i64,
    pub k: u32,
    pub exponent: Complex,
    pub coeff: Complex,
}

/// A finite sum of terms `c z^a`.
#[derive(Clone, Debug, Default)]
pub struct PowerSum {
    pub terms: Vec<Term>,
}

impl PowerSum {
    /// `sum c z^a` on the branch of `z` fixed by its logarithm.
    pub fn eval(&self, z: &LogVar) -> Complex {
        self.theta(z, 0)
    }

    /// `theta^d` applied termwise, `theta = z d/dz`.
    pub fn theta(&self, z: &LogVar, d: u32) -> Complex {
        let mut acc = Complex::zero(z.precision());
        for t in &self.terms {
            let mut c = &t.coeff * &z.pow_c(&t.exponent);
            for _ in 0..d {
                c = &c * &t.exponent;
            }
            acc = &acc + &c;
        }
        acc
    }
}

/// `(sigma + m/2)` for the half-step shift `m`.
fn shifted_sigma(sigma: &Complex, m: i64) -> Complex {
    sigma + &Complex::from_i64(m, sigma.precision()).div_i64(2)
}

/// Terms of `tau(sigma + j/2, s | z) / C(sigma)`.
pub fn gil_terms(params: &GilParams, j: i64) -> Result<PowerSum> {
    let x = params.sigma.scale_i64(2);
    let mut out = PowerSum::default();
    let n_max = if params.s.is_zero() {
        0
    } else {
        params.n_max as i64
    };
    for n in -n_max..=n_max {
        let m = j + 2 * n;
        let sn = shifted_sigma(&params.sigma, m);
        let block = block_4d(&sn, params.k_max)?;
        let w = &c_ratio(&x, m, &classical_gamma)? * &params.s.powi(n);
        push_block(&mut out, m, &sn.sqr(), &w, &block, params.k_max, None);
    }
    Ok(out)
}

/// Appends `w z^delta sum_k f_k z^k`, optionally rescaling `f_k` by `c^k`.
fn push_block(
    out: &mut PowerSum,
    m: i64,
    delta: &Complex,
    w: &Complex,
    block: &GradedSeries<Complex>,
    k_max: u32,
    c: Option<&Complex>,
) {
    let p = delta.precision();
    for k in 0..=k_max {
        if let Some(f) = block.coeff(4 * k as i32) {
            let mut coeff = w * f;
            if let Some(c) = c {
                coeff = &coeff * &c.powi(k as i64);
            }
            out.terms.push(Term {
                m,
                k,
                exponent: delta + &Complex::from_i64(k as i64, p),
                coeff,
            });
        }
    }
}

/// `tau(sigma, s | z)` divided by `C(sigma)`.
pub fn gil_tau(params: &GilParams, z: &LogVar) -> Result<Complex> {
    Ok(gil_terms(params, 0)?.eval(z))
}

/// Which second Hirota operator to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hirota {
    /// `D^2(f, g) = theta^2 f g - 2 theta f theta g + f theta^2 g`, so
    /// `D^2(z^a, z^b) = (a - b)^2 z^(a+b)`.
    Standard,
    /// `z^2 (f''g - f'g' + fg'') + z (f'g + fg')`, which gives
    /// `(a^2 - ab + b^2) z^(a+b)`.
    Printed,
}

impl Hirota {
    /// The factor multiplying `z^(a+b)` in `D^2(z^a, z^b)`.
    pub fn factor<S: Scalar>(&self, a: &S, b: &S) -> S {
        match self {
            Hirota::Standard => {
                let d = a.minus(b);
                d.times(&d)
            }
            Hirota::Printed => a.times(a).minus(&a.times(b)).plus(&b.times(b)),
        }
    }
}

/// Termwise check of `1/2 D^2(tau, tau) + z^(1/2) tau(sigma + 1/2) tau(sigma - 1/2) = 0`.
///
/// Products of terms are grouped by their exact exponent
/// `2 sigma^2 + sigma N + E`, keyed by the integers `(N, 4E)`, and only
/// exponents with `E <= min(k_max, n_max^2 + n_max)` are compared, since
/// those are complete under both cutoffs. Returns the largest
/// `log10(|sum| / max |contribution|)` over the compared exponents.
pub fn toda_hirota_residual(params: &GilParams, hirota: Hirota) -> Result<f64> {
    let nm = params.n_max as i64;
    let e_max = 4 * (params.k_max as i64).min(nm * nm + nm);
    let tau = gil_terms(params, 0)?;
    let up = gil_terms(params, 1)?;
    let down = gil_terms(params, -1)?;
    let mut acc: BTreeMap<(i64, i64), (Complex, f64)> = BTreeMap::new();
    let half = Complex::one(params.precision()).div_i64(2);
    let mut add = |key: (i64, i64), v: Complex| {
        let l = v.log10_abs();
        let e = acc
            .entry(key)
            .or_insert((Complex::zero(v.precision()), f64::NEG_INFINITY));
        e.0 = &e.0 + &v;
        e.1 = e.1.max(l);
    };
    let key = |a: &Term, b: &Term, extra: i64| {
        (
            a.m + b.m,
            a.m * a.m + b.m * b.m + 4 * (a.k + b.k) as i64 + extra,
        )
    };
    for a in &tau.terms {
        for b in &tau.terms {
            let kk = key(a, b, 0);
            if kk.1 <= e_max {
                let f = hirota.factor(&a.exponent, &b.exponent);
                add(kk, &(&(&f * &half) * &a.coeff) * &b.coeff);
            }
        }
    }
    for a in &up.terms {
        for b in &down.terms {
            let kk = key(a, b, 2);
            if kk.1 <= e_max {
                add(kk, &a.coeff * &b.coeff);
            }
        }
    }
    Ok(acc
        .values()
        .map(|(s, top)| s.log10_abs() - top)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// The two sides of the continuous bilinear relation for `c = 1` blocks:
/// `A = sum_n W_n D^2(F_+, F_-)` and `B = z^(1/2) sum_n W_n F_+ F_-` over
/// `2n` in `Z`, where `F_(+-) = z^((sigma +- n)^2) F((sigma +- n)^2 | z)` and
/// `1/W_n = prod_{k=1}^{2|n|-1} (k^2 - 4 sigma^2)^(2(2|n| - k)) (4 sigma^2)^(2|n|)`.
///
/// The common factor `z^(2 sigma^2)` is removed; both are series in
/// `zeta = z^(1/4)` through `z^order`. `sigma` may be numeric, a rational
/// constant or the symbol itself.
pub fn bilincont_sides<S: Field>(
    sigma: &S,
    order: u32,
    hirota: Hirota,
) -> Result<(GradedSeries<S>, GradedSeries<S>)> {
    let top = 4 * order as i32;
    let one = sigma.one_like();
    let four_s2 = sigma.times(sigma).times(&sigma.int_like(4));
    let mut a_side = GradedSeries::zero(top);
    let mut b_side = GradedSeries::zero(top);
    // 2n = m with 2 m^2 <= top
    let mut m_max = 0i64;
    while 2 * (m_max + 1) * (m_max + 1) <= top as i64 {
        m_max += 1;
    }
    for m in -m_max..=m_max {
        let am = m.abs();
        let mut w_inv = one.clone();
        for k in 1..am {
            let f = sigma.int_like(k * k).minus(&four_s2);
            for _ in 0..2 * (am - k) {
                w_inv = w_inv.times(&f);
            }
        }
        for _ in 0..am {
            w_inv = w_inv.times(&four_s2);
        }
        let w = w_inv.inverse().ok_or(Error::ResonantSigma)?;
        let half_m = half_of(&sigma.int_like(m))?;
        let sp = sigma.plus(&half_m);
        let sm = sigma.minus(&half_m);
        let fp = block_4d(&sp, order)?;
        let fm = block_4d(&sm, order)?;
        let dp = sp.times(&sp);
        let dm = sm.times(&sm);
        let base = 2 * (m * m) as i32;
        for (i, a) in fp.terms() {
            for (j, b) in fm.terms() {
                let e = base + i + j;
                if e > top {
                    continue;
                }
                let ea = dp.plus(&sigma.int_like((i / 4) as i64));
                let eb = dm.plus(&sigma.int_like((j / 4) as i64));
                let ab = w.times(a).times(b);
                a_side.add_term(e, hirota.factor(&ea, &eb).times(&ab));
                b_side.add_term(e + 2, ab);
            }
        }
    }
    Ok((a_side, b_side))
}

/// `A - c B` for the sides of [`bilincont_sides`].
pub fn bilincont_residual<S: Field>(
    sigma: &S,
    order: u32,
    hirota: Hirota,
    c: i64,
) -> Result<GradedSeries<S>> {
    let (a, b) = bilincont_sides(sigma, order, hirota)?;
    Ok(a.sub(&b.scale(&sigma.int_like(c))))
}

fn half_of<S: Field>(x: &S) -> Result<S> {
    let h = x.int_like(2).inverse().ok_or(Error::ZeroDenominator)?;
    Ok(x.times(&h))
}

/// Terms of the deformed `T_c(u q^j, s'; q | Z) / const` at `q = e^h`,
/// `Z = h^4 z`, `u = q^(2 sigma)`, written in `z`:
/// `sum_n (C_q(sigma_n)/C_q(sigma)) ((-1)^(4 sigma) s')^n (Z/(1-q)^4)^(sigma_n^2) F(u q^(2n); q^-1, q | Z)`
/// with `sigma_n = sigma + j/2 + n` and `C_q` the q-Barnes analogue of `C`.
pub fn deformed_terms(
    params: &GilParams,
    hbar: f64,
    j: i64,
    s_prime: &Complex,
) -> Result<PowerSum> {
    if hbar >= 0.0 || !hbar.is_finite() {
        return Err(Error::InvalidInput(
            "the deformed side is taken along h < 0".into(),
        ));
    }
    let p = params.precision();
    let h = Complex::from_f64(hbar, p);
    let q = h.exp();
    let one = Complex::one(p);
    let x = params.sigma.scale_i64(2);
    let twist = &Complex::minus_one_pow(&params.sigma.scale_i64(4)) * s_prime;
    // h^4 / (1 - q)^4, real and positive for real h
    let ratio = (&h / &(&one - &q)).powi(4);
    let lr = LogVar::new(&ratio)?;
    let h4 = h.powi(4);
    let gamma = |y: &Complex| q_gamma(y, &q);
    let n_max = if s_prime.is_zero() {
        0
    } else {
        params.n_max as i64
    };
    let mut out = PowerSum::default();
    for n in -n_max..=n_max {
        let m = j + 2 * n;
        let sn = shifted_sigma(&params.sigma, m);
        let u = (&h * &sn.scale_i64(2)).exp();
        let block = conformal_block(&NumericBlock::standard(&u, &q)?, params.k_max)?;
        let delta = sn.sqr();
        let w = &(&c_ratio(&x, m, &gamma)? * &twist.powi(n)) * &lr.pow_c(&delta);
        push_block(&mut out, m, &delta, &w, &block, params.k_max, Some(&h4));
    }
    Ok(out)
}

/// A least-squares slope of `log10 |d|` against `log10 |h|`.
pub fn fit_order(hbar: &[f64], log10_d: &[f64]) -> f64 {
    let n = hbar.len() as f64;
    let xs: Vec<f64> = hbar.iter().map(|h| libm_log10(h.abs())).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = log10_d.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in xs.iter().zip(log10_d) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

fn libm_log10(x: f64) -> f64 {
    num_traits::Float::log10(x)
}

/// The outcome of one limit check.
#[derive(Clone, Debug)]
pub struct LimitSeries {
    pub hbar: Vec<f64>,
    /// `log10` of the discrepancy at each `h`.
    pub log10_discrepancy: Vec<f64>,
    pub fitted_order: f64,
    pub expected_order: f64,
    /// log10 level treated as rounding noise.
    pub floor: f64,
}

impl LimitSeries {
    fn new(hbar: &[f64], d: Vec<f64>, expected: f64, p: Precision) -> Self {
        let fitted = fit_order(hbar, &d);
        let floor = -(p.get() as f64) + 15.0;
        LimitSeries {
            hbar: hbar.to_vec(),
            log10_discrepancy: d,
            fitted_order: fitted,
            expected_order: expected,
            floor,
        }
    }

    /// Fitted order at least `0.8` of the expected one, or every discrepancy
    /// already at the rounding floor (an exact solution has no rate to fit).
    pub fn passed(&self) -> bool {
        self.fitted_order >= 0.8 * self.expected_order || self.at_floor()
    }

    pub fn at_floor(&self) -> bool {
        self.log10_discrepancy.iter().all(|d| *d < self.floor)
    }
}

fn check_hbar(hbar: &[f64]) -> Result<()> {
    if hbar.len() < 2 || hbar.iter().any(|h| *h == 0.0 || !h.is_finite()) {
        return Err(Error::InvalidInput(
            "need at least two nonzero values of h".into(),
        ));
    }
    Ok(())
}

fn rel(a: &Complex, b: &Complex) -> f64 {
    (a - b).log10_abs() - b.log10_abs()
}

/// `T_c(z1)/T_c(z2)` against `tau(z1)/tau(z2)` for each `h`, with
/// `T_c` taken at the twisted parameter `s' = (-1)^(-4 sigma) s` when
/// `twisted`. Expected order 1.
pub fn limit_tau(
    hbar: &[f64],
    params: &GilParams,
    z1: &LogVar,
    z2: &LogVar,
    twisted: bool,
) -> Result<LimitSeries> {
    check_hbar(hbar)?;
    let gil = gil_terms(params, 0)?;
    let target = &gil.eval(z1) / &gil.eval(z2);
    let s_prime = if twisted {
        &Complex::minus_one_pow(&-params.sigma.scale_i64(4)) * &params.s
    } else {
        params.s.clone()
    };
    let mut d = Vec::new();
    for &h in hbar {
        let t = deformed_terms(params, h, 0, &s_prime)?;
        d.push(rel(&(&t.eval(z1) / &t.eval(z2)), &target));
    }
    Ok(LimitSeries::new(hbar, d, 1.0, params.precision()))
}

/// The deformed Toda residual
/// `R = T(qZ) T(Z/q) - T(Z)^2 + Z^(1/2) T(uq) T(u/q)` with `T_c(u q^j | Z)`
/// replaced by `tau(sigma + j/2 | z)`, compared with `h^2 H`, where
/// `H = 1/2 D^2(tau, tau) + z^(1/2) tau(sigma + 1/2) tau(sigma - 1/2)`.
/// The discrepancy is `|R/h^2 - H| / |tau|^2`; expected order 2.
pub fn limit_toda(hbar: &[f64], params: &GilParams, z: &LogVar) -> Result<LimitSeries> {
    check_hbar(hbar)?;
    let p = params.precision();
    let tau = gil_terms(params, 0)?;
    let up = gil_terms(params, 1)?.eval(z);
    let down = gil_terms(params, -1)?.eval(z);
    let t0 = tau.eval(z);
    let t1 = tau.theta(z, 1);
    let t2 = tau.theta(z, 2);
    let rs = z.frac_pow(1, 2);
    let cross = &(&rs * &up) * &down;
    let hirota = &(&(&t0 * &t2) - &t1.sqr()) + &cross;
    let scale = t0.sqr();
    let mut d = Vec::new();
    for &h in hbar {
        let hc = Complex::from_f64(h, p);
        let zp = LogVar::from_ln(z.ln() + &hc);
        let zm = LogVar::from_ln(z.ln() - &hc);
        let r = &(&(&tau.eval(&zp) * &tau.eval(&zm)) - &t0.sqr()) + &(&hc.sqr() * &cross);
        let diff = &(&r / &hc.sqr()) - &hirota;
        d.push(diff.log10_abs() - scale.log10_abs());
    }
    Ok(LimitSeries::new(hbar, d, 2.0, p))
}

/// `w` with its first two `theta`-derivatives at one point.
#[derive(Clone, Debug)]
pub struct Jet {
    pub w: Complex,
    pub w1: Complex,
    pub w2: Complex,
}

/// A function of `z` sampled for the q-Painleve limit.
pub trait Sample {
    fn jet(&self, z: &LogVar) -> Result<Jet>;
}

/// `w = z^(1/2) tau^2 / (tau(sigma + 1/2) tau(sigma - 1/2))` from the GIL series.
pub struct GilSolution {
    tau: PowerSum,
    up: PowerSum,
    down: PowerSum,
}

impl GilSolution {
    pub fn new(params: &GilParams) -> Result<Self> {
        Ok(GilSolution {
            tau: gil_terms(params, 0)?,
            up: gil_terms(params, 1)?,
            down: gil_terms(params, -1)?,
        })
    }
}

impl Sample for GilSolution {
    fn jet(&self, z: &LogVar) -> Result<Jet> {
        // theta log f and theta^2 log f for each factor
        let logs = |f: &PowerSum| -> Result<(Complex, Complex, Complex)> {
            let f0 = f.eval(z);
            if f0.is_zero() {
                return Err(Error::ZeroTau);
            }
            let l1 = &f.theta(z, 1) / &f0;
            let l2 = &(&f.theta(z, 2) / &f0) - &l1.sqr();
            Ok((f0, l1, l2))
        };
        let (a, a1, a2) = logs(&self.tau)?;
        let (b, b1, b2) = logs(&self.up)?;
        let (c, c1, c2) = logs(&self.down)?;
        let p = z.precision();
        let w = &(&z.frac_pow(1, 2) * &a.sqr()) / &(&b * &c);
        let l1 = &(&(&Complex::one(p).div_i64(2) + &a1.scale_i64(2)) - &b1) - &c1;
        let l2 = &(&a2.scale_i64(2) - &b2) - &c2;
        let w1 = &w * &l1;
        let w2 = &w * &(&l2 + &l1.sqr());
        Ok(Jet { w, w1, w2 })
    }
}

/// `w = c z^a`.
pub struct PowerSample {
    pub c: Complex,
    pub a: Complex,
}

impl Sample for PowerSample {
    fn jet(&self, z: &LogVar) -> Result<Jet> {
        let w = &self.c * &z.pow_c(&self.a);
        let w1 = &w * &self.a;
        let w2 = &w1 * &self.a;
        Ok(Jet { w, w1, w2 })
    }
}

/// `E[w] = w theta^2 w - (theta w)^2 - 2 w^3 + 2 z w`, which vanishes exactly
/// on solutions of Painleve III(D8).
pub fn painleve_residual(j: &Jet, z: &LogVar) -> Complex {
    let w3 = &j.w.sqr() * &j.w;
    let zw = &z.value() * &j.w;
    &(&(&(&j.w * &j.w2) - &j.w1.sqr()) - &w3.scale_i64(2)) + &zw.scale_i64(2)
}

/// The q-Painleve residual `G(qZ) G(Z/q) (G - 1)^2 - (G - Z)^2` for
/// `G(Z) = h^2 w(Z/h^4)`, divided by `h^6`, against `E[w]`. The discrepancy
/// is `|residual/h^6 - E[w]|` relative to the largest term of `E[w]`;
/// expected order 2.
pub fn limit_qpainleve(hbar: &[f64], sample: &dyn Sample, z: &LogVar) -> Result<LimitSeries> {
    check_hbar(hbar)?;
    let p = z.precision();
    let j = sample.jet(z)?;
    let e = painleve_residual(&j, z);
    let zw = &z.value() * &j.w;
    let scale = [
        (&j.w * &j.w2).log10_abs(),
        j.w1.sqr().log10_abs(),
        (&j.w.sqr() * &j.w).log10_abs(),
        zw.log10_abs(),
    ]
    .into_iter()
    .fold(f64::NEG_INFINITY, f64::max);
    let one = Complex::one(p);
    let mut d = Vec::new();
    for &h in hbar {
        let hc = Complex::from_f64(h, p);
        let h2 = hc.sqr();
        let g = |zz: &LogVar| -> Result<Complex> { Ok(&h2 * &sample.jet(zz)?.w) };
        let g0 = &h2 * &j.w;
        let gp = g(&LogVar::from_ln(z.ln() + &hc))?;
        let gm = g(&LogVar::from_ln(z.ln() - &hc))?;
        let big_z = &h2.sqr() * &z.value();
        let r = &(&(&gp * &gm) * &(&g0 - &one).sqr()) - &(&g0 - &big_z).sqr();
        let scaled = &r / &h2.powi(3);
        d.push((&scaled - &e).log10_abs() - scale);
    }
    Ok(LimitSeries::new(hbar, d, 2.0, p))
}

/// `tau(1/4, -+1 | z1) / tau(1/4, -+1 | z2)` from the closed form
/// `z^(1/16) e^(+-4 z^(1/2))`; `sign = +1` is `s = -1`.
pub fn algebraic_tau_ratio(sign: i64, z1: &LogVar, z2: &LogVar) -> Complex {
    let pw = LogVar::from_ln(z1.ln() - z2.ln()).frac_pow(1, 16);
    let e = (&z1.frac_pow(1, 2) - &z2.frac_pow(1, 2)).scale_i64(4 * sign);
    &pw * &e.exp()
}

/// `T_c(q^(1/2), s'; q | Z)` at `q = e^h` with the twisted `s' = (-1)^(-1) s`,
/// `s = -sign`, as a ratio at `z1, z2`, against [`algebraic_tau_ratio`].
/// Returns the log10 relative discrepancy.
pub fn stattau_discrepancy(
    hbar: f64,
    sign: i64,
    z1: &LogVar,
    z2: &LogVar,
    n_max: u32,
    k_max: u32,
) -> Result<f64> {
    let p = z1.precision();
    let quarter = Complex::one(p).div_i64(4);
    let s = Complex::from_i64(-sign, p);
    let params = GilParams::new(&quarter, &s)?.with_cutoffs(n_max, k_max);
    let s_prime = &Complex::minus_one_pow(&Complex::from_i64(-1, p)) * &s;
    let t = deformed_terms(&params, hbar, 0, &s_prime)?;
    Ok(rel(
        &(&t.eval(z1) / &t.eval(z2)),
        &algebraic_tau_ratio(sign, z1, z2),
    ))
}

/// Richardson extrapolation to `h = 0` of values `f(h), f(h/2), f(h/4), ...`
/// with an expansion in integer powers of `h`. Returns the extrapolated value
/// and the difference between the last two estimates as its error estimate.
pub fn richardson(values: &[Complex]) -> (Complex, Complex) {
    let mut row: Vec<Complex> = values.to_vec();
    let mut last_two = (row[row.len() - 1].clone(), row[row.len() - 1].clone());
    let mut pow = 1i64;
    while row.len() > 1 {
        pow *= 2;
        let next: Vec<Complex> = row
            .windows(2)
            .map(|w| (&w[1].scale_i64(pow) - &w[0]).div_i64(pow - 1))
            .collect();
        last_two = (row[row.len() - 1].clone(), next[next.len() - 1].clone());
        row = next;
    }
    let err = &last_two.1 - &last_two.0;
    (last_two.1, err)
}

/// The coefficient of `z^k` in `F(q^(2 sigma); q^-1, q | h^4 z)` at `q = e^h`.
pub fn deformed_block_coefficient(sigma: &Complex, hbar: f64, k: u32) -> Result<Complex> {
    let p = sigma.precision();
    let h = Complex::from_f64(hbar, p);
    let u = (&h * &sigma.scale_i64(2)).exp();
    let block = conformal_block(&NumericBlock::standard(&u, &h.exp())?, k)?;
    let c = block
        .coeff(4 * k as i32)
        .cloned()
        .unwrap_or_else(|| Complex::zero(p));
    Ok(&c * &h.powi(4 * k as i64))
}
