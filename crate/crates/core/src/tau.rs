//! The q-deformed tau function `T(u, s; q | Z)`.
//!
//! `T` is a sum over `n` of conformal blocks at `u q^(2n)` weighted by a
//! structure function `C(u; q | Z)` and double Pochhammer symbols. Three
//! equivalent ways of writing the sum are provided ([`TauForm`]), which
//! makes their agreement a useful internal check.
//!
//! Parameters are carried as logarithms ([`LogVar`]) so that fractional
//! powers such as `(q Z u)^(1/4)` stay on one consistent branch when `u` or
//! `Z` is shifted by powers of `q`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::block::{conformal_block, NumericBlock};
use crate::error::{Error, Result};
use crate::exact::poly::{mono_mul, mono_pow, Monomial};
use crate::exact::BinomialFraction;
use crate::num::{Complex, Precision};
use crate::qspecial::{elliptic_gamma, qpoch};
use crate::series::GradedSeries;

/// A nonzero complex number stored through a chosen logarithm.
#[derive(Clone, Debug, PartialEq)]
pub struct LogVar {
    ln: Complex,
}

impl LogVar {
    /// Principal logarithm of `z`.
    pub fn new(z: &Complex) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::InvalidInput("logarithm of zero".into()));
        }
        Ok(LogVar { ln: z.ln() })
    }

    pub fn from_ln(ln: Complex) -> Self {
        LogVar { ln }
    }

    pub fn ln(&self) -> &Complex {
        &self.ln
    }

    pub fn precision(&self) -> Precision {
        self.ln.precision()
    }

    pub fn value(&self) -> Complex {
        self.ln.exp()
    }

    /// `x^(num/den)` on the branch fixed by the stored logarithm.
    pub fn frac_pow(&self, num: i64, den: i64) -> Complex {
        self.ln.scale_i64(num).div_i64(den).exp()
    }

    /// `x^w` for complex `w`.
    pub fn pow_c(&self, w: &Complex) -> Complex {
        (&self.ln * w).exp()
    }

    pub fn mul(&self, o: &LogVar) -> LogVar {
        LogVar {
            ln: &self.ln + &o.ln,
        }
    }

    pub fn pow(&self, k: i64) -> LogVar {
        LogVar {
            ln: self.ln.scale_i64(k),
        }
    }

    pub fn inv(&self) -> LogVar {
        LogVar {
            ln: -self.ln.clone(),
        }
    }

    /// The same point reached after `k` turns around the origin.
    pub fn wind(&self, k: i64) -> LogVar {
        let p = self.precision();
        LogVar {
            ln: &self.ln + &Complex::pi(p).mul_i().scale_i64(2 * k),
        }
    }
}

/// Which structure function `C(u; q | Z)` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CChoice {
    /// Ratio of elliptic Gamma functions; meromorphic in `Z^(1/2)`.
    C1,
    /// The choice with a continuous limit; not meromorphic.
    Cc,
}

/// `C(u; q | Z)` for the given choice.
///
/// `C1 = Gamma((qZ)^(1/4))^3 / (Gamma(i (qZu)^(1/4)) Gamma(i (qZ)^(1/4) u^(-1/4)))`
/// and `Cc = (-1)^(2 sigma^2) Gamma(-(qZ)^(1/4)) Z^(sigma^2)`, all elliptic
/// Gammas with both bases `q^(1/4)` and `sigma = log u / (2 log q)`.
pub fn c_function(choice: CChoice, u: &LogVar, q: &LogVar, z: &LogVar) -> Result<Complex> {
    let t = q.frac_pow(1, 4);
    let qz4 = q.mul(z).frac_pow(1, 4);
    match choice {
        CChoice::C1 => {
            let g0 = elliptic_gamma(&qz4, &t, &t)?;
            let x1 = (&qz4 * &u.frac_pow(1, 4)).mul_i();
            let x2 = (&qz4 * &u.frac_pow(-1, 4)).mul_i();
            let den = &elliptic_gamma(&x1, &t, &t)? * &elliptic_gamma(&x2, &t, &t)?;
            Ok(&(&(&g0 * &g0) * &g0) / &den)
        }
        CChoice::Cc => {
            let sigma = sigma_of(u, q);
            let s2 = sigma.sqr();
            let phase = Complex::minus_one_pow(&s2.scale_i64(2));
            let g = elliptic_gamma(&(-qz4), &t, &t)?;
            Ok(&(&phase * &g) * &z.pow_c(&s2))
        }
    }
}

/// Relative residuals of the three difference equations for `C`:
/// `C(uq|Z) C(u/q|Z) / C(u|Z)^2 = -Z^(1/2)`,
/// `C(uq|qZ) C(u/q|Z/q) / C(u|Z)^2 = -u Z^(1/4)` and
/// `C(u|qZ) C(u|Z/q) / C(u|Z)^2 = Z^(-1/4)`.
pub fn c_equation_residuals(
    choice: CChoice,
    u: &LogVar,
    q: &LogVar,
    z: &LogVar,
) -> Result<[Complex; 3]> {
    let f = |k: i64, zk: i64| c_function(choice, &u.mul(&q.pow(k)), q, &z.mul(&q.pow(zk)));
    let c0 = f(0, 0)?.sqr();
    let rel = |lhs: Complex, rhs: Complex| &(&(&lhs / &c0) - &rhs) / &rhs;
    Ok([
        rel(&f(1, 0)? * &f(-1, 0)?, -z.frac_pow(1, 2)),
        rel(&f(1, 1)? * &f(-1, -1)?, -(&u.value() * &z.frac_pow(1, 4))),
        rel(&f(0, 1)? * &f(0, -1)?, z.frac_pow(-1, 4)),
    ])
}

/// `sigma = log u / (2 log q)`.
pub fn sigma_of(u: &LogVar, q: &LogVar) -> Complex {
    (u.ln() / q.ln()).div_i64(2)
}

/// Factors of `P_n(u; q)`: the value is `prod 1 / (1 - u^e q^f)` over the
/// returned `(e, f)` pairs (with multiplicity).
///
/// For `n >= 0`, `P_n = (-1)^n / ((1-u)^(2n) prod_{i=1}^{2n-1}
/// (u^(1/2) q^(i/2) - u^(-1/2) q^(-i/2))^(2(2n-i)))`; each squared factor is
/// `-(1 - u q^i)(1 - u^-1 q^-i)` and the signs cancel. `P_{-n}(u) = P_n(1/u)`.
pub fn p_n_factors(n: i64) -> Vec<(i32, i32)> {
    let m = n.unsigned_abs() as i32;
    let su = if n >= 0 { 1 } else { -1 };
    let mut out = Vec::new();
    for _ in 0..2 * m {
        out.push((su, 0));
    }
    for i in 1..2 * m {
        for _ in 0..(2 * m - i) {
            out.push((su, i));
            out.push((-su, -i));
        }
    }
    out
}

/// `P_n(u; q)` numerically.
pub fn p_n_coefficient(n: i64, u: &LogVar, q: &LogVar) -> Result<Complex> {
    let p = u.precision();
    let mut den = Complex::one(p);
    for (e, f) in p_n_factors(n) {
        let m = u.pow(e as i64).mul(&q.pow(f as i64)).value();
        den = &den * &(&Complex::one(p) - &m);
    }
    if den.below(-(p.get() as i32) + 8) {
        return Err(Error::ResonantU);
    }
    Ok(den.inv())
}

/// `P_n(u; q)` exactly, for monomial images of `u` and `q`.
pub fn p_n_exact(n: i64, u: &Monomial, q: &Monomial) -> Result<BinomialFraction> {
    let ms: Vec<Monomial> = p_n_factors(n)
        .into_iter()
        .map(|(e, f)| mono_mul(&mono_pow(u, e), &mono_pow(q, f)))
        .collect();
    BinomialFraction::inv_one_minus_product(&ms).map_err(|_| Error::ResonantU)
}

/// Factors of the algebraic-point coefficient
/// `P_n(q) = prod_{j<k} 1/((1 - q^(j+1/2))(1 - q^(-j-1/2)))^(k-j)`, with
/// `k = 2n` for `n > 0` and `k = -2n-1` for `n < 0`, as exponents of
/// `q^(1/2)`.
pub fn p_n_algebraic_factors(n: i64) -> Vec<i32> {
    let k = if n > 0 {
        2 * n
    } else if n < 0 {
        -2 * n - 1
    } else {
        0
    } as i32;
    let mut out = Vec::new();
    for j in 0..k {
        for _ in 0..(k - j) {
            out.push(2 * j + 1);
            out.push(-(2 * j + 1));
        }
    }
    out
}

/// `P_n(q)` at the algebraic point, numerically.
pub fn p_n_algebraic(n: i64, q: &LogVar) -> Result<Complex> {
    let p = q.precision();
    let mut den = Complex::one(p);
    for e in p_n_algebraic_factors(n) {
        den = &den * &(&Complex::one(p) - &q.frac_pow(e as i64, 2));
    }
    Ok(den.inv())
}

/// `P_n(q)` exactly, with `q^(1/2)` mapped to the monomial `h`.
pub fn p_n_algebraic_exact(n: i64, h: &Monomial) -> Result<BinomialFraction> {
    let ms: Vec<Monomial> = p_n_algebraic_factors(n)
        .into_iter()
        .map(|e| mono_pow(h, e))
        .collect();
    BinomialFraction::inv_one_minus_product(&ms)
}

/// The three equivalent series for `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TauForm {
    /// `sum_n s^n C(u q^2n | Z) F(u q^2n) / prod_e ((u q^2n)^e q; q, q)`.
    Direct,
    /// `C(u) sum_n s~^n Z^(n^2 + n/2) F(u q^2n) / prod_e ((u q^2n)^e q; q, q)`
    /// with `s~ = -(C(u)/C(u/q))^2 s`.
    Ratio,
    /// `C(u) / prod_e (u^e q; q, q) sum_n Z^(n^2 + n/2) s^^n P_n(u) F(u q^2n)`
    /// with `s^ = -(C(u)/C(u/q) (u;q)/(1/u;q))^2 s`.
    Rational,
}

/// Parameters of `T(u, s; q | Z)`.
#[derive(Clone, Debug)]
pub struct TauParams {
    pub u: LogVar,
    pub q: LogVar,
    pub s: Complex,
    pub choice: CChoice,
    /// Block truncation order in `Z`.
    pub order: u32,
    /// Hard ceiling on `|n|`.
    pub n_max: u32,
}

impl TauParams {
    /// Principal logarithms of `u` and `q`; defaults to `C1`, block order 8
    /// and `n_max = 32`.
    pub fn new(u: &Complex, q: &Complex, s: &Complex) -> Result<Self> {
        TauParams::from_logs(LogVar::new(u)?, LogVar::new(q)?, s.clone())
    }

    pub fn from_logs(u: LogVar, q: LogVar, s: Complex) -> Result<Self> {
        let aq = q.ln().re_f64();
        if aq.is_nan() || aq >= 0.0 || aq.abs() < 1e-12 {
            return Err(Error::InvalidInput("need 0 < |q| < 1".into()));
        }
        let p = TauParams {
            u,
            q,
            s,
            choice: CChoice::C1,
            order: 8,
            n_max: 32,
        };
        p.check_resonance()?;
        Ok(p)
    }

    fn check_resonance(&self) -> Result<()> {
        let n0 = (self.u.ln().re_f64() / self.q.ln().re_f64()).round() as i64;
        let d = &self.u.value() - &self.q.pow(n0).value();
        let digits = self.s.precision().get() as i32;
        if d.below(-(digits - 8)) {
            return Err(Error::ResonantU);
        }
        Ok(())
    }

    pub fn with_choice(mut self, c: CChoice) -> Self {
        self.choice = c;
        self
    }

    pub fn with_order(mut self, order: u32) -> Self {
        self.order = order;
        self
    }

    pub fn with_n_max(mut self, n_max: u32) -> Self {
        self.n_max = n_max;
        self
    }

    /// `(u, s) -> (1/u, 1/s)`.
    pub fn inverted(&self) -> Result<Self> {
        if self.s.is_zero() {
            return Err(Error::InvalidInput("s = 0 cannot be inverted".into()));
        }
        Ok(TauParams {
            u: self.u.inv(),
            s: self.s.inv(),
            ..self.clone()
        })
    }

    /// `u -> u q^k`.
    pub fn shifted(&self, k: i64) -> Self {
        TauParams {
            u: self.u.mul(&self.q.pow(k)),
            ..self.clone()
        }
    }

    pub fn sigma(&self) -> Complex {
        sigma_of(&self.u, &self.q)
    }

    pub fn precision(&self) -> Precision {
        self.s.precision()
    }
}

/// Evaluator for `T` with caches for the blocks and Pochhammer weights at
/// `u q^k`.
pub struct Tau {
    p: TauParams,
    blocks: RefCell<BTreeMap<i64, GradedSeries<Complex>>>,
    dens: RefCell<BTreeMap<i64, Complex>>,
}

impl Tau {
    pub fn new(p: TauParams) -> Self {
        Tau {
            p,
            blocks: RefCell::new(BTreeMap::new()),
            dens: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn params(&self) -> &TauParams {
        &self.p
    }

    fn prec(&self) -> Precision {
        self.p.precision()
    }

    /// `u q^k` as a log variable.
    pub fn u_at(&self, k: i64) -> LogVar {
        self.p.u.mul(&self.p.q.pow(k))
    }

    /// The block series `F(u q^k; q^-1, q | Z)` through the configured order.
    pub fn block(&self, k: i64) -> Result<GradedSeries<Complex>> {
        if let Some(b) = self.blocks.borrow().get(&k) {
            return Ok(b.clone());
        }
        let nb = NumericBlock::standard(&self.u_at(k).value(), &self.p.q.value())?;
        let b = conformal_block(&nb, self.p.order)?;
        self.blocks.borrow_mut().insert(k, b.clone());
        Ok(b)
    }

    pub fn block_at(&self, k: i64, z: &LogVar) -> Result<Complex> {
        Ok(self.block(k)?.eval(&z.frac_pow(1, 4)))
    }

    /// `prod_e ((u q^k)^e q; q, q)`.
    pub fn pochhammer_weight(&self, k: i64) -> Result<Complex> {
        if let Some(d) = self.dens.borrow().get(&k) {
            return Ok(d.clone());
        }
        let q = self.p.q.value();
        let uk = self.u_at(k).value();
        let qq = [q.clone(), q.clone()];
        let d = &qpoch(&(&uk * &q), &qq)? * &qpoch(&(&uk.inv() * &q), &qq)?;
        if d.is_zero() {
            return Err(Error::ResonantU);
        }
        self.dens.borrow_mut().insert(k, d.clone());
        Ok(d)
    }

    /// `C(u q^k; q | Z)`.
    pub fn c(&self, k: i64, z: &LogVar) -> Result<Complex> {
        c_function(self.p.choice, &self.u_at(k), &self.p.q, z)
    }

    /// Sums `term(n)` over `n = 0, +-1, +-2, ...` until both new terms fall
    /// below the working precision relative to the partial sum.
    fn adaptive(&self, mut term: impl FnMut(i64) -> Result<Complex>) -> Result<Complex> {
        let mut acc = term(0)?;
        if self.p.s.is_zero() {
            return Ok(acc);
        }
        let digits = self.prec().get() as f64;
        for m in 1..=self.p.n_max as i64 {
            let a = term(m)?;
            let b = term(-m)?;
            acc = &acc + &(&a + &b);
            let top = a.log10_abs().max(b.log10_abs());
            if m >= 2 && top < acc.log10_abs() - digits - 3.0 {
                return Ok(acc);
            }
        }
        Err(Error::NoConvergence)
    }

    /// `T(u q^j, s; q | Z)` in the requested form.
    pub fn eval(&self, form: TauForm, j: i64, z: &LogVar) -> Result<Complex> {
        let s = self.p.s.clone();
        match form {
            TauForm::Direct => self.adaptive(|n| {
                let k = j + 2 * n;
                let f = self.block_at(k, z)?;
                let c = self.c(k, z)?;
                Ok(&(&(&s.powi(n) * &c) * &f) / &self.pochhammer_weight(k)?)
            }),
            TauForm::Ratio => {
                let c0 = self.c(j, z)?;
                let cm = self.c(j - 1, z)?;
                let st = -(&(&c0 / &cm).sqr() * &s);
                let sum = self.adaptive(|n| {
                    let k = j + 2 * n;
                    let f = self.block_at(k, z)?;
                    let zp = z.frac_pow(2 * n * n + n, 2);
                    Ok(&(&(&st.powi(n) * &zp) * &f) / &self.pochhammer_weight(k)?)
                })?;
                Ok(&c0 * &sum)
            }
            TauForm::Rational => {
                let c0 = self.c(j, z)?;
                let cm = self.c(j - 1, z)?;
                let q = self.p.q.value();
                let uj = self.u_at(j);
                let qs = core::slice::from_ref(&q);
                let r = &qpoch(&uj.value(), qs)? / &qpoch(&uj.inv().value(), qs)?;
                let sh = -(&(&(&c0 / &cm) * &r).sqr() * &s);
                let sum = self.adaptive(|n| {
                    let f = self.block_at(j + 2 * n, z)?;
                    let zp = z.frac_pow(2 * n * n + n, 2);
                    let pn = p_n_coefficient(n, &uj, &self.p.q)?;
                    Ok(&(&(&sh.powi(n) * &zp) * &pn) * &f)
                })?;
                Ok(&(&c0 / &self.pochhammer_weight(j)?) * &sum)
            }
        }
    }

    /// `T(u, s; q | Z)` through the ratio form.
    pub fn value(&self, z: &LogVar) -> Result<Complex> {
        self.eval(TauForm::Ratio, 0, z)
    }

    /// The normalization `(q; q, q)^2 / Gamma(-(qZ)^(1/4); q^(1/4), q^(1/4))`
    /// that turns `T` into `T_c`.
    pub fn tau_c_factor(&self, z: &LogVar) -> Result<Complex> {
        let q = self.p.q.value();
        let t = self.p.q.frac_pow(1, 4);
        let qqq = qpoch(&q, &[q.clone(), q.clone()])?;
        let g = elliptic_gamma(&(-self.p.q.mul(z).frac_pow(1, 4)), &t, &t)?;
        Ok(&qqq.sqr() / &g)
    }

    /// `T_c(u q^j, s; q | Z)`.
    pub fn tau_c(&self, j: i64, z: &LogVar) -> Result<Complex> {
        Ok(&self.eval(TauForm::Ratio, j, z)? * &self.tau_c_factor(z)?)
    }

    /// `T_c` summed directly as
    /// `(q;q,q)^2 (-1)^(2 sigma^2) sum_n Z^((sigma+n)^2) ((-1)^(4 sigma) s)^n F / prod_e (...)`,
    /// valid for the `Cc` choice.
    pub fn tau_c_direct(&self, z: &LogVar) -> Result<Complex> {
        if self.p.choice != CChoice::Cc {
            return Err(Error::InvalidInput(
                "direct T_c sum needs the Cc structure function".into(),
            ));
        }
        let p = self.prec();
        let sigma = self.p.sigma();
        let twist = &Complex::minus_one_pow(&sigma.scale_i64(4)) * &self.p.s;
        let sum = self.adaptive(|n| {
            let k = 2 * n;
            let e = (&sigma + &Complex::from_i64(n, p)).sqr();
            let f = self.block_at(k, z)?;
            Ok(&(&(&twist.powi(n) * &z.pow_c(&e)) * &f) / &self.pochhammer_weight(k)?)
        })?;
        let q = self.p.q.value();
        let qqq = qpoch(&q, &[q.clone(), q.clone()])?;
        let phase = Complex::minus_one_pow(&sigma.sqr().scale_i64(2));
        Ok(&(&qqq.sqr() * &phase) * &sum)
    }

    /// The four letters `T1 = T(u)`, `T3 = s^(1/2) T(uq)` at `Z` and
    /// `T2 = T1(qZ)`, `T4 = T3(qZ)`.
    pub fn letters(&self, z: &LogVar) -> Result<[Complex; 4]> {
        let rs = self.p.s.sqrt();
        let qz = self.p.q.mul(z);
        let t1 = self.eval(TauForm::Ratio, 0, z)?;
        let t3 = &rs * &self.eval(TauForm::Ratio, 1, z)?;
        let t2 = self.eval(TauForm::Ratio, 0, &qz)?;
        let t4 = &rs * &self.eval(TauForm::Ratio, 1, &qz)?;
        Ok([t1, t2, t3, t4])
    }

    /// `F = -(qZ)^(1/2) T2^2 / T4^2` and `G = -Z^(1/2) T1^2 / T3^2`.
    pub fn fg(&self, z: &LogVar) -> Result<(Complex, Complex)> {
        let [t1, t2, t3, t4] = self.letters(z)?;
        if t3.is_zero() || t4.is_zero() {
            return Err(Error::ZeroTau);
        }
        let qz = self.p.q.mul(z);
        let f = -(&qz.frac_pow(1, 2) * &(&t2 / &t4).sqr());
        let g = -(&z.frac_pow(1, 2) * &(&t1 / &t3).sqr());
        Ok((f, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::mono_var;

    fn p() -> Precision {
        Precision::digits(40)
    }

    fn lv(re: f64, im: f64) -> LogVar {
        LogVar::new(&Complex::from_f64_parts(re, im, p())).unwrap()
    }

    #[test]
    fn p1_matches_displayed_form() {
        let u = lv(0.3, 0.2);
        let q = lv(0.4, 0.1);
        let one = Complex::one(p());
        let uv = u.value();
        let x = &u.frac_pow(1, 2) * &q.frac_pow(1, 2);
        let sq = (&x - &x.inv()).sqr();
        let expect = -(&(&one - &uv).sqr() * &sq).inv();
        let got = p_n_coefficient(1, &u, &q).unwrap();
        assert!((&got - &expect).below(-30));
        assert_eq!(p_n_coefficient(0, &u, &q).unwrap(), one);
        let back = p_n_coefficient(-1, &u.inv(), &q).unwrap();
        assert!((&back - &got).below(-30));
    }

    #[test]
    fn p1_algebraic_value() {
        let q = lv(0.3, 0.0);
        let one = Complex::one(p());
        let f = |e: i64| &one - &q.frac_pow(e, 2);
        let expect = (&(&(&f(1) * &f(-1)).sqr() * &f(3)) * &f(-3)).inv();
        assert!((&p_n_algebraic(1, &q).unwrap() - &expect).below(-30));
        let h = mono_var(0, 2);
        let ex = p_n_algebraic_exact(1, &h).unwrap();
        let a = q.frac_pow(1, 4);
        let v = ex.eval(&[a, one.clone()]).unwrap();
        assert!((&v - &expect).below(-30));
    }

    #[test]
    fn c01_both_choices() {
        let q = lv(0.35, 0.1);
        let z = lv(0.2, 0.05);
        let u = lv(0.5, 0.3);
        for c in [CChoice::C1, CChoice::Cc] {
            let f = |k: i64| c_function(c, &u.mul(&q.pow(k)), &q, &z).unwrap();
            let r = &(&f(1) * &f(-1)) / &f(0).sqr();
            assert!((&r + &z.frac_pow(1, 2)).below(-30), "{c:?}");
        }
    }
}
