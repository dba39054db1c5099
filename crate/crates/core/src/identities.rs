//! Randomized checks of the q-special function identities.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::num::{Complex, Precision};
use crate::qspecial::{
    classical_gamma, elliptic_gamma, q_barnes_g, q_gamma, q_number, qpoch, qpow, theta,
    theta_series,
};
use crate::sample::Sampler;

/// One identity over many random points.
#[derive(Clone, Debug)]
pub struct IdentityResult {
    pub name: &'static str,
    pub trials: usize,
    /// Largest log10 relative residual.
    pub max_log10: f64,
    pub passed: bool,
}

fn rel(a: &Complex, b: &Complex) -> f64 {
    (a - b).log10_abs() - b.log10_abs()
}

type Check = fn(&mut Sampler) -> Result<f64>;

const CHECKS: [(&str, Check); 13] = [
    ("shift (Z;q)/(Zq;q) = 1 - Z", shift1),
    ("shift (Z;t,q)/(Zt;t,q) = (Z;q)", shift2),
    ("qtrans (Z;1/t) = 1/(Zt;t)", qtrans1),
    ("qtrans (Z;1/t,q) = 1/(Zt;t,q)", qtrans2),
    ("tshift theta(qZ) = -theta(Z)/Z", tshift1),
    ("tshift -theta(Z)/Z = theta(1/Z)", tshift2),
    ("Gshift Gamma(qZ) = theta(Z;t) Gamma(Z)", gshift_q),
    ("Gshift Gamma(tZ) = theta(Z;q) Gamma(Z)", gshift_t),
    ("G2p Gamma(uq) Gamma(u/q) / Gamma(u)^2 = -q/u", g2p),
    ("q-Gamma Gamma(x+1) = [x] Gamma(x)", gamma_rec),
    ("q-Barnes G(x+1) = Gamma(x) G(x)", barnes_rec),
    ("GN product form of G", gn_product),
    ("Jacobi triple product", triple),
];

fn z_point(s: &mut Sampler) -> Complex {
    s.polar(0.2, 2.0, 3.0)
}

fn shift1(s: &mut Sampler) -> Result<f64> {
    let (z, q) = (z_point(s), s.q());
    let one = Complex::one(s.precision());
    let l = &qpoch(&z, core::slice::from_ref(&q))? / &qpoch(&(&z * &q), core::slice::from_ref(&q))?;
    Ok(rel(&l, &(&one - &z)))
}

fn shift2(s: &mut Sampler) -> Result<f64> {
    let (z, t, q) = (z_point(s), s.q(), s.q());
    let b = [t.clone(), q.clone()];
    let l = &qpoch(&z, &b)? / &qpoch(&(&z * &t), &b)?;
    Ok(rel(&l, &qpoch(&z, &[q])?))
}

fn qtrans1(s: &mut Sampler) -> Result<f64> {
    let (z, t) = (z_point(s), s.q());
    let l = qpoch(&z, &[t.inv()])?;
    Ok(rel(&l, &qpoch(&(&z * &t), &[t])?.inv()))
}

fn qtrans2(s: &mut Sampler) -> Result<f64> {
    let (z, t, q) = (z_point(s), s.q(), s.q());
    let l = qpoch(&z, &[t.inv(), q.clone()])?;
    Ok(rel(&l, &qpoch(&(&z * &t), &[t, q])?.inv()))
}

fn tshift1(s: &mut Sampler) -> Result<f64> {
    let (z, q) = (z_point(s), s.q());
    let r = -(&theta(&z, &q)? / &z);
    Ok(rel(&theta(&(&q * &z), &q)?, &r))
}

fn tshift2(s: &mut Sampler) -> Result<f64> {
    let (z, q) = (z_point(s), s.q());
    let l = -(&theta(&z, &q)? / &z);
    Ok(rel(&l, &theta(&z.inv(), &q)?))
}

fn gshift_q(s: &mut Sampler) -> Result<f64> {
    let (z, t, q) = (z_point(s), s.q(), s.q());
    let r = &theta(&z, &t)? * &elliptic_gamma(&z, &t, &q)?;
    Ok(rel(&elliptic_gamma(&(&q * &z), &t, &q)?, &r))
}

fn gshift_t(s: &mut Sampler) -> Result<f64> {
    let (z, t, q) = (z_point(s), s.q(), s.q());
    let r = &theta(&z, &q)? * &elliptic_gamma(&z, &t, &q)?;
    Ok(rel(&elliptic_gamma(&(&t * &z), &t, &q)?, &r))
}

fn g2p(s: &mut Sampler) -> Result<f64> {
    let (u, q) = (z_point(s), s.q());
    let g = |x: &Complex| elliptic_gamma(x, &q, &q);
    let l = &(&g(&(&u * &q))? * &g(&(&u / &q))?) / &g(&u)?.sqr();
    Ok(rel(&l, &-(&q / &u)))
}

fn x_point(s: &mut Sampler) -> Complex {
    let p = s.precision();
    Complex::from_f64_parts(s.uniform(0.1, 4.0), s.uniform(-1.5, 1.5), p)
}

fn gamma_rec(s: &mut Sampler) -> Result<f64> {
    let (x, q) = (x_point(s), s.q());
    let one = Complex::one(s.precision());
    let r = &q_number(&x, &q) * &q_gamma(&x, &q)?;
    Ok(rel(&q_gamma(&(&x + &one), &q)?, &r))
}

fn barnes_rec(s: &mut Sampler) -> Result<f64> {
    let (x, q) = (x_point(s), s.q());
    let one = Complex::one(s.precision());
    let r = &q_gamma(&x, &q)? * &q_barnes_g(&x, &q)?;
    Ok(rel(&q_barnes_g(&(&x + &one), &q)?, &r))
}

/// `(1-q)^(-(x-1)(x-2)/2) prod_k (1 - q^(x+k))^(k+1) / (1 - q^(k+1))^(k+2-x)`
/// truncated where `|q|^k` drops below the working precision.
fn gn_product(s: &mut Sampler) -> Result<f64> {
    let p = s.precision();
    let (x, q) = (x_point(s), s.polar(0.2, 0.45, 0.5));
    let one = Complex::one(p);
    let e = (&(&x - &one) * &(&x - &Complex::from_i64(2, p))).div_i64(2);
    let mut acc = (&one - &q).powc(&-e);
    let kmax = (-(p.get() as f64 + 10.0) / q.log10_abs()) as i64 + 2;
    let qx = qpow(&q, &x);
    let mut qk = one.clone();
    for k in 0..kmax {
        let a = (&one - &(&qx * &qk)).powi(k + 1);
        let qk1 = &qk * &q;
        let b = (&one - &qk1).powc(&(&Complex::from_i64(k + 2, p) - &x));
        acc = &(&acc * &a) / &b;
        qk = qk1;
    }
    Ok(rel(&acc, &q_barnes_g(&x, &q)?))
}

fn triple(s: &mut Sampler) -> Result<f64> {
    let (z, q) = (z_point(s), s.q());
    Ok(rel(&theta_series(&z, &q)?, &theta(&z, &q)?))
}

/// Runs every identity at `trials` random points with 50-digit-style
/// threshold `10^(10 - digits)`; points that hit a pole are resampled.
pub fn identity_suite(trials: usize, seed: u64, p: Precision) -> Vec<IdentityResult> {
    let threshold = 10.0 - p.get() as f64;
    let mut out = Vec::new();
    for (i, (name, check)) in CHECKS.iter().enumerate() {
        let mut s = Sampler::new(seed.wrapping_add(i as u64), p);
        let mut worst = f64::NEG_INFINITY;
        let mut done = 0;
        let mut attempts = 0;
        while done < trials && attempts < 10 * trials + 10 {
            attempts += 1;
            if let Ok(r) = check(&mut s) {
                worst = worst.max(r);
                done += 1;
            }
        }
        out.push(IdentityResult {
            name,
            trials: done,
            max_log10: worst,
            passed: done == trials && worst < threshold,
        });
    }
    out.push(glim_monotonic(p));
    out
}

/// `|Gamma(x; q) - Gamma(x)|` for `q = 1 - 10^-k`, `k = 2, 3, 4`.
pub fn glim_errors(x: f64, p: Precision) -> Result<Vec<f64>> {
    let xc = Complex::from_f64(x, p);
    let exact = classical_gamma(&xc)?;
    let mut v = vec![];
    for k in 2..=4 {
        let q = Complex::from_f64(1.0 - num_traits::Float::powi(10f64, -k), p);
        v.push((&q_gamma(&xc, &q)? - &exact).log10_abs());
    }
    Ok(v)
}

/// The q-Gamma approaches the classical one monotonically at
/// `x = 0.5, 1.5, 2.5`.
pub fn glim_monotonic(p: Precision) -> IdentityResult {
    let mut ok = true;
    let mut last = f64::NEG_INFINITY;
    for x in [0.5, 1.5, 2.5] {
        match glim_errors(x, p) {
            Ok(e) => {
                ok &= e.windows(2).all(|w| w[1] < w[0]);
                last = last.max(e[e.len() - 1]);
            }
            Err(_) => ok = false,
        }
    }
    IdentityResult {
        name: "Glim monotonic approach",
        trials: 3,
        max_log10: last,
        passed: ok,
    }
}
