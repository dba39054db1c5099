use num_bigint::BigInt;
use num_rational::BigRational;
use qtau_core::exact::ExactScalar;
use qtau_core::limits::*;
use qtau_core::num::{Complex, Precision};
use qtau_core::qspecial::{classical_gamma, q_barnes_g, q_gamma};
use qtau_core::tau::{LogVar, Tau, TauParams};

const DIGITS: u32 = 50;
const HBAR: [f64; 3] = [-0.1, -0.031_622_776_601_683_79, -0.01];

fn p() -> Precision {
    Precision::digits(DIGITS)
}

fn c(re: f64, im: f64) -> Complex {
    Complex::from_f64_parts(re, im, p())
}

fn lv(re: f64, im: f64) -> LogVar {
    LogVar::new(&c(re, im)).unwrap()
}

fn generic() -> GilParams {
    GilParams::new(&c(0.13, 0.05), &c(0.7, 0.0)).unwrap()
}

#[test]
fn resonant_sigma_rejected() {
    assert!(GilParams::new(&c(0.5, 0.0), &c(1.0, 0.0)).is_err());
}

#[test]
fn s_zero_keeps_only_the_first_term() {
    let g = GilParams::new(&c(0.13, 0.05), &Complex::zero(p())).unwrap();
    let terms = gil_terms(&g, 0).unwrap();
    assert!(terms.terms.iter().all(|t| t.m == 0));
    let z = lv(0.1, 0.02);
    let f = qtau_core::block::block_4d(&g.sigma, g.k_max).unwrap();
    let expect = &z.pow_c(&g.sigma.sqr()) * &f.eval(&z.frac_pow(1, 4));
    assert!((&(&gil_tau(&g, &z).unwrap() - &expect) / &expect).below(-45));
}

#[test]
fn c_ratio_half_steps() {
    // C(sigma + 1/2) C(sigma - 1/2) / C(sigma)^2 = -1/(4 sigma^2)
    let x = c(0.26, 0.1);
    let prod =
        &c_ratio(&x, 1, &classical_gamma).unwrap() * &c_ratio(&x, -1, &classical_gamma).unwrap();
    let expect = -x.sqr().inv();
    assert!((&(&prod - &expect) / &expect).below(-45));
}

#[test]
fn q_c_ratio_matches_barnes() {
    let q = c(0.6, 0.0);
    let x = c(0.26, 0.1);
    let one = Complex::one(p());
    let cq = |y: &Complex| {
        (&q_barnes_g(&(&one - y), &q).unwrap() * &q_barnes_g(&(&one + y), &q).unwrap()).inv()
    };
    for m in [-3i64, -1, 1, 2] {
        let got = c_ratio(&x, m, &|y| q_gamma(y, &q)).unwrap();
        let shifted = &x + &Complex::from_i64(m, p());
        let expect = &cq(&shifted) / &cq(&x);
        assert!((&(&got - &expect) / &expect).below(-40), "m = {m}");
    }
}

#[test]
fn deformed_weights_match_pochhammers() {
    // Z^((sigma+n)^2) / prod_e ((u q^(2n))^e q; q, q) against the q-Barnes form
    let h = -0.7;
    let sigma = c(0.13, 0.05);
    let q = Complex::from_f64(h, p()).exp();
    let u = (&Complex::from_f64(h, p()) * &sigma.scale_i64(2)).exp();
    let tau = Tau::new(TauParams::new(&u, &q, &c(1.0, 0.0)).unwrap());
    let z = lv(0.03, 0.01);
    let scaled = LogVar::new(&(&z.value() / &(&Complex::one(p()) - &q).powi(4))).unwrap();
    for n in [-1i64, 1, 2] {
        let sn = &sigma + &Complex::from_i64(n, p());
        let de = &sn.sqr() - &sigma.sqr();
        let lhs = &(&z.pow_c(&de) * &tau.pochhammer_weight(0).unwrap())
            / &tau.pochhammer_weight(2 * n).unwrap();
        let rhs =
            &c_ratio(&sigma.scale_i64(2), 2 * n, &|y| q_gamma(y, &q)).unwrap() * &scaled.pow_c(&de);
        assert!((&(&lhs - &rhs) / &rhs).below(-40), "n = {n}");
    }
}

#[test]
fn toda_holds_termwise_with_standard_hirota() {
    for sigma in [c(0.13, 0.05), c(-0.31, 0.2)] {
        let g = GilParams::new(&sigma, &c(0.7, -0.3))
            .unwrap()
            .with_cutoffs(3, 8);
        assert!(toda_hirota_residual(&g, Hirota::Standard).unwrap() < -40.0);
        assert!(toda_hirota_residual(&g, Hirota::Printed).unwrap() > -2.0);
    }
}

#[test]
fn periodicity_in_sigma() {
    // reindexing the sum gives tau(sigma + 1, s) = tau(sigma, s) / s
    let g = generic().with_cutoffs(4, 10);
    let z = lv(0.1, 0.02);
    let up = gil_terms(&g, 2).unwrap().eval(&z);
    let t = gil_tau(&g, &z).unwrap();
    assert!((&(&up - &(&t / &g.s)) / &up).log10_abs() < -12.0);
    assert!((&(&up - &(&t * &g.s)) / &up).log10_abs() > -1.0);
}

#[test]
fn stattau_closed_form() {
    let quarter = Complex::one(p()).div_i64(4);
    let (z1, z2) = (lv(0.1, 0.02), lv(0.05, 0.01));
    for sign in [1i64, -1] {
        let g = GilParams::new(&quarter, &Complex::from_i64(-sign, p()))
            .unwrap()
            .with_cutoffs(4, 10);
        let r = &gil_tau(&g, &z1).unwrap() / &gil_tau(&g, &z2).unwrap();
        let expect = algebraic_tau_ratio(sign, &z1, &z2);
        assert!(
            (&(&r - &expect) / &expect).log10_abs() < -15.0,
            "sign {sign}"
        );
        let wrong = algebraic_tau_ratio(-sign, &z1, &z2);
        assert!((&(&r - &wrong) / &wrong).log10_abs() > -1.0);
    }
}

#[test]
fn bilincont_exact_in_symbolic_sigma() {
    let sigma = ExactScalar::var(0, 1);
    let r = bilincont_residual(&sigma, 3, Hirota::Standard, 2).unwrap();
    assert!(r.is_zero());
    assert!(!bilincont_residual(&sigma, 3, Hirota::Standard, -2)
        .unwrap()
        .is_zero());
    assert!(!bilincont_residual(&sigma, 2, Hirota::Printed, 2)
        .unwrap()
        .is_zero());
}

#[test]
fn bilincont_exact_at_rational_sigma() {
    for (n, d) in [(1, 3), (2, 7), (-5, 11)] {
        let sigma = ExactScalar::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)));
        let (a, b) = bilincont_sides(&sigma, 3, Hirota::Standard).unwrap();
        assert!(!a.is_zero());
        assert!(
            a.sub(&b.scale(&ExactScalar::from_i64(2))).is_zero(),
            "{n}/{d}"
        );
    }
}

#[test]
fn block_4d_is_the_limit_of_deformed_blocks() {
    let sigma = c(0.13, 0.05);
    let f = qtau_core::block::block_4d(&sigma, 4).unwrap();
    for k in 1..=4u32 {
        let vals: Vec<Complex> = [-0.02, -0.01, -0.005, -0.0025]
            .iter()
            .map(|h| deformed_block_coefficient(&sigma, *h, k).unwrap())
            .collect();
        let (lim, err) = richardson(&vals);
        let exact = f.coeff(4 * k as i32).unwrap();
        assert!(
            (&lim - exact).log10_abs() <= err.log10_abs() + 1.0,
            "k = {k}"
        );
        assert!((&(&lim - exact) / exact).log10_abs() < -6.0);
    }
}

#[test]
fn tau_limit_with_twist() {
    let (z1, z2) = (lv(0.1, 0.02), lv(0.05, 0.01));
    let l = limit_tau(&HBAR, &generic(), &z1, &z2, true).unwrap();
    assert!(l.passed() && l.fitted_order >= 1.0, "{l:?}");
    let untwisted = limit_tau(&HBAR, &generic(), &z1, &z2, false).unwrap();
    assert!(!untwisted.passed(), "{untwisted:?}");
}

#[test]
fn tau_limit_with_s_zero_tests_blocks_only() {
    let g = GilParams::new(&c(0.13, 0.05), &Complex::zero(p())).unwrap();
    let l = limit_tau(&HBAR, &g, &lv(0.1, 0.02), &lv(0.05, 0.01), true).unwrap();
    assert!(l.passed(), "{l:?}");
}

#[test]
fn deformed_side_needs_negative_h() {
    assert!(deformed_terms(&generic(), 0.01, 0, &c(0.7, 0.0)).is_err());
    assert!(limit_toda(&[0.0, -0.1], &generic(), &lv(0.1, 0.0)).is_err());
}

#[test]
fn toda_limit_scales_as_h_squared() {
    let l = limit_toda(&HBAR, &generic(), &lv(0.1, 0.02)).unwrap();
    assert!(l.passed() && (l.fitted_order - 2.0).abs() < 0.2, "{l:?}");
}

#[test]
fn qpainleve_limit_on_gil_solution() {
    let z = lv(0.1, 0.02);
    let sol = GilSolution::new(&generic()).unwrap();
    assert!(painleve_residual(&sol.jet(&z).unwrap(), &z).log10_abs() < -10.0);
    let l = limit_qpainleve(&HBAR, &sol, &z).unwrap();
    assert!(l.passed() && (l.fitted_order - 2.0).abs() < 0.2, "{l:?}");
}

#[test]
fn qpainleve_limit_reproduces_painleve_operator() {
    // w = z is not a solution; the scaled residual tends to E[w] = 2z^2 - 2z^3
    let z = lv(0.1, 0.02);
    let w = PowerSample {
        c: Complex::one(p()),
        a: Complex::one(p()),
    };
    let e = painleve_residual(&w.jet(&z).unwrap(), &z);
    let zv = z.value();
    let expect = (&zv.sqr() - &(&zv.sqr() * &zv)).scale_i64(2);
    assert!((&e - &expect).below(-45));
    let l = limit_qpainleve(&HBAR, &w, &z).unwrap();
    assert!(l.passed() && !l.at_floor(), "{l:?}");
}

#[test]
fn algebraic_solution_is_exact_at_every_h() {
    let z = lv(0.1, 0.02);
    let w = PowerSample {
        c: -Complex::one(p()),
        a: Complex::one(p()).div_i64(2),
    };
    let l = limit_qpainleve(&HBAR, &w, &z).unwrap();
    assert!(l.at_floor(), "{l:?}");
}

#[test]
fn algebraic_tau_limit() {
    let (z1, z2) = (lv(0.1, 0.02), lv(0.05, 0.01));
    for sign in [1i64, -1] {
        let d = stattau_discrepancy(-0.01, sign, &z1, &z2, 4, 10).unwrap();
        assert!(d < -3.0, "sign {sign}: {d}");
    }
}

#[test]
fn rate_fit_recovers_slope() {
    let h = [0.1, 0.01, 0.001];
    let d: Vec<f64> = h.iter().map(|x: &f64| 3.0 + 2.0 * x.log10()).collect();
    assert!((fit_order(&h, &d) - 2.0).abs() < 1e-12);
}
