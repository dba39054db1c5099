use qtau_core::num::{Complex, Precision};
use qtau_core::sample::Sampler;
use qtau_core::tau::{
    c_equation_residuals, p_n_algebraic, p_n_coefficient, CChoice, LogVar, Tau, TauForm, TauParams,
};

const DIGITS: u32 = 50;

fn lv(x: &Complex) -> LogVar {
    LogVar::new(x).unwrap()
}

fn rel(a: &Complex, b: &Complex) -> f64 {
    (a - b).log10_abs() - b.log10_abs()
}

#[test]
fn c_functions_solve_difference_equations() {
    let mut s = Sampler::new(11, Precision::digits(DIGITS));
    for _ in 0..8 {
        let (u, q, z) = (lv(&s.u()), lv(&s.q()), lv(&s.z(0.5)));
        for ch in [CChoice::C1, CChoice::Cc] {
            for r in c_equation_residuals(ch, &u, &q, &z).unwrap() {
                assert!(r.below(-40), "{ch:?}: {r}");
            }
        }
    }
}

#[test]
fn series_forms_agree() {
    let mut s = Sampler::new(12, Precision::digits(DIGITS));
    for _ in 0..2 {
        let (u, q, sv, z) = (s.u(), s.q(), s.s(), lv(&s.z(0.03)));
        for ch in [CChoice::C1, CChoice::Cc] {
            let tau = Tau::new(
                TauParams::new(&u, &q, &sv)
                    .unwrap()
                    .with_choice(ch)
                    .with_order(6),
            );
            let d = tau.eval(TauForm::Direct, 0, &z).unwrap();
            let r = tau.eval(TauForm::Ratio, 0, &z).unwrap();
            let t = tau.eval(TauForm::Rational, 0, &z).unwrap();
            assert!(rel(&r, &d) < -40.0 && rel(&t, &d) < -40.0, "{ch:?}");
        }
    }
}

#[test]
fn u_shift_and_inversion() {
    let mut s = Sampler::new(13, Precision::digits(DIGITS));
    let (u, q, sv, z) = (s.u(), s.q(), s.s(), lv(&s.z(0.03)));
    for ch in [CChoice::C1, CChoice::Cc] {
        let params = TauParams::new(&u, &q, &sv)
            .unwrap()
            .with_choice(ch)
            .with_order(6);
        let t = Tau::new(params.clone()).value(&z).unwrap();
        let shifted = &Tau::new(params.shifted(2)).value(&z).unwrap() * &sv;
        let inverted = Tau::new(params.inverted().unwrap()).value(&z).unwrap();
        assert!(rel(&shifted, &t) < -40.0, "{ch:?} shift");
        assert!(rel(&inverted, &t) < -40.0, "{ch:?} inversion");
    }
}

#[test]
fn tau_c_direct_sum_matches_c_construction() {
    let mut s = Sampler::new(14, Precision::digits(DIGITS));
    let (u, q, sv, z) = (s.u(), s.q(), s.s(), lv(&s.z(0.03)));
    let tau = Tau::new(
        TauParams::new(&u, &q, &sv)
            .unwrap()
            .with_choice(CChoice::Cc)
            .with_order(6),
    );
    let direct = tau.tau_c_direct(&z).unwrap();
    let via_c = tau.tau_c(0, &z).unwrap();
    assert!(rel(&direct, &via_c) < -40.0);
}

#[test]
fn algebraic_point_gives_closed_form_g() {
    let p = Precision::digits(DIGITS);
    let mut s = Sampler::new(15, p);
    let q = lv(&s.q());
    let z = lv(&s.z(0.03));
    for sign in [1i64, -1] {
        let u = LogVar::from_ln(q.ln().div_i64(2));
        let params = TauParams::from_logs(u, q.clone(), Complex::from_i64(sign, p))
            .unwrap()
            .with_order(8);
        let (_, g) = Tau::new(params).fg(&z).unwrap();
        let expect = Complex::from_i64(-sign, p);
        assert!(
            (&(&g / &z.frac_pow(1, 2)) - &expect).below(-30),
            "s = {sign}"
        );
    }
}

/// `(-1)^n / ((1-u)^(2n) prod_{i<2n} (u^(1/2) q^(i/2) - u^(-1/2) q^(-i/2))^(2(2n-i)))`.
fn p_n_displayed(n: i64, u: &LogVar, q: &LogVar) -> Complex {
    if n < 0 {
        return p_n_displayed(-n, &u.inv(), q);
    }
    let p = u.precision();
    let one = Complex::one(p);
    let mut den = (&one - &u.value()).powi(2 * n);
    for i in 1..2 * n {
        let a = &u.frac_pow(1, 2) * &q.frac_pow(i, 2);
        den = &den * &(&a - &a.inv()).powi(2 * (2 * n - i));
    }
    &Complex::from_i64(if n % 2 == 0 { 1 } else { -1 }, p) / &den
}

#[test]
fn p_n_matches_displayed_product() {
    let mut s = Sampler::new(16, Precision::digits(DIGITS));
    let (u, q) = (lv(&s.u()), lv(&s.q()));
    for n in -3..=3 {
        let v = p_n_coefficient(n, &u, &q).unwrap();
        assert!(rel(&v, &p_n_displayed(n, &u, &q)) < -40.0, "n = {n}");
    }
}

#[test]
fn p_n_matches_pochhammer_ratio() {
    use qtau_core::qspecial::qpoch;
    let p = Precision::digits(DIGITS);
    let mut s = Sampler::new(17, p);
    let (u, q) = (lv(&s.u()), lv(&s.q()));
    let qv = q.value();
    let qq = [qv.clone(), qv.clone()];
    let pair =
        |x: &Complex| &qpoch(&(x * &qv), &qq).unwrap() * &qpoch(&(&x.inv() * &qv), &qq).unwrap();
    let single = |x: &Complex| qpoch(x, std::slice::from_ref(&qv)).unwrap();
    let ratio = &single(&u.value()) / &single(&u.inv().value());
    for n in -2..=2 {
        let lhs = &pair(&u.value()) / &pair(&u.mul(&q.pow(2 * n)).value());
        let rhs = &p_n_coefficient(n, &u, &q).unwrap() * &ratio.powi(2 * n);
        assert!(rel(&lhs, &rhs) < -40.0, "n = {n}");
    }
}

#[test]
fn algebraic_p_n_relation() {
    let p = Precision::digits(DIGITS);
    let mut s = Sampler::new(18, p);
    let q = lv(&s.q());
    let u = LogVar::from_ln(q.ln().div_i64(2));
    let t = &Complex::one(p) - &q.frac_pow(-1, 2);
    for n in 1..=4 {
        let lhs = p_n_algebraic(n, &q).unwrap();
        let rhs = &p_n_coefficient(n, &u, &q).unwrap() / &t.powi(2 * n);
        assert!(rel(&lhs, &rhs) < -40.0, "n = {n}");
    }
}

#[test]
fn backlund_shift_acts_as_pi2_squared() {
    let mut s = Sampler::new(19, Precision::digits(DIGITS));
    let (u, q, sv, z) = (s.u(), s.q(), s.s(), lv(&s.z(0.02)));
    let params = TauParams::new(&u, &q, &sv).unwrap().with_order(8);
    let (f0, g0) = Tau::new(params.clone()).fg(&z).unwrap();
    let (f1, g1) = Tau::new(params.shifted(1)).fg(&z).unwrap();
    let zv = z.value();
    assert!(rel(&(&g0 * &g1), &zv) < -30.0);
    assert!(rel(&(&f0 * &f1), &(&params.q.value() * &zv)) < -30.0);
}

#[test]
fn normalization_freedom() {
    let mut s = Sampler::new(20, Precision::digits(DIGITS));
    let (u, q, sv, z) = (s.u(), s.q(), s.s(), lv(&s.z(0.006)));
    let tau = Tau::new(TauParams::new(&u, &q, &sv).unwrap().with_order(10));
    let qv = &tau.params().q;
    let (zu, zd) = (qv.mul(&z), qv.inv().mul(&z));
    let [t1, t2, t3, t4] = tau.letters(&z).unwrap();
    let t1_down = tau.letters(&zd).unwrap()[0].clone();
    let (f, g) = tau.fg(&z).unwrap();
    // (T1, T3) -> a Z^b (T1, T3)
    let a = Complex::from_f64_parts(1.3, -0.4, q.precision());
    let b = Complex::from_f64_parts(0.37, 0.2, q.precision());
    let w = |x: &LogVar| &a * &x.pow_c(&b);
    let (w0, wu, wd) = (w(&z), w(&zu), w(&zd));
    let lhs = &(&z.frac_pow(1, 4) * &(&wu * &t2)) * &(&wd * &t1_down);
    let rhs = &(&w0 * &t1).sqr() + &(&z.frac_pow(1, 2) * &(&w0 * &t3).sqr());
    assert!(rel(&lhs, &rhs) < -25.0, "{}", rel(&lhs, &rhs));
    let g2 = -(&z.frac_pow(1, 2) * &(&(&w0 * &t1).sqr() / &(&w0 * &t3).sqr()));
    let f2 = -(&zu.frac_pow(1, 2) * &(&(&wu * &t2).sqr() / &(&wu * &t4).sqr()));
    assert!(rel(&g2, &g) < -40.0 && rel(&f2, &f) < -40.0);
}
