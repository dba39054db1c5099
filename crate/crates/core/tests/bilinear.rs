use qtau_core::bilinear::*;
use qtau_core::num::{Complex, Precision};
use qtau_core::sample::Sampler;
use qtau_core::tau::{LogVar, Tau, TauParams};

const DIGITS: u32 = 50;

fn lv(x: &Complex) -> LogVar {
    LogVar::new(x).unwrap()
}

#[test]
fn main_relation_exact_through_z3() {
    let r = ExactRing::new();
    for order in 0..=3 {
        let res = canonical(&bilinear_residual_main(&r, order, Sectors::All).unwrap());
        assert!(res.is_zero(), "order {order}");
    }
}

#[test]
fn residual_vanishes_in_integer_and_half_integer_powers() {
    let ring = NumericRing::new(
        lv(&Complex::from_f64_parts(
            0.41,
            -0.2,
            Precision::digits(DIGITS),
        )),
        lv(&Complex::from_f64_parts(
            0.5,
            0.1,
            Precision::digits(DIGITS),
        )),
    );
    let res = bilinear_residual_main(&ring, 6, Sectors::All).unwrap();
    for r in [0, 2] {
        assert!(res.sector(4, r).max_log10() < -40.0, "zeta^{r} mod 4");
    }
}

#[test]
fn dropping_half_sector_breaks_relation() {
    let r = ExactRing::new();
    let res = canonical(&bilinear_residual_main(&r, 2, Sectors::WithoutHalf).unwrap());
    assert!(!res.is_zero());
}

#[test]
fn main_relation_numeric() {
    let mut s = Sampler::new(21, Precision::digits(DIGITS));
    for _ in 0..2 {
        let ring = NumericRing::new(lv(&s.u()), lv(&s.q()));
        let res = bilinear_residual_main(&ring, 8, Sectors::All).unwrap();
        assert!(res.max_log10() < -40.0, "{}", res.max_log10());
    }
}

#[test]
fn numeric_and_telescoped_weights_agree() {
    let mut s = Sampler::new(22, Precision::digits(DIGITS));
    let (u, q) = (lv(&s.u()), lv(&s.q()));
    let ring = NumericRing::new(u.clone(), q.clone());
    for k in -4..=4 {
        let a = weight(&ring, k).unwrap();
        let b = weight_from_pochhammers(&u, &q, k).unwrap();
        assert!((&(&a - &b) / &b).below(-40), "k = {k}");
    }
}

#[test]
fn algebraic_identity_exact() {
    let r = ExactRing::new();
    for sign in [1, -1] {
        let res = canonical(&algebraic_identity_residual(&r, 4, sign).unwrap());
        assert!(res.is_zero(), "sign {sign}");
    }
}

#[test]
fn beta_gamma_closed_forms() {
    let rec = beta_gamma_recursion(8);
    for (k, (b, g)) in rec.iter().enumerate() {
        let (cb, cg) = beta_gamma_closed(k as i32);
        assert_eq!((b, g), (&cb, &cg), "k = {k}");
    }
}

#[test]
fn generic_base_relations_as_observed() {
    let mut s = Sampler::new(23, Precision::digits(DIGITS));
    for _ in 0..2 {
        let u = s.u();
        let (q1, q2) = s.q_pair();
        let series = GenericBase::new(&u, &q1, &q2).unwrap().series(3).unwrap();
        let (lz, hats) = series.observed_residuals();
        assert!(lz.max_log10() < -40.0 && hats.max_log10() < -40.0);
    }
}

#[test]
fn generic_base_lozenge_differs_from_hats_as_printed() {
    let mut s = Sampler::new(24, Precision::digits(DIGITS));
    let u = s.u();
    let (q1, q2) = s.q_pair();
    let (a, b) = GenericBase::new(&u, &q1, &q2)
        .unwrap()
        .residuals(2)
        .unwrap();
    assert!(a.max_log10() > -5.0 && b.max_log10() > -5.0);
}

#[test]
fn generic_base_rejects_wrong_sector() {
    let p = Precision::digits(30);
    let u = Complex::from_f64_parts(0.4, 0.1, p);
    let q = Complex::from_f64_parts(0.5, 0.0, p);
    assert!(GenericBase::new(&u, &q, &q).is_err());
}

#[test]
fn two_core_series_is_triangular() {
    let c = two_core_series(48, Precision::digits(10));
    let exps: Vec<i32> = c.terms().map(|(k, _)| k).collect();
    assert_eq!(exps, vec![0, 4, 12, 24, 40]);
}

#[test]
fn qtoda_and_qpp_hold_for_tau() {
    let mut s = Sampler::new(25, Precision::digits(DIGITS));
    let params = TauParams::new(&s.u(), &s.q(), &s.s())
        .unwrap()
        .with_order(10);
    let tau = Tau::new(params);
    let z = lv(&s.z(0.006));
    assert!(qtoda_residual(&tau, &z).unwrap().below(-25));
    assert!(qpp_residual(&tau, &z).unwrap().below(-25));
}

#[test]
fn fiber_base_relation_fails() {
    let p = Precision::digits(30);
    let mut s = Sampler::new(26, p);
    let (u, q, z) = (s.u(), Complex::from_f64_parts(0.5, 0.0, p), s.z(0.3));
    let (l, r) = fiber_base_sides(&u, &q, &z, 6).unwrap();
    assert!((&(&l - &r) / &l).log10_abs() > -6.0);
}

#[test]
fn generic_base_hats_specialize_to_main_relation() {
    let mut s = Sampler::new(27, Precision::digits(DIGITS));
    let (u, q) = (s.u(), s.q());
    let series = GenericBase::new(&u, &q.inv(), &q)
        .unwrap()
        .series(3)
        .unwrap();
    assert!(series.observed_residuals().1.max_log10() < -40.0);
}
