use num_rational::BigRational;
use qtau_core::exact::ExactScalar;
use qtau_core::num::{Complex, Precision};
use qtau_core::sample::Sampler;
use qtau_core::symmetry::*;

const REPS: [Representation; 2] = [Representation::Surface, Representation::Letters];

fn assert_pass(name: &str, s: &TrialSummary) {
    assert!(s.passed(), "{name}: {:?}", s.failures);
}

#[test]
fn relations_hold_symbolically() {
    for rep in REPS {
        let s = verify_relations(1, 0, rep, Sampling::Symbolic, Variant::Printed);
        assert_pass("symbolic", &s);
    }
}

#[test]
fn relations_hold_on_rational_samples() {
    for rep in REPS {
        let s = verify_relations(40, 1, rep, Sampling::Rational, Variant::Printed);
        assert_pass("rational", &s);
        assert_eq!(s.trials, 40);
    }
}

#[test]
fn relations_hold_on_complex_samples() {
    for rep in REPS {
        let s = verify_relations(
            20,
            2,
            rep,
            Sampling::Numeric(Precision::digits(50)),
            Variant::Printed,
        );
        assert_pass("numeric", &s);
        assert!(s.max_log10 < -40.0);
    }
}

#[test]
fn corrupted_pi2_is_detected() {
    for rep in REPS {
        for sampling in [Sampling::Rational, Sampling::Symbolic] {
            let s = verify_relations(5, 3, rep, sampling, Variant::CorruptedPi2);
            assert!(
                s.failures.contains(&"(pi1 pi2)^2 = 1"),
                "{rep:?} {sampling:?}"
            );
            assert!(s.failures.contains(&"T = pi2^-1 s0"));
            assert!(!s.failures.contains(&"s0^2 = 1"));
        }
    }
}

#[test]
fn induced_action_matches_surface_action() {
    assert_pass("symbolic", &verify_induced_action(1, 0, Sampling::Symbolic));
    assert_pass(
        "rational",
        &verify_induced_action(30, 4, Sampling::Rational),
    );
    assert_pass(
        "numeric",
        &verify_induced_action(10, 5, Sampling::Numeric(Precision::digits(50))),
    );
}

#[test]
fn qpp_follows_from_t_maps() {
    assert_pass("symbolic", &verify_qpp(1, 0, Sampling::Symbolic));
    assert_pass("rational", &verify_qpp(30, 6, Sampling::Rational));
}

#[test]
fn tau13_and_first_order_systems() {
    assert_pass(
        "symbolic",
        &verify_tau13_and_forms(1, 0, Sampling::Symbolic, true),
    );
    assert_pass(
        "rational",
        &verify_tau13_and_forms(20, 7, Sampling::Rational, true),
    );
    assert_pass(
        "numeric",
        &verify_tau13_and_forms(5, 8, Sampling::Numeric(Precision::digits(50)), true),
    );
}

#[test]
fn perturbed_orbit_breaks_all_three() {
    let s = verify_tau13_and_forms(5, 9, Sampling::Rational, false);
    assert_eq!(s.failures.len(), 3, "{:?}", s.failures);
}

#[test]
fn printed_overline_formulas() {
    let mut s = Sampler::new(10, Precision::digits(30));
    let p = Surface {
        z: s.rational(1000),
        q: s.rational(1000),
        f: s.rational(1000),
        g: s.rational(1000),
    };
    let t = p.apply(Gen::T, Variant::Printed).unwrap();
    let one = BigRational::from_integer(1.into());
    let qz = &p.q * &p.z;
    let f = (&p.f - &qz) * (&p.f - &qz) / ((&p.f - &one) * (&p.f - &one) * &p.g);
    assert_eq!(
        t,
        Surface {
            z: qz,
            q: p.q.clone(),
            f,
            g: p.f.clone()
        }
    );
}

#[test]
fn s1_letter_row() {
    let v = |i| ExactScalar::var(i, 1);
    let l = Letters {
        t: [v(0), v(1), v(2), v(3)],
        q4: v(4),
        z4: v(5),
    };
    let out = l.apply(Gen::S1, Variant::Printed).unwrap();
    let expect =
        &(&(&v(2) * &v(2)) + &(&ExactScalar::var(5, 2) * &(&v(0) * &v(0)))) / &(&v(5) * &v(3));
    assert_eq!(out.t[1], expect);
    assert_eq!(out.z4, ExactScalar::var(5, -1));
}

#[test]
fn letter_images_are_laurent_polynomials() {
    let v = |i| ExactScalar::var(i, 1);
    let l = Letters {
        t: [v(0), v(1), v(2), v(3)],
        q4: v(4),
        z4: v(5),
    };
    for word in [
        &[Gen::T, Gen::T, Gen::T][..],
        &[Gen::TInv, Gen::TInv][..],
        &[Gen::S1, Gen::S0, Gen::S1][..],
    ] {
        let out = l.apply_word(word, Variant::Printed).unwrap();
        for t in &out.t {
            assert!(t.den().is_constant(), "{word:?}");
        }
    }
}

#[test]
fn algebraic_solution_is_fixed_by_t() {
    // u = q^(1/2), s = -1 gives G = Z^(1/2); F follows from T.
    let p = Precision::digits(50);
    let mut s = Sampler::new(11, p);
    let (z, q) = (s.z(0.1), s.q());
    let zh = z.sqrt();
    let g = zh.clone();
    let f = &q.sqrt() * &zh;
    let point = Surface {
        z: z.clone(),
        q: q.clone(),
        f,
        g,
    };
    let r = qpp_residual(&point).unwrap();
    assert!(r.below(-40), "{}", r.log10_abs());
    let up = point.apply(Gen::T, Variant::Printed).unwrap();
    let expect: Complex = &q.sqrt() * &zh;
    assert!((&up.g - &expect).below(-40));
}
