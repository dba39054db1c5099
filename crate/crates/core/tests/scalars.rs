use num_bigint::BigInt;
use proptest::prelude::*;
use qtau_core::exact::poly::mono_var;
use qtau_core::exact::{ExactScalar, Poly};
use qtau_core::num::{Complex, Precision};
use qtau_core::Error;

fn poly_from(terms: &[(i32, i32, i64)]) -> Poly {
    Poly::from_terms(terms.iter().map(|&(i, j, c)| {
        let m = qtau_core::exact::poly::mono_mul(&mono_var(0, i), &mono_var(1, j));
        (m, BigInt::from(c))
    }))
}

fn arb_poly(terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-2i32..4, -2i32..4, -6i64..7), 1..terms).prop_map(|t| poly_from(&t))
}

fn arb_scalar() -> impl Strategy<Value = ExactScalar> {
    (arb_poly(4), arb_poly(3))
        .prop_filter_map("nonzero denominator", |(n, d)| ExactScalar::new(n, d).ok())
}

fn point() -> [Complex; 2] {
    let p = Precision::digits(50);
    [
        Complex::from_f64_parts(0.731, 0.217, p),
        Complex::from_f64_parts(-0.412, 0.903, p),
    ]
}

fn close(a: &Complex, b: &Complex) -> bool {
    let scale = a.log10_abs().max(b.log10_abs()).max(0.0);
    (a - b).log10_abs() < scale - 48.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        if let Some(inv) = x.inv() {
            prop_assert!((&x * &inv).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in arb_scalar(), y in arb_scalar()) {
        let v = point();
        if let (Ok(a), Ok(b)) = (x.eval(&v), y.eval(&v)) {
            if let Ok(s) = (&x + &y).eval(&v) {
                prop_assert!(close(&s, &(&a + &b)));
            }
            if let Ok(m) = (&x * &y).eval(&v) {
                prop_assert!(close(&m, &(&a * &b)));
            }
        }
    }

    #[test]
    fn representation_is_canonical(x in arb_scalar(), y in arb_scalar()) {
        // x = (x y) / y whenever y is invertible, as literal structural equality
        if let Some(yi) = y.inv() {
            prop_assert_eq!(&(&x * &y) * &yi, x);
        }
    }
}

#[test]
fn normalization_examples() {
    let a4 = || Poly::var(0, 4);
    let one = Poly::one();
    let x = ExactScalar::new(&Poly::var(0, 8) - &one, &a4() - &one).unwrap();
    assert_eq!(x, ExactScalar::from_poly(&a4() + &one));
    assert!(ExactScalar::new(Poly::zero(), a4()).unwrap().is_zero());
    let half = ExactScalar::new(a4().scale(&BigInt::from(2)), Poly::from_i64(4)).unwrap();
    assert_eq!(half, &ExactScalar::var(0, 4) / &ExactScalar::from_i64(2));
    assert_eq!(
        ExactScalar::new(one.clone(), Poly::zero()).err(),
        Some(Error::ZeroDenominator)
    );
}

#[test]
fn evaluation_examples() {
    let p = Precision::digits(30);
    let one = Poly::one();
    let x = ExactScalar::new(&Poly::var(0, 4) - &one, &Poly::var(0, 4) + &one).unwrap();
    let v = x.eval(&[Complex::zero(p), Complex::one(p)]).unwrap();
    assert_eq!(v, Complex::from_i64(-1, p));
    let u = ExactScalar::var(1, 4)
        .eval(&[Complex::one(p), Complex::from_i64(2, p)])
        .unwrap();
    assert_eq!(u, Complex::from_i64(16, p));
    let pole = ExactScalar::new(one.clone(), &one - &Poly::var(1, 4)).unwrap();
    assert_eq!(
        pole.eval(&[Complex::one(p), Complex::one(p)]).err(),
        Some(Error::DenominatorVanishes)
    );
}
