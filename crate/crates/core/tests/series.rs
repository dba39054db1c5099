use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qtau_core::exact::ExactScalar;
use qtau_core::series::GradedSeries;

const ORDER: i32 = 12;

fn arb_series() -> impl Strategy<Value = GradedSeries<ExactScalar>> {
    prop::collection::vec((0i32..=ORDER, -9i64..10), 0..8).prop_map(|t| {
        GradedSeries::from_coeffs(
            t.into_iter().map(|(k, c)| (k, ExactScalar::from_i64(c))),
            ORDER,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        let one = GradedSeries::constant(ExactScalar::one(), ORDER);
        prop_assert_eq!(a.mul(&one), a.clone());
    }

    #[test]
    fn truncation_commutes_with_products(a in arb_series(), b in arb_series(), k in 0i32..ORDER) {
        prop_assert_eq!(a.mul(&b).truncate(k), a.truncate(k).mul(&b.truncate(k)).truncate(k));
    }

    #[test]
    fn scale_z_has_an_inverse(a in arb_series(), n in 1i64..20, d in 1i64..20) {
        let c = ExactScalar::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)));
        let back = a.scale_z(&c).scale_z(&c.inv().unwrap());
        prop_assert_eq!(back, a.clone());
    }

    #[test]
    fn scale_z_is_a_ring_map(a in arb_series(), b in arb_series(), n in 1i64..9) {
        let c = ExactScalar::from_i64(n);
        prop_assert_eq!(a.mul(&b).scale_z(&c), a.scale_z(&c).mul(&b.scale_z(&c)));
    }

    #[test]
    fn flipping_the_square_root_twice_is_identity(a in arb_series()) {
        prop_assert_eq!(a.flip_sqrt_branch().flip_sqrt_branch(), a.clone());
    }
}

#[test]
fn sectors_partition_a_series() {
    let a = GradedSeries::from_coeffs(
        (0..=ORDER).map(|k| (k, ExactScalar::from_i64(k as i64 + 1))),
        ORDER,
    );
    let sum = (0..4).fold(GradedSeries::zero(ORDER), |acc, r| acc.add(&a.sector(4, r)));
    assert_eq!(sum, a);
}
