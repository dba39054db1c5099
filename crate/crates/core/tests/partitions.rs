use num_bigint::BigUint;
use proptest::prelude::*;
use qtau_core::partitions::{partitions_of, partitions_up_to, Partition};
use qtau_core::Error;

/// Euler's pentagonal recurrence `p(n) = sum_k (-1)^(k+1) (p(n - k(3k-1)/2) + p(n - k(3k+1)/2))`.
fn pentagonal(nmax: usize) -> Vec<i64> {
    let mut p = vec![0i64; nmax + 1];
    p[0] = 1;
    for n in 1..=nmax {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[n] += sign * p[n - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= n {
                p[n] += sign * p[n - g2];
            }
            k += 1;
        }
    }
    p
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |a, k| a * k)
}

#[test]
fn counts_match_the_pentagonal_recurrence() {
    let p = pentagonal(20);
    let all = partitions_up_to(20);
    for n in 0..=20 {
        assert_eq!(all[n].len() as i64, p[n], "n = {n}");
    }
    assert_eq!(partitions_of(12).unwrap().len(), 77);
}

#[test]
fn squared_dimensions_sum_to_factorial() {
    // dim lambda = n! / prod hooks
    for n in 1..=10u32 {
        let mut total = BigUint::from(0u32);
        for l in partitions_of(n as i64).unwrap() {
            let hooks = l
                .cells()
                .fold(BigUint::from(1u32), |a, (i, j)| a * (l.hook(i, j) as u32));
            let dim = factorial(n) / hooks;
            total += &dim * &dim;
        }
        assert_eq!(total, factorial(n), "n = {n}");
    }
}

#[test]
fn negative_size_rejected() {
    assert_eq!(partitions_of(-1).err(), Some(Error::NegativeSize));
}

fn arb_partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..8, 0..7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(&v).unwrap()
    })
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(l in arb_partition()) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
    }

    #[test]
    fn hooks_are_arm_plus_leg_plus_one(l in arb_partition()) {
        for (i, j) in l.cells() {
            prop_assert_eq!(l.hook(i, j), l.arm(i, j) + l.leg(i, j) + 1);
            prop_assert!(l.hook(i, j) >= 1);
        }
    }

    #[test]
    fn arm_and_leg_swap_under_conjugation(l in arb_partition()) {
        let c = l.conjugate();
        for (i, j) in l.cells() {
            prop_assert_eq!(l.arm(i, j), c.leg(j, i));
        }
    }
}
