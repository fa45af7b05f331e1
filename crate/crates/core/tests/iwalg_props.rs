//! Randomized identities of the finite-level group rings.

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use theta_forge::iwalg::{all_characters, evaluate, log_series, ord_at, reduce_growth, GroupRingElem, Ord};
use theta_forge::padic::zpoly::{self, Sign};
use theta_forge::padic::{PadicElem, Ring, RingSpec};

fn zp(p: u64) -> Ring {
    Ring::new(RingSpec::zp(p, 40)).unwrap()
}

#[test]
fn omega_factorizations() {
    for p in [3u64, 5] {
        for n in 1..=3 {
            assert_eq!(*zpoly::omega(p, n), zpoly::mul(&zpoly::omega(p, n - 1), &zpoly::phi(p, n)));
            let x_omega = zpoly::mul(&[BigInt::from(0), BigInt::from(1)], &zpoly::omega(p, n));
            assert_eq!(x_omega, zpoly::mul(&zpoly::omega_pm(p, n, Sign::Plus), &zpoly::omega_pm(p, n, Sign::Minus)));
            for (s, t) in [(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)] {
                assert_eq!(*zpoly::omega(p, n), zpoly::mul(&zpoly::omega_tilde(p, n, s), &zpoly::omega_pm(p, n, t)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projection_after_trace_is_multiplication_by_p(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5]), n in 1u32..3) {
        let r = zp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = GroupRingElem::random(&r, n - 1, 30, &mut rng);
        let back = x.trace_lift().project().unwrap();
        prop_assert!(back.agree(&x.scale(&PadicElem::from_i64(&r, p as i64)), 25).is_equal());
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5]), n in 0u32..3) {
        let r = zp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = GroupRingElem::random(&r, n, 30, &mut rng);
        let y = GroupRingElem::random(&r, n, 30, &mut rng);
        for chi in all_characters(p, n) {
            let lhs = evaluate(&x.mul(&y), &chi).unwrap();
            let rhs = evaluate(&x, &chi).unwrap().mul(&evaluate(&y, &chi).unwrap());
            prop_assert!(lhs.agree(&rhs, 20).is_equal());
        }
    }

    #[test]
    fn orders_add_over_products(seed in any::<u64>(), a in 0u32..3, b in 0u32..2) {
        let p = 3;
        let n = 2;
        let r = zp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Known factors X^a and X^b times units; degrees stay below p^n, so no reduction modulo omega_n occurs.
        let x_lin = GroupRingElem::from_int_poly(&r, n, &[BigInt::from(0), BigInt::from(1)]);
        let unit = |rng: &mut ChaCha8Rng| {
            let u0 = BigInt::from(rng.gen_range(1..p));
            let c: Vec<BigInt> = (0..2).map(|_| BigInt::from(rng.gen_range(0..1000u64) * p)).collect();
            GroupRingElem::from_int_poly(&r, n, &[u0, c[0].clone(), c[1].clone()])
        };
        let pow = |k: u32| (0..k).fold(GroupRingElem::one(&r, n), |acc, _| acc.mul(&x_lin));
        let x = pow(a).mul(&unit(&mut rng));
        let y = pow(b).mul(&unit(&mut rng));
        let chi = all_characters(p, n)[0];
        let (ox, oy, oxy) = (ord_at(&x, &chi).unwrap(), ord_at(&y, &chi).unwrap(), ord_at(&x.mul(&y), &chi).unwrap());
        if let (Ord::Exact(i), Ord::Exact(j), Ord::Exact(k)) = (ox, oy, oxy) {
            prop_assert_eq!(i + j, k);
            prop_assert_eq!((i, j), (a, b));
        } else {
            prop_assert!(false, "orders not finite: {:?} {:?} {:?}", ox, oy, oxy);
        }
    }

    #[test]
    fn reduction_respects_the_growth_bound(p in prop::sample::select(vec![3u64, 5]), n in 0u32..3, extra in 0usize..30) {
        let r = zp(p);
        let depth = p.pow(n) as usize + extra;
        let red = reduce_growth(&log_series(&r, depth), n, &r).unwrap();
        prop_assert!(red.ledger().ok, "{:?}", red.ledger());
    }
}
