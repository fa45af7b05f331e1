//! Randomized ring axioms, root lifting and cyclotomic identities.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use theta_forge::padic::{hensel_unit_root, CycloRing, PadicElem, Ring, RingSpec};

fn ring(kind: u8, p: u64) -> Ring {
    let spec = if kind == 0 { RingSpec::zp(p, 30) } else { RingSpec::sqrt_neg_p(p, 30) };
    Ring::new(spec).unwrap()
}

fn elem(r: &Ring, rng: &mut ChaCha8Rng) -> PadicElem {
    PadicElem::from_oelem(r, &r.random(rng, r.prec()), r.prec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associativity_and_distributivity(seed in any::<u64>(), kind in 0u8..2, p in prop::sample::select(vec![3u64, 5, 7])) {
        let r = ring(kind, p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (elem(&r, &mut rng), elem(&r, &mut rng), elem(&r, &mut rng));
        prop_assert!(a.mul(&b).mul(&c).agree(&a.mul(&b.mul(&c)), 20).is_equal() || a.mul(&b).mul(&c).is_exact_zero());
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        prop_assert!(!matches!(lhs.agree(&rhs, 20), theta_forge::padic::Verdict::Unequal));
        prop_assert!(!matches!(a.add(&b).agree(&b.add(&a), 20), theta_forge::padic::Verdict::Unequal));
    }

    #[test]
    fn unit_root_satisfies_vieta(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5, 7])) {
        let r = Ring::new(RingSpec::zp(p, 40)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a_p = PadicElem::from_oelem(&r, &r.random_unit(&mut rng, r.prec()), r.prec());
        let c = elem(&r, &mut rng).mul_int(p as i64);
        let alpha = hensel_unit_root(&a_p, &c).unwrap();
        let beta = a_p.sub(&alpha);
        prop_assert!(alpha.add(&beta).agree(&a_p, 35).is_equal());
        prop_assert!(alpha.mul(&beta).agree(&c, 35).is_equal() || c.is_exact_zero());
    }

    #[test]
    fn roots_of_unity_have_the_right_order(p in prop::sample::select(vec![3u64, 5]), m in 1u32..3) {
        let r = Ring::new(RingSpec::zp(p, 20)).unwrap();
        let cr = CycloRing::new(&r, m);
        let z = cr.zeta();
        prop_assert!(z.pow(p.pow(m)).agree(&cr.one(), 15).is_equal());
        prop_assert!(!z.pow(p.pow(m - 1)).agree(&cr.one(), 15).is_equal());
    }
}
