//! Randomized phi-module, pairing and cohomological theta identities.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use theta_forge::padic::{PadicElem, Ring, RingSpec};
use theta_forge::phimod::{coh_theta_reconcile, eigenbasis_check, pairing_check, phi_power_check, DualExpTable, PhiModule};
use theta_forge::suites::{synth_ordinary, synth_signed};

fn unit(r: &Ring, rng: &mut ChaCha8Rng) -> PadicElem {
    PadicElem::from_oelem(r, &r.random_unit(rng, r.prec()), r.prec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn eigenforms_and_powers(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5])) {
        let r = Ring::new(RingSpec::zp(p, 80)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = unit(&r, &mut rng);
        let beta = unit(&r, &mut rng).mul_int(p as i64);
        let m = PhiModule::random_eigenform(&alpha, &beta, &mut rng).unwrap();
        prop_assert!(eigenbasis_check(&m, &alpha, &beta, 30).unwrap().all_passed());
        prop_assert!(phi_power_check(&m, &alpha, &beta, 8, 30).unwrap().all_passed());
    }

    #[test]
    fn pairings_on_equivariant_tables(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5]), d in 1usize..3, n in 0u32..3) {
        let r = Ring::new(RingSpec::zp(p, 60)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = PhiModule::random(&r, d, &mut rng).unwrap();
        let v: Vec<PadicElem> = (0..d).map(|_| unit(&r, &mut rng)).collect();
        let t = DualExpTable::random_equivariant(&r, n, d, &mut rng).unwrap();
        let rep = pairing_check(&m, &v, &t, 25).unwrap();
        prop_assert!(rep.all_passed(), "{:?}", rep);
    }

    #[test]
    fn coherent_thetas(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5])) {
        let fam = synth_ordinary(p, 100, 2, seed).unwrap();
        let rep = coh_theta_reconcile(&fam, 40);
        prop_assert!(rep.all_passed(), "{:?}", rep);
        let (fam, _) = synth_signed(p, 60, 2, seed).unwrap();
        let rep = coh_theta_reconcile(&fam, 40);
        prop_assert!(rep.all_passed(), "{:?}", rep);
    }
}
