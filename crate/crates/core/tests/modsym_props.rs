//! Modular symbols: relations, Hecke algebra, eigen-symbols and the projection to `Q[G_n]`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use theta_forge::modsym::{ap_oracle, eigen_check, eigen_symbol, project_units, three_term_check, unit_convolution, EllipticCurve, ManinSpace};

#[test]
fn hecke_algebra_is_commutative() {
    for n in [11u64, 14, 15, 17, 20, 37] {
        let m = ManinSpace::new(n).unwrap();
        assert!(m.relations_hold());
        let ops: Vec<_> = [2, 3, 5, 7].iter().map(|&l| m.hecke(l).unwrap()).chain([m.star()]).collect();
        for a in &ops {
            for b in &ops {
                assert!(theta_forge::modsym::space::commute(a, b), "N={n}");
            }
        }
    }
}

#[test]
fn plus_space_of_eleven_is_cut_out_once() {
    // Failure to isolate would surface as an error from eigen_symbol.
    let sym = eigen_symbol(&EllipticCurve::named("11a1").unwrap(), 20).unwrap();
    assert_eq!(sym.eigenvalues.iter().find(|e| e.0 == 5).unwrap().1, 1);
}

#[test]
fn eigenvalues_for_three_reduction_types() {
    // 11a1 is ordinary at 3 and 5, 17a1 is supersingular at 3, 14a1 is supersingular at 5.
    assert_ne!(ap_oracle(&EllipticCurve::named("11a1").unwrap(), 3).unwrap() % 3, 0);
    for label in ["11a1", "14a1", "15a1", "17a1", "37a1"] {
        let sym = eigen_symbol(&EllipticCurve::named(label).unwrap(), 20).unwrap();
        for m in [27, 125] {
            let rep = eigen_check(&sym, 20, m);
            assert!(rep.all_passed(), "{label}: {rep:?}");
        }
    }
}

#[test]
fn three_term_relation_at_level_three() {
    let sym = eigen_symbol(&EllipticCurve::named("11a1").unwrap(), 20).unwrap();
    let rep = three_term_check(&sym, 3, 3);
    assert!(rep.all_passed(), "{rep:?}");
}

fn random_function(m: u64, p: u64, rng: &mut ChaCha8Rng) -> BTreeMap<u64, BigRational> {
    let mut out = BTreeMap::new();
    for a in (1..m).filter(|a| a % p != 0) {
        if rng.gen_bool(0.3) {
            out.insert(a, BigRational::new(rng.gen_range(-20i64..20).into(), rng.gen_range(1i64..5).into()));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn projection_is_a_ring_homomorphism(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5]), n in 0u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = p.pow(n + 1);
        let f = random_function(m, p, &mut rng);
        let g = random_function(m, p, &mut rng);
        let lhs = project_units(p, n, &unit_convolution(m, &f, &g));
        let rhs = project_units(p, n, &f).mul(&project_units(p, n, &g)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum: BTreeMap<u64, BigRational> = f.keys().chain(g.keys()).map(|&a| {
            let z = BigRational::from_integer(0.into());
            (a, f.get(&a).unwrap_or(&z) + g.get(&a).unwrap_or(&z))
        }).collect();
        prop_assert_eq!(project_units(p, n, &sum), project_units(p, n, &f).add(&project_units(p, n, &g)).unwrap());
    }
}
