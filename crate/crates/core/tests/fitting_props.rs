//! Randomized Fitting-ideal invariants against brute-force enumeration.

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use theta_forge::fitting::{brute_force_ideal, determinant, fitting_generators, Ideal, PresentationMatrix, QElem, QuotientRing};

fn elem(r: &QuotientRing, rng: &mut ChaCha8Rng) -> QElem {
    let q = r.p().pow(r.k());
    r.reduce((0..r.dim()).map(|_| BigInt::from(rng.gen_range(0..q))).collect())
}

fn matrix(r: &QuotientRing, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<QElem>> {
    (0..rows).map(|_| (0..cols).map(|_| elem(r, rng)).collect()).collect()
}

/// Cofactor expansion along the first row.
fn laplace(r: &QuotientRing, m: &[Vec<QElem>]) -> QElem {
    if m.is_empty() {
        return r.one();
    }
    let mut acc = r.zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<QElem>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = r.mul(&m[0][j], &laplace(r, &minor));
        acc = if j % 2 == 0 { r.add(&acc, &term) } else { r.sub(&acc, &term) };
    }
    acc
}

fn same(a: &Ideal, b: &Ideal) -> bool {
    a.equals(b).unwrap().is_yes()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn howell_membership_matches_enumeration(seed in any::<u64>(), count in 1usize..4) {
        let r = QuotientRing::zp(3, 1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<QElem> = (0..count).map(|_| elem(&r, &mut rng)).collect();
        let set = brute_force_ideal(&r, &gens).unwrap();
        let ideal = Ideal::new(&r, gens);
        for x in r.elements(27).unwrap() {
            prop_assert_eq!(ideal.contains(&x).unwrap().is_yes(), set.contains(&x));
        }
    }

    #[test]
    fn berkowitz_agrees_with_cofactor_expansion(seed in any::<u64>(), size in 1usize..5, n in 0u32..2) {
        let r = QuotientRing::zp(3, n, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = matrix(&r, size, size, &mut rng);
        prop_assert_eq!(determinant(&r, &m), laplace(&r, &m));
    }

    #[test]
    fn cyclic_modules_and_zero_rows(seed in any::<u64>()) {
        let r = QuotientRing::zp(3, 1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = elem(&r, &mut rng);
        let pm = PresentationMatrix::new(&r, vec![vec![a.clone()]], 1).unwrap();
        prop_assert!(same(&fitting_generators(&pm), &Ideal::new(&r, vec![a])));
        let m = PresentationMatrix::new(&r, matrix(&r, 2, 2, &mut rng), 2).unwrap();
        let mut rows = m.entries.clone();
        rows.push(vec![r.zero(), r.zero()]);
        let padded = PresentationMatrix::new(&r, rows, 2).unwrap();
        prop_assert!(same(&fitting_generators(&m), &fitting_generators(&padded)));
    }

    #[test]
    fn direct_sums_base_change_and_operations(seed in any::<u64>()) {
        let r = QuotientRing::zp(3, 1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = PresentationMatrix::new(&r, matrix(&r, 2, 1, &mut rng), 1).unwrap();
        let n = PresentationMatrix::new(&r, matrix(&r, 2, 2, &mut rng), 2).unwrap();
        let fm = fitting_generators(&m);
        let fn_ = fitting_generators(&n);
        prop_assert!(same(&fitting_generators(&m.direct_sum(&n).unwrap()), &fm.product(&fn_).unwrap()));
        prop_assert!(same(&fitting_generators(&n.reduce_to(1).unwrap()), &fn_.reduce_to(1).unwrap()));
        // An elementary row operation and a column swap.
        let c = elem(&r, &mut rng);
        let left = vec![vec![r.one(), c], vec![r.zero(), r.one()]];
        let right = vec![vec![r.zero(), r.one()], vec![r.one(), r.zero()]];
        prop_assert!(same(&fitting_generators(&n.transform(&left, &right).unwrap()), &fn_));
    }

    #[test]
    fn membership_is_monotone_in_precision(seed in any::<u64>()) {
        let r = QuotientRing::zp(3, 1, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<QElem> = (0..2).map(|_| elem(&r, &mut rng)).collect();
        let ideal = Ideal::new(&r, gens.clone());
        let x = r.add(&r.mul(&gens[0], &elem(&r, &mut rng)), &r.mul(&gens[1], &elem(&r, &mut rng)));
        let y = elem(&r, &mut rng);
        for z in [x, y] {
            if ideal.contains(&z).unwrap().is_yes() {
                for k in 1..4 {
                    prop_assert!(ideal.reduce_to(k).unwrap().contains(&r.reduce_to(&z, k)).unwrap().is_yes());
                }
            }
        }
    }
}
