//! Seeded end-to-end verification suites shared by the command line and the tests.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fitting::{brute_force_ideal, fitting_generators, Ideal, PresentationMatrix, QElem, QuotientRing};
use crate::iwalg::{log_series, reduce_growth, GrowthSeries};
use crate::modsym::{eigen_check, eigen_symbol, three_term_check, EllipticCurve};
use crate::padic::{Fx, Ring, RingSpec};
use crate::phimod::appendix_suite;
use crate::report::SuiteReport;
use crate::theta::{
    pm_congruence_check, trace_relation_check, verify_integrality, verify_interpolation, verify_ledger, verify_reconstruct, LFamily, RankinParams,
    SignedPair,
};

/// Names accepted by [`theta_suite`].
pub const THETA_SUITES: [&str; 6] = ["reconstruct", "interp", "integrality", "ledger", "trace", "pm"];

/// Ordinary non-anomalous family over `Z_p` with `k_f = 3`, `k_g = 0`, `j = 2`.
pub fn synth_ordinary(p: u64, precision: i64, n_max: u32, seed: u64) -> Result<LFamily> {
    let r = Ring::new(RingSpec::zp(p, precision))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RankinParams::random_non_anomalous(&r, 3, 0, 2, &mut rng)?;
    LFamily::random_ordinary(&params, n_max, &mut rng)
}

/// Supersingular family over `Z_p[sqrt(-p)]` built from random `L^{++}`, `L^{--}`.
/// `precision` counts digits of `p`, so the ring carries twice as many uniformizer digits.
pub fn synth_signed(p: u64, precision: i64, n_max: u32, seed: u64) -> Result<(LFamily, SignedPair)> {
    let r = Ring::new(RingSpec::sqrt_neg_p(p, 2 * precision))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RankinParams::random_supersingular(&r, &mut rng)?;
    LFamily::random_signed(&params, n_max, &mut rng)
}

/// One theta suite by name; `pm` needs the signed pair.
pub fn theta_suite(name: &str, fam: &LFamily, pair: Option<&SignedPair>, digits: i64) -> Result<SuiteReport> {
    Ok(match name {
        "reconstruct" => verify_reconstruct(fam, digits),
        "interp" => verify_interpolation(fam, digits),
        "integrality" => verify_integrality(fam),
        "ledger" => verify_ledger(fam, digits),
        "trace" => trace_relation_check(fam, digits),
        "pm" => {
            let pair = pair.ok_or_else(|| Error::Invalid("the pm suite needs L^{++} and L^{--}".into()))?;
            let mut rep = SuiteReport::new("pm", "signed congruences and quarter sums at every level");
            for n in 0..=fam.n_max {
                match pm_congruence_check(fam, pair, n, digits) {
                    Ok(s) => rep.absorb(s),
                    Err(e) => rep.error(format!("n={n}"), e),
                }
            }
            rep
        }
        other => return Err(Error::Invalid(format!("unknown suite {other:?}; expected one of {THETA_SUITES:?}"))),
    })
}

fn random_elem(ring: &QuotientRing, rng: &mut ChaCha8Rng) -> QElem {
    let q = ring.p().pow(ring.k());
    ring.reduce((0..ring.dim()).map(|_| BigInt::from(rng.gen_range(0..q))).collect())
}

fn random_presentation(ring: &QuotientRing, rng: &mut ChaCha8Rng) -> Result<PresentationMatrix> {
    let t = rng.gen_range(1..=2);
    let r = rng.gen_range(t..=t + 1);
    let rows = (0..r).map(|_| (0..t).map(|_| random_elem(ring, rng)).collect()).collect();
    PresentationMatrix::new(ring, rows, t)
}

/// Upper unitriangular matrix with random entries above the diagonal.
fn unitriangular(ring: &QuotientRing, size: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<QElem>> {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Equal => ring.one(),
                    std::cmp::Ordering::Greater => random_elem(ring, rng),
                    std::cmp::Ordering::Less => ring.zero(),
                })
                .collect()
        })
        .collect()
}

/// Howell membership against brute-force enumeration over `F_3[X]/(X^3)` for
/// `ideals` random ideals, and `Fitt` invariants on `presentations` random
/// presentations over `Z/27[X]/omega_1`.
pub fn fitting_suite(seed: u64, ideals: usize, presentations: usize) -> SuiteReport {
    let mut rep = SuiteReport::new(
        "fitting",
        "Fitt = ideal of t x t minors; membership matches enumeration; Fitt(M + N) = Fitt(M) Fitt(N); Fitt commutes with base change and row/column operations",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let res: Result<()> = (|| {
        let small = QuotientRing::zp(3, 1, 1)?;
        let all = small.elements(27).ok_or_else(|| Error::Invalid("ring too large".into()))?;
        for i in 0..ideals {
            let gens: Vec<QElem> = (0..rng.gen_range(1..=3)).map(|_| random_elem(&small, &mut rng)).collect();
            let set = brute_force_ideal(&small, &gens)?;
            let ideal = Ideal::new(&small, gens);
            let mut mismatches = 0;
            for x in &all {
                if ideal.contains(x)?.is_yes() != set.contains(x) {
                    mismatches += 1;
                }
            }
            rep.check(format!("ideal {i} membership"), mismatches == 0, "0 mismatches", format!("{mismatches} mismatches"));
            let size_ok = BigInt::from(3u32).pow(ideal.length() as u32) == BigInt::from(set.len());
            rep.check(format!("ideal {i} length"), size_ok, format!("3^length = {}", set.len()), format!("length {}", ideal.length()));
        }
        let ring = QuotientRing::zp(3, 1, 3)?;
        for i in 0..presentations {
            let m = random_presentation(&ring, &mut rng)?;
            let n = random_presentation(&ring, &mut rng)?;
            let fm = fitting_generators(&m);
            let fn_ = fitting_generators(&n);
            let sum = fitting_generators(&m.direct_sum(&n)?);
            rep.verdict(format!("presentation {i} Fitt(M + N) = Fitt(M) Fitt(N)"), sum.equals(&fm.product(&fn_)?)?.to_verdict());
            for k in 1..ring.k() {
                let down = fitting_generators(&m.reduce_to(k)?);
                rep.verdict(format!("presentation {i} base change to p^{k}"), down.equals(&fm.reduce_to(k)?)?.to_verdict());
            }
            let left = unitriangular(&ring, m.r(), &mut rng);
            let right = unitriangular(&ring, m.t, &mut rng);
            let moved = fitting_generators(&m.transform(&left, &right)?);
            rep.verdict(format!("presentation {i} invariance under GL"), moved.equals(&fm)?.to_verdict());
        }
        Ok(())
    })();
    if let Err(e) = res {
        rep.error("fitting", e);
    }
    rep
}

/// Denominator ledgers of `reduce_growth` on the logarithm and on random
/// integral series, for `0 <= n <= n_max`.
pub fn growth_suite(p: u64, precision: i64, n_max: u32, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("growth", "reduction of an order-r series modulo omega_n lies in p^(-s-rn-delta) Lambda_n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let res: Result<()> = (|| {
        let r = Ring::new(RingSpec::zp(p, precision))?;
        for n in 0..=n_max {
            let pn = p.pow(n) as usize;
            for depth in [pn, 2 * pn, 3 * pn + 1] {
                let red = reduce_growth(&log_series(&r, depth), n, &r)?;
                let l = red.ledger();
                rep.check(format!("log depth={depth} n={n}"), l.ok, format!("<= {}", l.bound), l.denom_exp.to_string());
            }
            let coeffs = (0..2 * pn).map(|_| r.random(&mut rng, r.prec())).collect();
            let f = GrowthSeries::new(&r, Fx::from_coeffs(&r, coeffs, r.prec()), 0, 0)?;
            let l = reduce_growth(&f, n, &r)?.ledger();
            rep.check(format!("integral n={n}"), l.ok, format!("<= {}", l.bound), l.denom_exp.to_string());
        }
        Ok(())
    })();
    if let Err(e) = res {
        rep.error("growth", e);
    }
    rep
}

/// A curve with `a_p = 0` for `p` in `{3, 5}`.
pub fn supersingular_curve(p: u64) -> Option<&'static str> {
    match p {
        3 => Some("17a1"),
        5 => Some("14a1"),
        _ => None,
    }
}

/// Eigen-symbols of several curves against point counts, and the three-term
/// relation for `11a1` and, when available, a curve supersingular at `p`.
pub fn modsym_suite(p: u64, n_max: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("modsym", "T_l eigenvalues = point counts; pi(Theta_n) = a_p Theta_(n-1) - nu(Theta_(n-2))");
    let m = p.pow(3) as i64;
    for label in ["11a1", "14a1", "15a1", "17a1", "37a1"] {
        match EllipticCurve::named(label).and_then(|e| eigen_symbol(&e, 20)) {
            Ok(sym) => {
                let mut s = eigen_check(&sym, 20, m);
                s.suite = format!("{label} eigen_symbol");
                rep.absorb(s);
                let three = ["11a1"].contains(&label) || supersingular_curve(p) == Some(label);
                if three && sym.curve.conductor % p != 0 {
                    let mut s = three_term_check(&sym, p, n_max);
                    s.suite = format!("{label} three_term");
                    rep.absorb(s);
                }
            }
            Err(e) => rep.error(label, e),
        }
    }
    rep
}

/// Every suite at the given prime, levels and seed.
pub fn all_suites(p: u64, precision: i64, n_max: u32, seed: u64, digits: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("all", "every verification suite");
    match synth_ordinary(p, precision, n_max, seed) {
        Ok(fam) => {
            for name in ["reconstruct", "interp", "integrality", "ledger"] {
                match theta_suite(name, &fam, None, digits) {
                    Ok(mut s) => {
                        s.suite = format!("ordinary {}", s.suite);
                        rep.absorb(s);
                    }
                    Err(e) => rep.error(format!("ordinary {name}"), e),
                }
            }
        }
        Err(e) => rep.error("synth ordinary", e),
    }
    match synth_signed(p, precision, n_max, seed) {
        Ok((fam, pair)) => {
            for name in ["reconstruct", "interp", "integrality", "trace", "pm"] {
                match theta_suite(name, &fam, Some(&pair), digits) {
                    Ok(mut s) => {
                        s.suite = format!("signed {}", s.suite);
                        rep.absorb(s);
                    }
                    Err(e) => rep.error(format!("signed {name}"), e),
                }
            }
        }
        Err(e) => rep.error("synth signed", e),
    }
    rep.absorb(appendix_suite(p, precision, n_max.min(2), seed, digits));
    rep.absorb(fitting_suite(seed, 10, 10));
    rep.absorb(growth_suite(p, precision, n_max, seed));
    if p != 2 && p != 11 {
        rep.absorb(modsym_suite(p, n_max.clamp(2, 3)));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fitting_and_growth_pass() {
        let rep = fitting_suite(5, 5, 5);
        assert!(rep.all_passed(), "{rep:?}");
        let rep = growth_suite(3, 60, 2, 5);
        assert!(rep.all_passed(), "{rep:?}");
    }

    #[test]
    fn unknown_suite_is_an_error() {
        let fam = synth_ordinary(3, 60, 1, 1).unwrap();
        assert!(theta_suite("nope", &fam, None, 20).is_err());
        assert!(theta_suite("pm", &fam, None, 20).is_err());
    }

    #[test]
    fn modsym_at_three() {
        let rep = modsym_suite(3, 2);
        assert!(rep.all_passed(), "{rep:?}");
    }
}
