//! The combined appendix suite on seeded synthetic data.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::coh::coh_theta_reconcile;
use super::galois::{all_galois_characters, gauss_norm, gauss_sum};
use super::module::{eigenbasis_check, phi_power_check, PhiModule};
use super::pairing::{pairing_check, script_check, DualExpTable};
use crate::error::Result;
use crate::padic::cyclo::units_mod;
use crate::padic::{PadicElem, Ring, RingSpec};
use crate::report::SuiteReport;
use crate::theta::{LFamily, RankinParams};

fn random_unit(r: &Ring, rng: &mut ChaCha8Rng) -> PadicElem {
    PadicElem::from_oelem(r, &r.random_unit(rng, r.prec()), r.prec())
}

fn run(rep: &mut SuiteReport, name: &str, f: impl FnOnce() -> Result<SuiteReport>) {
    match f() {
        Ok(s) => rep.absorb(s),
        Err(e) => rep.error(name, e),
    }
}

/// Eigenbases, the power recursion, both pairing evaluators, both character
/// lemmas, Gauss sums and the cohomological reconciliation at levels `<= n_max`.
pub fn appendix_suite(p: u64, precision: i64, n_max: u32, seed: u64, digits: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("appendix", "phi-module linear algebra, finite-level pairings and cohomological theta elements");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = match Ring::new(RingSpec::zp(p, precision)) {
        Ok(r) => r,
        Err(e) => {
            rep.error("ring", e);
            return rep;
        }
    };

    // Eigenform data with a unit root and a root of valuation one.
    let alpha = random_unit(&r, &mut rng);
    let beta = random_unit(&r, &mut rng).mul_int(p as i64);
    run(&mut rep, "eigenform", || {
        let m = PhiModule::random_eigenform(&alpha, &beta, &mut rng)?;
        let mut s = eigenbasis_check(&m, &alpha, &beta, digits)?;
        s.absorb(phi_power_check(&m, &alpha, &beta, 8, digits)?);
        Ok(s)
    });

    // Pairings on ranks 1 and 2.
    for d in [1usize, 2] {
        run(&mut rep, &format!("pairing d={d}"), || {
            let m = PhiModule::random(&r, d, &mut rng)?;
            let v: Vec<PadicElem> = (0..d).map(|_| random_unit(&r, &mut rng)).collect();
            let mut s = SuiteReport::new("pairing", "");
            for n in 0..=n_max {
                let t = DualExpTable::random_equivariant(&r, n, d, &mut rng)?;
                s.absorb(pairing_check(&m, &v, &t, digits)?);
                if n >= 1 {
                    s.absorb(script_check(&m, &v, &t, digits)?);
                }
                if n >= 1 {
                    let free = DualExpTable::random(&r, n, d, &mut rng)?;
                    s.absorb(pairing_check(&m, &v, &free, digits)?);
                }
            }
            Ok(s)
        });
    }

    // Gauss sums.
    run(&mut rep, "gauss", || {
        let mut s = SuiteReport::new("gauss", "tau(psi) tau(psi^-1) = psi(-1) p^m; sigma_a tau(psi) = psi(a)^-1 tau(psi) for tame psi");
        for psi in all_galois_characters(p, n_max.max(1)) {
            if psi.is_trivial() {
                continue;
            }
            let m = psi.conductor();
            let t = gauss_sum(&r, &psi, m)?;
            let ti = gauss_sum(&r, &psi.inverse(), m)?;
            let tag = format!("p={p} psi=(u={},b={}) m={m}", psi.u, psi.b);
            s.verdict(format!("{tag} norm"), t.mul(&ti).agree(&gauss_norm(&r, &psi, m), digits));
            if psi.b != 0 {
                continue;
            }
            let inv = psi.inverse();
            let ok = units_mod(p, psi.n)
                .into_iter()
                .try_fold(true, |acc, a| -> Result<bool> { Ok(acc && t.conj(a)?.agree(&t.mul(&inv.value(&r, a)), digits).is_equal()) })?;
            s.check(format!("{tag} conjugates"), ok, "psi(a)^-1 tau(psi)", "mismatch");
        }
        Ok(s)
    });

    // Reconciliation on an ordinary and a supersingular family.
    run(&mut rep, "coh ordinary", || {
        let params = RankinParams::random_ordinary(&r, 3, 0, 2, &mut rng)?;
        let fam = LFamily::random_ordinary(&params, n_max, &mut rng)?;
        Ok(coh_theta_reconcile(&fam, digits))
    });
    run(&mut rep, "coh supersingular", || {
        let rs = Ring::new(RingSpec::sqrt_neg_p(p, 2 * precision))?;
        let params = RankinParams::random_supersingular(&rs, &mut rng)?;
        let (fam, _) = LFamily::random_signed(&params, n_max, &mut rng)?;
        Ok(coh_theta_reconcile(&fam, digits))
    });
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appendix_suite_at_three() {
        let rep = appendix_suite(3, 80, 2, 1, 30);
        assert!(rep.all_passed(), "{rep:?}");
    }
}
