//! The cohomological theta elements through their closed forms, and their
//! reconciliation with the analytic ones.
//!
//! With `mu = beta_g`, the pairing of `BF_{lambda,mu}` against
//! `v_{lambda''} (x) v_{g,mu'}` is `C_mu L_lambda` when `lambda'' = lambda` and
//! `C_mu L?_{lambda,mu}` otherwise. The cohomological elements are normalized by
//! `C_mu <phi(omega), omega*>`, so `C_mu` never enters the identities.

use super::module::{bf_formal, eigenbasis, PhiModule};
use crate::error::{Error, Result};
use crate::iwalg::GroupRingElem;
use crate::padic::linalg::dot;
use crate::padic::{Mat, PadicElem};
use crate::report::SuiteReport;
use crate::theta::{theta_ordinary, theta_pm, LFamily, Member, Mode, RankinParams};

/// `Theta^coh_{omega^+-, n}` and `Theta~^coh_{omega^+-, n}`.
#[derive(Clone, Debug)]
pub struct CohThetas {
    pub n: u32,
    pub plus: GroupRingElem,
    pub minus: GroupRingElem,
    pub plus_tilde: GroupRingElem,
    pub minus_tilde: GroupRingElem,
}

/// `C_mu = 1/(mu' - mu)` for weight-one `g` (`k_g = -1`); `None` otherwise,
/// where it stays a formal factor.
pub fn c_mu(params: &RankinParams) -> Result<Option<PadicElem>> {
    if params.k_g != -1 {
        return Ok(None);
    }
    Ok(Some(params.alpha_g.sub(&params.beta_g).inv()?))
}

/// The companion module `phi(e_1) = e_2`, `phi(e_2) = -alpha beta e_1 + (alpha + beta) e_2`,
/// with `omega = e_1` and pairing scalar 1.
pub fn companion_module(alpha: &PadicElem, beta: &PadicElem) -> Result<PhiModule> {
    let r = alpha.ring();
    let phi = Mat::from_rows(vec![vec![PadicElem::zero(r), alpha.mul(beta).neg()], vec![PadicElem::one(r), alpha.add(beta)]]);
    PhiModule::new(phi)?.with_omega(vec![PadicElem::one(r), PadicElem::zero(r)], PadicElem::one(r))
}

struct Members {
    la: GroupRingElem,
    lb: GroupRingElem,
    qa: GroupRingElem,
    qb: GroupRingElem,
}

fn members(fam: &LFamily, n: u32) -> Result<Members> {
    Ok(Members {
        la: fam.at_level(Member::Alpha, n)?,
        lb: fam.at_level(Member::Beta, n)?,
        qa: fam.at_level(Member::QAlphaBeta, n)?,
        qb: fam.at_level(Member::QBetaBeta, n)?,
    })
}

/// `(alpha^{2k} L_a + s beta^{2k} L_b - (alpha beta)^k (L?_a + s L?_b)) / (alpha - beta)`.
fn closed(fam: &LFamily, mem: &Members, k: i64, plus: bool) -> Result<GroupRingElem> {
    let (a, b) = (&fam.params.alpha_f, &fam.params.beta_f);
    let s = PadicElem::from_i64(fam.ring(), if plus { 1 } else { -1 });
    let body = mem.la.scale(&a.pow(2 * k)?).add(&mem.lb.scale(&b.pow(2 * k)?.mul(&s))).sub(&mem.qa.add(&mem.qb.scale(&s)).scale(&a.mul(b).pow(k)?));
    Ok(body.scale(&a.sub(b).inv()?))
}

/// Closed forms at level `n`: exponent `k = n + 2` for `Theta^coh`, `n + 1` for `Theta~^coh`.
pub fn coh_thetas(fam: &LFamily, n: u32) -> Result<CohThetas> {
    let mem = members(fam, n)?;
    let k = n as i64;
    Ok(CohThetas {
        n,
        plus: closed(fam, &mem, k + 2, true)?,
        minus: closed(fam, &mem, k + 2, false)?,
        plus_tilde: closed(fam, &mem, k + 1, true)?,
        minus_tilde: closed(fam, &mem, k + 1, false)?,
    })
}

/// `<L(BF_{phi^k(omega^+-)}), phi^k(omega) (x) v_{g,mu'}> / (C_mu <phi(omega), omega*>)`, assembled
/// from the eigenbasis expansion of `phi^k(omega)` in `m` and the formal BF coefficients.
pub fn coh_via_pairing(fam: &LFamily, m: &PhiModule, n: u32, k: u32, plus: bool) -> Result<GroupRingElem> {
    let (a, b) = (&fam.params.alpha_f, &fam.params.beta_f);
    let eb = eigenbasis(m, a, b)?;
    let omega = m.omega.as_ref().expect("eigenbasis checked omega");
    let s = m.pairing_scalar.as_ref().expect("eigenbasis checked the scalar");
    let w = m.phi.pow(k as i64)?.apply(omega);
    let (ca, cb) = (dot(&w, &eb.vd_alpha), dot(&w, &eb.vd_beta));
    let (bf, _) = bf_formal(a, b, k, plus)?;
    let mem = members(fam, n)?;
    let total =
        mem.la.scale(&bf[0].mul(&ca)).add(&mem.qa.scale(&bf[0].mul(&cb))).add(&mem.qb.scale(&bf[1].mul(&ca))).add(&mem.lb.scale(&bf[1].mul(&cb)));
    Ok(total.scale(&s.inv()?))
}

fn sign_name(plus: bool) -> &'static str {
    if plus {
        "+"
    } else {
        "-"
    }
}

/// The twisted difference identity and the pairing expansion at level `n`.
fn common_checks(fam: &LFamily, m: &PhiModule, n: u32, digits: i64, rep: &mut SuiteReport) -> Result<CohThetas> {
    let c = coh_thetas(fam, n)?;
    let (a, b) = (&fam.params.alpha_f, &fam.params.beta_f);
    let ab = a.mul(b);
    let la = fam.at_level(Member::Alpha, n)?;
    let lb = fam.at_level(Member::Beta, n)?;
    let e = 2 * n as i64 + 3;
    for plus in [true, false] {
        let sn = sign_name(plus);
        let (t, tt) = if plus { (&c.plus, &c.plus_tilde) } else { (&c.minus, &c.minus_tilde) };
        rep.verdict(format!("n={n} Theta^coh_{sn} from the pairing expansion"), coh_via_pairing(fam, m, n, n + 2, plus)?.agree(t, digits));
        rep.verdict(format!("n={n} Theta~^coh_{sn} from the pairing expansion"), coh_via_pairing(fam, m, n, n + 1, plus)?.agree(tt, digits));
        let lhs = t.sub(&tt.scale(&ab));
        let bb = lb.scale(&b.pow(e)?);
        let rhs = if plus { la.scale(&a.pow(e)?).sub(&bb) } else { la.scale(&a.pow(e)?).add(&bb) };
        rep.verdict(format!("n={n} twisted difference Theta^coh_{sn} - alpha beta Theta~^coh_{sn}"), lhs.agree(&rhs, digits));
    }
    Ok(c)
}

/// Distinct-sign roots: `Theta_n = 1/2 [(alpha+beta)^{-1}(Theta^coh_- - alpha beta Theta~^coh_-) + (alpha-beta)^{-1}(Theta^coh_+ - alpha beta Theta~^coh_+)]`.
pub fn reconcile_ordinary(fam: &LFamily, m: &PhiModule, n: u32, digits: i64) -> Result<SuiteReport> {
    if fam.params.mode() != Mode::Ordinary {
        return Err(Error::Invalid("the distinct-sign reconstruction needs alpha_f != -beta_f".into()));
    }
    let mut rep = SuiteReport::new("coh", "cohomological theta elements against Theta_n, alpha_f != -beta_f");
    let c = common_checks(fam, m, n, digits, &mut rep)?;
    let (a, b) = (&fam.params.alpha_f, &fam.params.beta_f);
    let ab = a.mul(b);
    let half = PadicElem::from_i64(fam.ring(), 2).inv()?;
    let dm = c.minus.sub(&c.minus_tilde.scale(&ab)).scale(&a.add(b).inv()?);
    let dp = c.plus.sub(&c.plus_tilde.scale(&ab)).scale(&a.sub(b).inv()?);
    let theta = theta_ordinary(fam, n)?.elem;
    rep.verdict(format!("n={n} distinct-sign Theta_n reconstruction"), dm.add(&dp).scale(&half).agree(&theta, digits));
    Ok(rep)
}

/// Opposite roots, `alpha_f = -beta_f`: for odd `n`, `Theta^+ = (2 alpha)^{-1} Theta^coh_+` and
/// `Theta^- = (alpha/2) Theta~^coh_+`; for even `n` the roles swap.
pub fn reconcile_supersingular(fam: &LFamily, m: &PhiModule, n: u32, digits: i64) -> Result<SuiteReport> {
    if fam.params.mode() != Mode::Supersingular {
        return Err(Error::Invalid("the opposite-root reconstruction needs alpha_f = -beta_f".into()));
    }
    let mut rep = SuiteReport::new("coh", "cohomological theta elements against Theta^+-, alpha_f = -beta_f");
    let c = common_checks(fam, m, n, digits, &mut rep)?;
    let a = &fam.params.alpha_f;
    let two = PadicElem::from_i64(fam.ring(), 2);
    let big = c.plus.scale(&two.mul(a).inv()?);
    let small = c.plus_tilde.scale(&a.div(&two)?);
    let (tp, tm) = theta_pm(fam, n)?;
    let (for_plus, for_minus, names) = if n % 2 == 1 {
        (&big, &small, ["(2 alpha)^-1 Theta^coh_+", "(alpha/2) Theta~^coh_+"])
    } else {
        (&small, &big, ["(alpha/2) Theta~^coh_+", "(2 alpha)^-1 Theta^coh_+"])
    };
    rep.verdict(format!("n={n} opposite-root Theta^+ = {}", names[0]), tp.elem.agree(for_plus, digits));
    rep.verdict(format!("n={n} opposite-root Theta^- = {}", names[1]), tm.elem.agree(for_minus, digits));
    Ok(rep)
}

/// The twisted difference identity and the reconstruction for the mode, for every level up to `fam.n_max`.
pub fn coh_theta_reconcile(fam: &LFamily, digits: i64) -> SuiteReport {
    let mut rep =
        SuiteReport::new("coh", "Theta^coh - alpha beta Theta~^coh = alpha^(2n+3) L_a -+ beta^(2n+3) L_b; reconstruction of Theta_n or Theta^+-");
    let (a, b) = (&fam.params.alpha_f, &fam.params.beta_f);
    let m = match companion_module(a, b) {
        Ok(m) => m,
        Err(e) => {
            rep.error("module", e);
            return rep;
        }
    };
    for n in 0..=fam.n_max {
        let sub = match fam.params.mode() {
            Mode::Ordinary => reconcile_ordinary(fam, &m, n, digits),
            Mode::Supersingular => reconcile_supersingular(fam, &m, n, digits),
        };
        match sub {
            Ok(s) => rep.absorb(s),
            Err(e) => rep.error(format!("n={n}"), e),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{Ring, RingSpec};
    use crate::theta::{synth_family, ValueSpectrum};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_family_gives_zero_identities() {
        let r = Ring::new(RingSpec::zp(5, 60)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let params = RankinParams::random_ordinary(&r, 2, 0, 1, &mut rng).unwrap();
        let fam = synth_family(&params, &ValueSpectrum::zero(&r, 2)).unwrap();
        let c = coh_thetas(&fam, 2).unwrap();
        assert!(c.plus.is_zero() && c.minus.is_zero() && c.plus_tilde.is_zero() && c.minus_tilde.is_zero());
        assert!(coh_theta_reconcile(&fam, 20).all_passed());
    }

    #[test]
    fn ordinary_branches() {
        let r = Ring::new(RingSpec::zp(5, 100)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let params = RankinParams::random_ordinary(&r, 3, 0, 2, &mut rng).unwrap();
        let fam = LFamily::random_ordinary(&params, 2, &mut rng).unwrap();
        let rep = coh_theta_reconcile(&fam, 40);
        assert!(rep.all_passed(), "{rep:?}");
        assert_eq!(rep.cases, 3 * 7);
        let m = companion_module(&params.alpha_f, &params.beta_f).unwrap();
        assert!(reconcile_supersingular(&fam, &m, 0, 40).is_err());
    }

    #[test]
    fn supersingular_parity_table() {
        let r = Ring::new(RingSpec::sqrt_neg_p(3, 120)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let params = RankinParams::random_supersingular(&r, &mut rng).unwrap();
        let (fam, _) = LFamily::random_signed(&params, 2, &mut rng).unwrap();
        let rep = coh_theta_reconcile(&fam, 40);
        assert!(rep.all_passed(), "{rep:?}");
        assert_eq!(rep.cases, 3 * 8);
        let m = companion_module(&params.alpha_f, &params.beta_f).unwrap();
        assert!(reconcile_ordinary(&fam, &m, 0, 40).is_err());
        assert!(c_mu(&params).unwrap().is_some());
    }
}
