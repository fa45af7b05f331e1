//! Identities of the signed theta elements in the case `alpha_f = -beta_f`.

use super::element::theta_pm;
use super::family::{LFamily, Member, SignedPair};
use super::params::Mode;
use crate::error::{Error, Result};
use crate::iwalg::{pollack_log_trunc, GroupRingElem};
use crate::padic::zpoly::{self, Sign};
use crate::padic::PadicElem;
use crate::report::SuiteReport;

/// Reduction of `x` modulo `omega_n`.
fn at(x: &GroupRingElem, n: u32) -> GroupRingElem {
    GroupRingElem::from_fx(x.ring(), n, x.fx())
}

/// `Theta^+_n = -nu_n(Theta^+_{n-1})` for even `n >= 2` and
/// `Theta^-_n = -nu_n(Theta^-_{n-1})` for odd `n`, for every `1 <= n <= n_max`.
pub fn trace_relation_check(fam: &LFamily, digits: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("trace", "Theta^+_n = -nu_n(Theta^+_(n-1)) (n even), Theta^-_n = -nu_n(Theta^-_(n-1)) (n odd)");
    if fam.params.mode() != Mode::Supersingular {
        rep.error("mode", Error::Invalid("signed theta elements need alpha_f = -beta_f".into()));
        return rep;
    }
    let mut prev = match theta_pm(fam, 0) {
        Ok(t) => t,
        Err(e) => {
            rep.error("n=0", e);
            return rep;
        }
    };
    for n in 1..=fam.n_max {
        let cur = match theta_pm(fam, n) {
            Ok(t) => t,
            Err(e) => {
                rep.error(format!("n={n}"), e);
                return rep;
            }
        };
        let (name, now, before) = if n % 2 == 0 { ("+", &cur.0, &prev.0) } else { ("-", &cur.1, &prev.1) };
        let sum = now.elem.add(&before.elem.trace_lift());
        rep.verdict(format!("n={n} Theta^{name}_n + nu_n(Theta^{name}_(n-1)) = 0"), sum.fx().zero_verdict(fam.ring(), digits));
        prev = cur;
    }
    rep
}

/// The congruences with `omega~^{+-}_n`, the half-logarithm congruences and the
/// defining quarter-sum identities at level `n`.
pub fn pm_congruence_check(fam: &LFamily, pair: &SignedPair, n: u32, digits: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        "pm",
        "(omega~^+)^2 L^{++} and (omega~^-)^2 L^{--} against Theta^+- mod omega_n; (-p)^(n+1) (log^+)^2 L^{++} = Theta^+; (-p)^(n+2) (log^-)^2 L^{--} = Theta^-; quarter sums",
    );
    let params = &fam.params;
    if params.mode() != Mode::Supersingular {
        return Err(Error::Invalid("signed theta elements need alpha_f = -beta_f".into()));
    }
    if n > fam.n_max || n > pair.lpp.level() {
        return Err(Error::LevelMismatch(n, fam.n_max));
    }
    let r = fam.ring();
    let p = r.p_u64();
    let (tp, tm) = theta_pm(fam, n)?;
    let lpp = at(&pair.lpp, n);
    let lmm = at(&pair.lmm, n);
    let minus_p = PadicElem::from_i64(r, -(p as i64));

    // Congruences with the integral polynomials tilde omega_n^{+-}.
    let wp = GroupRingElem::from_int_poly(r, n, &zpoly::omega_tilde(p, n, Sign::Plus));
    let wm = GroupRingElem::from_int_poly(r, n, &zpoly::omega_tilde(p, n, Sign::Minus));
    let rhs_p = wp.mul(&wp).mul(&lpp);
    let rhs_m = wm.mul(&wm).mul(&lmm);
    if n.is_multiple_of(2) {
        rep.verdict(format!("n={n} -p Theta^+ = (omega~^+)^2 L^{{++}}"), tp.elem.scale(&minus_p).agree(&rhs_p, digits));
        rep.verdict(format!("n={n} Theta^- = (omega~^-)^2 L^{{--}}"), tm.elem.agree(&rhs_m, digits));
    } else {
        rep.verdict(format!("n={n} Theta^+ = (omega~^+)^2 L^{{++}}"), tp.elem.agree(&rhs_p, digits));
        rep.verdict(format!("n={n} -p Theta^- = (omega~^-)^2 L^{{--}}"), tm.elem.scale(&minus_p).agree(&rhs_m, digits));
    }

    // Congruences with the truncated half logarithms.
    let lp = pollack_log_trunc(Sign::Plus, n, r);
    let lm = pollack_log_trunc(Sign::Minus, n, r);
    let hp = lp.mul(&lp).mul(&lpp).scale(&minus_p.pow(n as i64 + 1)?);
    let hm = lm.mul(&lm).mul(&lmm).scale(&minus_p.pow(n as i64 + 2)?);
    rep.verdict(format!("n={n} (-p)^(n+1) (log^+)^2 L^{{++}} = Theta^+"), hp.agree(&tp.elem, digits));
    rep.verdict(format!("n={n} (-p)^(n+2) (log^-)^2 L^{{--}} = Theta^-"), hm.agree(&tm.elem, digits));

    // The defining identities of L^{++} and L^{--} against the family members.
    let (sp, sm) = pair.quarter_sums();
    let la = fam.at_level(Member::Alpha, n)?;
    let lb = fam.at_level(Member::Beta, n)?;
    let qbb = fam.at_level(Member::QBetaBeta, n)?;
    let qab = fam.at_level(Member::QAlphaBeta, n)?;
    let base = la.add(&lb);
    let extra = qbb.add(&qab);
    rep.verdict(format!("n={n} 4 (log^+)^2 L^{{++}} = L_a + L_b + L?_bb + L?_ab"), at(&sp, n).agree(&base.add(&extra), digits));
    rep.verdict(format!("n={n} -4p (log^-)^2 L^{{--}} = L_a + L_b - L?_bb - L?_ab"), at(&sm, n).agree(&base.sub(&extra), digits));
    Ok(rep)
}
