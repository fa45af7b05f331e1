//! The recursive elements `C_n` factoring ordinary theta elements through
//! `L_p(alpha, j, n)` for non-anomalous parameters.

use serde::Serialize;

use super::element::theta_ordinary;
use super::family::{LFamily, Member};
use super::params::{euler_e, is_non_anomalous, Mode, Root};
use crate::error::{Error, Result};
use crate::fitting::{is_principal_pair, Membership};
use crate::iwalg::{all_characters, evaluate, GroupRingElem};
use crate::padic::zpoly;
use crate::padic::{PadicElem, Verdict};
use crate::report::SuiteReport;

/// Checks attached to one level `n` of the ledger.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerLevel {
    pub n: u32,
    /// `v(C_n)`, `None` when zero at precision.
    pub c_valuation: Option<i64>,
    /// `C_n ∈ varpi Lambda_n`.
    pub c_in_maximal: bool,
    /// `Theta_n = (alpha^{2n+2} + C_n) L_p(alpha, j, n)`.
    pub factorization: Verdict,
    /// `nu_n(Theta_{n-1}) = (alpha^{2n} + C_{n-1}) Phi_n L_p(alpha, j, n)`, for `n >= 1`.
    pub trace_factorization: Option<Verdict>,
    /// `L_p(alpha, j, n)` is nonzero at every character of `G_n`.
    pub l_nonzerodivisor: bool,
    /// `nu_n(Theta_{n-1}) ∈ (Theta_n)`, for `n >= 1`.
    pub principal_pair: Option<Membership>,
}

/// The sequence `C_0, ..., C_N` with its checks.
#[derive(Clone, Debug)]
pub struct CLedger {
    /// `C(f, j) = (beta^2 - alpha^2) E(alpha) / (beta^4 E(beta) - alpha^4 E(alpha))`.
    pub c_fj: PadicElem,
    pub c: Vec<GroupRingElem>,
    pub levels: Vec<LedgerLevel>,
}

/// `C(f, j)`.
pub fn c_constant(fam: &LFamily) -> Result<PadicElem> {
    let p = &fam.params;
    let (a, b) = (&p.alpha_f, &p.beta_f);
    let ea = euler_e(p, Root::Alpha)?;
    let eb = euler_e(p, Root::Beta)?;
    let num = b.pow(2)?.sub(&a.pow(2)?).mul(&ea);
    let den = b.pow(4)?.mul(&eb).sub(&a.pow(4)?.mul(&ea));
    num.div(&den)
}

fn valuation(x: &GroupRingElem) -> Option<i64> {
    x.fx().valuation(x.ring())
}

/// Builds `C_0 = C(f,j)^{-1} - alpha^2` and `C_n = beta^2/p Phi_n (alpha^{2n} + C_{n-1})`,
/// and checks the factorizations at every level up to `fam.n_max`.
pub fn c_ledger(fam: &LFamily, digits: i64) -> Result<CLedger> {
    let p = &fam.params;
    if p.mode() != Mode::Ordinary {
        return Err(Error::Invalid("the C_n ledger needs ordinary parameters".into()));
    }
    let rep = is_non_anomalous(p);
    if !rep.non_anomalous {
        return Err(Error::Degenerate("parameters are anomalous".into()));
    }
    let r = fam.ring();
    let pu = r.p_u64();
    let (a, b) = (&p.alpha_f, &p.beta_f);
    let c_fj = c_constant(fam)?;
    let b2p = b.pow(2)?.div(&p.p_elem())?;
    let mut c: Vec<GroupRingElem> = Vec::new();
    let mut levels = Vec::new();
    let mut theta_prev: Option<GroupRingElem> = None;
    for n in 0..=fam.n_max {
        let cn = if n == 0 {
            GroupRingElem::constant(r, 0, &c_fj.inv()?.sub(&a.pow(2)?))
        } else {
            let bprev = c[n as usize - 1].add(&GroupRingElem::constant(r, n - 1, &a.pow(2 * n as i64)?));
            bprev.trace_lift().scale(&b2p)
        };
        let la = fam.at_level(Member::Alpha, n)?;
        let theta = theta_ordinary(fam, n)?.elem;
        let unit_n = cn.add(&GroupRingElem::constant(r, n, &a.pow(2 * n as i64 + 2)?));
        let factorization = theta.agree(&unit_n.mul(&la), digits);
        let l_nonzerodivisor = all_characters(pu, n).iter().all(|chi| evaluate(&la, chi).is_ok_and(|v| !v.is_zero()));
        let (trace_factorization, principal_pair) = match &theta_prev {
            Some(tp) => {
                let nu = tp.trace_lift();
                let bprev = c[n as usize - 1].lift_to(n).add(&GroupRingElem::constant(r, n, &a.pow(2 * n as i64)?));
                let rhs = bprev.mul(&la).mul_int_poly(&zpoly::phi(pu, n));
                (Some(nu.agree(&rhs, digits)), Some(is_principal_pair(&theta, &nu)?))
            }
            None => (None, None),
        };
        let v = valuation(&cn);
        levels.push(LedgerLevel {
            n,
            c_valuation: v,
            c_in_maximal: v.is_none_or(|v| v >= 1),
            factorization,
            trace_factorization,
            l_nonzerodivisor,
            principal_pair,
        });
        c.push(cn);
        theta_prev = Some(theta);
    }
    Ok(CLedger { c_fj, c, levels })
}

/// Runs [`c_ledger`] and records each check.
pub fn verify_ledger(fam: &LFamily, digits: i64) -> SuiteReport {
    let mut rep =
        SuiteReport::new("ledger", "Theta_n = (alpha^{2n+2} + C_n) L_p(alpha,j,n), C_n in varpi Lambda_n, (Theta_n) = (Theta_n, nu_n Theta_{n-1})");
    let ledger = match c_ledger(fam, digits) {
        Ok(l) => l,
        Err(e) => {
            rep.error("c_ledger", e);
            return rep;
        }
    };
    for lv in &ledger.levels {
        let n = lv.n;
        rep.check(format!("n={n} C_n in varpi Lambda_n"), lv.c_in_maximal, "valuation >= 1", format!("{:?}", lv.c_valuation));
        rep.verdict(format!("n={n} Theta_n = (alpha^(2n+2) + C_n) L_alpha"), lv.factorization);
        rep.check(format!("n={n} L_alpha nonzerodivisor"), lv.l_nonzerodivisor, "nonzero at every character", "vanishes somewhere");
        if let Some(v) = lv.trace_factorization {
            rep.verdict(format!("n={n} nu_n(Theta_(n-1)) = (alpha^(2n) + C_(n-1)) Phi_n L_alpha"), v);
        }
        if let Some(m) = &lv.principal_pair {
            rep.verdict(format!("n={n} nu_n(Theta_(n-1)) in (Theta_n)"), m.to_verdict());
        }
    }
    rep
}
