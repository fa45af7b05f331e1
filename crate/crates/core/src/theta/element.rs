//! Theta elements, their interpolation values and the reconstruction of the
//! L-functions from them.

use serde::{Deserialize, Serialize};

use super::family::{conductor_of_level, LFamily, Member};
use super::params::{euler_e, r_factor, Mode, RankinParams, Root};
use crate::error::{Error, Result};
use crate::iwalg::{all_characters, evaluate, CharacterSpec, GroupRingElem, GroupRingJson};
use crate::padic::cyclo::CycloElem;
use crate::padic::{PadicElem, Ring};
use crate::report::SuiteReport;

/// Sign of a theta element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaSign {
    None,
    Plus,
    Minus,
}

/// A theta element of level `n` at twist `j`.
#[derive(Clone, Debug)]
pub struct ThetaElement {
    pub elem: GroupRingElem,
    pub j: i64,
    pub n: u32,
    pub sign: ThetaSign,
}

/// Serialized theta element: `{"j", "n", "sign", "elem"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaJson {
    pub j: i64,
    pub n: u32,
    pub sign: ThetaSign,
    pub elem: GroupRingJson,
}

impl ThetaElement {
    pub fn denom_exp(&self) -> i64 {
        self.elem.denom_exp()
    }

    pub fn to_json(&self) -> ThetaJson {
        ThetaJson { j: self.j, n: self.n, sign: self.sign, elem: self.elem.to_json() }
    }

    pub fn from_json(r: &Ring, j: &ThetaJson) -> Result<Self> {
        let elem = GroupRingElem::from_json(r, &j.elem)?;
        if elem.level() != j.n {
            return Err(Error::LevelMismatch(elem.level(), j.n));
        }
        Ok(ThetaElement { elem, j: j.j, n: j.n, sign: j.sign })
    }
}

fn pow(x: &PadicElem, e: i64) -> Result<PadicElem> {
    x.pow(e)
}

/// `Theta_{j,n} = (beta^{2n+4} L_p(beta,j,n) - alpha^{2n+4} L_p(alpha,j,n)) / (beta^2 - alpha^2)`.
pub fn theta_ordinary(fam: &LFamily, n: u32) -> Result<ThetaElement> {
    let p = &fam.params;
    if p.mode() != Mode::Ordinary {
        return Err(Error::Invalid("alpha_f = -beta_f: use the signed theta elements".into()));
    }
    let la = fam.at_level(Member::Alpha, n)?;
    let lb = fam.at_level(Member::Beta, n)?;
    let e = 2 * n as i64 + 4;
    let num = lb.scale(&pow(&p.beta_f, e)?).sub(&la.scale(&pow(&p.alpha_f, e)?));
    let den = pow(&p.beta_f, 2)?.sub(&pow(&p.alpha_f, 2)?);
    Ok(ThetaElement { elem: num.scale(&den.inv()?), j: p.j, n, sign: ThetaSign::None })
}

/// The four-term combination `alpha^{2n+2}/4 (L_alpha + s1 L_beta + s2 L^?_{beta beta} + s3 L^?_{alpha beta})`.
fn signed_combination(fam: &LFamily, n: u32, s: [i64; 3]) -> Result<GroupRingElem> {
    let p = &fam.params;
    let la = fam.at_level(Member::Alpha, n)?;
    let lb = fam.at_level(Member::Beta, n)?;
    let qbb = fam.at_level(Member::QBetaBeta, n)?;
    let qab = fam.at_level(Member::QAlphaBeta, n)?;
    let r = fam.ring();
    let sum = la
        .add(&lb.scale(&PadicElem::from_i64(r, s[0])))
        .add(&qbb.scale(&PadicElem::from_i64(r, s[1])))
        .add(&qab.scale(&PadicElem::from_i64(r, s[2])));
    let c = pow(&p.alpha_f, 2 * n as i64 + 2)?.div(&PadicElem::from_i64(r, 4))?;
    Ok(sum.scale(&c))
}

/// `(Theta^+_{j,n}, Theta^-_{j,n})` for `alpha_f = -beta_f`.
pub fn theta_pm(fam: &LFamily, n: u32) -> Result<(ThetaElement, ThetaElement)> {
    let p = &fam.params;
    if p.mode() != Mode::Supersingular {
        return Err(Error::Invalid("signed theta elements need alpha_f = -beta_f".into()));
    }
    let plus = signed_combination(fam, n, [1, 1, 1])?;
    let minus = signed_combination(fam, n, [1, -1, -1])?;
    Ok((ThetaElement { elem: plus, j: p.j, n, sign: ThetaSign::Plus }, ThetaElement { elem: minus, j: p.j, n, sign: ThetaSign::Minus }))
}

/// The two further combinations `alpha^{2n+2}/4 (L_alpha - L_beta -+ L^?_{beta beta} +- L^?_{alpha beta})`.
/// Experimental: no identity is verified for them.
pub fn theta_extra(fam: &LFamily, n: u32) -> Result<(GroupRingElem, GroupRingElem)> {
    if fam.params.mode() != Mode::Supersingular {
        return Err(Error::Invalid("the extra combinations need alpha_f = -beta_f".into()));
    }
    Ok((signed_combination(fam, n, [-1, -1, 1])?, signed_combination(fam, n, [-1, 1, -1])?))
}

/// `lambda^{-2n-2} (Theta_n - (lambda')^2 / p * nu_n(Theta_{n-1}))`.
pub fn reconstruct_l(theta_n: &ThetaElement, theta_prev: &ThetaElement, l: Root, params: &RankinParams) -> Result<GroupRingElem> {
    let n = theta_n.n;
    if n == 0 || theta_prev.n + 1 != n {
        return Err(Error::LevelMismatch(theta_prev.n, n));
    }
    let lam = params.f_root(l);
    let lam2 = params.f_root(l.other());
    let c = pow(lam2, 2)?.div(&params.p_elem())?;
    let nu = theta_prev.elem.trace_lift().scale(&c);
    Ok(theta_n.elem.sub(&nu).scale(&pow(lam, -(2 * n as i64) - 2)?))
}

/// `2 / lambda^{2n+2} (Theta^+_n + Theta^-_n)`, which equals `L_alpha + L_beta` modulo `omega_n`.
pub fn reconstruct_sum(plus: &ThetaElement, minus: &ThetaElement, params: &RankinParams) -> Result<GroupRingElem> {
    if plus.n != minus.n {
        return Err(Error::LevelMismatch(plus.n, minus.n));
    }
    let c = PadicElem::from_i64(params.ring(), 2).div(&pow(&params.alpha_f, 2 * plus.n as i64 + 2)?)?;
    Ok(plus.elem.add(&minus.elem).scale(&c))
}

/// Closed form of `Theta(chi)` at a character of `G_n`, read off the family's spectrum.
///
/// At conductor `p^m`, `m >= 2`, this is the interpolation formula
/// `(beta^{2n-2m+4} - alpha^{2n-2m+4}) / (beta^2 - alpha^2) c V` or
/// `alpha^{2n-2m+2} (1 +- (-1)^m) / 2 c V`; at the trivial character it is
/// the corresponding combination of `E(lambda, j)` and `R`.
pub fn theta_closed_form(fam: &LFamily, n: u32, chi: &CharacterSpec, sign: ThetaSign) -> Result<CycloElem> {
    let p = &fam.params;
    let r = fam.ring();
    chi.validate(r.p_u64())?;
    if chi.n != n || n > fam.n_max {
        return Err(Error::LevelMismatch(chi.n, n));
    }
    let k = chi.value_level();
    let u = fam.spectrum.product(k).conj(chi.k)?;
    let m = conductor_of_level(k) as i64;
    let n = n as i64;
    let (a, b) = (&p.alpha_f, &p.beta_f);
    let factor = match (sign, m) {
        (ThetaSign::None, 0) => {
            let num = pow(b, 2 * n + 4)?.mul(&euler_e(p, Root::Beta)?).sub(&pow(a, 2 * n + 4)?.mul(&euler_e(p, Root::Alpha)?));
            num.div(&pow(b, 2)?.sub(&pow(a, 2)?))?
        }
        (ThetaSign::None, m) => {
            let num = pow(b, 2 * n - 2 * m + 4)?.sub(&pow(a, 2 * n - 2 * m + 4)?);
            num.div(&pow(b, 2)?.sub(&pow(a, 2)?))?
        }
        (s, 0) => {
            let ea = euler_e(p, Root::Alpha)?;
            let eb = euler_e(p, Root::Beta)?;
            let twisted = r_factor(p, Root::Beta, Root::Beta, 0)?.mul(&ea).add(&r_factor(p, Root::Alpha, Root::Beta, 0)?.mul(&eb));
            let inner = if s == ThetaSign::Plus { ea.add(&eb).add(&twisted) } else { ea.add(&eb).sub(&twisted) };
            pow(a, 2 * n + 2)?.mul(&inner).div(&PadicElem::from_i64(r, 4))?
        }
        (s, m) => {
            let parity = if m % 2 == 0 { 1 } else { -1 };
            let t = if s == ThetaSign::Plus { 1 + parity } else { 1 - parity };
            pow(a, 2 * n - 2 * m + 2)?.mul_int(t).div(&PadicElem::from_i64(r, 2))?
        }
    };
    Ok(u.scale(&factor))
}

/// Denominator bound for theta elements of `fam`, from the uniform `s` of the
/// scaled members: `s + v(beta^2 - alpha^2)` in the ordinary case and
/// `s - v(alpha^2)` in the signed case.
pub fn theta_denominator_bound(fam: &LFamily) -> Result<i64> {
    let s = fam.ledger_s()?;
    let p = &fam.params;
    Ok(match p.mode() {
        Mode::Ordinary => {
            let d = pow(&p.beta_f, 2)?.sub(&pow(&p.alpha_f, 2)?);
            s + d.valuation().ok_or(Error::DivisionByZero)?
        }
        Mode::Supersingular => s - pow(&p.alpha_f, 2)?.valuation().unwrap_or(0),
    })
}

/// All theta elements of `fam` at level `n`: one ordinary element or the signed pair.
pub fn thetas_at(fam: &LFamily, n: u32) -> Result<Vec<ThetaElement>> {
    match fam.params.mode() {
        Mode::Ordinary => Ok(vec![theta_ordinary(fam, n)?]),
        Mode::Supersingular => {
            let (a, b) = theta_pm(fam, n)?;
            Ok(vec![a, b])
        }
    }
}

/// Reconstruction of the family members from consecutive theta elements, `1 <= n <= n_max`.
pub fn verify_reconstruct(fam: &LFamily, digits: i64) -> SuiteReport {
    let mut rep = SuiteReport::new(
        "reconstruct",
        "L_p(lambda,j,n) = lambda^(-2n-2) (Theta_n - lambda'^2/p nu_n(Theta_(n-1))); L_alpha + L_beta = 2/lambda^(2n+2) (Theta^+ + Theta^-)",
    );
    let p = &fam.params;
    for n in 1..=fam.n_max {
        let res: Result<()> = (|| {
            match p.mode() {
                Mode::Ordinary => {
                    let cur = theta_ordinary(fam, n)?;
                    let prev = theta_ordinary(fam, n - 1)?;
                    for (l, m) in [(Root::Alpha, Member::Alpha), (Root::Beta, Member::Beta)] {
                        let rec = reconstruct_l(&cur, &prev, l, p)?;
                        rep.verdict(format!("n={n} {}", m.name()), rec.agree(&fam.at_level(m, n)?, digits));
                    }
                }
                Mode::Supersingular => {
                    let (tp, tm) = theta_pm(fam, n)?;
                    let sum = reconstruct_sum(&tp, &tm, p)?;
                    let want = fam.at_level(Member::Alpha, n)?.add(&fam.at_level(Member::Beta, n)?);
                    rep.verdict(format!("n={n} alpha+beta"), sum.agree(&want, digits));
                }
            }
            Ok(())
        })();
        if let Err(e) = res {
            rep.error(format!("n={n}"), e);
        }
    }
    rep
}

/// Values of the theta elements at every character of `G_n`, `0 <= n <= n_max`,
/// against their closed forms.
pub fn verify_interpolation(fam: &LFamily, digits: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("interp", "Theta(theta) = closed form in c V, E(lambda, j) and R at every character");
    let p = fam.ring().p_u64();
    for n in 0..=fam.n_max {
        let thetas = match thetas_at(fam, n) {
            Ok(t) => t,
            Err(e) => {
                rep.error(format!("n={n}"), e);
                continue;
            }
        };
        for chi in all_characters(p, n) {
            for t in &thetas {
                let case = format!("n={n} m={} k={} sign={:?}", chi.m, chi.k, t.sign);
                match (evaluate(&t.elem, &chi), theta_closed_form(fam, n, &chi, t.sign)) {
                    (Ok(got), Ok(want)) => rep.verdict(case, got.agree(&want, digits)),
                    (Err(e), _) | (_, Err(e)) => rep.error(case, e),
                }
            }
        }
    }
    rep
}

/// Denominator exponents of every theta element against [`theta_denominator_bound`].
pub fn verify_integrality(fam: &LFamily) -> SuiteReport {
    let mut rep = SuiteReport::new("integrality", "Theta_(j,n) in varpi^(-s) Lambda_n with s uniform in n");
    let bound = match theta_denominator_bound(fam) {
        Ok(b) => b,
        Err(e) => {
            rep.error("bound", e);
            return rep;
        }
    };
    for n in 0..=fam.n_max {
        match thetas_at(fam, n) {
            Ok(ts) => {
                for t in ts {
                    let d = t.denom_exp();
                    rep.check(format!("n={n} sign={:?}", t.sign), d <= bound, format!("<= {bound}"), d.to_string());
                }
            }
            Err(e) => rep.error(format!("n={n}"), e),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::super::family::{synth_family, ValueSpectrum};
    use super::*;
    use crate::padic::RingSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_family_gives_zero_theta() {
        let r = Ring::new(RingSpec::zp(3, 40)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let params = RankinParams::random_ordinary(&r, 1, -1, 0, &mut rng).unwrap();
        let fam = synth_family(&params, &ValueSpectrum::zero(&r, 2)).unwrap();
        for n in 0..=2 {
            assert!(theta_ordinary(&fam, n).unwrap().elem.is_zero());
        }
        assert!(theta_pm(&fam, 1).is_err());
    }

    #[test]
    fn ordinary_interpolation_and_reconstruction() {
        let r = Ring::new(RingSpec::zp(3, 100)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let params = RankinParams::random_ordinary(&r, 1, -1, 0, &mut rng).unwrap();
        let fam = LFamily::random_ordinary(&params, 2, &mut rng).unwrap();
        let thetas: Vec<_> = (0..=2).map(|n| theta_ordinary(&fam, n).unwrap()).collect();
        for n in 0..=2u32 {
            for chi in all_characters(3, n) {
                let got = evaluate(&thetas[n as usize].elem, &chi).unwrap();
                let want = theta_closed_form(&fam, n, &chi, ThetaSign::None).unwrap();
                assert!(got.agree(&want, 40).is_equal(), "n={n} {chi:?}");
            }
        }
        for n in 1..=2u32 {
            for l in [Root::Alpha, Root::Beta] {
                let rec = reconstruct_l(&thetas[n as usize], &thetas[n as usize - 1], l, &params).unwrap();
                let member = if l == Root::Alpha { Member::Alpha } else { Member::Beta };
                assert!(rec.agree(&fam.at_level(member, n).unwrap(), 40).is_equal(), "n={n} {l:?}");
            }
        }
    }

    #[test]
    fn signed_interpolation_and_parity() {
        let r = Ring::new(RingSpec::sqrt_neg_p(3, 100)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let params = RankinParams::random_supersingular(&r, &mut rng).unwrap();
        let (fam, _) = LFamily::random_signed(&params, 2, &mut rng).unwrap();
        for n in 0..=2u32 {
            let (tp, tm) = theta_pm(&fam, n).unwrap();
            for chi in all_characters(3, n) {
                for (t, s) in [(&tp, ThetaSign::Plus), (&tm, ThetaSign::Minus)] {
                    let got = evaluate(&t.elem, &chi).unwrap();
                    let want = theta_closed_form(&fam, n, &chi, s).unwrap();
                    assert!(got.agree(&want, 40).is_equal(), "n={n} {chi:?} {s:?}");
                }
                if chi.m >= 2 {
                    let killed = if chi.m % 2 == 1 { &tp } else { &tm };
                    assert!(evaluate(&killed.elem, &chi).unwrap().is_zero());
                }
            }
            if n >= 1 {
                let sum = reconstruct_sum(&tp, &tm, &params).unwrap();
                let want = fam.at_level(Member::Alpha, n).unwrap().add(&fam.at_level(Member::Beta, n).unwrap());
                assert!(sum.agree(&want, 40).is_equal());
            }
        }
    }
}
