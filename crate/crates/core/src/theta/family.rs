//! Synthetic families of twisted, `Delta`-projected p-adic L-functions.
//!
//! A family is built from one value per Galois orbit of characters of
//! `G_N`: the orbit of conductor `p^m` (`m >= 2`) is represented by the
//! character sending `gamma` to `zeta_{p^{m-1}}`, and its value lives in the
//! cyclotomic ring of level `m - 1`. Level 0 carries the trivial character.
//! Every member is the CRT interpolant of its prescribed values, stored
//! modulo `omega_N`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::params::{euler_e, r_factor, Mode, ParamsJson, RankinParams, Root};
use crate::error::{Error, Result};
use crate::iwalg::growth::pollack_log_trunc;
use crate::iwalg::{evaluate, interpolate, CharacterSpec, GroupRingElem, GroupRingJson};
use crate::padic::cyclo::{CycloElem, CycloRing};
use crate::padic::zpoly::Sign;
use crate::padic::{Fx, PadicElem, Ring, ZeroTest};

/// A member of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Member {
    /// `Tw^j pi_Delta L_p(f_alpha, g)`.
    Alpha,
    /// `Tw^j pi_Delta L_p(f_beta, g)`.
    Beta,
    /// `Tw^j pi_Delta L_p^?(f_alpha, g_beta)`.
    QAlphaBeta,
    /// `Tw^j pi_Delta L_p^?(f_beta, g_beta)`.
    QBetaBeta,
}

impl Member {
    pub const ALL: [Member; 4] = [Member::Alpha, Member::Beta, Member::QAlphaBeta, Member::QBetaBeta];

    /// The root `lambda_f` of the member.
    pub fn root(self) -> Root {
        match self {
            Member::Alpha | Member::QAlphaBeta => Root::Alpha,
            Member::Beta | Member::QBetaBeta => Root::Beta,
        }
    }

    pub fn is_extra(self) -> bool {
        matches!(self, Member::QAlphaBeta | Member::QBetaBeta)
    }

    pub fn name(self) -> &'static str {
        match self {
            Member::Alpha => "alpha",
            Member::Beta => "beta",
            Member::QAlphaBeta => "q_alpha_beta",
            Member::QBetaBeta => "q_beta_beta",
        }
    }
}

/// Conductor exponent of the orbit stored at value level `k`.
pub fn conductor_of_level(k: u32) -> u32 {
    if k == 0 {
        0
    } else {
        k + 1
    }
}

/// The representative character of the orbit at value level `k` of `G_n`.
pub fn orbit_character(n: u32, k: u32) -> CharacterSpec {
    if k == 0 {
        CharacterSpec::trivial(n)
    } else {
        CharacterSpec { n, m: k + 1, k: 1 }
    }
}

/// Interpolation data `c_theta` and `V_theta`, one pair per orbit.
#[derive(Clone, Debug)]
pub struct ValueSpectrum {
    /// Indexed by value level `0..=N`.
    pub c: Vec<CycloElem>,
    pub v: Vec<CycloElem>,
}

impl ValueSpectrum {
    pub fn zero(r: &Ring, n_max: u32) -> Self {
        let z: Vec<CycloElem> = (0..=n_max).map(|k| CycloRing::new(r, k).zero()).collect();
        let c = (0..=n_max).map(|k| CycloRing::new(r, k).one()).collect();
        ValueSpectrum { c, v: z }
    }

    /// Random unit constants and random integral values.
    pub fn random<R: Rng + ?Sized>(r: &Ring, n_max: u32, rng: &mut R) -> Self {
        let mut c = Vec::new();
        let mut v = Vec::new();
        for k in 0..=n_max {
            let cr = CycloRing::new(r, k);
            c.push(cr.from_scalar(&PadicElem::from_oelem(r, &r.random_unit(rng, r.prec()), r.prec())));
            let coeffs = (0..cr.dim()).map(|_| r.random(rng, r.prec())).collect();
            v.push(cr.from_fx(&Fx::from_coeffs(r, coeffs, r.prec())));
        }
        ValueSpectrum { c, v }
    }

    pub fn n_max(&self) -> u32 {
        self.v.len() as u32 - 1
    }

    /// `c_theta V_theta` at value level `k`.
    pub fn product(&self, k: u32) -> CycloElem {
        self.c[k as usize].mul(&self.v[k as usize])
    }

    /// The spectrum that makes `L_p(f_alpha, g)` equal to `l_alpha`, with the
    /// constants `c` supplied by `rng` as random units.
    pub fn from_alpha_member<R: Rng + ?Sized>(params: &RankinParams, l_alpha: &GroupRingElem, rng: &mut R) -> Result<Self> {
        let r = params.ring();
        let n_max = l_alpha.level();
        let ea = euler_e(params, Root::Alpha)?;
        if ea.is_zero() != ZeroTest::NonZero {
            return Err(Error::Degenerate("E(alpha_f, j) vanishes".into()));
        }
        let mut c = Vec::new();
        let mut v = Vec::new();
        for k in 0..=n_max {
            let val = evaluate(l_alpha, &orbit_character(n_max, k))?;
            let u = if k == 0 { val.scale(&ea.inv()?) } else { val.scale(&params.alpha_f.pow(2 * conductor_of_level(k) as i64)?) };
            let ck = PadicElem::from_oelem(r, &r.random_unit(rng, r.prec()), r.prec());
            c.push(u.ring().from_scalar(&ck));
            v.push(u.scale(&ck.inv()?));
        }
        Ok(ValueSpectrum { c, v })
    }
}

/// A finite-level family of twisted p-adic L-functions.
#[derive(Clone, Debug)]
pub struct LFamily {
    pub params: RankinParams,
    pub n_max: u32,
    pub members: BTreeMap<Member, GroupRingElem>,
    pub spectrum: ValueSpectrum,
}

/// Value of `member` at the orbit representative of value level `k`, given
/// `U = c_theta V_theta` there.
pub fn member_value(params: &RankinParams, member: Member, k: u32, u: &CycloElem) -> Result<CycloElem> {
    let m = conductor_of_level(k);
    let main = |l: Root| -> Result<CycloElem> {
        let lam = params.f_root(l);
        Ok(if m == 0 { u.scale(&euler_e(params, l)?) } else { u.scale(&lam.pow(-2 * m as i64)?) })
    };
    match member {
        Member::Alpha | Member::Beta => main(member.root()),
        Member::QAlphaBeta | Member::QBetaBeta => {
            let l = member.root();
            let rf = r_factor(params, l, Root::Beta, m)?;
            Ok(main(l.other())?.scale(&rf))
        }
    }
}

/// Builds the family whose members take the values prescribed by `spectrum`.
/// The extra members are omitted when their factor `R` is undefined.
pub fn synth_family(params: &RankinParams, spectrum: &ValueSpectrum) -> Result<LFamily> {
    let r = params.ring();
    let n_max = spectrum.n_max();
    let mut members = BTreeMap::new();
    for member in Member::ALL {
        let values: Result<Vec<CycloElem>> = (0..=n_max).map(|k| member_value(params, member, k, &spectrum.product(k))).collect();
        match values {
            Ok(values) => {
                members.insert(member, interpolate(r, n_max, &values)?);
            }
            Err(e) if member.is_extra() => {
                let _ = e;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(LFamily { params: params.clone(), n_max, members, spectrum: spectrum.clone() })
}

/// Plus/minus L-functions `L_p^{++}` and `L_p^{--}` modulo `omega_N`.
#[derive(Clone, Debug)]
pub struct SignedPair {
    pub lpp: GroupRingElem,
    pub lmm: GroupRingElem,
}

impl SignedPair {
    /// `S^+ = 4 (log^+)^2 L^{++}` and `S^- = -4p (log^-)^2 L^{--}` modulo `omega_N`,
    /// with `log^{+-}` replaced by the truncations of level `N`.
    pub fn quarter_sums(&self) -> (GroupRingElem, GroupRingElem) {
        let r = self.lpp.ring();
        let n = self.lpp.level();
        let lp = pollack_log_trunc(Sign::Plus, n, r);
        let lm = pollack_log_trunc(Sign::Minus, n, r);
        let four = PadicElem::from_i64(r, 4);
        let sp = lp.mul(&lp).mul(&self.lpp).scale(&four);
        let sm = lm.mul(&lm).mul(&self.lmm).scale(&PadicElem::from_i64(r, -4 * r.p_u64() as i64));
        (sp, sm)
    }
}

/// Adjusts the constant terms of `L^{++}` and `L^{--}` so that both quarter
/// sums are compatible at the trivial character, and returns the spectrum of
/// the supersingular family they determine.
///
/// At a character of conductor `p^m`, `m >= 2`, the members satisfy
/// `L_alpha = L_beta = S^{+-}/4` (sign of `(-1)^m`) and `L^?_{lambda beta} = (-1)^m L_{lambda'}`.
pub fn signed_spectrum<R: Rng + ?Sized>(
    params: &RankinParams,
    lpp: &GroupRingElem,
    lmm: &GroupRingElem,
    rng: &mut R,
) -> Result<(ValueSpectrum, SignedPair)> {
    if params.mode() != Mode::Supersingular {
        return Err(Error::Invalid("signed families need alpha_f = -beta_f".into()));
    }
    let r = params.ring();
    let n_max = lpp.level();
    if lmm.level() != n_max {
        return Err(Error::LevelMismatch(lpp.level(), lmm.level()));
    }
    let ea = euler_e(params, Root::Alpha)?;
    let eb = euler_e(params, Root::Beta)?;
    let rbb = r_factor(params, Root::Beta, Root::Beta, 0)?;
    let rab = r_factor(params, Root::Alpha, Root::Beta, 0)?;
    let base = ea.add(&eb);
    let twisted = rbb.mul(&ea).add(&rab.mul(&eb));
    let a_plus = base.add(&twisted);
    let a_minus = base.sub(&twisted);

    let probe = SignedPair { lpp: GroupRingElem::one(r, n_max), lmm: GroupRingElem::one(r, n_max) };
    let (sp1, sm1) = probe.quarter_sums();
    let s_plus = sp1.coeff(0);
    let s_minus = sm1.coeff(0);

    let nz = |x: &PadicElem| x.is_zero() == ZeroTest::NonZero;
    let x0 = lpp.coeff(0);
    let y0 = lmm.coeff(0);
    let zero = PadicElem::zero(r);
    // Constant terms (x, y) of L^{++}, L^{--} and the trivial-character value U.
    let (x, y, u) = match (nz(&a_plus), nz(&a_minus)) {
        (false, false) => (zero.clone(), zero.clone(), PadicElem::one(r)),
        (true, false) => {
            let u = x0.mul(&s_plus).div(&a_plus)?;
            (x0.clone(), zero.clone(), u)
        }
        (false, true) => {
            let u = y0.mul(&s_minus).div(&a_minus)?;
            (zero.clone(), y0.clone(), u)
        }
        (true, true) => {
            // x s^+ / A^+ = y s^- / A^-.
            let q = s_minus.mul(&a_plus).div(&s_plus.mul(&a_minus))?;
            let lift = (-q.valuation().unwrap_or(0)).max(0);
            let mut y = y0.mul(&PadicElem::uniformizer(r).pow(lift)?);
            if !nz(&x0) && !nz(&y0) {
                y = zero.clone();
            } else if !nz(&y) {
                y = PadicElem::from_oelem(r, &r.random_unit(rng, r.prec()), r.prec()).mul(&PadicElem::uniformizer(r).pow(lift)?);
            }
            let x = q.mul(&y);
            let u = x.mul(&s_plus).div(&a_plus)?;
            (x, y, u)
        }
    };
    let set_const = |f: &GroupRingElem, old: &PadicElem, new: &PadicElem| f.add(&GroupRingElem::constant(r, n_max, &new.sub(old)));
    let pair = SignedPair { lpp: set_const(lpp, &x0, &x), lmm: set_const(lmm, &y0, &y) };
    let (sp, sm) = pair.quarter_sums();
    let quarter = PadicElem::from_i64(r, 4).inv()?;
    let mut c = Vec::new();
    let mut v = Vec::new();
    for k in 0..=n_max {
        let cr = CycloRing::new(r, k);
        let val = if k == 0 {
            cr.from_scalar(&u)
        } else {
            let m = conductor_of_level(k);
            let s = if m.is_multiple_of(2) { &sp } else { &sm };
            let l_alpha = evaluate(s, &orbit_character(n_max, k))?.scale(&quarter);
            l_alpha.scale(&params.alpha_f.pow(2 * m as i64)?)
        };
        c.push(cr.one());
        v.push(val);
    }
    Ok((ValueSpectrum { c, v }, pair))
}

impl LFamily {
    pub fn ring(&self) -> &Ring {
        self.params.ring()
    }

    pub fn member(&self, m: Member) -> Result<&GroupRingElem> {
        self.members.get(&m).ok_or_else(|| Error::MissingMember(m.name().into()))
    }

    /// `L_p(lambda, j, n)` and its companions: the member reduced modulo `omega_n`.
    pub fn at_level(&self, m: Member, n: u32) -> Result<GroupRingElem> {
        if n > self.n_max {
            return Err(Error::Invalid(format!("level {n} exceeds n_max = {}", self.n_max)));
        }
        let x = self.member(m)?;
        Ok(GroupRingElem::from_fx(self.ring(), n, x.fx()))
    }

    /// Random ordinary family with `L_p(f_alpha, g)` a random element of `Lambda_N`.
    pub fn random_ordinary<R: Rng + ?Sized>(params: &RankinParams, n_max: u32, rng: &mut R) -> Result<LFamily> {
        let r = params.ring();
        let l_alpha = GroupRingElem::random(r, n_max, r.prec(), rng);
        let spec = ValueSpectrum::from_alpha_member(params, &l_alpha, rng)?;
        synth_family(params, &spec)
    }

    /// Random supersingular family built from random `L^{++}, L^{--}` in `Lambda_N`.
    pub fn random_signed<R: Rng + ?Sized>(params: &RankinParams, n_max: u32, rng: &mut R) -> Result<(LFamily, SignedPair)> {
        let r = params.ring();
        let lpp = GroupRingElem::random(r, n_max, r.prec(), rng);
        let lmm = GroupRingElem::random(r, n_max, r.prec(), rng);
        let (spec, pair) = signed_spectrum(params, &lpp, &lmm, rng)?;
        Ok((synth_family(params, &spec)?, pair))
    }

    /// Denominator exponent of `lambda_f^{2n} x` for every member `x` and level `n`.
    pub fn scaled_denominators(&self) -> Result<Vec<(Member, u32, i64)>> {
        let mut out = Vec::new();
        for &m in self.members.keys() {
            let lam = self.params.f_root(m.root());
            for n in 0..=self.n_max {
                let x = self.at_level(m, n)?.scale(&lam.pow(2 * n as i64)?);
                out.push((m, n, x.denom_exp()));
            }
        }
        Ok(out)
    }

    /// The uniform `s` with `lambda_f^{2n} L_p(lambda, j, n) in varpi^{-s} Lambda_n` for the stored levels.
    pub fn ledger_s(&self) -> Result<i64> {
        Ok(self.scaled_denominators()?.iter().map(|t| t.2).max().unwrap_or(0).max(0))
    }

    pub fn to_json(&self) -> FamilyJson {
        let mut ledgers = BTreeMap::new();
        if let Ok(d) = self.scaled_denominators() {
            for (m, n, s) in d {
                ledgers.insert(format!("{}@{}", m.name(), n), s);
            }
        }
        FamilyJson {
            params: self.params.to_json(),
            n_max: self.n_max,
            members: self.members.iter().map(|(m, x)| (*m, x.to_json())).collect(),
            spectrum: (0..=self.n_max)
                .map(|k| SpectrumJson {
                    level: k,
                    c: CycloJson::from_elem(&self.spectrum.c[k as usize]),
                    v: CycloJson::from_elem(&self.spectrum.v[k as usize]),
                })
                .collect(),
            ledgers,
        }
    }

    pub fn from_json(j: &FamilyJson) -> Result<LFamily> {
        let params = RankinParams::from_json(&j.params)?;
        let r = params.ring().clone();
        let mut members = BTreeMap::new();
        for (m, x) in &j.members {
            let e = GroupRingElem::from_json(&r, x)?;
            if e.level() != j.n_max {
                return Err(Error::LevelMismatch(e.level(), j.n_max));
            }
            members.insert(*m, e);
        }
        if j.spectrum.len() != j.n_max as usize + 1 {
            return Err(Error::Invalid("spectrum needs one entry per level".into()));
        }
        let mut c = Vec::new();
        let mut v = Vec::new();
        for (k, s) in j.spectrum.iter().enumerate() {
            c.push(s.c.to_elem(&r, k as u32)?);
            v.push(s.v.to_elem(&r, k as u32)?);
        }
        Ok(LFamily { params, n_max: j.n_max, members, spectrum: ValueSpectrum { c, v } })
    }
}

/// Serialized cyclotomic value: base-`p` digits of the integral part in the `z` basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycloJson {
    pub denom_exp: i64,
    pub prec: i64,
    pub coeffs: Vec<Vec<Vec<u64>>>,
}

impl CycloJson {
    pub fn from_elem(x: &CycloElem) -> Self {
        let r = x.base();
        let f = x.fx();
        CycloJson { denom_exp: f.den, prec: f.prec, coeffs: f.coeffs.iter().map(|c| r.digits(c, f.prec)).collect() }
    }

    pub fn to_elem(&self, r: &Ring, level: u32) -> Result<CycloElem> {
        let cr = CycloRing::new(r, level);
        if self.coeffs.len() != cr.dim() {
            return Err(Error::Invalid(format!("level {level} values need {} coordinates", cr.dim())));
        }
        let coeffs = self.coeffs.iter().map(|c| r.from_digits(c)).collect::<Result<Vec<_>>>()?;
        let mut fx = Fx { den: self.denom_exp, coeffs, prec: self.prec };
        fx.normalize(r);
        Ok(cr.from_fx(&fx))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub level: u32,
    pub c: CycloJson,
    pub v: CycloJson,
}

/// Serialized family: `{"params", "n_max", "members", "spectrum", "ledgers"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub params: ParamsJson,
    pub n_max: u32,
    pub members: BTreeMap<Member, GroupRingJson>,
    pub spectrum: Vec<SpectrumJson>,
    /// Denominator exponents of `lambda^{2n}` times each member at each level.
    pub ledgers: BTreeMap<String, i64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iwalg::all_characters;
    use crate::padic::RingSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_spectrum_gives_zero_family() {
        let r = Ring::new(RingSpec::zp(3, 40)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let params = RankinParams::random_ordinary(&r, 1, -1, 0, &mut rng).unwrap();
        let fam = synth_family(&params, &ValueSpectrum::zero(&r, 2)).unwrap();
        for x in fam.members.values() {
            assert!(x.is_zero());
        }
    }

    #[test]
    fn members_take_prescribed_values() {
        let r = Ring::new(RingSpec::zp(3, 80)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let params = RankinParams::random_ordinary(&r, 1, -1, 1, &mut rng).unwrap();
        let spec = ValueSpectrum::random(&r, 2, &mut rng);
        let fam = synth_family(&params, &spec).unwrap();
        for member in Member::ALL {
            let x = fam.member(member).unwrap();
            for chi in all_characters(3, 2) {
                let k = chi.value_level();
                let want = member_value(&params, member, k, &spec.product(k)).unwrap().conj(chi.k).unwrap();
                let got = evaluate(x, &chi).unwrap();
                assert!(got.agree(&want, 40).is_equal(), "{member:?} {chi:?}");
            }
        }
    }

    #[test]
    fn alpha_member_is_reproduced() {
        let r = Ring::new(RingSpec::zp(5, 80)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let params = RankinParams::random_non_anomalous(&r, 1, -1, 0, &mut rng).unwrap();
        let l = GroupRingElem::random(&r, 2, 80, &mut rng);
        let spec = ValueSpectrum::from_alpha_member(&params, &l, &mut rng).unwrap();
        let fam = synth_family(&params, &spec).unwrap();
        assert!(fam.member(Member::Alpha).unwrap().agree(&l, 60).is_equal());
    }

    #[test]
    fn supersingular_extra_members_alternate() {
        let r = Ring::new(RingSpec::sqrt_neg_p(3, 80)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let params = RankinParams::random_supersingular(&r, &mut rng).unwrap();
        let (fam, _) = LFamily::random_signed(&params, 2, &mut rng).unwrap();
        for chi in all_characters(3, 2).into_iter().filter(|c| !c.is_trivial()) {
            let sign = if chi.m % 2 == 0 { 1 } else { -1 };
            for (q, other) in [(Member::QBetaBeta, Member::Alpha), (Member::QAlphaBeta, Member::Beta)] {
                let lhs = evaluate(fam.member(q).unwrap(), &chi).unwrap();
                let rhs = evaluate(fam.member(other).unwrap(), &chi).unwrap().mul_int(sign);
                assert!(lhs.agree(&rhs, 40).is_equal());
            }
        }
    }

    #[test]
    fn family_json_round_trip() {
        let r = Ring::new(RingSpec::zp(3, 40)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let params = RankinParams::random_ordinary(&r, 1, -1, 0, &mut rng).unwrap();
        let fam = synth_family(&params, &ValueSpectrum::random(&r, 1, &mut rng)).unwrap();
        let text = serde_json::to_string(&fam.to_json()).unwrap();
        let back = LFamily::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        for m in Member::ALL {
            assert!(back.member(m).unwrap().agree(fam.member(m).unwrap(), 1).is_equal());
        }
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
    }
}
