//! Rankin-Selberg parameters, the Euler factors `E(lambda, j)` and `R`, and the
//! non-anomalous predicate.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{hensel_unit_root, teichmuller, PadicElem, PadicJson, Ring, RingKind, RingSpec, Verdict, ZeroTest};

/// A Frobenius root of `f` or `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Root {
    Alpha,
    Beta,
}

impl Root {
    pub fn other(self) -> Root {
        match self {
            Root::Alpha => Root::Beta,
            Root::Beta => Root::Alpha,
        }
    }
}

/// Which theta construction applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `alpha_f != -beta_f`.
    Ordinary,
    /// `alpha_f = -beta_f`.
    Supersingular,
}

/// Weights, twist and Frobenius roots of the pair `(f, g)`.
#[derive(Clone, Debug)]
pub struct RankinParams {
    pub k_f: i64,
    pub k_g: i64,
    pub j: i64,
    pub alpha_f: PadicElem,
    pub beta_f: PadicElem,
    pub alpha_g: PadicElem,
    pub beta_g: PadicElem,
    pub eps_f: PadicElem,
    pub eps_g: PadicElem,
}

/// Serialized parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub ring: RingSpec,
    pub k_f: i64,
    pub k_g: i64,
    pub j: i64,
    pub alpha_f: PadicJson,
    pub beta_f: PadicJson,
    pub alpha_g: PadicJson,
    pub beta_g: PadicJson,
    pub eps_f: PadicJson,
    pub eps_g: PadicJson,
}

fn nonzero(x: &PadicElem) -> bool {
    x.is_zero() == ZeroTest::NonZero
}

fn not_unequal(a: &PadicElem, b: &PadicElem) -> bool {
    a.agree(b, 0) != Verdict::Unequal
}

impl RankinParams {
    /// Validated parameters.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        k_f: i64,
        k_g: i64,
        j: i64,
        alpha_f: PadicElem,
        beta_f: PadicElem,
        alpha_g: PadicElem,
        beta_g: PadicElem,
        eps_f: PadicElem,
        eps_g: PadicElem,
    ) -> Result<Self> {
        let p = RankinParams { k_f, k_g, j, alpha_f, beta_f, alpha_g, beta_g, eps_f, eps_g };
        p.validate()?;
        Ok(p)
    }

    pub fn ring(&self) -> &Ring {
        self.alpha_f.ring()
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_f < 0 || self.k_g < -1 || self.k_f <= self.k_g {
            return Err(Error::Invalid(format!("weights need k_f >= 0, k_g >= -1, k_f > k_g; got {}, {}", self.k_f, self.k_g)));
        }
        if self.j < self.k_g + 1 || self.j > self.k_f {
            return Err(Error::Invalid(format!("twist j = {} outside [{}, {}]", self.j, self.k_g + 1, self.k_f)));
        }
        if !nonzero(&self.alpha_f.sub(&self.beta_f)) || !nonzero(&self.alpha_g.sub(&self.beta_g)) {
            return Err(Error::Degenerate("Frobenius roots must be distinct".into()));
        }
        let r = self.ring();
        let pp = PadicElem::from_i64(r, r.p_u64() as i64);
        let cf = self.eps_f.mul(&pp.pow(self.k_f + 1)?);
        let cg = self.eps_g.mul(&pp.pow(self.k_g + 1)?);
        if !not_unequal(&self.alpha_f.mul(&self.beta_f), &cf) || !not_unequal(&self.alpha_g.mul(&self.beta_g), &cg) {
            return Err(Error::Invalid("root products must equal eps(p) p^{k+1}".into()));
        }
        if self.mode() == Mode::Supersingular {
            let minus_p = pp.neg();
            if !not_unequal(&self.alpha_f.mul(&self.alpha_f), &minus_p) || self.k_f != 0 || self.k_g != -1 || self.j != 0 {
                return Err(Error::Invalid("alpha_f = -beta_f requires alpha_f^2 = -p, k_f = 0, k_g = -1, j = 0".into()));
            }
        }
        Ok(())
    }

    pub fn mode(&self) -> Mode {
        if nonzero(&self.alpha_f.add(&self.beta_f)) {
            Mode::Ordinary
        } else {
            Mode::Supersingular
        }
    }

    /// `lambda_f`.
    pub fn f_root(&self, l: Root) -> &PadicElem {
        match l {
            Root::Alpha => &self.alpha_f,
            Root::Beta => &self.beta_f,
        }
    }

    /// `mu_g`.
    pub fn g_root(&self, m: Root) -> &PadicElem {
        match m {
            Root::Alpha => &self.alpha_g,
            Root::Beta => &self.beta_g,
        }
    }

    pub fn p_elem(&self) -> PadicElem {
        PadicElem::from_i64(self.ring(), self.ring().p_u64() as i64)
    }

    /// Parameters from Hecke eigenvalues: `alpha` is the unit root of
    /// `X^2 - a X + eps p^{k+1}` and `beta = a - alpha`.
    #[allow(clippy::too_many_arguments)]
    pub fn ordinary_from_ap(
        r: &Ring,
        k_f: i64,
        a_f: &PadicElem,
        eps_f: &PadicElem,
        k_g: i64,
        a_g: &PadicElem,
        eps_g: &PadicElem,
        j: i64,
    ) -> Result<Self> {
        let pp = PadicElem::from_i64(r, r.p_u64() as i64);
        let alpha_f = hensel_unit_root(a_f, &eps_f.mul(&pp.pow(k_f + 1)?))?;
        let alpha_g = hensel_unit_root(a_g, &eps_g.mul(&pp.pow(k_g + 1)?))?;
        let beta_f = a_f.sub(&alpha_f);
        let beta_g = a_g.sub(&alpha_g);
        Self::new(k_f, k_g, j, alpha_f, beta_f, alpha_g, beta_g, eps_f.clone(), eps_g.clone())
    }

    /// Parameters with `alpha_f` the unit root of `X^2 - a_f X + eps_f p^{k_f+1}`
    /// and a weight one `g` with roots `alpha_g`, `eps_g / alpha_g`.
    fn ordinary_f_with_g(r: &Ring, k_f: i64, a_f: &PadicElem, eps_f: &PadicElem, alpha_g: &PadicElem, eps_g: &PadicElem, j: i64) -> Result<Self> {
        let pp = PadicElem::from_i64(r, r.p_u64() as i64);
        let alpha_f = hensel_unit_root(a_f, &eps_f.mul(&pp.pow(k_f + 1)?))?;
        let beta_f = a_f.sub(&alpha_f);
        let beta_g = eps_g.div(alpha_g)?;
        Self::new(k_f, -1, j, alpha_f, beta_f, alpha_g.clone(), beta_g, eps_f.clone(), eps_g.clone())
    }

    /// Random ordinary parameters over `r`: unit Hecke eigenvalues and
    /// Teichmuller nebentypus values.
    pub fn random_ordinary<R: Rng + ?Sized>(r: &Ring, k_f: i64, k_g: i64, j: i64, rng: &mut R) -> Result<Self> {
        let p = r.p_u64() as i64;
        for _ in 0..200 {
            let a_f = PadicElem::from_oelem(r, &r.random_unit(rng, r.prec()), r.prec());
            let a_g = PadicElem::from_oelem(r, &r.random_unit(rng, r.prec()), r.prec());
            let eps_f = teichmuller(r, rng.gen_range(1..p));
            let eps_g = teichmuller(r, rng.gen_range(1..p));
            let built = if k_g == -1 {
                // Weight one: both roots of g are units, so sample alpha_g directly.
                Self::ordinary_f_with_g(r, k_f, &a_f, &eps_f, &a_g, &eps_g, j)
            } else {
                Self::ordinary_from_ap(r, k_f, &a_f, &eps_f, k_g, &a_g, &eps_g, j)
            };
            if let Ok(params) = built {
                return Ok(params);
            }
        }
        Err(Error::Degenerate("no admissible ordinary parameters found".into()))
    }

    /// Random ordinary parameters passing the non-anomalous predicate and its auxiliary unit check.
    pub fn random_non_anomalous<R: Rng + ?Sized>(r: &Ring, k_f: i64, k_g: i64, j: i64, rng: &mut R) -> Result<Self> {
        for _ in 0..200 {
            let params = Self::random_ordinary(r, k_f, k_g, j, rng)?;
            let rep = is_non_anomalous(&params);
            if rep.non_anomalous && rep.auxiliary_unit {
                return Ok(params);
            }
        }
        Err(Error::Degenerate("no non-anomalous parameters found".into()))
    }

    /// The supersingular configuration over `Z_p[t]/(t^2 + p)`: `alpha_f = t`,
    /// `beta_f = -t`, weights `k_f = 0`, `k_g = -1` and `j = 0`.
    pub fn supersingular(r: &Ring, alpha_g: &PadicElem, eps_g: &PadicElem) -> Result<Self> {
        let p = r.p_u64() as i64;
        if r.kind() != RingKind::Eisenstein || r.spec().minpoly != vec![p, 0, 1] {
            return Err(Error::InvalidRing("the supersingular mode needs the ring Z_p[t]/(t^2 + p)".into()));
        }
        let t = PadicElem::gen(r);
        let beta_g = eps_g.div(alpha_g)?;
        Self::new(0, -1, 0, t.clone(), t.neg(), alpha_g.clone(), beta_g, PadicElem::one(r), eps_g.clone())
    }

    /// Random supersingular parameters with unit `alpha_g != beta_g`.
    pub fn random_supersingular<R: Rng + ?Sized>(r: &Ring, rng: &mut R) -> Result<Self> {
        let p = r.p_u64() as i64;
        for _ in 0..200 {
            let a = PadicElem::from_int(r, &num_bigint::BigInt::from(rng.gen_range(1..p)))
                .add(&PadicElem::from_oelem(r, &r.random(rng, r.prec()), r.prec()).mul_int(p));
            let eps = teichmuller(r, rng.gen_range(1..p));
            if let Ok(params) = Self::supersingular(r, &a, &eps) {
                return Ok(params);
            }
        }
        Err(Error::Degenerate("no admissible supersingular parameters found".into()))
    }

    pub fn to_json(&self) -> ParamsJson {
        ParamsJson {
            ring: self.ring().spec().clone(),
            k_f: self.k_f,
            k_g: self.k_g,
            j: self.j,
            alpha_f: self.alpha_f.to_json(),
            beta_f: self.beta_f.to_json(),
            alpha_g: self.alpha_g.to_json(),
            beta_g: self.beta_g.to_json(),
            eps_f: self.eps_f.to_json(),
            eps_g: self.eps_g.to_json(),
        }
    }

    pub fn from_json(j: &ParamsJson) -> Result<Self> {
        let r = Ring::new(j.ring.clone())?;
        let e = |x: &PadicJson| PadicElem::from_json(&r, x);
        Self::new(j.k_f, j.k_g, j.j, e(&j.alpha_f)?, e(&j.beta_f)?, e(&j.alpha_g)?, e(&j.beta_g)?, e(&j.eps_f)?, e(&j.eps_g)?)
    }
}

/// `1 - x`.
fn one_minus(x: &PadicElem) -> PadicElem {
    PadicElem::one(x.ring()).sub(x)
}

/// The interpolation factor `E(lambda, j)`.
pub fn euler_e(params: &RankinParams, l: Root) -> Result<PadicElem> {
    let lam = params.f_root(l);
    let lam2 = params.f_root(l.other());
    let p = params.p_elem();
    let pj = p.pow(params.j)?;
    let pj1 = p.pow(params.j + 1)?;
    let mut num = PadicElem::one(params.ring());
    for mu in [&params.alpha_g, &params.beta_g] {
        num = num.mul(&one_minus(&pj.div(&lam.mul(mu))?));
        num = num.mul(&one_minus(&lam2.mul(mu).div(&pj1)?));
    }
    let den = one_minus(&lam2.div(&p.mul(lam))?).mul(&one_minus(&lam2.div(lam)?));
    if !nonzero(&den) {
        return Err(Error::Degenerate("a denominator factor of E vanishes".into()));
    }
    num.div(&den)
}

/// `E(lambda, j)` expanded over a common denominator:
/// `prod (lambda mu - p^j) (p^{1+j} - lambda' mu) / (eps_g p^{k_g+1} p^{1+2j} (p lambda - lambda') (lambda - lambda'))`.
pub fn euler_e_expanded(params: &RankinParams, l: Root) -> Result<PadicElem> {
    let lam = params.f_root(l);
    let lam2 = params.f_root(l.other());
    let p = params.p_elem();
    let pj = p.pow(params.j)?;
    let pj1 = p.pow(params.j + 1)?;
    let mut num = PadicElem::one(params.ring());
    for mu in [&params.alpha_g, &params.beta_g] {
        num = num.mul(&lam.mul(mu).sub(&pj)).mul(&pj1.sub(&lam2.mul(mu)));
    }
    let den = params.eps_g.mul(&p.pow(params.k_g + 1)?).mul(&p.pow(1 + 2 * params.j)?).mul(&p.mul(lam).sub(lam2)).mul(&lam.sub(lam2));
    num.div(&den)
}

/// The factor `R_{lambda, mu, j, m}` relating `L^?(f_lambda, g_mu)` to `L(f_lambda')`
/// at a character of conductor `p^m`.
pub fn r_factor(params: &RankinParams, l: Root, mu: Root, m: u32) -> Result<PadicElem> {
    let lam = params.f_root(l);
    let lam2 = params.f_root(l.other());
    if m >= 1 {
        return lam2.div(lam)?.pow(m as i64);
    }
    let mu = params.g_root(mu);
    let p = params.p_elem();
    let pj = p.pow(params.j)?;
    let pj1 = p.pow(params.j + 1)?;
    let num = one_minus(&lam2.mul(mu).div(&pj1)?).mul(&one_minus(&pj.div(&lam.mul(mu))?));
    let den = one_minus(&lam.mul(mu).div(&pj1)?).mul(&one_minus(&pj.div(&lam2.mul(mu))?));
    if !nonzero(&den) {
        return Err(Error::Degenerate("a denominator factor of R vanishes".into()));
    }
    num.div(&den)
}

/// One residual condition `x != 1 mod varpi`.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualCheck {
    pub condition: String,
    pub holds: bool,
}

/// Report of [`is_non_anomalous`].
#[derive(Clone, Debug, Serialize)]
pub struct NonAnomalousReport {
    /// `v(E(alpha_f, j))`, `None` when zero at precision.
    pub e_alpha_valuation: Option<i64>,
    /// `E(alpha_f, j)` is a unit.
    pub non_anomalous: bool,
    /// Residual conditions for the numerator and denominator factors of `E(alpha_f, j)`.
    pub residual_checks: Vec<ResidualCheck>,
    /// All residual conditions hold.
    pub residual_prediction: bool,
    /// `beta_f^4 E(beta_f, j) - alpha_f^4 E(alpha_f, j)` is a unit.
    pub auxiliary_unit: bool,
    /// `j` lies strictly between `k_g + 1` and `k_f`.
    pub interior_twist: bool,
}

/// Evaluates the non-anomalous predicate `E(alpha_f, j) in O^x` together with
/// the residual conditions that decide it factor by factor.
pub fn is_non_anomalous(params: &RankinParams) -> NonAnomalousReport {
    let interior_twist = params.k_g + 1 < params.j && params.j < params.k_f;
    let ea = euler_e(params, Root::Alpha).ok();
    let e_alpha_valuation = ea.as_ref().and_then(|e| e.valuation());
    let non_anomalous = params.mode() == Mode::Ordinary && e_alpha_valuation == Some(0);
    let aux = (|| -> Result<bool> {
        let ea = euler_e(params, Root::Alpha)?;
        let eb = euler_e(params, Root::Beta)?;
        let a4 = params.alpha_f.pow(4)?;
        let b4 = params.beta_f.pow(4)?;
        Ok(b4.mul(&eb).sub(&a4.mul(&ea)).is_unit())
    })()
    .unwrap_or(false);

    let mut residual_checks = Vec::new();
    let p = params.p_elem();
    let mut push = |condition: &str, x: Result<PadicElem>| {
        let holds = x.map(|x| one_minus(&x).is_unit()).unwrap_or(false);
        residual_checks.push(ResidualCheck { condition: condition.into(), holds });
    };
    let (af, bf, ag, bg) = (&params.alpha_f, &params.beta_f, &params.alpha_g, &params.beta_g);
    if params.j == 0 {
        push("alpha_f alpha_g != 1", Ok(af.mul(ag)));
    }
    if params.j == params.k_g + 1 {
        push("alpha_f beta_g p^{-k_g-1} != 1", p.pow(-params.k_g - 1).map(|s| af.mul(bg).mul(&s)));
    }
    if params.j == params.k_f {
        push("alpha_g beta_f p^{-k_f-1} != 1", p.pow(-params.k_f - 1).map(|s| ag.mul(bf).mul(&s)));
    }
    if params.k_g == -1 && params.j == params.k_f {
        push("beta_f beta_g p^{-1-j} != 1", p.pow(-1 - params.j).map(|s| bf.mul(bg).mul(&s)));
    }
    if params.k_f == 0 {
        push("beta_f / (p alpha_f) != 1", bf.div(&p.mul(af)));
    }
    let residual_prediction = residual_checks.iter().all(|c| c.holds);
    NonAnomalousReport { e_alpha_valuation, non_anomalous, residual_checks, residual_prediction, auxiliary_unit: aux, interior_twist }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zp(p: u64) -> Ring {
        Ring::new(RingSpec::zp(p, 40)).unwrap()
    }

    #[test]
    fn vieta_and_validation() {
        let r = zp(5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let params = RankinParams::random_ordinary(&r, 1, -1, 0, &mut rng).unwrap();
        assert_eq!(params.mode(), Mode::Ordinary);
        assert!(params.alpha_f.is_unit());
        assert_eq!(params.beta_f.valuation(), Some(2));
        let mut bad = params.clone();
        bad.j = 2;
        assert!(bad.validate().is_err());
        let json = params.to_json();
        let back = RankinParams::from_json(&json).unwrap();
        assert!(back.alpha_f.agree(&params.alpha_f, 40).is_equal());
    }

    #[test]
    fn euler_factor_two_evaluators() {
        let r = zp(5);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (k_f, k_g, j) in [(1, -1, 0), (1, -1, 1), (3, 0, 2), (2, 0, 1)] {
            let params = RankinParams::random_ordinary(&r, k_f, k_g, j, &mut rng).unwrap();
            for l in [Root::Alpha, Root::Beta] {
                let a = euler_e(&params, l).unwrap();
                let b = euler_e_expanded(&params, l).unwrap();
                assert!(a.agree(&b, 25).is_equal(), "{k_f} {k_g} {j} {l:?}");
            }
        }
    }

    #[test]
    fn euler_factor_vanishes_on_engineered_root() {
        // p^j = alpha_f alpha_g with j = 0 forces a zero numerator factor.
        let r = zp(5);
        let af = PadicElem::from_i64(&r, 2);
        let ag = af.inv().unwrap();
        let one = PadicElem::one(&r);
        let p = PadicElem::from_i64(&r, 5);
        let params = RankinParams::new(
            1,
            -1,
            0,
            af.clone(),
            p.pow(2).unwrap().div(&af).unwrap(),
            ag.clone(),
            one.div(&ag).unwrap().mul_int(3),
            one.clone(),
            PadicElem::from_i64(&r, 3),
        )
        .unwrap();
        assert!(euler_e(&params, Root::Alpha).unwrap().is_zero() != ZeroTest::NonZero);
        let rep = is_non_anomalous(&params);
        assert!(!rep.non_anomalous);
        assert!(!rep.residual_prediction);
    }

    #[test]
    fn interior_twists_are_non_anomalous() {
        let r = zp(5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let params = RankinParams::random_ordinary(&r, 3, 0, 2, &mut rng).unwrap();
            let rep = is_non_anomalous(&params);
            assert!(rep.interior_twist && rep.non_anomalous, "{rep:?}");
        }
    }

    #[test]
    fn predicate_matches_valuation_and_residuals() {
        let r = zp(3);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut seen = [false; 2];
        for _ in 0..60 {
            let params = RankinParams::random_ordinary(&r, 1, -1, 1, &mut rng).unwrap();
            let rep = is_non_anomalous(&params);
            let direct = euler_e(&params, Root::Alpha).unwrap().valuation() == Some(0);
            assert_eq!(rep.non_anomalous, direct);
            assert_eq!(rep.non_anomalous, rep.residual_prediction, "{rep:?}");
            seen[rep.non_anomalous as usize] = true;
        }
        assert!(seen[0] && seen[1]);
    }

    #[test]
    fn supersingular_parameters() {
        let r = Ring::new(RingSpec::sqrt_neg_p(3, 40)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let params = RankinParams::random_supersingular(&r, &mut rng).unwrap();
        assert_eq!(params.mode(), Mode::Supersingular);
        assert!(RankinParams::supersingular(&Ring::new(RingSpec::zp(3, 20)).unwrap(), &PadicElem::one(&r), &PadicElem::one(&r)).is_err());
        // R at a nontrivial conductor is (lambda'/lambda)^m = (-1)^m.
        let r3 = r_factor(&params, Root::Beta, Root::Beta, 3).unwrap();
        assert!(r3.agree(&PadicElem::from_i64(&r, -1), 30).is_equal(), "{:?}", r3.agree(&PadicElem::from_i64(&r, -1), 30));
    }
}
