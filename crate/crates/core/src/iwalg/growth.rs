//! Truncated power series of bounded growth, their reduction modulo `omega_n`,
//! the logarithm and the plus/minus logarithm truncations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::character::evaluate_at;
use super::{twist, GroupRingElem};
use crate::error::{Error, Result};
use crate::padic::cyclo::CycloRing;
use crate::padic::zpoly::{self, Sign};
use crate::padic::{Fx, PadicElem, Ring, Verdict};

/// A truncated power series `sum_{k <= D} c_k X^k` with `|c_k| <= p^s k^r`.
#[derive(Clone, Debug)]
pub struct GrowthSeries {
    pub coeffs: Fx,
    pub r: u32,
    pub s: i64,
}

/// `ceil(log_p(m))` for `m >= 1`.
pub fn ceil_log(p: u64, m: u64) -> i64 {
    let mut k = 0;
    let mut q: u128 = 1;
    while q < m as u128 {
        q *= p as u128;
        k += 1;
    }
    k
}

impl GrowthSeries {
    /// Builds a series and checks the declared growth bound on every coefficient.
    pub fn new(ring: &Ring, coeffs: Fx, r: u32, s: i64) -> Result<GrowthSeries> {
        let g = GrowthSeries { coeffs, r, s };
        for k in 0..g.coeffs.len() {
            if let Some(v) = g.coeffs.coeff(k, ring).valuation() {
                // |c_k| = p^{-v/e} <= p^s k^r  iff  p^{-v-es} <= k^{re}.
                let lhs_exp = -v - ring.e() * s;
                if lhs_exp > 0 {
                    let lhs = BigInt::from(ring.p_u64()).pow(lhs_exp as u32);
                    let rhs = BigInt::from(k.max(1) as u64).pow(r * ring.e() as u32);
                    if lhs > rhs {
                        return Err(Error::Invalid(format!("coefficient {k} violates the growth bound")));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// A reduction modulo `omega_n` with its denominator ledger.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub elem: GroupRingElem,
    /// Proven bound on the denominator exponent, in uniformizer digits.
    pub bound: i64,
    /// Absolute precision certified against the omitted tail, in uniformizer digits.
    pub tail_prec: i64,
}

/// Ledger entry for a reduction.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerCheck {
    pub denom_exp: i64,
    pub bound: i64,
    pub ok: bool,
}

impl Reduced {
    pub fn ledger(&self) -> LedgerCheck {
        let d = self.elem.denom_exp();
        LedgerCheck { denom_exp: d, bound: self.bound, ok: d <= self.bound }
    }
}

/// Reduces a growth series modulo `omega_n`.
///
/// The denominator bound is `e (s + r n + delta)` with
/// `delta = max_k (ceil(r log_p(k+1)) - k)` over the quotients `k = floor(m / p^n)`
/// that occur. The omitted tail `m > D` contributes at valuation at least
/// `min_{m > D} (floor(m / p^n) - s - r ceil(log_p m))`, which caps the precision.
pub fn reduce_growth(f: &GrowthSeries, n: u32, ring: &Ring) -> Result<Reduced> {
    let p = ring.p_u64();
    let pn = p.pow(n);
    let d = f.degree() as u64;
    if d + 1 < pn {
        return Err(Error::Invalid(format!("truncation degree {d} is below p^n = {pn}")));
    }
    let r = f.r as i64;
    let kmax = d / pn;
    let delta = (0..=kmax).map(|k| r * ceil_log(p, k + 1) - k as i64).max().unwrap_or(0).max(0);
    let bound = ring.e() * (f.s + r * n as i64 + delta);
    let mut tail = i64::MAX;
    let scan_end = (d + 1) + pn * 64 + 4 * d;
    let mut m = d + 1;
    while m <= scan_end {
        let t = (m / pn) as i64 - f.s - r * ceil_log(p, m);
        tail = tail.min(t);
        m += 1;
    }
    let tail_prec = ring.e() * tail;
    let mut elem = GroupRingElem::from_fx(ring, n, &f.coeffs);
    let mut fx = elem.fx().clone();
    fx.cap_abs_prec(tail_prec, ring);
    elem = GroupRingElem::from_fx(ring, n, &fx);
    Ok(Reduced { elem, bound, tail_prec })
}

/// `log_p(1 + X) = sum_{k>=1} (-1)^{k+1} X^k / k`, truncated at degree `depth`.
pub fn log_series(ring: &Ring, depth: usize) -> GrowthSeries {
    let mut f = Fx::zero(ring, depth + 1);
    for k in 1..=depth {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = PadicElem::from_rational(ring, &BigRational::new(BigInt::from(sign), BigInt::from(k)));
        f = f.add(&shifted_monomial(ring, &c, k, depth + 1), ring);
    }
    GrowthSeries { coeffs: f, r: 1, s: 0 }
}

fn shifted_monomial(ring: &Ring, c: &PadicElem, k: usize, len: usize) -> Fx {
    let mut m = c.to_fx();
    let mut coeffs = vec![ring.zero(); len];
    coeffs[k] = m.coeffs.remove(0);
    Fx { den: m.den, coeffs, prec: m.prec }
}

/// `log_{p,m} = prod_{i<m} Tw^{-i} log_p`, assembled from truncations.
///
/// The twisted truncations are cut to degree `depth / 2`; each coefficient is
/// then accurate to `depth + 1 - depth/2 - ceil(log_p(depth+1))` digits of `p`.
/// `m = 0` returns `1`.
pub fn log_pm(ring: &Ring, m: u32, depth: usize) -> Fx {
    if m == 0 {
        return Fx::constant(ring, &PadicElem::one(ring), 1);
    }
    let keep = depth / 2 + 1;
    let acc_digits = (depth as i64 + 1 - (depth as i64 / 2) - ceil_log(ring.p_u64(), depth as u64 + 1)) * ring.e();
    let log = log_series(ring, depth).coeffs;
    let mut acc = Fx::constant(ring, &PadicElem::one(ring), keep);
    for i in 0..m as i64 {
        let mut t = twist(&log, -i, ring);
        t.coeffs.truncate(keep);
        t.cap_abs_prec(acc_digits, ring);
        acc = acc.mul_trunc(&t, keep, ring);
    }
    acc
}

/// Report of [`log_pm_product_check`].
#[derive(Clone, Debug, Serialize)]
pub struct LogCheck {
    pub m: u32,
    pub i: u32,
    pub level: u32,
    pub verdict: Verdict,
}

/// Checks that `log_{p,m}` vanishes at `(1+p)^i zeta - 1` for `i < m` and every
/// `p`-power root of unity `zeta` of order at most `p^level`. Values are cut to
/// the precision certified by the truncation depth, and `digits` are required.
pub fn log_pm_product_check(ring: &Ring, m_max: u32, level: u32, depth: usize, digits: i64) -> Vec<LogCheck> {
    let p = ring.p_u64();
    let u = PadicElem::from_i64(ring, 1 + p as i64);
    let mut out = Vec::new();
    for m in 1..=m_max {
        let f = log_pm(ring, m, depth);
        let keep = f.len() as i64;
        for i in 0..m {
            for l in 0..=level {
                let cr = CycloRing::new(ring, l);
                let x = cr.zeta().scale(&u.pow(i as i64).unwrap()).sub(&cr.one());
                let val = evaluate_at(&f, &x);
                // Tail of the evaluation: v(x^k / k) >= k e / phi(p^l) - e log_p k.
                let phi = cr.dim() as i64;
                let tail = (keep * ring.e()) / phi.max(1) - ring.e() * ceil_log(p, keep as u64 + 1);
                let mut v = val.fx().clone();
                v.cap_abs_prec(tail, ring);
                let verdict = v.zero_verdict(ring, digits);
                out.push(LogCheck { m, i, level: l, verdict });
            }
        }
    }
    out
}

/// `p^{-c-1} tilde omega_n^{sign}` with `c = floor(n/2)` for `+` and `floor((n+1)/2)` for `-`.
pub fn pollack_log_trunc(sign: Sign, n: u32, ring: &Ring) -> GroupRingElem {
    let c = match sign {
        Sign::Plus => n / 2,
        Sign::Minus => n.div_ceil(2),
    } as i64;
    let t = zpoly::omega_tilde(ring.p_u64(), n, sign);
    let scale = PadicElem::from_i64(ring, ring.p_u64() as i64).pow(-c - 1).unwrap();
    GroupRingElem::from_int_poly(ring, n, &t).scale(&scale)
}

/// Pollack's half logarithm `(1/p) prod_{1 <= k <= K, k in S} Phi_k / p` as a
/// product of the first factors, reduced modulo `omega_n`.
pub fn pollack_log_product(sign: Sign, n: u32, factors: u32, ring: &Ring) -> GroupRingElem {
    let p = ring.p_u64();
    let mut poly = vec![BigInt::one()];
    let mut count = 1i64;
    for k in 1..=factors {
        if sign.owns_level(k) {
            poly = zpoly::mul(&poly, &zpoly::phi(p, k));
            poly = reduce_int(&poly, &zpoly::omega(p, n));
            count += 1;
        }
    }
    let scale = PadicElem::from_i64(ring, p as i64).pow(-count).unwrap();
    GroupRingElem::from_int_poly(ring, n, &poly).scale(&scale)
}

fn reduce_int(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    for i in (dm..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=dm {
            r[i - dm + j] -= &c * &m[j];
        }
    }
    r.truncate(dm.max(1));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iwalg::{all_characters, evaluate};
    use crate::padic::RingSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zp(p: u64, n: i64) -> Ring {
        Ring::new(RingSpec::zp(p, n)).unwrap()
    }

    #[test]
    fn log_coefficients() {
        let r = zp(3, 20);
        let l = log_series(&r, 10);
        for k in 1..=10i64 {
            let want = PadicElem::from_rational(&r, &BigRational::new(BigInt::from(if k % 2 == 1 { 1 } else { -1 }), BigInt::from(k)));
            assert!(l.coeffs.coeff(k as usize, &r).agree(&want, 15).is_equal());
        }
        assert!(GrowthSeries::new(&r, l.coeffs.clone(), 1, 0).is_ok());
        assert!(GrowthSeries::new(&r, l.coeffs, 0, 0).is_err());
    }

    #[test]
    fn integral_series_has_zero_ledger() {
        let r = zp(3, 20);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let coeffs = (0..40).map(|_| r.random(&mut rng, 20)).collect();
        let g = GrowthSeries::new(&r, Fx::from_coeffs(&r, coeffs, 20), 0, 0).unwrap();
        let red = reduce_growth(&g, 2, &r).unwrap();
        assert_eq!(red.bound, 0);
        assert_eq!(red.elem.denom_exp(), 0);
        assert!(red.ledger().ok);
    }

    #[test]
    fn log_reduces_to_zero() {
        let r = zp(3, 30);
        for n in 0..=2u32 {
            let depth = 3usize.pow(n) * 40;
            let g = log_series(&r, depth);
            let red = reduce_growth(&g, n, &r).unwrap();
            assert!(red.ledger().ok);
            assert!(red.tail_prec >= 20);
            assert!(red.elem.is_zero(), "n = {n}");
            for chi in all_characters(3, n) {
                assert!(evaluate(&red.elem, &chi).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn random_growth_series_respects_bound() {
        let r = zp(5, 30);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let depth = 200;
        let mut f = Fx::zero(&r, depth + 1);
        for k in 1..=depth {
            let v = crate::padic::ring::vp(&BigInt::from(k), r.p()) as i64;
            let u = PadicElem::from_oelem(&r, &r.random_unit(&mut rng, 30), 30);
            let c = u.mul(&PadicElem::from_i64(&r, 5).pow(-v - 1).unwrap());
            f = f.add(&shifted_monomial(&r, &c, k, depth + 1), &r);
        }
        let g = GrowthSeries::new(&r, f, 1, 1).unwrap();
        for n in 1..=2 {
            let red = reduce_growth(&g, n, &r).unwrap();
            assert!(red.ledger().ok, "{:?}", red.ledger());
        }
    }

    #[test]
    fn log_pm_vanishes_on_twisted_roots() {
        let r = zp(3, 30);
        let one = log_pm(&r, 0, 10);
        assert!(one.agree(&Fx::constant(&r, &PadicElem::one(&r), 1), &r, 30).is_equal());
        for c in log_pm_product_check(&r, 2, 1, 120, 20) {
            assert!(c.verdict.is_equal(), "{c:?}");
        }
    }

    #[test]
    fn pollack_truncations() {
        let r = zp(3, 20);
        let plus = pollack_log_trunc(Sign::Plus, 2, &r);
        let want = GroupRingElem::from_int_poly(&r, 2, &zpoly::phi(3, 2)).scale(&PadicElem::from_i64(&r, 9).inv().unwrap());
        assert!(plus.agree(&want, 15).is_equal());
        let minus = pollack_log_trunc(Sign::Minus, 1, &r);
        let want = GroupRingElem::from_int_poly(&r, 1, &zpoly::phi(3, 1)).scale(&PadicElem::from_i64(&r, 9).inv().unwrap());
        assert!(minus.agree(&want, 15).is_equal());
        for n in 0..=3 {
            let x = GroupRingElem::from_int_poly(&r, n, &[BigInt::zero(), BigInt::one()]);
            let prod = pollack_log_trunc(Sign::Plus, n, &r).mul(&pollack_log_trunc(Sign::Minus, n, &r)).mul(&x);
            assert!(prod.is_zero());
            for sign in [Sign::Plus, Sign::Minus] {
                let long = pollack_log_product(sign, n, n + 4, &r);
                assert!(long.agree(&pollack_log_trunc(sign, n, &r), 10).is_equal());
            }
        }
    }
}
