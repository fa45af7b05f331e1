//! Characters of `G_n`, evaluation and order of vanishing.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::GroupRingElem;
use crate::error::{Error, Result};
use crate::padic::cyclo::{units_mod, CycloElem, CycloRing};
use crate::padic::zpoly;
use crate::padic::{Fx, Ring};

/// A character of `G_n` of conductor `p^m`.
///
/// `m = 0` is the trivial character; otherwise `2 <= m <= n + 1` and
/// `gamma` maps to `zeta_{p^{m-1}}^k` with `p` not dividing `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacterSpec {
    pub n: u32,
    pub m: u32,
    pub k: i64,
}

impl CharacterSpec {
    pub fn trivial(n: u32) -> Self {
        CharacterSpec { n, m: 0, k: 1 }
    }

    /// Validated character.
    pub fn new(p: u64, n: u32, m: u32, k: i64) -> Result<Self> {
        let c = CharacterSpec { n, m, k };
        c.validate(p)?;
        Ok(c)
    }

    pub fn validate(&self, p: u64) -> Result<()> {
        if self.m == 0 {
            return Ok(());
        }
        if self.m == 1 {
            return Err(Error::InvalidCharacter("conductor p is invisible on Gamma: gamma would map to 1, which is the trivial character".into()));
        }
        if self.m > self.n + 1 {
            return Err(Error::InvalidCharacter(format!("conductor p^{} exceeds level {}", self.m, self.n)));
        }
        if self.k.rem_euclid(p as i64) == 0 {
            return Err(Error::InvalidCharacter(format!("exponent {} is divisible by p", self.k)));
        }
        Ok(())
    }

    /// Level of the cyclotomic value ring: `m - 1`, or 0 for the trivial character.
    pub fn value_level(&self) -> u32 {
        self.m.saturating_sub(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.m == 0
    }

    /// The value ring `O[zeta_{p^{m-1}}]`.
    pub fn value_ring(&self, r: &Ring) -> CycloRing {
        CycloRing::new(r, self.value_level())
    }

    /// `chi(gamma)` in the value ring.
    pub fn gamma_value(&self, r: &Ring) -> CycloElem {
        self.value_ring(r).zeta_pow(self.k)
    }
}

/// Every character of `G_n`: the trivial one, then each conductor in increasing order.
pub fn all_characters(p: u64, n: u32) -> Vec<CharacterSpec> {
    let mut out = vec![CharacterSpec::trivial(n)];
    for m in 2..=n + 1 {
        for k in units_mod(p, m - 1) {
            out.push(CharacterSpec { n, m, k });
        }
    }
    out
}

/// Coefficients `b_i` with `F = sum b_i (1+X)^i`.
fn group_basis(f: &Fx, r: &Ring) -> Fx {
    f.taylor_shift(-1, r)
}

/// `sum_i w_i b_i zeta^{k i}` in the value ring, with integer weights `w_i`.
fn weighted_sum(b: &Fx, chi: &CharacterSpec, r: &Ring, weight: impl Fn(usize) -> BigInt) -> CycloElem {
    let ring = chi.value_ring(r);
    let q = ring.order() as i64;
    let mut w = vec![r.zero(); q as usize];
    for (i, c) in b.coeffs.iter().enumerate() {
        let wt = weight(i);
        if num_traits::Zero::is_zero(&wt) || r.is_zero(c) {
            continue;
        }
        let slot = &mut w[(chi.k * i as i64).rem_euclid(q) as usize];
        for (a, x) in slot.iter_mut().zip(c) {
            *a += x * &wt;
        }
    }
    for c in w.iter_mut() {
        r.reduce(c);
    }
    ring.from_zeta_coords(w, b.den, b.prec)
}

/// `x(chi)`: substitutes `X -> chi(gamma) - 1`.
pub fn evaluate(x: &GroupRingElem, chi: &CharacterSpec) -> Result<CycloElem> {
    if chi.n != x.level() {
        return Err(Error::LevelMismatch(chi.n, x.level()));
    }
    chi.validate(x.ring().p_u64())?;
    let r = x.ring();
    Ok(weighted_sum(&group_basis(x.fx(), r), chi, r, |_| BigInt::from(1)))
}

/// Evaluation by Horner's rule in the value ring; an independent evaluator.
pub fn evaluate_horner(f: &Fx, chi: &CharacterSpec, r: &Ring) -> CycloElem {
    let ring = chi.value_ring(r);
    let x = chi.gamma_value(r).sub(&ring.one());
    evaluate_at(f, &x)
}

/// `f(x)` for a point `x` of a cyclotomic ring.
pub fn evaluate_at(f: &Fx, x: &CycloElem) -> CycloElem {
    let ring = x.ring().clone();
    let r = ring.base().clone();
    let mut acc = ring.zero();
    for i in (0..f.len()).rev() {
        acc = acc.mul(x).add(&ring.from_scalar(&f.coeff(i, &r)));
    }
    acc
}

/// Order of vanishing at a character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "order", rename_all = "snake_case")]
pub enum Ord {
    /// The first Taylor coefficient nonzero at working precision has this index.
    Exact(u32),
    /// Every Taylor coefficient is zero at working precision.
    AtLeast(u32),
}

/// Order of vanishing of a polynomial representative at `chi`.
///
/// Writes `1 + X = chi(gamma) (1 + Y)`; the coefficient of `Y^j` is
/// `sum_i binom(i, j) b_i chi(gamma)^i`.
pub fn ord_at_poly(f: &Fx, chi: &CharacterSpec, r: &Ring) -> Result<Ord> {
    chi.validate(r.p_u64())?;
    let b = group_basis(f, r);
    let n = b.len();
    for j in 0..n {
        let row = zpoly::binomial_column(n, j);
        let c = weighted_sum(&b, chi, r, |i| row[i].clone());
        if !c.is_zero() {
            return Ok(Ord::Exact(j as u32));
        }
    }
    Ok(Ord::AtLeast(n as u32))
}

/// Order of vanishing of a group-ring element at `chi`.
pub fn ord_at(x: &GroupRingElem, chi: &CharacterSpec) -> Result<Ord> {
    if chi.n != x.level() {
        return Err(Error::LevelMismatch(chi.n, x.level()));
    }
    ord_at_poly(x.fx(), chi, x.ring())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::zpoly::Sign;
    use crate::padic::{PadicElem, RingSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zp(p: u64, n: i64) -> Ring {
        Ring::new(RingSpec::zp(p, n)).unwrap()
    }

    #[test]
    fn character_validation() {
        assert!(CharacterSpec::new(3, 2, 1, 1).is_err());
        assert!(CharacterSpec::new(3, 2, 4, 1).is_err());
        assert!(CharacterSpec::new(3, 2, 3, 3).is_err());
        assert!(CharacterSpec::new(3, 2, 3, 2).is_ok());
        assert_eq!(all_characters(3, 2).len(), 9);
    }

    #[test]
    fn omega_and_phi_values() {
        let r = zp(3, 20);
        for n in 1..=2 {
            let w = GroupRingElem::from_fx(&r, n, &Fx::from_int_poly(&r, &zpoly::omega(3, n)));
            let phi = GroupRingElem::from_int_poly(&r, n, &zpoly::phi(3, n));
            for chi in all_characters(3, n) {
                assert!(evaluate(&w, &chi).unwrap().is_zero());
                let v = evaluate(&phi, &chi).unwrap();
                if chi.m == n + 1 {
                    assert!(v.is_zero());
                } else {
                    let three = chi.value_ring(&r).from_i64(3);
                    assert!(v.agree(&three, 20).is_equal());
                }
            }
        }
    }

    #[test]
    fn evaluators_agree_and_multiply() {
        let r = zp(5, 20);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = GroupRingElem::random(&r, 2, 20, &mut rng);
        let y = GroupRingElem::random(&r, 2, 20, &mut rng);
        for chi in all_characters(5, 2) {
            let a = evaluate(&x, &chi).unwrap();
            assert!(a.agree(&evaluate_horner(x.fx(), &chi, &r), 20).is_equal());
            let b = evaluate(&y, &chi).unwrap();
            assert!(evaluate(&x.mul(&y), &chi).unwrap().agree(&a.mul(&b), 20).is_equal());
        }
    }

    #[test]
    fn trace_kills_top_conductor() {
        let r = zp(3, 20);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let y = GroupRingElem::random(&r, 1, 20, &mut rng);
        let t = y.trace_lift();
        for chi in all_characters(3, 2) {
            let v = evaluate(&t, &chi).unwrap();
            if chi.m == 3 {
                assert!(v.is_zero());
            } else {
                let lower = CharacterSpec { n: 1, ..chi };
                let w = evaluate(&y, &lower).unwrap().scale(&PadicElem::from_i64(&r, 3));
                assert!(v.agree(&w, 20).is_equal());
            }
        }
    }

    #[test]
    fn ord_examples() {
        let r = zp(3, 20);
        let chi = CharacterSpec::new(3, 2, 2, 1).unwrap();
        let phi1 = zpoly::phi(3, 1);
        let sq = Fx::from_int_poly(&r, &zpoly::mul(&phi1, &phi1));
        assert_eq!(ord_at_poly(&sq, &chi, &r).unwrap(), Ord::Exact(2));
        let unit = GroupRingElem::constant(&r, 2, &PadicElem::from_i64(&r, 7));
        for c in all_characters(3, 2) {
            assert_eq!(ord_at(&unit, &c).unwrap(), Ord::Exact(0));
        }
        let zero = GroupRingElem::zero(&r, 1);
        assert_eq!(ord_at(&zero, &CharacterSpec::trivial(1)).unwrap(), Ord::AtLeast(3));
    }

    #[test]
    fn ord_of_minus_polynomial_is_factor_multiplicity() {
        let r = zp(3, 20);
        for n in 1..=3u32 {
            let t = zpoly::omega_tilde(3, n, Sign::Minus);
            let x = GroupRingElem::from_int_poly(&r, n, &t);
            for m in (2..=n).step_by(2) {
                let chi = CharacterSpec::new(3, n, m, 1).unwrap();
                let mult = (1..=n).filter(|&i| i % 2 == 1 && i == m - 1).count() as u32;
                assert_eq!(ord_at(&x, &chi).unwrap(), Ord::Exact(mult));
            }
        }
    }

    #[test]
    fn twist_evaluate_compatibility() {
        let r = zp(3, 20);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = GroupRingElem::random(&r, 2, 20, &mut rng).fx().clone();
        let u = PadicElem::from_i64(&r, 4);
        for j in -3i64..=3 {
            let tw = super::super::twist(&f, j, &r);
            for chi in all_characters(3, 2) {
                let lhs = evaluate_horner(&tw, &chi, &r);
                let ring = chi.value_ring(&r);
                let pt = chi.gamma_value(&r).scale(&u.pow(j).unwrap()).sub(&ring.one());
                let rhs = evaluate_at(&f, &pt);
                assert!(lhs.agree(&rhs, 20).is_equal(), "j = {j}, chi = {chi:?}");
            }
        }
    }
}
