//! Cyclotomic extensions `O[z]/Phi_L(z)` with `zeta = 1 + z` a primitive
//! `p^L`-th root of unity.
//!
//! Level `L = 0` is `O` itself (`Phi_0 = z`, so `zeta = 1`). Elements are
//! stored as fixed-point polynomials in `z`; the `zeta`-power basis is used
//! for Galois conjugation, traces and character sums.

use std::sync::Arc;

use num_bigint::BigInt;

use super::elem::{PadicElem, Verdict};
use super::fx::Fx;
use super::ring::{OElem, Ring};
use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

/// The ring `O[zeta_{p^L}]`.
#[derive(Clone, Debug)]
pub struct CycloRing {
    base: Ring,
    level: u32,
    modulus: Arc<ZPoly>,
}

impl PartialEq for CycloRing {
    fn eq(&self, o: &Self) -> bool {
        self.level == o.level && self.base == o.base
    }
}

/// Element of a [`CycloRing`].
#[derive(Clone, Debug)]
pub struct CycloElem {
    ring: CycloRing,
    fx: Fx,
}

impl CycloRing {
    /// `O[zeta_{p^level}]`; level 0 is `O`.
    pub fn new(base: &Ring, level: u32) -> CycloRing {
        CycloRing { base: base.clone(), level, modulus: zpoly::phi(base.p_u64(), level) }
    }

    /// The cyclotomic ring of a primitive `p^m`-th root of unity, `m >= 1`.
    pub fn primitive(base: &Ring, m: u32) -> Result<CycloRing> {
        if m == 0 {
            return Err(Error::Invalid("level 0 is the base ring itself".into()));
        }
        Ok(Self::new(base, m))
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }
    pub fn level(&self) -> u32 {
        self.level
    }
    /// Rank over `O`.
    pub fn dim(&self) -> usize {
        self.modulus.len() - 1
    }
    /// `p^level`, the order of `zeta`.
    pub fn order(&self) -> u64 {
        self.base.p_u64().pow(self.level)
    }
    /// The defining polynomial in `z`.
    pub fn modulus(&self) -> &ZPoly {
        &self.modulus
    }

    pub fn zero(&self) -> CycloElem {
        CycloElem { ring: self.clone(), fx: Fx::zero(&self.base, self.dim()) }
    }
    pub fn one(&self) -> CycloElem {
        self.from_scalar(&PadicElem::one(&self.base))
    }
    pub fn from_scalar(&self, c: &PadicElem) -> CycloElem {
        CycloElem { ring: self.clone(), fx: Fx::constant(&self.base, c, self.dim()) }
    }
    pub fn from_i64(&self, c: i64) -> CycloElem {
        self.from_scalar(&PadicElem::from_i64(&self.base, c))
    }

    /// Reduction of an arbitrary polynomial in `z`.
    pub fn from_fx(&self, f: &Fx) -> CycloElem {
        CycloElem { ring: self.clone(), fx: f.rem(&self.modulus, &self.base).resized(self.dim(), &self.base) }
    }

    /// `zeta^e` for any integer `e`.
    pub fn zeta_pow(&self, e: i64) -> CycloElem {
        let q = self.order() as i64;
        let mut v = vec![self.base.zero(); q as usize];
        v[e.rem_euclid(q) as usize] = self.base.one();
        self.from_zeta_coords(v, 0, self.base.prec())
    }

    /// `zeta` itself.
    pub fn zeta(&self) -> CycloElem {
        self.zeta_pow(1)
    }

    /// The element `varpi^{-den} * sum_e w_e zeta^e`, exponents read modulo `p^L`.
    pub fn from_zeta_coords(&self, w: Vec<OElem>, den: i64, prec: i64) -> CycloElem {
        let r = &self.base;
        let q = self.order() as usize;
        let mut acc = vec![r.zero(); q];
        for (e, c) in w.into_iter().enumerate() {
            let slot = &mut acc[e % q];
            for (a, b) in slot.iter_mut().zip(c) {
                *a += b;
            }
        }
        let dim = self.dim();
        if self.level == 0 {
            let f = Fx { den, coeffs: acc, prec };
            let mut g = Fx { den, coeffs: vec![r.zero()], prec };
            for c in f.coeffs {
                for (a, b) in g.coeffs[0].iter_mut().zip(c) {
                    *a += b;
                }
            }
            r.reduce(&mut g.coeffs[0]);
            g.normalize(r);
            return CycloElem { ring: self.clone(), fx: g };
        }
        // zeta^e = -sum_{t < p-1} zeta^{e - dim + t p^{L-1}} for e >= dim.
        let step = q / self.base.p_u64() as usize;
        for e in (dim..q).rev() {
            let c = std::mem::replace(&mut acc[e], r.zero());
            if r.is_zero(&c) {
                continue;
            }
            for t in 0..(self.base.p_u64() as usize - 1) {
                let slot = &mut acc[e - dim + t * step];
                for (a, b) in slot.iter_mut().zip(&c) {
                    *a -= b;
                }
            }
        }
        acc.truncate(dim);
        for c in acc.iter_mut() {
            r.reduce(c);
        }
        let mut f = Fx { den, coeffs: acc, prec };
        f.normalize(r);
        CycloElem { ring: self.clone(), fx: f.taylor_shift(1, r) }
    }
}

impl CycloElem {
    pub fn ring(&self) -> &CycloRing {
        &self.ring
    }
    pub fn base(&self) -> &Ring {
        &self.ring.base
    }
    /// Coordinates in the `z`-power basis.
    pub fn fx(&self) -> &Fx {
        &self.fx
    }
    /// Coordinates in the `zeta`-power basis `zeta^0, ..., zeta^{dim-1}`.
    pub fn zeta_coords(&self) -> Fx {
        self.fx.taylor_shift(-1, self.base())
    }

    fn check(&self, o: &CycloElem) {
        assert!(self.ring == o.ring, "cyclotomic ring mismatch");
    }
    fn wrap(&self, fx: Fx) -> CycloElem {
        CycloElem { ring: self.ring.clone(), fx }
    }

    pub fn add(&self, o: &CycloElem) -> CycloElem {
        self.check(o);
        self.wrap(self.fx.add(&o.fx, self.base()))
    }
    pub fn sub(&self, o: &CycloElem) -> CycloElem {
        self.check(o);
        self.wrap(self.fx.sub(&o.fx, self.base()))
    }
    pub fn neg(&self) -> CycloElem {
        self.wrap(self.fx.neg(self.base()))
    }
    pub fn mul(&self, o: &CycloElem) -> CycloElem {
        self.check(o);
        let r = self.base();
        let f = self.fx.mul(&o.fx, r).rem(&self.ring.modulus, r).resized(self.ring.dim(), r);
        self.wrap(f)
    }
    pub fn scale(&self, c: &PadicElem) -> CycloElem {
        self.wrap(self.fx.scale(c, self.base()))
    }
    pub fn mul_int(&self, c: i64) -> CycloElem {
        self.scale(&PadicElem::from_i64(self.base(), c))
    }
    pub fn pow(&self, mut e: u64) -> CycloElem {
        let mut acc = self.ring.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// True when every coordinate is zero at the known precision.
    pub fn is_zero(&self) -> bool {
        self.fx.is_zero(self.base())
    }
    /// Absolute precision of the coordinates.
    pub fn abs_prec(&self) -> i64 {
        self.fx.abs_prec()
    }
    /// Compares with `o`, requiring `digits` of absolute precision.
    pub fn agree(&self, o: &CycloElem, digits: i64) -> Verdict {
        self.check(o);
        self.fx.agree(&o.fx, self.base(), digits)
    }
    /// Minimum valuation of the `z`-coordinates; `None` when zero at precision.
    pub fn coord_valuation(&self) -> Option<i64> {
        self.fx.valuation(self.base())
    }

    /// The Galois conjugate `zeta -> zeta^a`, `p` not dividing `a`.
    pub fn conj(&self, a: i64) -> Result<CycloElem> {
        let p = self.base().p_u64() as i64;
        if a.rem_euclid(p) == 0 && self.ring.level > 0 {
            return Err(Error::Invalid(format!("{a} is not prime to p")));
        }
        let q = self.ring.order() as i64;
        let z = self.zeta_coords();
        let mut w = vec![self.base().zero(); q as usize];
        for (e, c) in z.coeffs.iter().enumerate() {
            w[(e as i64 * a).rem_euclid(q) as usize] = c.clone();
        }
        Ok(self.ring.from_zeta_coords(w, z.den, z.prec))
    }

    /// Trace down to the fraction field of `O`.
    pub fn trace(&self) -> PadicElem {
        let r = self.base();
        let z = self.zeta_coords();
        let level = self.ring.level;
        if level == 0 {
            return self.fx.coeff(0, r);
        }
        let p = r.p_u64();
        let q = self.ring.order();
        let dim = self.ring.dim() as i64;
        let sub = (q / p) as usize;
        let mut acc = r.zero();
        for (e, c) in z.coeffs.iter().enumerate() {
            let t: i64 = if e == 0 {
                dim
            } else if e % sub == 0 {
                -(sub as i64)
            } else {
                0
            };
            if t != 0 {
                for (a, b) in acc.iter_mut().zip(c) {
                    *a += b * BigInt::from(t);
                }
            }
        }
        r.reduce(&mut acc);
        PadicElem::from_fixed(r, &acc, z.den, z.prec)
    }

    /// Trace computed as the sum of all Galois conjugates.
    pub fn trace_by_conjugates(&self) -> PadicElem {
        let mut acc = self.ring.zero();
        for a in units_mod(self.base().p_u64(), self.ring.level) {
            acc = acc.add(&self.conj(a).expect("unit exponent"));
        }
        acc.fx.coeff(0, self.base())
    }

    /// Norm down to the fraction field of `O`: the product of all conjugates.
    pub fn norm(&self) -> PadicElem {
        let mut acc = self.ring.one();
        for a in units_mod(self.base().p_u64(), self.ring.level) {
            acc = acc.mul(&self.conj(a).expect("unit exponent"));
        }
        acc.fx.coeff(0, self.base())
    }

    /// The scalar value of an element lying in `O`'s fraction field.
    pub fn to_scalar(&self) -> Result<PadicElem> {
        let r = self.base();
        for i in 1..self.fx.len() {
            if self.fx.coeff(i, r).valuation().is_some() {
                return Err(Error::Invalid("element is not a scalar".into()));
            }
        }
        Ok(self.fx.coeff(0, r))
    }
}

/// Representatives `1 <= a < p^level` prime to `p` (just `[1]` at level 0).
pub fn units_mod(p: u64, level: u32) -> Vec<i64> {
    let q = p.pow(level) as i64;
    if level == 0 {
        return vec![1];
    }
    (1..q).filter(|a| a % p as i64 != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::ring::RingSpec;

    fn zp(p: u64, n: i64) -> Ring {
        Ring::new(RingSpec::zp(p, n)).unwrap()
    }

    #[test]
    fn level_one_cube_root() {
        let r = zp(3, 20);
        let c = CycloRing::primitive(&r, 1).unwrap();
        assert_eq!(c.dim(), 2);
        let z = c.zeta();
        assert!(z.pow(3).agree(&c.one(), 20).is_equal());
        assert!(!z.agree(&c.one(), 20).is_equal());
    }

    #[test]
    fn level_two_modulus_relation() {
        let r = zp(3, 20);
        let c = CycloRing::primitive(&r, 2).unwrap();
        assert_eq!(c.dim(), 6);
        let z = c.zeta();
        let s = z.pow(6).add(&z.pow(3)).add(&c.one());
        assert!(s.is_zero());
        assert!(z.pow(9).agree(&c.one(), 20).is_equal());
        assert!(!z.pow(3).agree(&c.one(), 20).is_equal());
    }

    #[test]
    fn norm_of_zeta_minus_one() {
        let r = zp(3, 20);
        for m in 1..=2 {
            let c = CycloRing::primitive(&r, m).unwrap();
            let x = c.zeta().sub(&c.one());
            assert_eq!(x.norm().valuation(), Some(1));
        }
        assert!(CycloRing::primitive(&r, 0).is_err());
    }

    #[test]
    fn trace_formulas_agree() {
        let r = zp(5, 15);
        let c = CycloRing::primitive(&r, 2).unwrap();
        let x = c.zeta().pow(7).add(&c.zeta().pow(5).mul_int(3)).add(&c.from_i64(2));
        assert!(x.trace().agree(&x.trace_by_conjugates(), 15).is_equal());
        // Tr(2) = 40, Tr(zeta^5) = -5, Tr(zeta^7) = 0.
        assert!(x.trace().agree(&PadicElem::from_i64(&r, 40 - 15), 15).is_equal());
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let r = zp(3, 15);
        let c = CycloRing::primitive(&r, 2).unwrap();
        let x = c.zeta().add(&c.from_i64(4));
        let y = c.zeta().pow(4).sub(&c.from_i64(1));
        let lhs = x.mul(&y).conj(5).unwrap();
        let rhs = x.conj(5).unwrap().mul(&y.conj(5).unwrap());
        assert!(lhs.agree(&rhs, 15).is_equal());
        assert!(c.zeta().conj(2).unwrap().agree(&c.zeta().pow(2), 15).is_equal());
    }
}
