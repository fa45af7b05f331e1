//! Finite quotients `R = (O / p^K)[X] / omega_n` as free `Z/p^K`-modules.
//!
//! An element is a coordinate vector of length `d p^n`; index `i d + a`
//! holds the coefficient of `t^a X^i`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iwalg::GroupRingElem;
use crate::padic::zpoly::{self, ZPoly};
use crate::padic::{Ring, RingKind};

/// Coordinates of an element of a [`QuotientRing`].
pub type QElem = Vec<BigInt>;

/// Serializable description of a quotient ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub p: u64,
    /// Monic minimal polynomial of `t`, lowest coefficient first.
    pub minpoly: Vec<i64>,
    pub kind: RingKind,
    /// Level `n` of `omega_n`.
    pub n: u32,
    /// Exponent `K` of the coefficient modulus `p^K`.
    pub k: u32,
}

/// The ring `(Z_p[t]/(m) / p^K)[X] / omega_n`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    spec: QuotientSpec,
    minpoly: Vec<BigInt>,
    omega: Arc<ZPoly>,
    modulus: BigInt,
}

impl PartialEq for QuotientRing {
    fn eq(&self, o: &Self) -> bool {
        self.spec == o.spec
    }
}

impl QuotientRing {
    pub fn new(spec: QuotientSpec) -> Result<Self> {
        if spec.minpoly.last() != Some(&1) || spec.minpoly.len() < 2 {
            return Err(Error::InvalidRing("minimal polynomial must be monic of degree >= 1".into()));
        }
        if spec.p < 3 {
            return Err(Error::InvalidRing("p must be an odd prime".into()));
        }
        let minpoly = spec.minpoly.iter().map(|&c| BigInt::from(c)).collect();
        let omega = zpoly::omega(spec.p, spec.n);
        let modulus = BigInt::from(spec.p).pow(spec.k);
        Ok(QuotientRing { spec, minpoly, omega, modulus })
    }

    /// `(Z/p^K)[X] / omega_n`.
    pub fn zp(p: u64, n: u32, k: u32) -> Result<Self> {
        Self::new(QuotientSpec { p, minpoly: vec![0, 1], kind: RingKind::Unramified, n, k })
    }

    /// The quotient of `Lambda_n` over `r` modulo `p^K`.
    pub fn from_ring(r: &Ring, n: u32, k: u32) -> Result<Self> {
        let s = r.spec();
        Self::new(QuotientSpec { p: s.p, minpoly: s.minpoly.clone(), kind: s.kind, n, k })
    }

    pub fn spec(&self) -> &QuotientSpec {
        &self.spec
    }
    pub fn p(&self) -> u64 {
        self.spec.p
    }
    pub fn k(&self) -> u32 {
        self.spec.k
    }
    pub fn level(&self) -> u32 {
        self.spec.n
    }
    /// Degree of `O` over `Z_p`.
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
    /// `p^n`.
    pub fn x_len(&self) -> usize {
        self.omega.len() - 1
    }
    /// Rank over `Z/p^K`.
    pub fn dim(&self) -> usize {
        self.degree() * self.x_len()
    }
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }
    /// Number of elements, `None` when it exceeds `u64`.
    pub fn size(&self) -> Option<u64> {
        let e = self.spec.k as u64 * self.dim() as u64;
        self.spec.p.checked_pow(u32::try_from(e).ok()?)
    }

    /// Same ring with coefficients modulo `p^k`, `k <= K`.
    pub fn with_k(&self, k: u32) -> Result<Self> {
        Self::new(QuotientSpec { k, ..self.spec.clone() })
    }

    pub fn zero(&self) -> QElem {
        vec![BigInt::zero(); self.dim()]
    }
    pub fn one(&self) -> QElem {
        self.from_int(&BigInt::one())
    }
    pub fn from_int(&self, c: &BigInt) -> QElem {
        let mut v = self.zero();
        if !v.is_empty() {
            v[0] = c.mod_floor(&self.modulus);
        }
        v
    }
    /// `X`.
    pub fn x(&self) -> QElem {
        self.mul_x(&self.one())
    }
    /// `t`, the generator of `O`.
    pub fn t(&self) -> QElem {
        self.mul_t(&self.one())
    }
    /// The uniformizer: `p` when unramified, `t` when Eisenstein.
    pub fn uniformizer(&self) -> QElem {
        match self.spec.kind {
            RingKind::Unramified => self.from_int(&BigInt::from(self.spec.p)),
            RingKind::Eisenstein => self.t(),
        }
    }

    /// Canonical form of arbitrary integer coordinates.
    pub fn reduce(&self, mut x: QElem) -> QElem {
        for c in x.iter_mut() {
            *c = c.mod_floor(&self.modulus);
        }
        x
    }

    /// Element from an integer polynomial in `X` (coefficients in `Z`).
    pub fn from_int_poly(&self, c: &[BigInt]) -> QElem {
        let mut acc = self.zero();
        let mut xi = self.one();
        for ci in c {
            if !ci.is_zero() {
                acc = self.add(&acc, &self.scale(&xi, ci));
            }
            xi = self.mul_x(&xi);
        }
        acc
    }

    /// The class of an integral group-ring element modulo `p^K`.
    pub fn from_group_ring(&self, x: &GroupRingElem) -> Result<QElem> {
        if x.level() != self.spec.n || x.ring().spec().minpoly != self.spec.minpoly || x.ring().p_u64() != self.spec.p {
            return Err(Error::RingMismatch);
        }
        if x.denom_exp() > 0 {
            return Err(Error::Invalid("element is not integral".into()));
        }
        let e = x.ring().e();
        if x.abs_prec() < e * self.spec.k as i64 {
            return Err(Error::Precision(format!("need {} digits, have {}", e * self.spec.k as i64, x.abs_prec())));
        }
        let d = self.degree();
        let mut v = self.zero();
        for (i, c) in x.fx().coeffs.iter().enumerate() {
            for (a, ca) in c.iter().enumerate().take(d) {
                v[i * d + a] = ca.mod_floor(&self.modulus);
            }
        }
        Ok(v)
    }

    pub fn add(&self, a: &QElem, b: &QElem) -> QElem {
        a.iter().zip(b).map(|(x, y)| (x + y).mod_floor(&self.modulus)).collect()
    }
    pub fn sub(&self, a: &QElem, b: &QElem) -> QElem {
        a.iter().zip(b).map(|(x, y)| (x - y).mod_floor(&self.modulus)).collect()
    }
    pub fn neg(&self, a: &QElem) -> QElem {
        a.iter().map(|x| (-x).mod_floor(&self.modulus)).collect()
    }
    pub fn scale(&self, a: &QElem, c: &BigInt) -> QElem {
        a.iter().map(|x| (x * c).mod_floor(&self.modulus)).collect()
    }
    pub fn is_zero(&self, a: &QElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// Multiplication by `t` on one `O`-coefficient, in place.
    fn o_mul_t(&self, c: &mut [BigInt]) {
        let d = self.degree();
        let top = c[d - 1].clone();
        for a in (1..d).rev() {
            c[a] = c[a - 1].clone();
        }
        c[0] = BigInt::zero();
        if !top.is_zero() {
            for a in 0..d {
                c[a] = (&c[a] - &top * &self.minpoly[a]).mod_floor(&self.modulus);
            }
        }
    }

    pub fn mul_t(&self, x: &QElem) -> QElem {
        let d = self.degree();
        let mut v = x.clone();
        for chunk in v.chunks_mut(d) {
            self.o_mul_t(chunk);
        }
        v
    }

    pub fn mul_x(&self, x: &QElem) -> QElem {
        let d = self.degree();
        let len = self.x_len();
        let mut v = self.zero();
        for i in 0..len.saturating_sub(1) {
            v[(i + 1) * d..(i + 2) * d].clone_from_slice(&x[i * d..(i + 1) * d]);
        }
        // X^{p^n} = -(omega_0 + ... + omega_{p^n - 1} X^{p^n - 1}).
        let top = &x[(len - 1) * d..len * d];
        if top.iter().any(|c| !c.is_zero()) {
            for i in 0..len {
                let w = &self.omega[i];
                if w.is_zero() {
                    continue;
                }
                for a in 0..d {
                    v[i * d + a] -= &top[a] * w;
                }
            }
        }
        self.reduce(v)
    }

    /// Product of two `O`-coefficients.
    fn o_mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        let mut acc = vec![BigInt::zero(); d];
        let mut shifted = b.to_vec();
        for (i, ai) in a.iter().enumerate() {
            if i > 0 {
                self.o_mul_t(&mut shifted);
            }
            if ai.is_zero() {
                continue;
            }
            for k in 0..d {
                acc[k] += ai * &shifted[k];
            }
        }
        acc.iter().map(|c| c.mod_floor(&self.modulus)).collect()
    }

    pub fn mul(&self, x: &QElem, y: &QElem) -> QElem {
        let d = self.degree();
        let len = self.x_len();
        let mut acc = vec![BigInt::zero(); (2 * len).saturating_sub(1) * d];
        for i in 0..len {
            let xi = &x[i * d..(i + 1) * d];
            if xi.iter().all(|c| c.is_zero()) {
                continue;
            }
            for j in 0..len {
                let yj = &y[j * d..(j + 1) * d];
                if yj.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let pr = self.o_mul(xi, yj);
                for a in 0..d {
                    acc[(i + j) * d + a] += &pr[a];
                }
            }
        }
        // Reduce modulo the monic omega_n from the top.
        for deg in (len..(2 * len).saturating_sub(1)).rev() {
            let top: Vec<BigInt> = acc[deg * d..(deg + 1) * d].iter().map(|c| c.mod_floor(&self.modulus)).collect();
            if top.iter().all(|c| c.is_zero()) {
                continue;
            }
            for (i, w) in self.omega.iter().enumerate().take(len) {
                if w.is_zero() {
                    continue;
                }
                for a in 0..d {
                    acc[(deg - len + i) * d + a] -= &top[a] * w;
                }
            }
            for a in 0..d {
                acc[deg * d + a] = BigInt::zero();
            }
        }
        acc.truncate(len * d);
        self.reduce(acc)
    }

    /// Reduction to the ring with coefficients modulo `p^k`.
    pub fn reduce_to(&self, x: &QElem, k: u32) -> QElem {
        let m = BigInt::from(self.spec.p).pow(k);
        x.iter().map(|c| c.mod_floor(&m)).collect()
    }

    /// Every element, in lexicographic order of coordinates; `None` above `cap` elements.
    pub fn elements(&self, cap: u64) -> Option<Vec<QElem>> {
        let size = self.size()?;
        if size > cap {
            return None;
        }
        let q = self.spec.p.pow(self.spec.k);
        let dim = self.dim();
        let mut out = Vec::with_capacity(size as usize);
        for mut idx in 0..size {
            let mut v = vec![BigInt::zero(); dim];
            for c in v.iter_mut().rev() {
                *c = BigInt::from(idx % q);
                idx /= q;
            }
            out.push(v);
        }
        Some(out)
    }

    /// Coordinates as decimal strings.
    pub fn to_strings(x: &QElem) -> Vec<String> {
        x.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings(&self, s: &[String]) -> Result<QElem> {
        if s.len() != self.dim() {
            return Err(Error::Invalid(format!("expected {} coordinates, found {}", self.dim(), s.len())));
        }
        let v = s
            .iter()
            .map(|c| c.trim().parse::<BigInt>().map_err(|e| Error::Invalid(format!("bad integer {c:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.reduce(v))
    }
}

/// `v_p(c)` for `c` modulo `p^K`, with `v_p(0) = K`.
pub fn vp_mod(c: &BigInt, p: u64, k: u32) -> u32 {
    if c.is_zero() {
        return k;
    }
    let p = BigInt::from(p);
    let mut c = c.clone();
    let mut v = 0;
    while v < k && (&c % &p).is_zero() {
        c /= &p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomial_ring_mod_three() {
        // omega_1 = (1+X)^3 - 1 = X^3 mod 3.
        let r = QuotientRing::zp(3, 1, 1).unwrap();
        let x = r.x();
        let x2 = r.mul(&x, &x);
        assert!(r.is_zero(&r.mul(&x2, &x)));
        assert_eq!(r.elements(27).unwrap().len(), 27);
        assert_eq!(r.mul(&x2, &r.one()), x2);
    }

    #[test]
    fn omega_vanishes_and_t_squares_to_minus_p() {
        let r = QuotientRing::zp(5, 1, 4).unwrap();
        assert!(r.is_zero(&r.from_int_poly(&zpoly::omega(5, 1))));
        assert!(!r.is_zero(&r.from_int_poly(&zpoly::phi(5, 1))));
        let spec = QuotientSpec { p: 3, minpoly: vec![3, 0, 1], kind: RingKind::Eisenstein, n: 1, k: 3 };
        let s = QuotientRing::new(spec).unwrap();
        let t = s.t();
        assert_eq!(s.mul(&t, &t), s.from_int(&BigInt::from(-3)));
        let a = s.add(&s.x(), &t);
        let b = s.sub(&s.one(), &s.mul_t(&s.x()));
        assert_eq!(s.mul(&a, &b), s.mul(&b, &a));
        assert_eq!(s.mul_x(&a), s.mul(&a, &s.x()));
    }
}
