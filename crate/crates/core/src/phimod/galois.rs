//! Characters of `Gal(Q_p(mu_{p^n})/Q_p) = (Z/p^n)^x` and Gauss sums.
//!
//! `sigma_a` acts by `zeta -> zeta^a`. Every unit factors as
//! `a = omega(a) <a>` with `omega` the Teichmuller character and
//! `<a> = (1+p)^{l(a)}`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::cyclo::units_mod;
use crate::padic::{teichmuller, CycloElem, CycloRing, PadicElem, Ring};

/// The character `sigma_a -> omega(a)^u zeta_{p^{n-1}}^{b l(a)}` of the level-`n` group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaloisChar {
    pub p: u64,
    pub n: u32,
    /// Tame exponent modulo `p - 1`.
    pub u: u64,
    /// Wild exponent modulo `p^{n-1}`.
    pub b: u64,
}

/// `l(a)` modulo `p^{level-1}` with `<a> = (1+p)^{l(a)}` modulo `p^level`.
pub fn log_gamma(p: u64, level: u32, a: i64) -> u64 {
    if level <= 1 {
        return 0;
    }
    let q = BigInt::from(p).pow(level);
    let a = BigInt::from(a).modpow(&BigInt::from(1), &q);
    let teich = a.modpow(&BigInt::from(p).pow(level - 1), &q);
    let inv = teich.modinv(&q).expect("unit");
    let target = (a * inv) % &q;
    let g = BigInt::from(p + 1);
    let mut x = BigInt::from(1);
    for e in 0..p.pow(level - 1) {
        if x == target {
            return e;
        }
        x = (x * &g) % &q;
    }
    unreachable!("1 + p generates the principal units")
}

impl GaloisChar {
    pub fn new(p: u64, n: u32, u: u64, b: u64) -> Result<Self> {
        let wild = if n == 0 { 1 } else { p.pow(n - 1) };
        if n == 0 && u != 0 {
            return Err(Error::InvalidCharacter("level 0 has only the trivial character".into()));
        }
        if u >= p - 1 || b >= wild {
            return Err(Error::InvalidCharacter(format!("exponents ({u}, {b}) out of range at level {n}")));
        }
        Ok(GaloisChar { p, n, u, b })
    }

    pub fn trivial(p: u64, n: u32) -> Self {
        GaloisChar { p, n, u: 0, b: 0 }
    }

    pub fn is_trivial(&self) -> bool {
        self.u == 0 && self.b == 0
    }

    /// The exponent `m` of the conductor `p^m`.
    pub fn conductor(&self) -> u32 {
        if self.b == 0 {
            return if self.u == 0 { 0 } else { 1 };
        }
        let mut v = 0;
        let mut b = self.b;
        while b.is_multiple_of(self.p) {
            b /= self.p;
            v += 1;
        }
        self.n - v
    }

    pub fn inverse(&self) -> Self {
        let wild = if self.n == 0 { 1 } else { self.p.pow(self.n - 1) };
        GaloisChar { p: self.p, n: self.n, u: (self.p - 1 - self.u) % (self.p - 1), b: (wild - self.b) % wild }
    }

    /// `psi(sigma_a)` in the level-`n` cyclotomic ring.
    pub fn value(&self, r: &Ring, a: i64) -> CycloElem {
        let ring = CycloRing::new(r, self.n);
        if self.n == 0 {
            return ring.one();
        }
        let tame = teichmuller(r, a).pow(self.u as i64).expect("unit");
        let l = log_gamma(self.p, self.n, a);
        let wild_order = self.p.pow(self.n - 1);
        let e = ((self.b as u128 * l as u128) % wild_order as u128) as i64 * self.p as i64;
        ring.zeta_pow(e).scale(&tame)
    }

    /// `psi(-1)`, which is `+-1`.
    pub fn parity(&self, r: &Ring) -> PadicElem {
        teichmuller(r, -1).pow(self.u as i64).expect("unit")
    }
}

/// Every character of the level-`n` group: tame exponent outer, wild inner.
pub fn all_galois_characters(p: u64, n: u32) -> Vec<GaloisChar> {
    if n == 0 {
        return vec![GaloisChar::trivial(p, 0)];
    }
    let wild = p.pow(n - 1);
    (0..p - 1).flat_map(|u| (0..wild).map(move |b| GaloisChar { p, n, u, b })).collect()
}

/// `tau(psi) = sum_{sigma in Gal(Q_p(mu_{p^m})/Q_p)} psi(sigma) zeta_{p^m}^sigma`,
/// in the level-`psi.n` cyclotomic ring.
pub fn gauss_sum(r: &Ring, psi: &GaloisChar, m: u32) -> Result<CycloElem> {
    if psi.is_trivial() {
        return Err(Error::InvalidCharacter("the trivial character has no Gauss sum".into()));
    }
    if psi.conductor() != m {
        return Err(Error::InvalidCharacter(format!("character has conductor p^{}, not p^{m}", psi.conductor())));
    }
    let ring = CycloRing::new(r, psi.n);
    let step = psi.p.pow(psi.n - m) as i64;
    Ok(units_mod(psi.p, m).into_iter().fold(ring.zero(), |acc, a| acc.add(&psi.value(r, a).mul(&ring.zeta_pow(a * step)))))
}

/// Embeds a level-`k` element into level `l >= k` via `zeta_{p^k} = zeta_{p^l}^{p^{l-k}}`.
pub fn embed(x: &CycloElem, l: u32) -> Result<CycloElem> {
    let k = x.ring().level();
    if l < k {
        return Err(Error::LevelMismatch(k, l));
    }
    let r = x.base();
    let target = CycloRing::new(r, l);
    if k == 0 {
        return Ok(target.from_scalar(&x.to_scalar()?));
    }
    let z = x.zeta_coords();
    let step = r.p_u64().pow(l - k) as usize;
    let mut w = vec![r.zero(); target.order() as usize];
    for (e, c) in z.coeffs.iter().enumerate() {
        w[e * step] = c.clone();
    }
    Ok(target.from_zeta_coords(w, z.den, z.prec))
}

/// `psi(-1) p^m` as an element of the level-`n` ring.
pub fn gauss_norm(r: &Ring, psi: &GaloisChar, m: u32) -> CycloElem {
    let pm = PadicElem::from_int(r, &BigInt::from(psi.p).pow(m));
    CycloRing::new(r, psi.n).from_scalar(&psi.parity(r).mul(&pm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::RingSpec;

    fn zp(p: u64, n: i64) -> Ring {
        Ring::new(RingSpec::zp(p, n)).unwrap()
    }

    #[test]
    fn characters_are_homomorphisms() {
        let r = zp(3, 30);
        for psi in all_galois_characters(3, 2) {
            for a in units_mod(3, 2) {
                for b in units_mod(3, 2) {
                    let ab = psi.value(&r, a).mul(&psi.value(&r, b));
                    assert!(ab.agree(&psi.value(&r, a * b % 9), 25).is_equal());
                }
            }
        }
        assert_eq!(all_galois_characters(5, 2).len(), 20);
        assert_eq!(GaloisChar::new(5, 2, 0, 0).unwrap().conductor(), 0);
        assert_eq!(GaloisChar::new(5, 2, 2, 0).unwrap().conductor(), 1);
        assert_eq!(GaloisChar::new(5, 2, 0, 3).unwrap().conductor(), 2);
    }

    /// `tau(psi) tau(psi^{-1}) = psi(-1) p^m`, every primitive character, `m <= 2`.
    #[test]
    fn gauss_sum_norms() {
        for p in [3u64, 5] {
            let r = zp(p, 40);
            for psi in all_galois_characters(p, 2) {
                if psi.is_trivial() {
                    assert!(gauss_sum(&r, &psi, 0).is_err());
                    continue;
                }
                let m = psi.conductor();
                let t = gauss_sum(&r, &psi, m).unwrap();
                let ti = gauss_sum(&r, &psi.inverse(), m).unwrap();
                assert!(t.mul(&ti).agree(&gauss_norm(&r, &psi, m), 30).is_equal(), "{psi:?}");
                assert!(gauss_sum(&r, &psi, m + 1).is_err());
            }
        }
    }

    /// `sigma_a(tau(psi)) = psi(a)^{-1} tau(psi)` for the conductor-`p` characters at `p = 3`.
    #[test]
    fn gauss_sums_conjugate() {
        let r = zp(3, 30);
        for psi in all_galois_characters(3, 1).into_iter().filter(|c| !c.is_trivial()) {
            let t = gauss_sum(&r, &psi, 1).unwrap();
            for a in units_mod(3, 1) {
                let lhs = t.conj(a).unwrap();
                let rhs = t.mul(&psi.inverse().value(&r, a));
                assert!(lhs.agree(&rhs, 25).is_equal());
            }
        }
    }

    #[test]
    fn embedding_respects_products() {
        let r = zp(5, 30);
        let lo = CycloRing::new(&r, 1);
        let x = lo.zeta_pow(2).add(&lo.from_i64(3));
        let y = lo.zeta_pow(4);
        let lhs = embed(&x.mul(&y), 2).unwrap();
        let rhs = embed(&x, 2).unwrap().mul(&embed(&y, 2).unwrap());
        assert!(lhs.agree(&rhs, 25).is_equal());
        assert!(embed(&lo.zeta(), 2).unwrap().agree(&CycloRing::new(&r, 2).zeta_pow(5), 25).is_equal());
    }
}
