//! The ring `O = Z_p[t]/(m(t))` with exactly one unramified or Eisenstein step.
//!
//! Elements are coordinate vectors in the basis `1, t, ..., t^{d-1}` with
//! integer entries in `[0, p^k)`. Precision is counted in digits of the
//! uniformizer `varpi` (`p` when unramified, `t` when Eisenstein).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinates of an element of `O` in the power basis of `t`.
pub type OElem = Vec<BigInt>;

/// Default working precision in uniformizer digits.
pub const DEFAULT_PRECISION: i64 = 40;

/// Environment variable overriding [`DEFAULT_PRECISION`].
pub const PRECISION_ENV: &str = "THETA_FORGE_PRECISION";

/// Default precision, honouring `THETA_FORGE_PRECISION` when it parses.
pub fn default_precision() -> i64 {
    std::env::var(PRECISION_ENV).ok().and_then(|s| s.trim().parse::<i64>().ok()).filter(|&n| n > 0).unwrap_or(DEFAULT_PRECISION)
}

/// Shape of the extension step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Unramified,
    Eisenstein,
}

/// Serializable description of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u64,
    /// Monic minimal polynomial, lowest coefficient first.
    pub minpoly: Vec<i64>,
    pub kind: RingKind,
    /// Working precision in uniformizer digits.
    pub precision: i64,
}

impl RingSpec {
    /// `Z_p` itself.
    pub fn zp(p: u64, precision: i64) -> Self {
        RingSpec { p, minpoly: vec![0, 1], kind: RingKind::Unramified, precision }
    }

    /// `Z_p[sqrt(-p)]`, the Eisenstein extension cut out by `t^2 + p`.
    pub fn sqrt_neg_p(p: u64, precision: i64) -> Self {
        RingSpec { p, minpoly: vec![p as i64, 0, 1], kind: RingKind::Eisenstein, precision }
    }
}

struct RingData {
    spec: RingSpec,
    p: BigInt,
    d: usize,
    e: i64,
    minpoly: Vec<BigInt>,
    k: u32,
    pow_p: Vec<BigInt>,
    /// Eisenstein only: `w` with `t * w = -m(0)`.
    w: OElem,
    /// Eisenstein only: `(-m(0)/p)^{-1} mod p^k`.
    c_inv: BigInt,
}

/// Shared handle to a ring; cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({:?})", self.0.spec)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// `x mod p^j` in `[0, p^j)`.
fn modp(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

impl Ring {
    /// Validates a spec and builds the ring.
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let p = spec.p;
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidRing(format!("p = {p} must be an odd prime")));
        }
        if spec.precision < 1 {
            return Err(Error::InvalidRing("precision must be positive".into()));
        }
        let m = &spec.minpoly;
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(Error::InvalidRing("minimal polynomial must be monic of degree >= 1".into()));
        }
        let d = m.len() - 1;
        let pi = p as i64;
        let e = match spec.kind {
            RingKind::Unramified => {
                let red: Vec<u64> = m.iter().map(|&c| c.rem_euclid(pi) as u64).collect();
                if !fp::is_irreducible(&red, p) {
                    return Err(Error::InvalidRing("minimal polynomial is reducible mod p".into()));
                }
                1
            }
            RingKind::Eisenstein => {
                if m[..d].iter().any(|&c| c.rem_euclid(pi) != 0) {
                    return Err(Error::InvalidRing("non-leading coefficients must be divisible by p".into()));
                }
                if m[0].rem_euclid(pi * pi) == 0 {
                    return Err(Error::InvalidRing("constant term must not be divisible by p^2".into()));
                }
                d as i64
            }
        };
        let k = ((spec.precision + e - 1) / e) as u32 + 2;
        let pb = BigInt::from(p);
        let mut pow_p = vec![BigInt::one()];
        for i in 1..=(k as usize + 1) {
            let next = &pow_p[i - 1] * &pb;
            pow_p.push(next);
        }
        let minpoly: Vec<BigInt> = m.iter().map(|&c| BigInt::from(c)).collect();
        let (w, c_inv) = if spec.kind == RingKind::Eisenstein {
            let w: OElem = (0..d).map(|i| minpoly[i + 1].clone()).collect();
            let u0 = -(&minpoly[0] / &pb);
            let c_inv = mod_inverse(&u0, &pow_p[k as usize]).expect("unit constant term");
            (w, c_inv)
        } else {
            (Vec::new(), BigInt::zero())
        };
        Ok(Ring(Arc::new(RingData { spec, p: pb, d, e, minpoly, k, pow_p, w, c_inv })))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }
    pub fn p(&self) -> &BigInt {
        &self.0.p
    }
    pub fn p_u64(&self) -> u64 {
        self.0.spec.p
    }
    /// Degree `[O : Z_p]`.
    pub fn degree(&self) -> usize {
        self.0.d
    }
    /// Ramification index.
    pub fn e(&self) -> i64 {
        self.0.e
    }
    pub fn kind(&self) -> RingKind {
        self.0.spec.kind
    }
    /// Working precision `N` in uniformizer digits.
    pub fn prec(&self) -> i64 {
        self.0.spec.precision
    }
    /// Same ring with a different working precision.
    pub fn with_precision(&self, precision: i64) -> Result<Ring> {
        let mut s = self.0.spec.clone();
        s.precision = precision;
        Ring::new(s)
    }
    /// Exponent `k` of the internal modulus `p^k`.
    pub fn k(&self) -> u32 {
        self.0.k
    }
    pub fn modulus(&self) -> &BigInt {
        &self.0.pow_p[self.0.k as usize]
    }
    /// `p^j` for `j <= k + 1`.
    pub fn p_pow(&self, j: u32) -> BigInt {
        if (j as usize) < self.0.pow_p.len() {
            self.0.pow_p[j as usize].clone()
        } else {
            num_traits::pow(self.0.p.clone(), j as usize)
        }
    }
    /// Valuation of `p` in uniformizer digits (equal to `e`).
    pub fn v_p(&self) -> i64 {
        self.0.e
    }

    pub fn zero(&self) -> OElem {
        vec![BigInt::zero(); self.0.d]
    }
    pub fn one(&self) -> OElem {
        self.from_int(&BigInt::one())
    }
    pub fn from_int(&self, c: &BigInt) -> OElem {
        let mut v = self.zero();
        v[0] = modp(c, self.modulus());
        v
    }
    pub fn from_i64(&self, c: i64) -> OElem {
        self.from_int(&BigInt::from(c))
    }
    /// The generator `t`.
    pub fn gen(&self) -> OElem {
        if self.0.d == 1 {
            return self.from_int(&(-&self.0.minpoly[0]));
        }
        let mut v = self.zero();
        v[1] = BigInt::one();
        v
    }
    /// The uniformizer.
    pub fn uniformizer(&self) -> OElem {
        match self.kind() {
            RingKind::Unramified => self.from_int(&self.0.p.clone()),
            RingKind::Eisenstein => self.gen(),
        }
    }

    pub fn reduce(&self, x: &mut OElem) {
        let m = self.modulus();
        for c in x.iter_mut() {
            if c.is_negative() || &*c >= m {
                *c = modp(c, m);
            }
        }
    }
    pub fn add(&self, a: &OElem, b: &OElem) -> OElem {
        let m = self.modulus();
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x + y;
                if &s >= m {
                    s - m
                } else {
                    s
                }
            })
            .collect()
    }
    pub fn sub(&self, a: &OElem, b: &OElem) -> OElem {
        let m = self.modulus();
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x - y;
                if s.is_negative() {
                    s + m
                } else {
                    s
                }
            })
            .collect()
    }
    pub fn neg(&self, a: &OElem) -> OElem {
        let m = self.modulus();
        a.iter().map(|x| if x.is_zero() { x.clone() } else { m - x }).collect()
    }
    pub fn is_zero(&self, a: &OElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// Product over `Z` in `Z[t]/(m)`, without reduction mod `p^k`.
    pub fn mul_exact(&self, a: &OElem, b: &OElem) -> OElem {
        let d = self.0.d;
        if d == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut r = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    r[i + j] += x * y;
                }
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut r[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                let mj = &self.0.minpoly[j];
                if !mj.is_zero() {
                    r[i - d + j] -= &c * mj;
                }
            }
        }
        r.truncate(d);
        r
    }

    pub fn mul(&self, a: &OElem, b: &OElem) -> OElem {
        let mut r = self.mul_exact(a, b);
        self.reduce(&mut r);
        r
    }
    /// Fused `acc += a * b` on unreduced coordinates.
    pub fn mul_acc(&self, acc: &mut OElem, a: &OElem, b: &OElem) {
        if self.0.d == 1 {
            acc[0] += &a[0] * &b[0];
            return;
        }
        let r = self.mul_exact(a, b);
        for (x, y) in acc.iter_mut().zip(r) {
            *x += y;
        }
    }
    pub fn mul_int(&self, a: &OElem, c: &BigInt) -> OElem {
        let m = self.modulus();
        a.iter().map(|x| modp(&(x * c), m)).collect()
    }

    /// Number of `p`-adic digits kept in coordinate `i` at uniformizer precision `a`.
    pub fn coord_digits(&self, i: usize, a: i64) -> u32 {
        let k = self.0.k as i64;
        let n = match self.kind() {
            RingKind::Unramified => a,
            RingKind::Eisenstein => {
                let r = a - i as i64;
                if r <= 0 {
                    0
                } else {
                    (r + self.0.e - 1) / self.0.e
                }
            }
        };
        n.clamp(0, k) as u32
    }

    /// Canonical representative modulo `varpi^a`.
    pub fn canon(&self, x: &OElem, a: i64) -> OElem {
        x.iter()
            .enumerate()
            .map(|(i, c)| {
                let j = self.coord_digits(i, a);
                modp(c, &self.0.pow_p[j as usize])
            })
            .collect()
    }
    pub fn canon_in_place(&self, x: &mut OElem, a: i64) {
        for (i, c) in x.iter_mut().enumerate() {
            let j = self.coord_digits(i, a);
            let m = &self.0.pow_p[j as usize];
            if c.is_negative() || &*c >= m {
                *c = modp(c, m);
            }
        }
    }

    /// Valuation in uniformizer digits; `None` for zero.
    pub fn val(&self, x: &OElem) -> Option<i64> {
        let mut best: Option<i64> = None;
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = vp(c, &self.0.p) as i64;
            let w = match self.kind() {
                RingKind::Unramified => v,
                RingKind::Eisenstein => self.0.e * v + i as i64,
            };
            best = Some(best.map_or(w, |b: i64| b.min(w)));
        }
        best
    }
    /// Valuation of the class of `x` modulo `varpi^a`, capped at `a`.
    pub fn val_capped(&self, x: &OElem, a: i64) -> i64 {
        match self.val(&self.canon(x, a)) {
            Some(v) => v.min(a),
            None => a,
        }
    }

    /// `x * varpi^s`.
    pub fn mul_pi_pow(&self, x: &OElem, s: i64) -> OElem {
        if s <= 0 {
            return x.clone();
        }
        match self.kind() {
            RingKind::Unramified => {
                let f = self.p_pow(s as u32);
                self.mul_int(x, &f)
            }
            RingKind::Eisenstein => {
                let mut r = x.clone();
                let t = self.gen();
                for _ in 0..s {
                    r = self.mul(&r, &t);
                }
                r
            }
        }
    }

    /// Exact quotient `x / varpi^s`; requires `val(x) >= s` for the representative.
    pub fn div_pi_pow(&self, x: &OElem, s: i64) -> OElem {
        if s <= 0 {
            return x.clone();
        }
        match self.kind() {
            RingKind::Unramified => {
                let f = self.p_pow(s as u32);
                x.iter().map(|c| c.div_floor(&f)).collect()
            }
            RingKind::Eisenstein => {
                let mut num = x.clone();
                for _ in 0..s {
                    num = self.mul_exact(&num, &self.0.w);
                }
                let f = self.p_pow(s as u32);
                let cs = self.0.c_inv.modpow(&BigInt::from(s), self.modulus());
                num.iter().map(|c| modp(&(c.div_floor(&f) * &cs), self.modulus())).collect()
            }
        }
    }

    /// Inverse of a unit modulo `p^k`.
    pub fn unit_inverse(&self, x: &OElem) -> Result<OElem> {
        let p = self.p_u64();
        let seed: OElem = match self.kind() {
            RingKind::Eisenstein => {
                let c0 = modp(&x[0], &self.0.p);
                if c0.is_zero() {
                    return Err(Error::NotUnit);
                }
                let inv = mod_inverse(&c0, &self.0.p).ok_or(Error::NotUnit)?;
                self.from_int(&inv)
            }
            RingKind::Unramified => {
                let red: Vec<u64> = x.iter().map(|c| modp(c, &self.0.p).to_u64().unwrap()).collect();
                let m: Vec<u64> = self.0.spec.minpoly.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
                let inv = fp::inverse_mod(&red, &m, p).ok_or(Error::NotUnit)?;
                let mut v = self.zero();
                for (i, c) in inv.iter().enumerate() {
                    v[i] = BigInt::from(*c);
                }
                v
            }
        };
        let two = self.from_i64(2);
        let mut y = seed;
        let target = self.0.e * self.0.k as i64;
        let mut have = 1i64;
        while have < target {
            let xy = self.mul(x, &y);
            y = self.mul(&y, &self.sub(&two, &xy));
            have *= 2;
        }
        debug_assert!(self.mul(x, &y) == self.one());
        Ok(y)
    }

    /// Uniform random element modulo `varpi^a`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, a: i64) -> OElem {
        (0..self.0.d)
            .map(|i| {
                let j = self.coord_digits(i, a);
                random_below(rng, &self.0.pow_p[j as usize])
            })
            .collect()
    }

    /// Random unit modulo `varpi^a`.
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R, a: i64) -> OElem {
        loop {
            let x = self.random(rng, a.max(1));
            if self.val(&self.canon(&x, 1)).is_none() {
                continue;
            }
            return x;
        }
    }

    /// Base-`p` digits (least significant first) of each coordinate of the
    /// canonical representative modulo `varpi^a`.
    pub fn digits(&self, x: &OElem, a: i64) -> Vec<Vec<u64>> {
        let c = self.canon(x, a);
        c.iter()
            .enumerate()
            .map(|(i, v)| {
                let n = self.coord_digits(i, a);
                let mut out = Vec::with_capacity(n as usize);
                let mut r = v.clone();
                for _ in 0..n {
                    let (q, d) = r.div_mod_floor(&self.0.p);
                    out.push(d.to_u64().unwrap());
                    r = q;
                }
                out
            })
            .collect()
    }

    /// Inverse of [`Ring::digits`].
    pub fn from_digits(&self, digits: &[Vec<u64>]) -> Result<OElem> {
        if digits.len() != self.0.d {
            return Err(Error::Invalid(format!("expected {} coordinates", self.0.d)));
        }
        let p = self.p_u64();
        let mut out = Vec::with_capacity(self.0.d);
        for ds in digits {
            let mut v = BigInt::zero();
            for &dg in ds.iter().rev() {
                if dg >= p {
                    return Err(Error::Invalid(format!("digit {dg} out of range")));
                }
                v = v * &self.0.p + BigInt::from(dg);
            }
            out.push(modp(&v, self.modulus()));
        }
        Ok(out)
    }
}

/// `p`-adic valuation of a nonzero integer.
pub fn vp(c: &BigInt, p: &BigInt) -> u64 {
    if c.is_zero() {
        return u64::MAX;
    }
    let mut v = 0;
    let mut r = c.clone();
    loop {
        let (q, m) = r.div_rem(p);
        if !m.is_zero() {
            return v;
        }
        r = q;
        v += 1;
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

fn random_below<R: Rng + ?Sized>(rng: &mut R, m: &BigInt) -> BigInt {
    if m.is_one() || m.is_zero() {
        return BigInt::zero();
    }
    let bits = m.bits() + 64;
    let words = bits.div_ceil(32) as usize;
    let mut acc = BigInt::zero();
    for _ in 0..words {
        acc = (acc << 32) + BigInt::from(rng.gen::<u32>());
    }
    acc.mod_floor(m)
}

/// Dense polynomial arithmetic over `F_p` for residue fields.
pub(crate) mod fp {
    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }
    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }
    fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = ((r as u128 * a as u128) % p as u128) as u64;
            }
            a = ((a as u128 * a as u128) % p as u128) as u64;
            e >>= 1;
        }
        r
    }
    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    let x = *a.get(i).unwrap_or(&0);
                    let y = *b.get(i).unwrap_or(&0);
                    (x + p - y) % p
                })
                .collect(),
        )
    }
    fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        trim(r)
    }
    fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead = inv(*b.last().unwrap(), p);
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let sh = r.len() - b.len();
            let c = (r.last().unwrap() * lead) % p;
            q[sh] = c;
            for (i, y) in b.iter().enumerate() {
                r[sh + i] = (r[sh + i] + p - (c * y) % p) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }
    fn polmod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        divrem(a, m, p).1
    }
    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = divrem(&x, &y, p).1;
            x = y;
            y = r;
        }
        x
    }
    /// Rabin-style irreducibility test for small degrees.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let m = trim(m.to_vec());
        let d = m.len() - 1;
        if d <= 1 {
            return d == 1;
        }
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 0..d / 2 {
            xp = powmod(&xp, p, &m, p);
            let g = gcd(&m, &sub(&xp, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
    fn powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![1u64];
        let mut b = polmod(a, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = polmod(&mul(&r, &b, p), m, p);
            }
            b = polmod(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        r
    }
    /// Inverse of `a` modulo `m` over `F_p`, padded to `deg m` coefficients.
    pub fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
        let d = m.len() - 1;
        let (mut r0, mut r1) = (trim(m.to_vec()), polmod(a, m, p));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv(r0[0], p);
        let mut out: Vec<u64> = s0.iter().map(|x| (x * c) % p).collect();
        out = polmod(&out, m, p);
        out.resize(d, 0);
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_bad_specs() {
        assert!(Ring::new(RingSpec::zp(4, 10)).is_err());
        assert!(Ring::new(RingSpec::zp(2, 10)).is_err());
        let red = RingSpec { p: 5, minpoly: vec![-1, 0, 1], kind: RingKind::Unramified, precision: 10 };
        assert!(Ring::new(red).is_err());
        let bad_eis = RingSpec { p: 3, minpoly: vec![9, 0, 1], kind: RingKind::Eisenstein, precision: 10 };
        assert!(Ring::new(bad_eis).is_err());
    }

    #[test]
    fn eisenstein_valuation_and_division() {
        let r = Ring::new(RingSpec::sqrt_neg_p(3, 20)).unwrap();
        let t = r.gen();
        assert_eq!(r.val(&t), Some(1));
        let t2 = r.mul(&t, &t);
        assert_eq!(t2, r.from_i64(-3));
        assert_eq!(r.val(&t2), Some(2));
        let x = r.mul_pi_pow(&r.from_i64(7), 5);
        assert_eq!(r.val(&x), Some(5));
        assert_eq!(r.canon(&r.div_pi_pow(&x, 5), 15), r.canon(&r.from_i64(7), 15));
    }

    #[test]
    fn unramified_quadratic_inverse() {
        let spec = RingSpec { p: 3, minpoly: vec![1, 0, 1], kind: RingKind::Unramified, precision: 15 };
        let r = Ring::new(spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let u = r.random_unit(&mut rng, 15);
            let v = r.unit_inverse(&u).unwrap();
            assert_eq!(r.mul(&u, &v), r.one());
        }
    }

    #[test]
    fn digits_round_trip() {
        let r = Ring::new(RingSpec::sqrt_neg_p(5, 11)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = r.random(&mut rng, 11);
        let ds = r.digits(&x, 11);
        assert_eq!(ds[0].len(), 6);
        assert_eq!(ds[1].len(), 5);
        assert_eq!(r.from_digits(&ds).unwrap(), r.canon(&x, 11));
    }
}
