//! Integer polynomials `omega_n`, `Phi_n` and their plus/minus factors.
//!
//! `omega_n = (1+X)^{p^n} - 1`, `Phi_0 = X` and `Phi_n = omega_n / omega_{n-1}`.
//! All polynomials are stored lowest coefficient first.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Integer polynomial, lowest coefficient first.
pub type ZPoly = Vec<BigInt>;

/// Sign selecting the even (`Plus`) or odd (`Minus`) cyclotomic factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
    /// Whether level `m >= 1` belongs to this sign.
    pub fn owns_level(self, m: u32) -> bool {
        match self {
            Sign::Plus => m.is_multiple_of(2),
            Sign::Minus => m % 2 == 1,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Omega(u64, u32),
    Phi(u64, u32),
    Tilde(u64, u32, Sign),
}

fn cache() -> &'static Mutex<HashMap<Key, Arc<ZPoly>>> {
    static C: OnceLock<Mutex<HashMap<Key, Arc<ZPoly>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: Key, f: impl FnOnce() -> ZPoly) -> Arc<ZPoly> {
    if let Some(v) = cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(f());
    cache().lock().unwrap().insert(key, v.clone());
    v
}

/// Coefficients of `(1+X)^n`.
pub fn binomial_row(n: u64) -> ZPoly {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k as usize] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `binom(i, j)` for `0 <= i < n`.
pub fn binomial_column(n: usize, j: usize) -> ZPoly {
    let mut out = vec![BigInt::zero(); n];
    if j >= n {
        return out;
    }
    let mut c = BigInt::one();
    out[j] = c.clone();
    for i in j + 1..n {
        c = c * BigInt::from(i) / BigInt::from(i - j);
        out[i] = c.clone();
    }
    out
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

/// Exact quotient by a monic polynomial; panics on a nonzero remainder.
pub fn div_exact(a: &[BigInt], m: &[BigInt]) -> ZPoly {
    let dm = m.len() - 1;
    assert!(m[dm].is_one());
    let mut r = a.to_vec();
    if r.len() <= dm {
        assert!(r.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); r.len() - dm];
    for i in (dm..r.len()).rev() {
        let c = r[i].clone();
        q[i - dm] = c.clone();
        for j in 0..=dm {
            r[i - dm + j] -= &c * &m[j];
        }
    }
    assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
    q
}

/// `omega_n = (1+X)^{p^n} - 1`.
pub fn omega(p: u64, n: u32) -> Arc<ZPoly> {
    cached(Key::Omega(p, n), || {
        let mut b = binomial_row(p.pow(n));
        b[0] -= 1;
        b
    })
}

/// `Phi_n`, with `Phi_0 = X`.
pub fn phi(p: u64, n: u32) -> Arc<ZPoly> {
    cached(Key::Phi(p, n), || {
        if n == 0 {
            return vec![BigInt::zero(), BigInt::one()];
        }
        let step = p.pow(n - 1);
        let mut acc = vec![BigInt::zero(); ((p - 1) * step + 1) as usize];
        for t in 0..p {
            for (i, c) in binomial_row(t * step).into_iter().enumerate() {
                acc[i] += c;
            }
        }
        acc
    })
}

/// `tilde omega_n^{sign} = prod Phi_m` over `1 <= m <= n` with the parity of `sign`.
pub fn omega_tilde(p: u64, n: u32, sign: Sign) -> Arc<ZPoly> {
    cached(Key::Tilde(p, n, sign), || {
        let mut acc = vec![BigInt::one()];
        for m in 1..=n {
            if sign.owns_level(m) {
                acc = mul(&acc, &phi(p, m));
            }
        }
        acc
    })
}

/// `omega_n^{sign} = X * tilde omega_n^{sign}`.
pub fn omega_pm(p: u64, n: u32, sign: Sign) -> ZPoly {
    let mut v = vec![BigInt::zero()];
    v.extend(omega_tilde(p, n, sign).iter().cloned());
    v
}

/// Number of factors `Phi_m` in `tilde omega_n^{sign}`.
pub fn tilde_factor_count(n: u32, sign: Sign) -> u32 {
    (1..=n).filter(|&m| sign.owns_level(m)).count() as u32
}

/// Value at `X = 0`.
pub fn eval0(a: &[BigInt]) -> BigInt {
    a.first().cloned().unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_is_cyclotomic_quotient() {
        for p in [3u64, 5] {
            for n in 1..=3 {
                let q = div_exact(&omega(p, n), &omega(p, n - 1));
                assert_eq!(&q, &*phi(p, n));
                assert_eq!(eval0(&phi(p, n)), BigInt::from(p));
            }
        }
    }

    #[test]
    fn plus_minus_factorization() {
        for p in [3u64, 5] {
            for n in 0..=3 {
                let prod = mul(&mul(&omega_tilde(p, n, Sign::Plus), &omega_tilde(p, n, Sign::Minus)), &phi(p, 0));
                assert_eq!(prod, *omega(p, n));
            }
        }
    }
}
