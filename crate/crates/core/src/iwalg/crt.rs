//! Interpolation through the decomposition `K[X]/omega_N = prod_k K[X]/Phi_k`.

use super::GroupRingElem;
use crate::error::{Error, Result};
use crate::padic::cyclo::{CycloElem, CycloRing};
use crate::padic::zpoly;
use crate::padic::{PadicElem, Ring};

/// Inverse of `omega_N / Phi_k` modulo `Phi_k`, as an element of level `k`.
///
/// The residue is `p^N` for `k = 0` and `p^{N-k} (xi - 1)` for `k >= 1`,
/// where `xi = zeta^{p^{k-1}}` has order `p`. Its inverse uses
/// `(xi - 1)^{-1} = -(1/p) prod_{a=2}^{p-1} (1 - xi^a)`.
fn residue_inverse(r: &Ring, big_n: u32, k: u32) -> CycloElem {
    let ring = CycloRing::new(r, k);
    let p = r.p_u64() as i64;
    let pinv = |e: u32| PadicElem::from_i64(r, p).pow(-(e as i64)).expect("p is invertible");
    if k == 0 {
        return ring.from_scalar(&pinv(big_n));
    }
    let step = p.pow(k - 1);
    let mut prod = ring.one();
    for a in 2..p {
        prod = prod.mul(&ring.one().sub(&ring.zeta_pow(a * step)));
    }
    prod.neg().scale(&pinv(big_n - k + 1))
}

/// The element `F` of `Lambda_N` (with denominators) such that
/// `F(zeta_{p^k} - 1) = values[k]` for `k = 0..=N`, where `zeta_{p^k} = 1 + z`
/// is the generator of level `k` and `values[0]` is the value at `X = 0`.
///
/// Values at the other characters of each level are the Galois conjugates.
pub fn interpolate(r: &Ring, big_n: u32, values: &[CycloElem]) -> Result<GroupRingElem> {
    if values.len() != big_n as usize + 1 {
        return Err(Error::Invalid(format!("expected {} values, found {}", big_n + 1, values.len())));
    }
    let p = r.p_u64();
    let omega = zpoly::omega(p, big_n);
    let mut acc = GroupRingElem::zero(r, big_n);
    for (k, v) in values.iter().enumerate() {
        let k = k as u32;
        if v.ring().level() != k || v.base() != r {
            return Err(Error::LevelMismatch(v.ring().level(), k));
        }
        let cofactor = zpoly::div_exact(&omega, &zpoly::phi(p, k));
        let t = v.mul(&residue_inverse(r, big_n, k));
        let e = t.fx().mul_int_poly(&cofactor, r);
        acc = acc.add(&GroupRingElem::from_fx(r, big_n, &e));
    }
    Ok(acc)
}
