//! Fitting ideals of finite presentations and ideal membership in
//! `Lambda_n` at finite precision.

pub mod brute;
pub mod ideal;
pub mod presentation;
pub mod quotient;

pub use brute::{brute_force_ideal, BRUTE_FORCE_CAP};
pub use ideal::{Ideal, Membership};
pub use presentation::{determinant, fitting_generators, PresentationJson, PresentationMatrix};
pub use quotient::{QElem, QuotientRing, QuotientSpec};

use crate::error::{Error, Result};
use crate::iwalg::GroupRingElem;

/// Brings group-ring elements to a common integral scale `varpi^s x_i` and
/// returns the quotient ring at the largest usable precision with their classes.
pub fn to_common_quotient(xs: &[&GroupRingElem]) -> Result<(QuotientRing, Vec<QElem>)> {
    let first = xs.first().ok_or_else(|| Error::Invalid("no elements".into()))?;
    let r = first.ring();
    let n = first.level();
    if xs.iter().any(|x| x.ring() != r || x.level() != n) {
        return Err(Error::RingMismatch);
    }
    let s = xs.iter().map(|x| x.denom_exp()).max().unwrap_or(0).max(0);
    let abs = xs.iter().map(|x| x.abs_prec() + s).min().unwrap_or(0);
    let k = (abs / r.e()).max(0) as u32;
    let q = QuotientRing::from_ring(r, n, k)?;
    let scale = crate::padic::PadicElem::uniformizer(r).pow(s)?;
    let elems = xs.iter().map(|x| q.from_group_ring(&x.scale(&scale))).collect::<Result<Vec<_>>>()?;
    Ok((q, elems))
}

/// Whether `x` lies in the ideal generated by `gens` in `Lambda_n`, at the
/// common precision of the inputs.
pub fn ideal_membership(x: &GroupRingElem, gens: &[&GroupRingElem]) -> Result<Membership> {
    let mut all = vec![x];
    all.extend_from_slice(gens);
    let (q, elems) = to_common_quotient(&all)?;
    Ideal::new(&q, elems[1..].to_vec()).contains(&elems[0])
}

/// `(a) = (a, b)`, that is `b ∈ (a)`.
pub fn is_principal_pair(a: &GroupRingElem, b: &GroupRingElem) -> Result<Membership> {
    ideal_membership(b, &[a])
}
