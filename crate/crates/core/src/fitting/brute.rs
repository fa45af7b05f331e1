//! Brute-force ideals of tiny quotient rings, used as an oracle.

use std::collections::BTreeSet;

use super::quotient::{QElem, QuotientRing};
use crate::error::{Error, Result};

/// Largest ring enumerated by [`brute_force_ideal`].
pub const BRUTE_FORCE_CAP: u64 = 729;

/// The ideal generated by `gens` as an explicit set, by closing
/// `{0}` under adding `r g` for every ring element `r` and generator `g`.
pub fn brute_force_ideal(ring: &QuotientRing, gens: &[QElem]) -> Result<BTreeSet<QElem>> {
    let elems = ring.elements(BRUTE_FORCE_CAP).ok_or_else(|| Error::Invalid(format!("ring has more than {BRUTE_FORCE_CAP} elements")))?;
    let mut set: BTreeSet<QElem> = BTreeSet::from([ring.zero()]);
    for g in gens {
        let multiples: BTreeSet<QElem> = elems.iter().map(|r| ring.mul(r, g)).collect();
        let mut next = BTreeSet::new();
        for a in &set {
            for b in &multiples {
                next.insert(ring.add(a, b));
            }
        }
        set = next;
    }
    Ok(set)
}
