//! Ideals of a [`QuotientRing`] via strong echelon (Howell) form over `Z/p^K`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::quotient::{vp_mod, QElem, QuotientRing};
use crate::error::{Error, Result};
use crate::padic::Verdict;

/// Answer to a membership or containment query at coefficient precision `p^K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum Membership {
    /// Member of the ideal modulo `p^precision`.
    Yes { precision: u32 },
    /// Not a member; the residue at `column` is not divisible by the pivot `p^pivot_valuation`.
    No { column: usize, residue: String, pivot_valuation: u32 },
    /// No digits available.
    Indeterminate,
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes { .. })
    }
    pub fn to_verdict(&self) -> Verdict {
        match self {
            Membership::Yes { precision } => Verdict::Equal(*precision as i64),
            Membership::No { .. } => Verdict::Unequal,
            Membership::Indeterminate => Verdict::Indeterminate(0),
        }
    }
}

/// A pivot row of the Howell basis: leading entry `p^v` at `col`.
#[derive(Clone, Debug)]
struct Pivot {
    col: usize,
    v: u32,
    row: QElem,
}

/// An ideal with its generators and cached Howell basis as a `Z/p^K`-module.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: QuotientRing,
    gens: Vec<QElem>,
    basis: Vec<Pivot>,
}

/// Strong echelon form of the `Z/p^K`-span of `rows`.
fn howell(rows: Vec<QElem>, p: u64, k: u32, modulus: &BigInt) -> Vec<Pivot> {
    let dim = rows.first().map_or(0, |r| r.len());
    let mut work: Vec<QElem> = rows.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
    let mut out = Vec::new();
    let pb = BigInt::from(p);
    for col in 0..dim {
        let best = work.iter().enumerate().map(|(i, r)| (vp_mod(&r[col], p, k), i)).min();
        let Some((v, idx)) = best else { break };
        if v >= k {
            continue;
        }
        let mut row = work.swap_remove(idx);
        // Scale the pivot entry to exactly p^v.
        let pv = pb.pow(v);
        let unit = &row[col] / &pv;
        let m = modulus / &pv;
        let inv = unit.extended_gcd(&m).x.mod_floor(&m);
        for c in row.iter_mut() {
            *c = (&*c * &inv).mod_floor(modulus);
        }
        for s in work.iter_mut() {
            if s[col].is_zero() {
                continue;
            }
            let q = &s[col] / &pv;
            for (a, b) in s.iter_mut().zip(&row) {
                *a = (&*a - &q * b).mod_floor(modulus);
            }
        }
        if v > 0 {
            let ann = pb.pow(k - v);
            let extra: QElem = row.iter().map(|c| (c * &ann).mod_floor(modulus)).collect();
            if extra.iter().any(|c| !c.is_zero()) {
                work.push(extra);
            }
        }
        work.retain(|r| r.iter().any(|c| !c.is_zero()));
        out.push(Pivot { col, v, row });
    }
    out
}

impl Ideal {
    /// The ideal generated by `gens`.
    pub fn new(ring: &QuotientRing, gens: Vec<QElem>) -> Self {
        let gens: Vec<QElem> = gens.into_iter().map(|g| ring.reduce(g)).collect();
        let d = ring.degree();
        let len = ring.x_len();
        let mut rows = Vec::with_capacity(gens.len() * ring.dim());
        for g in &gens {
            let mut gx = g.clone();
            for i in 0..len {
                let mut gt = gx.clone();
                for a in 0..d {
                    rows.push(gt.clone());
                    if a + 1 < d {
                        gt = ring.mul_t(&gt);
                    }
                }
                if i + 1 < len {
                    gx = ring.mul_x(&gx);
                }
            }
        }
        let basis = howell(rows, ring.p(), ring.k(), ring.modulus());
        Ideal { ring: ring.clone(), gens, basis }
    }

    pub fn zero(ring: &QuotientRing) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), basis: Vec::new() }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }
    pub fn gens(&self) -> &[QElem] {
        &self.gens
    }

    /// Length of the ideal as a `Z_p`-module: `sum (K - v)` over pivots.
    pub fn length(&self) -> u64 {
        self.basis.iter().map(|b| (self.ring.k() - b.v) as u64).sum()
    }

    pub fn contains(&self, x: &QElem) -> Result<Membership> {
        if x.len() != self.ring.dim() {
            return Err(Error::RingMismatch);
        }
        if self.ring.k() == 0 {
            return Ok(Membership::Indeterminate);
        }
        let m = self.ring.modulus();
        let p = self.ring.p();
        let k = self.ring.k();
        let mut x = self.ring.reduce(x.clone());
        let mut piv = self.basis.iter().peekable();
        for col in 0..x.len() {
            if x[col].is_zero() {
                while piv.peek().is_some_and(|b| b.col <= col) {
                    piv.next();
                }
                continue;
            }
            let b = match piv.peek() {
                Some(b) if b.col == col => *b,
                _ => return Ok(Membership::No { column: col, residue: x[col].to_string(), pivot_valuation: k }),
            };
            piv.next();
            if vp_mod(&x[col], p, k) < b.v {
                return Ok(Membership::No { column: col, residue: x[col].to_string(), pivot_valuation: b.v });
            }
            let q = &x[col] / BigInt::from(p).pow(b.v);
            for (a, r) in x.iter_mut().zip(&b.row) {
                *a = (&*a - &q * r).mod_floor(m);
            }
        }
        Ok(Membership::Yes { precision: k })
    }

    /// `other ⊆ self`, generator by generator.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<Membership> {
        if other.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        for g in &other.gens {
            let m = self.contains(g)?;
            if !m.is_yes() {
                return Ok(m);
            }
        }
        Ok(if self.ring.k() == 0 { Membership::Indeterminate } else { Membership::Yes { precision: self.ring.k() } })
    }

    /// Mutual containment.
    pub fn equals(&self, other: &Ideal) -> Result<Membership> {
        let a = self.contains_ideal(other)?;
        if !a.is_yes() {
            return Ok(a);
        }
        other.contains_ideal(self)
    }

    /// The product ideal, generated by pairwise products.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if other.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        let gens = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| self.ring.mul(a, b))).collect();
        Ok(Ideal::new(&self.ring, gens))
    }

    /// Image in the ring with coefficients modulo `p^k`.
    pub fn reduce_to(&self, k: u32) -> Result<Ideal> {
        let r = self.ring.with_k(k)?;
        Ok(Ideal::new(&r, self.gens.iter().map(|g| self.ring.reduce_to(g, k)).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::zpoly;

    #[test]
    fn principal_and_maximal_ideals() {
        let r = QuotientRing::zp(3, 2, 6).unwrap();
        let phi = r.from_int_poly(&zpoly::phi(3, 2));
        let i = Ideal::new(&r, vec![phi.clone()]);
        assert!(i.contains(&phi).unwrap().is_yes());
        assert!(i.contains(&r.mul(&phi, &r.x())).unwrap().is_yes());
        let maximal = Ideal::new(&r, vec![r.uniformizer(), r.x()]);
        assert!(!maximal.contains(&r.one()).unwrap().is_yes());
        assert!(maximal.contains(&r.from_int(&BigInt::from(9))).unwrap().is_yes());
    }

    #[test]
    fn powers_of_the_uniformizer() {
        let r = QuotientRing::zp(5, 0, 10).unwrap();
        let p1 = Ideal::new(&r, vec![r.uniformizer()]);
        let p2 = Ideal::new(&r, vec![r.mul(&r.uniformizer(), &r.uniformizer())]);
        assert!(p1.contains_ideal(&p2).unwrap().is_yes());
        assert!(matches!(p2.contains_ideal(&p1).unwrap(), Membership::No { .. }));
        assert_eq!(p1.length(), 9);
    }
}
