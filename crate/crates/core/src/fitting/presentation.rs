//! Presentation matrices and their Fitting ideals.

use serde::{Deserialize, Serialize};

use super::ideal::Ideal;
use super::quotient::{QElem, QuotientRing, QuotientSpec};
use crate::error::{Error, Result};

/// An `r x t` matrix over a [`QuotientRing`] presenting the cokernel of `R^r -> R^t`.
#[derive(Clone, Debug)]
pub struct PresentationMatrix {
    pub ring: QuotientRing,
    pub entries: Vec<Vec<QElem>>,
    pub t: usize,
}

/// Serialized presentation: `{"ring", "r", "t", "entries"}` with coordinates as decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub ring: QuotientSpec,
    pub r: usize,
    pub t: usize,
    pub entries: Vec<Vec<Vec<String>>>,
}

/// Determinant of a square matrix over a commutative ring, by Berkowitz's
/// division-free algorithm.
pub fn determinant(ring: &QuotientRing, m: &[Vec<QElem>]) -> QElem {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    // Coefficients of det(x I - A), leading first.
    let cp = berkowitz(ring, m);
    let c = cp[n].clone();
    if n % 2 == 1 {
        ring.neg(&c)
    } else {
        c
    }
}

fn mat_vec(ring: &QuotientRing, a: &[Vec<QElem>], v: &[QElem]) -> Vec<QElem> {
    a.iter().map(|row| row.iter().zip(v).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))).collect()
}

fn berkowitz(ring: &QuotientRing, m: &[Vec<QElem>]) -> Vec<QElem> {
    let n = m.len();
    if n == 1 {
        return vec![ring.one(), ring.neg(&m[0][0])];
    }
    let a = &m[0][0];
    let r: Vec<QElem> = m[0][1..].to_vec();
    let c: Vec<QElem> = m[1..].iter().map(|row| row[0].clone()).collect();
    let sub: Vec<Vec<QElem>> = m[1..].iter().map(|row| row[1..].to_vec()).collect();
    // Entries of the Toeplitz column: 1, -a, -R C, -R A C, ..., -R A^{n-2} C.
    let mut diags = vec![ring.one(), ring.neg(a)];
    let mut v = c;
    for i in 0..n - 1 {
        if i > 0 {
            v = mat_vec(ring, &sub, &v);
        }
        let rv = r.iter().zip(&v).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)));
        diags.push(ring.neg(&rv));
    }
    let inner = berkowitz(ring, &sub);
    // (n+1) x n lower-triangular Toeplitz matrix times the inner vector.
    (0..=n).map(|i| (0..n.min(i + 1)).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&diags[i - j], &inner[j])))).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

impl PresentationMatrix {
    pub fn new(ring: &QuotientRing, entries: Vec<Vec<QElem>>, t: usize) -> Result<Self> {
        for row in &entries {
            if row.len() != t || row.iter().any(|e| e.len() != ring.dim()) {
                return Err(Error::Invalid("ragged presentation matrix".into()));
            }
        }
        let entries = entries.into_iter().map(|row| row.into_iter().map(|e| ring.reduce(e)).collect()).collect();
        Ok(PresentationMatrix { ring: ring.clone(), entries, t })
    }

    pub fn r(&self) -> usize {
        self.entries.len()
    }

    /// The block-diagonal presentation of `M ⊕ N`.
    pub fn direct_sum(&self, o: &PresentationMatrix) -> Result<Self> {
        if self.ring != o.ring {
            return Err(Error::RingMismatch);
        }
        let z = self.ring.zero();
        let t = self.t + o.t;
        let mut rows = Vec::new();
        for row in &self.entries {
            let mut r = row.clone();
            r.extend(std::iter::repeat_n(z.clone(), o.t));
            rows.push(r);
        }
        for row in &o.entries {
            let mut r = vec![z.clone(); self.t];
            r.extend(row.iter().cloned());
            rows.push(r);
        }
        PresentationMatrix::new(&self.ring, rows, t)
    }

    /// Entrywise reduction modulo `p^k`.
    pub fn reduce_to(&self, k: u32) -> Result<Self> {
        let r = self.ring.with_k(k)?;
        let rows = self.entries.iter().map(|row| row.iter().map(|e| self.ring.reduce_to(e, k)).collect()).collect();
        PresentationMatrix::new(&r, rows, self.t)
    }

    /// Left and right multiplication by square matrices.
    pub fn transform(&self, left: &[Vec<QElem>], right: &[Vec<QElem>]) -> Result<Self> {
        let ring = &self.ring;
        let r = self.r();
        if left.len() != r || right.len() != self.t {
            return Err(Error::Invalid("transform dimensions".into()));
        }
        let prod = |a: &[Vec<QElem>], b: &[Vec<QElem>], inner: usize, cols: usize| -> Vec<Vec<QElem>> {
            a.iter()
                .map(|row| (0..cols).map(|j| (0..inner).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&row[k], &b[k][j])))).collect())
                .collect()
        };
        let lm = prod(left, &self.entries, r, self.t);
        PresentationMatrix::new(ring, prod(&lm, right, self.t, self.t), self.t)
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            ring: self.ring.spec().clone(),
            r: self.r(),
            t: self.t,
            entries: self.entries.iter().map(|row| row.iter().map(QuotientRing::to_strings).collect()).collect(),
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Self> {
        let ring = QuotientRing::new(j.ring.clone())?;
        if j.entries.len() != j.r {
            return Err(Error::Invalid(format!("expected {} rows, found {}", j.r, j.entries.len())));
        }
        let rows = j.entries.iter().map(|row| row.iter().map(|e| ring.from_strings(e)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        PresentationMatrix::new(&ring, rows, j.t)
    }
}

/// The Fitting ideal: all `t x t` minors when `r >= t`, the zero ideal otherwise.
pub fn fitting_generators(pm: &PresentationMatrix) -> Ideal {
    let (r, t) = (pm.r(), pm.t);
    if r < t {
        return Ideal::zero(&pm.ring);
    }
    let gens = subsets(r, t)
        .into_iter()
        .map(|rows| {
            let minor: Vec<Vec<QElem>> = rows.iter().map(|&i| pm.entries[i].clone()).collect();
            determinant(&pm.ring, &minor)
        })
        .collect();
    Ideal::new(&pm.ring, gens)
}
