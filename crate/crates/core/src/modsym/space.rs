//! Weight-two modular symbols for `Gamma_0(N)` presented by Manin symbols.
//!
//! The Manin symbol `(c : d)` is `g{0, oo}` for any `g` in `SL_2(Z)` with
//! bottom row `(c, d)`. The space is the quotient of the free space on
//! `P^1(Z/N)` by `x + xS = 0` and `x + xT + xT^2 = 0`.

use num_traits::{One, Zero};

use super::p1::{heilbronn, heilbronn_merel, P1, S, T};
use super::qlinalg::{mat_mul, nullspace, q, rref, sub_scalar, QMat, Q};
use crate::error::{Error, Result};

/// `M_2(Gamma_0(N))` over the rationals.
#[derive(Clone, Debug)]
pub struct ManinSpace {
    pub p1: P1,
    /// Generator indices forming a basis of the quotient.
    pub basis: Vec<usize>,
    /// Quotient coordinates of every generator.
    coords: Vec<Vec<Q>>,
}

/// Default cap on the level.
pub const MAX_LEVEL: u64 = 200;

impl ManinSpace {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 || n > MAX_LEVEL {
            return Err(Error::Invalid(format!("level {n} outside 1..={MAX_LEVEL}")));
        }
        let p1 = P1::new(n);
        let g = p1.len();
        // Two-term relations: x = -xS, and x = 0 when x = xS.
        let mut two: Vec<Option<(usize, i64)>> = vec![None; g];
        let mut free = Vec::new();
        for x in 0..g {
            if two[x].is_some() {
                continue;
            }
            let xs = p1.act(x, S).expect("S is invertible");
            if xs == x {
                two[x] = Some((usize::MAX, 0));
            } else {
                let k = free.len();
                free.push(x);
                two[x] = Some((k, 1));
                two[xs] = Some((k, -1));
            }
        }
        let k = free.len();
        let reduced = |x: usize| two[x].expect("assigned");
        // Three-term relations on the reduced generators.
        let mut rel: QMat = Vec::new();
        let mut seen = vec![false; g];
        for x in 0..g {
            if seen[x] {
                continue;
            }
            let xt = p1.act(x, T).expect("T is invertible");
            let xtt = p1.act(xt, T).expect("T is invertible");
            seen[x] = true;
            seen[xt] = true;
            seen[xtt] = true;
            let mut row = vec![Q::zero(); k];
            for y in [x, xt, xtt] {
                let (i, s) = reduced(y);
                if s != 0 {
                    row[i] += q(s);
                }
            }
            if row.iter().any(|c| !c.is_zero()) {
                rel.push(row);
            }
        }
        let pivots = rref(&mut rel);
        let free_cols: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
        let dim = free_cols.len();
        let pos: Vec<Option<usize>> = (0..k).map(|c| free_cols.iter().position(|&f| f == c)).collect();
        let reduced_coords: Vec<Vec<Q>> = (0..k)
            .map(|c| {
                let mut v = vec![Q::zero(); dim];
                match pos[c] {
                    Some(i) => v[i] = Q::one(),
                    None => {
                        let row = &rel[pivots.iter().position(|&pc| pc == c).expect("pivot")];
                        for (i, &f) in free_cols.iter().enumerate() {
                            v[i] = -row[f].clone();
                        }
                    }
                }
                v
            })
            .collect();
        let coords = (0..g)
            .map(|x| {
                let (i, s) = reduced(x);
                if s == 0 {
                    vec![Q::zero(); dim]
                } else {
                    reduced_coords[i].iter().map(|c| c * q(s)).collect()
                }
            })
            .collect();
        let basis = free_cols.iter().map(|&c| free[c]).collect();
        Ok(ManinSpace { p1, basis, coords })
    }

    pub fn level(&self) -> u64 {
        self.p1.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Quotient coordinates of the Manin symbol with index `x`.
    pub fn coords(&self, x: usize) -> &[Q] {
        &self.coords[x]
    }

    /// Quotient coordinates of `(c : d)`.
    pub fn symbol(&self, c: i64, d: i64) -> Result<&[Q]> {
        let x = self.p1.index(c, d).ok_or_else(|| Error::Invalid(format!("({c} : {d}) is not in P^1(Z/{})", self.level())))?;
        Ok(&self.coords[x])
    }

    /// Matrix whose row `i` holds the coordinates of the image of basis element `i`.
    fn operator(&self, images: impl Fn(usize) -> Vec<usize>) -> QMat {
        let d = self.dim();
        self.basis
            .iter()
            .map(|&x| {
                let mut row = vec![Q::zero(); d];
                for y in images(x) {
                    for (a, b) in row.iter_mut().zip(&self.coords[y]) {
                        if !b.is_zero() {
                            *a += b;
                        }
                    }
                }
                row
            })
            .collect()
    }

    /// `T_l` through Cremona's Heilbronn matrices for `l` prime to `N`, and
    /// Merel's for `l | N`, where images outside `P^1(Z/N)` are dropped.
    pub fn hecke(&self, l: i64) -> Result<QMat> {
        if l < 2 || !is_prime(l as u64) {
            return Err(Error::Invalid(format!("{l} is not prime")));
        }
        let hs = if self.level().is_multiple_of(l as u64) { heilbronn_merel(l) } else { heilbronn(l) };
        Ok(self.operator(|x| hs.iter().filter_map(|h| self.p1.act(x, *h)).collect()))
    }

    /// The star involution `(c : d) -> (-c : d)`.
    pub fn star(&self) -> QMat {
        self.operator(|x| {
            let (c, d) = self.p1.reps[x];
            vec![self.p1.index(-(c as i64), d as i64).expect("star preserves P^1")]
        })
    }

    /// Dimensions of the `+1` and `-1` eigenspaces of the star involution.
    pub fn sign_dims(&self) -> (usize, usize) {
        let s = self.star();
        let d = self.dim();
        (nullspace(&transpose(&sub_scalar(&s, &Q::one())), d).len(), nullspace(&transpose(&sub_scalar(&s, &q(-1))), d).len())
    }

    /// Whether every Manin relation vanishes in the quotient.
    pub fn relations_hold(&self) -> bool {
        (0..self.p1.len()).all(|x| {
            let xs = self.p1.act(x, S).expect("invertible");
            let xt = self.p1.act(x, T).expect("invertible");
            let xtt = self.p1.act(xt, T).expect("invertible");
            let two = self.coords[x].iter().zip(&self.coords[xs]).all(|(a, b)| (a + b).is_zero());
            let three = (0..self.dim()).all(|i| (&self.coords[x][i] + &self.coords[xt][i] + &self.coords[xtt][i]).is_zero());
            two && three
        })
    }
}

pub fn transpose(m: &QMat) -> QMat {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn commute(a: &QMat, b: &QMat) -> bool {
    mat_mul(a, b) == mat_mul(b, a)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
