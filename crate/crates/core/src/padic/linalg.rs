//! Small dense matrices over the fraction field of `O`.

use super::elem::{PadicElem, Verdict};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Row-major square or rectangular matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub rows: Vec<Vec<PadicElem>>,
}

impl Mat {
    pub fn zero(r: &Ring, n: usize, m: usize) -> Mat {
        Mat { rows: vec![vec![PadicElem::zero(r); m]; n] }
    }
    pub fn identity(r: &Ring, n: usize) -> Mat {
        let mut a = Self::zero(r, n, n);
        for i in 0..n {
            a.rows[i][i] = PadicElem::one(r);
        }
        a
    }
    pub fn from_rows(rows: Vec<Vec<PadicElem>>) -> Mat {
        Mat { rows }
    }
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }
    fn ring(&self) -> &Ring {
        self.rows[0][0].ring()
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let r = self.ring().clone();
        let mut out = Self::zero(&r, self.nrows(), o.ncols());
        for i in 0..self.nrows() {
            for j in 0..o.ncols() {
                let mut acc = PadicElem::zero(&r);
                for k in 0..self.ncols() {
                    acc = acc.add(&self.rows[i][k].mul(&o.rows[k][j]));
                }
                out.rows[i][j] = acc;
            }
        }
        out
    }
    pub fn add(&self, o: &Mat) -> Mat {
        let rows = self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect()).collect();
        Mat { rows }
    }
    pub fn sub(&self, o: &Mat) -> Mat {
        self.add(&o.scale(&PadicElem::from_i64(self.ring(), -1)))
    }
    pub fn scale(&self, c: &PadicElem) -> Mat {
        Mat { rows: self.rows.iter().map(|row| row.iter().map(|x| x.mul(c)).collect()).collect() }
    }
    pub fn transpose(&self) -> Mat {
        let rows = (0..self.ncols()).map(|j| (0..self.nrows()).map(|i| self.rows[i][j].clone()).collect()).collect();
        Mat { rows }
    }
    /// Matrix times column vector.
    pub fn apply(&self, v: &[PadicElem]) -> Vec<PadicElem> {
        self.rows.iter().map(|row| row.iter().zip(v).fold(PadicElem::zero(self.ring()), |acc, (a, b)| acc.add(&a.mul(b)))).collect()
    }

    /// Inverse by Gauss-Jordan elimination with minimal-valuation pivots.
    pub fn inverse(&self) -> Result<Mat> {
        let n = self.nrows();
        let r = self.ring().clone();
        let mut a = self.clone();
        let mut b = Self::identity(&r, n);
        for col in 0..n {
            let piv = (col..n).filter_map(|i| a.rows[i][col].valuation().map(|v| (v, i))).min().ok_or(Error::DivisionByZero)?.1;
            a.rows.swap(col, piv);
            b.rows.swap(col, piv);
            let inv = a.rows[col][col].inv()?;
            for j in 0..n {
                a.rows[col][j] = a.rows[col][j].mul(&inv);
                b.rows[col][j] = b.rows[col][j].mul(&inv);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a.rows[i][col].clone();
                if f.is_exact_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a.rows[col][j].mul(&f);
                    a.rows[i][j] = a.rows[i][j].sub(&t);
                    let t = b.rows[col][j].mul(&f);
                    b.rows[i][j] = b.rows[i][j].sub(&t);
                }
            }
        }
        Ok(b)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Mat> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::identity(self.ring(), self.nrows());
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Entrywise comparison.
    pub fn agree(&self, o: &Mat, digits: i64) -> Verdict {
        let mut v = Verdict::Equal(i64::MAX);
        for (a, b) in self.rows.iter().zip(&o.rows) {
            for (x, y) in a.iter().zip(b) {
                v = v.and(x.agree(y, digits));
            }
        }
        v
    }
}

/// Euclidean-style dot product `sum a_i b_i`.
pub fn dot(a: &[PadicElem], b: &[PadicElem]) -> PadicElem {
    let r = a[0].ring();
    a.iter().zip(b).fold(PadicElem::zero(r), |acc, (x, y)| acc.add(&x.mul(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::ring::RingSpec;

    #[test]
    fn inverse_round_trip() {
        let r = Ring::new(RingSpec::zp(5, 30)).unwrap();
        let e = |x: i64| PadicElem::from_i64(&r, x);
        let a = Mat::from_rows(vec![vec![e(5), e(2)], vec![e(3), e(25)]]);
        let b = a.inverse().unwrap();
        assert!(a.mul(&b).agree(&Mat::identity(&r, 2), 25).is_equal());
        let a3 = a.pow(3).unwrap();
        assert!(a3.mul(&a.pow(-3).unwrap()).agree(&Mat::identity(&r, 2), 20).is_equal());
    }
}
