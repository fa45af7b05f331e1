//! Fixed-point polynomials over the fraction field of `O`.
//!
//! An [`Fx`] stands for `varpi^{-den} * P(X)` where `P` has coefficients in
//! `O` known modulo `varpi^prec`. After normalization `den` is as small as
//! possible: when `den > 0` some coefficient of `P` is a unit.

use num_bigint::BigInt;
use num_traits::Zero;

use super::elem::{PadicElem, Verdict};
use super::ring::{OElem, Ring};

/// Fixed-point polynomial; see the module documentation.
#[derive(Clone, Debug, PartialEq)]
pub struct Fx {
    pub den: i64,
    pub coeffs: Vec<OElem>,
    pub prec: i64,
}

impl Fx {
    /// Zero of the given length, known to full working precision.
    pub fn zero(r: &Ring, len: usize) -> Fx {
        Fx { den: 0, coeffs: vec![r.zero(); len], prec: r.prec() }
    }

    /// Integral polynomial with the given `O` coefficients at precision `prec`.
    pub fn from_coeffs(r: &Ring, coeffs: Vec<OElem>, prec: i64) -> Fx {
        let mut f = Fx { den: 0, coeffs, prec };
        f.normalize(r);
        f
    }

    /// Integral polynomial with integer coefficients.
    pub fn from_int_poly(r: &Ring, c: &[BigInt]) -> Fx {
        Fx::from_coeffs(r, c.iter().map(|x| r.from_int(x)).collect(), r.prec())
    }

    /// Constant polynomial.
    pub fn constant(r: &Ring, c: &PadicElem, len: usize) -> Fx {
        let mut f = c.to_fx();
        f.coeffs.resize(len.max(1), r.zero());
        f
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Minimum coefficient valuation of `P`, capped at `prec`.
    pub fn int_val(&self, r: &Ring) -> i64 {
        let mut v = self.prec;
        for c in &self.coeffs {
            let w = r.val_capped(c, self.prec);
            if w < v {
                v = w;
            }
        }
        v
    }

    /// Valuation of the value, `None` if it is zero at its precision.
    pub fn valuation(&self, r: &Ring) -> Option<i64> {
        let v = self.int_val(r);
        if v >= self.prec {
            None
        } else {
            Some(v - self.den)
        }
    }

    /// Absolute precision of the value.
    pub fn abs_prec(&self) -> i64 {
        self.prec - self.den
    }

    /// True when every coefficient is zero at the known precision.
    pub fn is_zero(&self, r: &Ring) -> bool {
        self.valuation(r).is_none()
    }

    /// Canonicalizes coefficients and strips common uniformizer content from the denominator.
    pub fn normalize(&mut self, r: &Ring) {
        if self.den < 0 {
            let s = -self.den;
            for c in self.coeffs.iter_mut() {
                *c = r.mul_pi_pow(c, s);
            }
            self.prec += s;
            self.den = 0;
        }
        if self.prec > r.prec() {
            self.prec = r.prec();
        }
        for c in self.coeffs.iter_mut() {
            r.canon_in_place(c, self.prec.max(0));
        }
        if self.den > 0 {
            let v = self.int_val(r);
            let s = v.min(self.den).min(self.prec.max(0));
            if s > 0 {
                for c in self.coeffs.iter_mut() {
                    *c = r.div_pi_pow(c, s);
                }
                self.den -= s;
                self.prec -= s;
                for c in self.coeffs.iter_mut() {
                    r.canon_in_place(c, self.prec.max(0));
                }
            }
        }
    }

    /// Coefficients rescaled to denominator exponent `den >= self.den`.
    fn aligned(&self, r: &Ring, den: i64) -> (Vec<OElem>, i64) {
        let s = den - self.den;
        if s == 0 {
            return (self.coeffs.clone(), self.prec);
        }
        (self.coeffs.iter().map(|c| r.mul_pi_pow(c, s)).collect(), self.prec + s)
    }

    pub fn add(&self, o: &Fx, r: &Ring) -> Fx {
        let den = self.den.max(o.den);
        let (a, pa) = self.aligned(r, den);
        let (b, pb) = o.aligned(r, den);
        let n = a.len().max(b.len());
        let zero = r.zero();
        let coeffs = (0..n).map(|i| r.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero))).collect();
        let mut f = Fx { den, coeffs, prec: pa.min(pb) };
        f.normalize(r);
        f
    }

    pub fn neg(&self, r: &Ring) -> Fx {
        Fx { den: self.den, coeffs: self.coeffs.iter().map(|c| r.neg(c)).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Fx, r: &Ring) -> Fx {
        self.add(&o.neg(r), r)
    }

    /// Full polynomial product.
    pub fn mul(&self, o: &Fx, r: &Ring) -> Fx {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Fx::zero(r, 0);
        }
        let va = self.int_val(r);
        let vb = o.int_val(r);
        let prec = (self.prec + vb).min(o.prec + va);
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let mut acc: Vec<OElem> = vec![r.zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if !r.is_zero(y) {
                    r.mul_acc(&mut acc[i + j], x, y);
                }
            }
        }
        for c in acc.iter_mut() {
            r.reduce(c);
        }
        let mut f = Fx { den: self.den + o.den, coeffs: acc, prec };
        f.normalize(r);
        f
    }

    /// Product truncated to the first `len` coefficients.
    pub fn mul_trunc(&self, o: &Fx, len: usize, r: &Ring) -> Fx {
        let va = self.int_val(r);
        let vb = o.int_val(r);
        let prec = (self.prec + vb).min(o.prec + va);
        let mut acc: Vec<OElem> = vec![r.zero(); len];
        for (i, x) in self.coeffs.iter().enumerate().take(len) {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate().take(len - i) {
                if !r.is_zero(y) {
                    r.mul_acc(&mut acc[i + j], x, y);
                }
            }
        }
        for c in acc.iter_mut() {
            r.reduce(c);
        }
        let mut f = Fx { den: self.den + o.den, coeffs: acc, prec };
        f.normalize(r);
        f
    }

    /// Product with an integer polynomial; exact, so precision is unchanged.
    pub fn mul_int_poly(&self, g: &[BigInt], r: &Ring) -> Fx {
        if self.coeffs.is_empty() || g.is_empty() {
            return Fx::zero(r, 0);
        }
        let n = self.coeffs.len() + g.len() - 1;
        let d = r.degree();
        let mut acc: Vec<OElem> = vec![vec![BigInt::zero(); d]; n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in g.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                for (a, xc) in acc[i + j].iter_mut().zip(x) {
                    *a += xc * y;
                }
            }
        }
        for c in acc.iter_mut() {
            r.reduce(c);
        }
        let mut f = Fx { den: self.den, coeffs: acc, prec: self.prec };
        f.normalize(r);
        f
    }

    /// Remainder modulo a monic integer polynomial; exact.
    pub fn rem(&self, m: &[BigInt], r: &Ring) -> Fx {
        let dm = m.len() - 1;
        if self.coeffs.len() <= dm {
            let mut f = self.clone();
            f.coeffs.resize(dm, r.zero());
            return f;
        }
        let mut c = self.coeffs.clone();
        for i in (dm..c.len()).rev() {
            let lead = std::mem::take(&mut c[i]);
            if lead.iter().all(|x| x.is_zero()) {
                continue;
            }
            for j in 0..dm {
                if m[j].is_zero() {
                    continue;
                }
                for (a, l) in c[i - dm + j].iter_mut().zip(&lead) {
                    *a -= l * &m[j];
                }
            }
        }
        c.truncate(dm);
        for x in c.iter_mut() {
            r.reduce(x);
        }
        let mut f = Fx { den: self.den, coeffs: c, prec: self.prec };
        f.normalize(r);
        f
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, s: &PadicElem, r: &Ring) -> Fx {
        let mut f = self.mul(&s.to_fx(), r);
        f.coeffs.resize(self.coeffs.len(), r.zero());
        f
    }

    /// Multiplication by `varpi^s` for any integer `s`.
    pub fn shift(&self, s: i64, r: &Ring) -> Fx {
        let mut f = self.clone();
        f.den -= s;
        f.normalize(r);
        f
    }

    /// Coefficient `i` as a scalar.
    pub fn coeff(&self, i: usize, r: &Ring) -> PadicElem {
        match self.coeffs.get(i) {
            Some(c) => PadicElem::from_fixed(r, c, self.den, self.prec),
            None => PadicElem::zero_at(r, self.abs_prec()),
        }
    }

    /// Reduces the stored precision to `prec` (in integral-part digits).
    pub fn truncate_prec(&mut self, prec: i64, r: &Ring) {
        if prec < self.prec {
            self.prec = prec;
            self.normalize(r);
        }
    }

    /// Lowers the absolute precision of the value to at most `abs`.
    pub fn cap_abs_prec(&mut self, abs: i64, r: &Ring) {
        self.truncate_prec(abs + self.den, r);
    }

    /// Verdict for `self == 0`, requiring `digits` of absolute precision.
    pub fn zero_verdict(&self, r: &Ring, digits: i64) -> Verdict {
        if self.valuation(r).is_some() {
            Verdict::Unequal
        } else if self.abs_prec() >= digits {
            Verdict::Equal(self.abs_prec())
        } else {
            Verdict::Indeterminate(self.abs_prec())
        }
    }

    /// Compares with `o` coefficientwise.
    pub fn agree(&self, o: &Fx, r: &Ring, digits: i64) -> Verdict {
        self.sub(o, r).zero_verdict(r, digits)
    }

    /// The substitution `X -> X + a`; exact, so precision is unchanged.
    pub fn taylor_shift(&self, a: i64, r: &Ring) -> Fx {
        let n = self.coeffs.len();
        let mut c = self.coeffs.clone();
        let a = BigInt::from(a);
        for i in 0..n.saturating_sub(1) {
            for j in (i..n - 1).rev() {
                let t = c[j + 1].clone();
                for (x, y) in c[j].iter_mut().zip(&t) {
                    *x += y * &a;
                }
            }
            for x in c.iter_mut() {
                r.reduce(x);
            }
        }
        let mut f = Fx { den: self.den, coeffs: c, prec: self.prec };
        f.normalize(r);
        f
    }

    /// Resizes to `len` coefficients, padding with zeros.
    pub fn resized(mut self, len: usize, r: &Ring) -> Fx {
        self.coeffs.resize(len, r.zero());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::ring::RingSpec;

    #[test]
    fn normalization_strips_content() {
        let r = Ring::new(RingSpec::zp(3, 20)).unwrap();
        let f = Fx { den: 3, coeffs: vec![r.from_i64(9), r.from_i64(18)], prec: 20 };
        let mut g = f.clone();
        g.normalize(&r);
        assert_eq!(g.den, 1);
        assert_eq!(g.prec, 18);
        assert_eq!(g.coeffs[0], r.from_i64(1));
    }

    #[test]
    fn product_precision_rule() {
        let r = Ring::new(RingSpec::zp(5, 30)).unwrap();
        let a = Fx { den: 0, coeffs: vec![r.from_i64(25)], prec: 10 };
        let b = Fx { den: 0, coeffs: vec![r.from_i64(5)], prec: 12 };
        let c = a.mul(&b, &r);
        assert_eq!(c.prec, 11);
        assert_eq!(c.valuation(&r), Some(3));
    }

    #[test]
    fn remainder_by_monic() {
        let r = Ring::new(RingSpec::zp(3, 20)).unwrap();
        let x3 = Fx::from_int_poly(&r, &[0, 0, 0, 1].map(BigInt::from));
        let m = [-1, 0, 0, 1].map(BigInt::from);
        let q = x3.rem(&m, &r);
        assert_eq!(q.coeffs[0], r.one());
        assert!(r.is_zero(&q.coeffs[1]) && r.is_zero(&q.coeffs[2]));
    }

    #[test]
    fn taylor_shift_round_trip() {
        let r = Ring::new(RingSpec::zp(5, 20)).unwrap();
        let f = Fx::from_int_poly(&r, &[3, -1, 4, 1, -5].map(BigInt::from));
        let g = f.taylor_shift(1, &r);
        assert_eq!(g.coeffs[0], r.from_i64(3 - 1 + 4 + 1 - 5));
        assert!(g.taylor_shift(-1, &r).agree(&f, &r, 20).is_equal());
    }
}
