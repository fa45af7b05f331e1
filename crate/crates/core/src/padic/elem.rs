//! Floating p-adic scalars `varpi^val * unit` with tracked relative precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::fx::Fx;
use super::ring::{OElem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    /// Exact zero, infinitely precise.
    Exact,
    /// Zero modulo `varpi^abs`.
    Zero { abs: i64 },
    /// `varpi^val * unit` with `unit` known modulo `varpi^rel`.
    Unit { val: i64, unit: OElem, rel: i64 },
}

/// Element of the fraction field of `O`.
#[derive(Clone, PartialEq)]
pub struct PadicElem {
    ring: Ring,
    repr: Repr,
}

/// Outcome of a three-valued zero test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    /// Exactly zero.
    Exact,
    /// Zero modulo `varpi^n`.
    ZeroAt(i64),
    NonZero,
}

/// Outcome of a comparison at a required number of digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "digits", rename_all = "snake_case")]
pub enum Verdict {
    /// Agreement certified to the given absolute precision.
    Equal(i64),
    Unequal,
    /// Agreement only to fewer digits than required.
    Indeterminate(i64),
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal(_))
    }
    /// Combines two verdicts, keeping the weakest.
    pub fn and(self, o: Verdict) -> Verdict {
        use Verdict::*;
        match (self, o) {
            (Unequal, _) | (_, Unequal) => Unequal,
            (Indeterminate(a), Indeterminate(b)) => Indeterminate(a.min(b)),
            (Indeterminate(a), Equal(b)) | (Equal(b), Indeterminate(a)) => Indeterminate(a.min(b)),
            (Equal(a), Equal(b)) => Equal(a.min(b)),
        }
    }
    /// Verdict for a difference known to be zero to `digits`, or nonzero.
    pub fn from_zero_test(z: ZeroTest, required: i64) -> Verdict {
        match z {
            ZeroTest::Exact => Verdict::Equal(i64::MAX),
            ZeroTest::ZeroAt(a) if a >= required => Verdict::Equal(a),
            ZeroTest::ZeroAt(a) => Verdict::Indeterminate(a),
            ZeroTest::NonZero => Verdict::Unequal,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal(d) if *d == i64::MAX => write!(f, "equal (exact)"),
            Verdict::Equal(d) => write!(f, "equal to {d} digits"),
            Verdict::Unequal => write!(f, "unequal"),
            Verdict::Indeterminate(d) => write!(f, "indeterminate (only {d} digits)"),
        }
    }
}

/// Serialized form: `val` is `null` for zero; `prec` is the relative
/// precision of a nonzero element or the absolute precision of a zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PadicJson {
    pub val: Option<i64>,
    pub unit: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prec: Option<i64>,
}

impl PadicElem {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Exact zero.
    pub fn zero(r: &Ring) -> Self {
        PadicElem { ring: r.clone(), repr: Repr::Exact }
    }

    /// Zero modulo `varpi^abs`.
    pub fn zero_at(r: &Ring, abs: i64) -> Self {
        PadicElem { ring: r.clone(), repr: Repr::Zero { abs } }
    }

    pub fn one(r: &Ring) -> Self {
        Self::from_int(r, &BigInt::one())
    }

    /// Integer at full working precision; zero is exact.
    pub fn from_int(r: &Ring, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(r);
        }
        let (v, u) = split_p(r, c);
        let unit = Self::from_oelem(r, &r.from_int(&u), r.prec());
        if v == 0 {
            return unit;
        }
        let pu = r.canon(&r.div_pi_pow(&r.from_int(r.p()), r.e()), r.prec());
        let p = PadicElem { ring: r.clone(), repr: Repr::Unit { val: r.e(), unit: pu, rel: r.prec() } };
        unit.mul(&p.pow(v).expect("nonnegative power"))
    }

    pub fn from_i64(r: &Ring, c: i64) -> Self {
        Self::from_int(r, &BigInt::from(c))
    }

    /// Rational number; the `p`-free part of the denominator is inverted.
    pub fn from_rational(r: &Ring, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(r);
        }
        let num = Self::from_int(r, q.numer());
        let den = Self::from_int(r, q.denom());
        num.div(&den).expect("nonzero denominator")
    }

    /// Element of `O` known modulo `varpi^abs`.
    pub fn from_oelem(r: &Ring, x: &OElem, abs: i64) -> Self {
        Self::from_fixed(r, x, 0, abs)
    }

    /// `varpi^{-den} * x` with `x` known modulo `varpi^prec`.
    pub fn from_fixed(r: &Ring, x: &OElem, den: i64, prec: i64) -> Self {
        let prec = prec.min(r.prec() + den.max(0));
        let c = r.canon(x, prec.max(0));
        match r.val(&c) {
            None => Self::zero_at(r, prec - den),
            Some(v) if v >= prec => Self::zero_at(r, prec - den),
            Some(v) => {
                let unit = r.canon(&r.div_pi_pow(&c, v), prec - v);
                PadicElem { ring: r.clone(), repr: Repr::Unit { val: v - den, unit, rel: prec - v } }
            }
        }
    }

    /// `varpi^val * unit`; `unit` must be a unit.
    pub fn from_parts(r: &Ring, val: i64, unit: &OElem, rel: i64) -> Result<Self> {
        let rel = rel.min(r.prec());
        let u = r.canon(unit, rel);
        if r.val_capped(&u, 1) != 0 {
            return Err(Error::NotUnit);
        }
        Ok(PadicElem { ring: r.clone(), repr: Repr::Unit { val, unit: u, rel } })
    }

    /// The uniformizer.
    pub fn uniformizer(r: &Ring) -> Self {
        PadicElem { ring: r.clone(), repr: Repr::Unit { val: 1, unit: r.one(), rel: r.prec() } }
    }

    /// The generator `t` of `O` over `Z_p`.
    pub fn gen(r: &Ring) -> Self {
        Self::from_oelem(r, &r.gen(), r.prec())
    }

    /// Valuation; `None` for zero (exact or at precision).
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Unit { val, .. } => Some(*val),
            _ => None,
        }
    }

    /// Absolute precision; `None` for exact zero.
    pub fn abs_prec(&self) -> Option<i64> {
        match &self.repr {
            Repr::Exact => None,
            Repr::Zero { abs } => Some(*abs),
            Repr::Unit { val, rel, .. } => Some(val + rel),
        }
    }

    /// Relative precision of a nonzero element.
    pub fn rel_prec(&self) -> Option<i64> {
        match &self.repr {
            Repr::Unit { rel, .. } => Some(*rel),
            _ => None,
        }
    }

    /// Unit part of a nonzero element.
    pub fn unit(&self) -> Option<&OElem> {
        match &self.repr {
            Repr::Unit { unit, .. } => Some(unit),
            _ => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Exact)
    }

    /// Three-valued zero test.
    pub fn is_zero(&self) -> ZeroTest {
        match &self.repr {
            Repr::Exact => ZeroTest::Exact,
            Repr::Zero { abs } => ZeroTest::ZeroAt(*abs),
            Repr::Unit { .. } => ZeroTest::NonZero,
        }
    }

    /// True for a nonzero element of valuation zero.
    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// Compares with `o`, requiring agreement to `digits` of absolute precision.
    pub fn agree(&self, o: &PadicElem, digits: i64) -> Verdict {
        Verdict::from_zero_test(self.sub(o).is_zero(), digits)
    }

    /// Fixed-point form (a constant polynomial).
    pub fn to_fx(&self) -> Fx {
        let r = &self.ring;
        match &self.repr {
            Repr::Exact => Fx { den: 0, coeffs: vec![r.zero()], prec: r.prec() },
            Repr::Zero { abs } => {
                if *abs >= 0 {
                    Fx { den: 0, coeffs: vec![r.zero()], prec: (*abs).min(r.prec()) }
                } else {
                    Fx { den: -abs, coeffs: vec![r.zero()], prec: 0 }
                }
            }
            Repr::Unit { val, unit, rel } => {
                if *val >= 0 {
                    let prec = (val + rel).min(r.prec());
                    let c = r.canon(&r.mul_pi_pow(unit, *val), prec);
                    Fx { den: 0, coeffs: vec![c], prec }
                } else {
                    Fx { den: -val, coeffs: vec![unit.clone()], prec: (*rel).min(r.prec()) }
                }
            }
        }
    }

    /// Integral representative modulo `varpi^a`; requires nonnegative valuation.
    pub fn to_oelem(&self, a: i64) -> Result<OElem> {
        let r = &self.ring;
        match &self.repr {
            Repr::Exact | Repr::Zero { .. } => Ok(r.zero()),
            Repr::Unit { val, unit, .. } => {
                if *val < 0 {
                    return Err(Error::Invalid("element is not integral".into()));
                }
                Ok(r.canon(&r.mul_pi_pow(unit, *val), a))
            }
        }
    }

    pub fn neg(&self) -> PadicElem {
        match &self.repr {
            Repr::Unit { val, unit, rel } => {
                PadicElem { ring: self.ring.clone(), repr: Repr::Unit { val: *val, unit: self.ring.canon(&self.ring.neg(unit), *rel), rel: *rel } }
            }
            _ => self.clone(),
        }
    }

    pub fn add(&self, o: &PadicElem) -> PadicElem {
        let r = &self.ring;
        match (&self.repr, &o.repr) {
            (Repr::Exact, _) => return o.clone(),
            (_, Repr::Exact) => return self.clone(),
            (Repr::Zero { abs: a }, Repr::Zero { abs: b }) => return Self::zero_at(r, (*a).min(*b)),
            _ => {}
        }
        let abs = self.abs_prec().unwrap().min(o.abs_prec().unwrap());
        let v = match (self.valuation(), o.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        if abs <= v {
            return Self::zero_at(r, abs);
        }
        let digits = abs - v;
        let part = |x: &PadicElem| -> OElem {
            match &x.repr {
                Repr::Unit { val, unit, .. } => r.mul_pi_pow(unit, val - v),
                _ => r.zero(),
            }
        };
        let s = r.canon(&r.add(&part(self), &part(o)), digits);
        Self::from_fixed(r, &s, -v, digits)
    }

    pub fn sub(&self, o: &PadicElem) -> PadicElem {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &PadicElem) -> PadicElem {
        let r = &self.ring;
        match (&self.repr, &o.repr) {
            (Repr::Exact, _) | (_, Repr::Exact) => Self::zero(r),
            (Repr::Zero { abs: a }, Repr::Zero { abs: b }) => Self::zero_at(r, a + b),
            (Repr::Zero { abs }, Repr::Unit { val, .. }) | (Repr::Unit { val, .. }, Repr::Zero { abs }) => Self::zero_at(r, abs + val),
            (Repr::Unit { val: va, unit: ua, rel: ra }, Repr::Unit { val: vb, unit: ub, rel: rb }) => {
                let rel = (*ra).min(*rb);
                PadicElem { ring: r.clone(), repr: Repr::Unit { val: va + vb, unit: r.canon(&r.mul(ua, ub), rel), rel } }
            }
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<PadicElem> {
        let r = &self.ring;
        match &self.repr {
            Repr::Unit { val, unit, rel } => {
                let u = r.unit_inverse(unit)?;
                Ok(PadicElem { ring: r.clone(), repr: Repr::Unit { val: -val, unit: r.canon(&u, *rel), rel: *rel } })
            }
            _ => Err(Error::DivisionByZero),
        }
    }

    pub fn div(&self, o: &PadicElem) -> Result<PadicElem> {
        Ok(self.mul(&o.inv()?))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, n: i64) -> Result<PadicElem> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(result)
    }

    pub fn mul_int(&self, c: i64) -> PadicElem {
        self.mul(&Self::from_i64(&self.ring, c))
    }

    /// Lowers the absolute precision to at most `abs`.
    pub fn truncate(&self, abs: i64) -> PadicElem {
        match &self.repr {
            Repr::Exact => Self::zero_at(&self.ring, abs),
            Repr::Zero { abs: a } => Self::zero_at(&self.ring, (*a).min(abs)),
            Repr::Unit { val, unit, rel } => {
                if val + rel <= abs {
                    self.clone()
                } else if abs <= *val {
                    Self::zero_at(&self.ring, abs)
                } else {
                    let rel = abs - val;
                    PadicElem { ring: self.ring.clone(), repr: Repr::Unit { val: *val, unit: self.ring.canon(unit, rel), rel } }
                }
            }
        }
    }

    /// Serializable form.
    pub fn to_json(&self) -> PadicJson {
        let r = &self.ring;
        match &self.repr {
            Repr::Exact => PadicJson { val: None, unit: vec![], prec: None },
            Repr::Zero { abs } => PadicJson { val: None, unit: vec![], prec: Some(*abs) },
            Repr::Unit { val, unit, rel } => PadicJson { val: Some(*val), unit: r.digits(unit, *rel), prec: Some(*rel) },
        }
    }

    /// Parses the serialized form.
    pub fn from_json(r: &Ring, j: &PadicJson) -> Result<PadicElem> {
        match j.val {
            None => Ok(match j.prec {
                None => Self::zero(r),
                Some(a) => Self::zero_at(r, a),
            }),
            Some(v) => {
                let u = r.from_digits(&j.unit)?;
                let rel = match j.prec {
                    Some(p) => p,
                    None => (0..r.degree()).map(|i| j.unit[i].len() as i64 * r.e() + i as i64).min().unwrap_or(0).max(1),
                };
                Self::from_parts(r, v, &u, rel)
            }
        }
    }
}

/// Splits a nonzero integer as `p^v * u` with `p` not dividing `u`.
fn split_p(r: &Ring, c: &BigInt) -> (i64, BigInt) {
    let mut v = 0;
    let mut x = c.clone();
    while x.is_multiple_of(r.p()) {
        x /= r.p();
        v += 1;
    }
    (v, x)
}

impl fmt::Debug for PadicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Exact => write!(f, "0"),
            Repr::Zero { abs } => write!(f, "O(pi^{abs})"),
            Repr::Unit { val, unit, rel } => {
                let shown: Vec<String> = unit.iter().map(|c| c.to_string()).collect();
                write!(f, "pi^{val}*[{}] + O(pi^{})", shown.join(","), val + rel)
            }
        }
    }
}

impl fmt::Display for PadicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &PadicElem {
    type Output = PadicElem;
    fn add(self, o: &PadicElem) -> PadicElem {
        PadicElem::add(self, o)
    }
}

impl Sub for &PadicElem {
    type Output = PadicElem;
    fn sub(self, o: &PadicElem) -> PadicElem {
        PadicElem::sub(self, o)
    }
}

impl Mul for &PadicElem {
    type Output = PadicElem;
    fn mul(self, o: &PadicElem) -> PadicElem {
        PadicElem::mul(self, o)
    }
}

impl Neg for &PadicElem {
    type Output = PadicElem;
    fn neg(self) -> PadicElem {
        PadicElem::neg(self)
    }
}

/// Teichmuller lift of `a mod p` in `Z_p`, as an element of `O`.
pub fn teichmuller(r: &Ring, a: i64) -> PadicElem {
    let p = r.p_u64() as i64;
    let a = a.rem_euclid(p);
    if a == 0 {
        return PadicElem::zero(r);
    }
    let m = r.modulus().clone();
    let mut x = BigInt::from(a);
    for _ in 0..(r.k() + 1) {
        x = x.modpow(r.p(), &m);
    }
    PadicElem::from_oelem(r, &r.from_int(&x), r.prec())
}

/// Newton lifting of a simple root of `f` (coefficients lowest first)
/// from an approximation `x0` with `v(f(x0)) > 2 v(f'(x0))`.
pub fn hensel_root(f: &[PadicElem], x0: &PadicElem) -> Result<PadicElem> {
    let r = x0.ring().clone();
    let eval = |c: &[PadicElem], x: &PadicElem| -> PadicElem {
        let mut acc = PadicElem::zero(&r);
        for a in c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    };
    let df: Vec<PadicElem> = f.iter().enumerate().skip(1).map(|(i, c)| c.mul_int(i as i64)).collect();
    let f0 = eval(f, x0);
    let d0 = eval(&df, x0);
    let vd = d0.valuation().ok_or_else(|| Error::Hensel("derivative vanishes at the seed".into()))?;
    match f0.valuation() {
        Some(vf) if vf <= 2 * vd => return Err(Error::Hensel(format!("v(f(x0)) = {vf} is not above 2 v(f'(x0)) = {}", 2 * vd))),
        _ => {}
    }
    let mut x = x0.clone();
    for _ in 0..(2 * r.prec()).ilog2() + 3 {
        let fx = eval(f, &x);
        if fx.valuation().is_none() {
            break;
        }
        let dx = eval(&df, &x);
        x = x.sub(&fx.div(&dx)?);
    }
    Ok(x)
}

/// The unit root `alpha` of `X^2 - a_p X + c`, lifted from a simple root modulo `varpi`.
pub fn hensel_unit_root(a_p: &PadicElem, c: &PadicElem) -> Result<PadicElem> {
    let r = a_p.ring().clone();
    let f = vec![c.clone(), a_p.neg(), PadicElem::one(&r)];
    let p = r.p_u64();
    let residues: u64 = match r.kind() {
        super::ring::RingKind::Unramified => p.pow(r.degree() as u32),
        super::ring::RingKind::Eisenstein => p,
    };
    for idx in 1..residues {
        let mut x = r.zero();
        let mut k = idx;
        for coord in x.iter_mut() {
            *coord = BigInt::from(k % p);
            k /= p;
        }
        let x0 = PadicElem::from_oelem(&r, &x, r.prec());
        let fx = x0.mul(&x0).sub(&a_p.mul(&x0)).add(c);
        let dfx = x0.mul_int(2).sub(a_p);
        let root = fx.valuation().is_none_or(|v| v >= 1);
        let simple = dfx.valuation() == Some(0);
        if root && !simple {
            return Err(Error::Hensel("double root modulo the uniformizer".into()));
        }
        if root {
            return hensel_root(&f, &x0);
        }
    }
    Err(Error::Hensel("no unit root modulo the uniformizer".into()))
}
