//! Rational elliptic curves in long Weierstrass form and point counts.

use serde::{Deserialize, Serialize};

use super::space::is_prime;
use crate::error::{Error, Result};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with conductor `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticCurve {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
    pub conductor: u64,
}

/// Curve input: long form `{"a1",...,"a6","conductor"}` or short form `{"a","b","conductor"}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CurveJson {
    Long { a1: i64, a2: i64, a3: i64, a4: i64, a6: i64, conductor: u64 },
    Short { a: i64, b: i64, conductor: u64 },
}

impl From<CurveJson> for EllipticCurve {
    fn from(j: CurveJson) -> Self {
        match j {
            CurveJson::Long { a1, a2, a3, a4, a6, conductor } => EllipticCurve { a1, a2, a3, a4, a6, conductor },
            CurveJson::Short { a, b, conductor } => EllipticCurve { a1: 0, a2: 0, a3: 0, a4: a, a6: b, conductor },
        }
    }
}

impl EllipticCurve {
    pub fn new(a: [i64; 5], conductor: u64) -> Result<Self> {
        let e = EllipticCurve { a1: a[0], a2: a[1], a3: a[2], a4: a[3], a6: a[4], conductor };
        if e.discriminant() == 0 {
            return Err(Error::Invalid("singular Weierstrass equation".into()));
        }
        Ok(e)
    }

    /// A few curves of small conductor by their standard labels.
    pub fn named(label: &str) -> Result<Self> {
        let (a, n) = match label {
            "11a1" => ([0, -1, 1, -10, -20], 11),
            "14a1" => ([1, 0, 1, 4, -6], 14),
            "15a1" => ([1, 1, 1, -10, -10], 15),
            "17a1" => ([1, -1, 1, -1, -14], 17),
            "37a1" => ([0, 0, 1, -1, 0], 37),
            _ => return Err(Error::Invalid(format!("unknown curve label {label}"))),
        };
        Self::new(a, n)
    }

    pub fn discriminant(&self) -> i128 {
        let (a1, a2, a3, a4, a6) = (self.a1 as i128, self.a2 as i128, self.a3 as i128, self.a4 as i128, self.a6 as i128);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    fn on_curve(&self, l: i64, x: i64, y: i64) -> bool {
        let m = |v: i128| v.rem_euclid(l as i128);
        let (x, y) = (x as i128, y as i128);
        let lhs = m(y * y + self.a1 as i128 * x * y + self.a3 as i128 * y);
        let rhs = m(x * x * x + self.a2 as i128 * x * x + self.a4 as i128 * x + self.a6 as i128);
        lhs == rhs
    }
}

/// `#E(F_l)` counted with `x` outer (`x_outer`) or `y` outer.
pub fn point_count(e: &EllipticCurve, l: i64, x_outer: bool) -> u64 {
    let mut n = 1;
    for u in 0..l {
        for v in 0..l {
            let (x, y) = if x_outer { (u, v) } else { (v, u) };
            if e.on_curve(l, x, y) {
                n += 1;
            }
        }
    }
    n
}

/// `a_l = l + 1 - #E(F_l)` for a prime of good reduction.
pub fn ap_oracle(e: &EllipticCurve, l: i64) -> Result<i64> {
    if l < 2 || !is_prime(l as u64) {
        return Err(Error::Invalid(format!("{l} is not prime")));
    }
    if e.conductor.is_multiple_of(l as u64) || e.discriminant() % l as i128 == 0 {
        return Err(Error::Invalid(format!("bad reduction at {l}")));
    }
    let n = point_count(e, l, true);
    debug_assert_eq!(n, point_count(e, l, false));
    let a = l + 1 - n as i64;
    assert!((a * a) as f64 <= 4.0 * l as f64, "Hasse bound violated at {l}");
    Ok(a)
}
