//! The finite-level group rings `Lambda_n = O[X]/omega_n(X)`.
//!
//! The topological generator `gamma` corresponds to `1 + X` and its
//! cyclotomic character value is fixed to `1 + p`.

pub mod character;
pub mod crt;
pub mod growth;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::zpoly::{self, Sign, ZPoly};
use crate::padic::{Fx, PadicElem, Ring, Verdict};

pub use character::{all_characters, evaluate, evaluate_horner, ord_at, ord_at_poly, CharacterSpec, Ord};
pub use crt::interpolate;
pub use growth::{log_pm, log_pm_product_check, log_series, pollack_log_trunc, reduce_growth, GrowthSeries, Reduced};

/// Named integer polynomials of the Iwasawa algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyTag {
    Omega,
    Phi,
    OmegaPlus,
    OmegaMinus,
    TildePlus,
    TildeMinus,
}

/// A tagged integer polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct IwasawaPoly {
    pub tag: PolyTag,
    pub n: u32,
    pub coeffs: ZPoly,
}

/// `omega_n`, `Phi_n`, `omega_n^{+-}` or `tilde omega_n^{+-}` for the prime `p`.
pub fn canonical_poly(tag: PolyTag, p: u64, n: u32) -> IwasawaPoly {
    let coeffs = match tag {
        PolyTag::Omega => zpoly::omega(p, n).to_vec(),
        PolyTag::Phi => zpoly::phi(p, n).to_vec(),
        PolyTag::OmegaPlus => zpoly::omega_pm(p, n, Sign::Plus),
        PolyTag::OmegaMinus => zpoly::omega_pm(p, n, Sign::Minus),
        PolyTag::TildePlus => zpoly::omega_tilde(p, n, Sign::Plus).to_vec(),
        PolyTag::TildeMinus => zpoly::omega_tilde(p, n, Sign::Minus).to_vec(),
    };
    IwasawaPoly { tag, n, coeffs }
}

/// Element `varpi^{-d} * P(X)` of `Lambda_n` tensored with the fraction field,
/// with `deg P < p^n`.
#[derive(Clone, Debug)]
pub struct GroupRingElem {
    ring: Ring,
    n: u32,
    fx: Fx,
}

/// Serialized group-ring element: integral part as base-`p` digits per coordinate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupRingJson {
    pub n: u32,
    pub denom_exp: i64,
    pub prec: i64,
    pub coeffs: Vec<Vec<Vec<u64>>>,
}

impl GroupRingElem {
    pub fn zero(r: &Ring, n: u32) -> Self {
        let len = r.p_u64().pow(n) as usize;
        GroupRingElem { ring: r.clone(), n, fx: Fx::zero(r, len) }
    }
    pub fn one(r: &Ring, n: u32) -> Self {
        Self::constant(r, n, &PadicElem::one(r))
    }
    pub fn constant(r: &Ring, n: u32, c: &PadicElem) -> Self {
        let len = r.p_u64().pow(n) as usize;
        GroupRingElem { ring: r.clone(), n, fx: Fx::constant(r, c, len) }
    }
    /// Class of an arbitrary polynomial.
    pub fn from_fx(r: &Ring, n: u32, f: &Fx) -> Self {
        let w = zpoly::omega(r.p_u64(), n);
        let len = w.len() - 1;
        GroupRingElem { ring: r.clone(), n, fx: f.rem(&w, r).resized(len, r) }
    }
    /// Class of an integer polynomial.
    pub fn from_int_poly(r: &Ring, n: u32, c: &[BigInt]) -> Self {
        Self::from_fx(r, n, &Fx::from_int_poly(r, c))
    }
    /// Uniformly random integral element known to `prec` digits.
    pub fn random<R: Rng + ?Sized>(r: &Ring, n: u32, prec: i64, rng: &mut R) -> Self {
        let len = r.p_u64().pow(n) as usize;
        let coeffs = (0..len).map(|_| r.random(rng, prec)).collect();
        GroupRingElem { ring: r.clone(), n, fx: Fx::from_coeffs(r, coeffs, prec) }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn level(&self) -> u32 {
        self.n
    }
    /// The canonical representative of degree `< p^n`.
    pub fn fx(&self) -> &Fx {
        &self.fx
    }
    /// Denominator exponent `d`: the element lies in `varpi^{-d} Lambda_n`.
    pub fn denom_exp(&self) -> i64 {
        self.fx.den
    }
    pub fn coeff(&self, i: usize) -> PadicElem {
        self.fx.coeff(i, &self.ring)
    }
    pub fn abs_prec(&self) -> i64 {
        self.fx.abs_prec()
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::LevelMismatch(self.n, o.n));
        }
        if self.ring != o.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }
    fn wrap(&self, fx: Fx) -> Self {
        GroupRingElem { ring: self.ring.clone(), n: self.n, fx }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same(o).expect("group-ring operands must match");
        self.wrap(self.fx.add(&o.fx, &self.ring))
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.same(o).expect("group-ring operands must match");
        self.wrap(self.fx.sub(&o.fx, &self.ring))
    }
    pub fn neg(&self) -> Self {
        self.wrap(self.fx.neg(&self.ring))
    }
    pub fn mul(&self, o: &Self) -> Self {
        self.same(o).expect("group-ring operands must match");
        let f = self.fx.mul(&o.fx, &self.ring);
        Self::from_fx(&self.ring, self.n, &f)
    }
    pub fn scale(&self, c: &PadicElem) -> Self {
        self.wrap(self.fx.scale(c, &self.ring))
    }
    /// Multiplication by an integer polynomial.
    pub fn mul_int_poly(&self, g: &[BigInt]) -> Self {
        Self::from_fx(&self.ring, self.n, &self.fx.mul_int_poly(g, &self.ring))
    }

    /// True when zero at the known precision.
    pub fn is_zero(&self) -> bool {
        self.fx.is_zero(&self.ring)
    }
    /// Compares with `o`, requiring `digits` of absolute precision.
    pub fn agree(&self, o: &Self, digits: i64) -> Verdict {
        if self.same(o).is_err() {
            return Verdict::Unequal;
        }
        self.fx.agree(&o.fx, &self.ring, digits)
    }

    /// The projection `pi_n : Lambda_n -> Lambda_{n-1}`.
    pub fn project(&self) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::Invalid("cannot project from level 0".into()));
        }
        Ok(Self::from_fx(&self.ring, self.n - 1, &self.fx))
    }

    /// The trace `nu_{n+1} : Lambda_n -> Lambda_{n+1}`, multiplication by `Phi_{n+1}`.
    pub fn trace_lift(&self) -> Self {
        let phi = zpoly::phi(self.ring.p_u64(), self.n + 1);
        Self::from_fx(&self.ring, self.n + 1, &self.fx.mul_int_poly(&phi, &self.ring))
    }

    /// The same class viewed at a higher level through its representative.
    pub fn lift_to(&self, n: u32) -> Self {
        Self::from_fx(&self.ring, n, &self.fx)
    }

    pub fn to_json(&self) -> GroupRingJson {
        let r = &self.ring;
        GroupRingJson {
            n: self.n,
            denom_exp: self.fx.den,
            prec: self.fx.prec,
            coeffs: self.fx.coeffs.iter().map(|c| r.digits(c, self.fx.prec)).collect(),
        }
    }

    pub fn from_json(r: &Ring, j: &GroupRingJson) -> Result<Self> {
        let len = r.p_u64().pow(j.n) as usize;
        if j.coeffs.len() != len {
            return Err(Error::Invalid(format!("expected {len} coefficients, found {}", j.coeffs.len())));
        }
        let coeffs = j.coeffs.iter().map(|c| r.from_digits(c)).collect::<Result<Vec<_>>>()?;
        let mut fx = Fx { den: j.denom_exp, coeffs, prec: j.prec };
        fx.normalize(r);
        Ok(GroupRingElem { ring: r.clone(), n: j.n, fx })
    }
}

/// The twist `Tw^j`: substitution `1 + X -> (1+p)^j (1 + X)` on a polynomial.
pub fn twist(f: &Fx, j: i64, r: &Ring) -> Fx {
    let u = r.from_i64(1 + r.p_u64() as i64);
    let u = if j < 0 { r.unit_inverse(&u).expect("1+p is a unit") } else { u };
    let mut uj = r.one();
    for _ in 0..j.unsigned_abs() {
        uj = r.mul(&uj, &u);
    }
    let mut b = f.taylor_shift(-1, r);
    let mut w = r.one();
    for c in b.coeffs.iter_mut() {
        *c = r.mul(c, &w);
        w = r.mul(&w, &uj);
    }
    b.normalize(r);
    b.taylor_shift(1, r)
}
