//! Classical Mazur-Tate elements `theta_{E, p^{n+1}}` and their images in `Q[G_n]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::curve::{ap_oracle, EllipticCurve};
use super::qlinalg::Q;
use super::symbol::EigenSymbol;
use crate::error::{Error, Result};
use crate::iwalg::{ord_at, CharacterSpec, GroupRingElem, Ord};
use crate::padic::{zpoly, PadicElem, Ring};
use crate::phimod::log_gamma;
use crate::report::SuiteReport;

/// An element of `Q[G_n]` in the basis `gamma^i`, `0 <= i < p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGroupRing {
    pub p: u64,
    pub n: u32,
    pub coeffs: Vec<Q>,
}

impl RationalGroupRing {
    pub fn zero(p: u64, n: u32) -> Self {
        RationalGroupRing { p, n, coeffs: vec![Q::zero(); p.pow(n) as usize] }
    }

    pub fn new(p: u64, n: u32, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != p.pow(n) as usize {
            return Err(Error::Invalid(format!("expected {} coefficients, found {}", p.pow(n), coeffs.len())));
        }
        Ok(RationalGroupRing { p, n, coeffs })
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.p != o.p || self.n != o.n {
            return Err(Error::LevelMismatch(self.n, o.n));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(RationalGroupRing { p: self.p, n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(RationalGroupRing { p: self.p, n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &Q) -> Self {
        RationalGroupRing { p: self.p, n: self.n, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let len = self.coeffs.len();
        let mut out = vec![Q::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[(i + j) % len] += a * b;
            }
        }
        Ok(RationalGroupRing { p: self.p, n: self.n, coeffs: out })
    }

    /// The projection `Q[G_n] -> Q[G_{n-1}]`.
    pub fn project(&self) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::Invalid("no level below 0".into()));
        }
        let len = self.p.pow(self.n - 1) as usize;
        let mut out = vec![Q::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i % len] += a;
        }
        Ok(RationalGroupRing { p: self.p, n: self.n - 1, coeffs: out })
    }

    /// The trace `nu: Q[G_n] -> Q[G_{n+1}]`, `gamma^i -> sum of its preimages`.
    pub fn trace_lift(&self) -> Self {
        let len = self.coeffs.len();
        let coeffs = (0..len * self.p as usize).map(|j| self.coeffs[j % len].clone()).collect();
        RationalGroupRing { p: self.p, n: self.n + 1, coeffs }
    }

    /// Common denominator of the coefficients.
    pub fn denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Image in `Lambda_n` over `r`; fails when a denominator is divisible by `p`.
    pub fn to_group_ring(&self, r: &Ring) -> Result<GroupRingElem> {
        if r.p_u64() != self.p {
            return Err(Error::RingMismatch);
        }
        let den = self.denominator();
        if den.is_multiple_of(&BigInt::from(self.p)) {
            return Err(Error::Indivisible(format!("coefficients are not p-integral: denominator {den}")));
        }
        // sum c_i (1 + X)^i with integer coefficients, then divide by the denominator.
        let len = self.coeffs.len();
        let mut poly = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            let c = c.numer() * (&den / c.denom());
            if c.is_zero() {
                continue;
            }
            for (k, b) in zpoly::binomial_row(i as u64).iter().enumerate() {
                poly[k] += &c * b;
            }
        }
        let inv = PadicElem::from_int(r, &den).inv()?;
        Ok(GroupRingElem::from_int_poly(r, self.n, &poly).scale(&inv))
    }

    fn strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

/// `theta_{E, p^{n+1}}` as class sums over `(Z/p^{n+1})^x / {+-1}`.
#[derive(Clone, Debug)]
pub struct MazurTateElement {
    pub curve: EllipticCurve,
    pub p: u64,
    pub n: u32,
    pub modulus: u64,
    /// `[a/M]^+` keyed by the representative `a <= M/2`.
    pub coeffs: BTreeMap<u64, Q>,
    /// Normalization factor of the underlying eigen-symbol.
    pub normalization: Q,
}

/// One coefficient of a serialized Mazur-Tate element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCoeff {
    pub a: u64,
    pub value: String,
}

/// Serialized Mazur-Tate element with exact rationals as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MazurTateJson {
    pub curve: EllipticCurve,
    pub p: u64,
    pub n: u32,
    pub modulus: u64,
    pub normalization: String,
    pub coeffs: Vec<ClassCoeff>,
    /// Coefficients of `gamma^i` in `Q[G_n]`.
    pub projected: Vec<String>,
}

/// Checks `p` odd, prime and of good reduction.
fn check_prime(curve: &EllipticCurve, p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::Invalid("p = 2 is not supported".into()));
    }
    if curve.conductor.is_multiple_of(p) {
        return Err(Error::Invalid(format!("p = {p} divides the conductor {}", curve.conductor)));
    }
    ap_oracle(curve, p as i64).map(|_| ())
}

/// `theta_{E, p^{n+1}} = sum over (Z/p^{n+1})^x / {+-1} of [a/p^{n+1}]^+ sigma_a`.
pub fn mazur_tate(sym: &EigenSymbol, p: u64, n: u32) -> Result<MazurTateElement> {
    check_prime(&sym.curve, p)?;
    let m = p.pow(n + 1);
    let coeffs = (1..=m / 2).filter(|a| a % p != 0).map(|a| (a, sym.value(a as i64, m as i64))).collect();
    Ok(MazurTateElement { curve: sym.curve.clone(), p, n, modulus: m, coeffs, normalization: sym.normalization.clone() })
}

/// Pushforward of `sum f(a) sigma_a` over units `a mod p^{n+1}` to `Q[G_n]`,
/// along `sigma_a -> gamma^{l(a)}` with `<a> = (1+p)^{l(a)}`.
pub fn project_units(p: u64, n: u32, f: &BTreeMap<u64, Q>) -> RationalGroupRing {
    let mut out = RationalGroupRing::zero(p, n);
    for (&a, c) in f {
        out.coeffs[log_gamma(p, n + 1, a as i64) as usize] += c;
    }
    out
}

/// `Theta_n(E)`, the image of `theta_{E, p^{n+1}}` in `Q[G_n]`.
pub fn project_gn(theta: &MazurTateElement) -> RationalGroupRing {
    project_units(theta.p, theta.n, &theta.coeffs)
}

/// Product in `Q[(Z/M)^x]` for functions on units modulo `M`.
pub fn unit_convolution(m: u64, f: &BTreeMap<u64, Q>, g: &BTreeMap<u64, Q>) -> BTreeMap<u64, Q> {
    let mut out: BTreeMap<u64, Q> = BTreeMap::new();
    for (&a, x) in f {
        for (&b, y) in g {
            *out.entry(a * b % m).or_insert_with(Q::zero) += x * y;
        }
    }
    out
}

impl MazurTateElement {
    pub fn to_json(&self) -> MazurTateJson {
        MazurTateJson {
            curve: self.curve.clone(),
            p: self.p,
            n: self.n,
            modulus: self.modulus,
            normalization: self.normalization.to_string(),
            coeffs: self.coeffs.iter().map(|(&a, v)| ClassCoeff { a, value: v.to_string() }).collect(),
            projected: project_gn(self).strings(),
        }
    }
}

/// `pi(Theta_n) = a_p Theta_{n-1} - nu(Theta_{n-2})` for `2 <= n <= n_max`,
/// and the trivial symmetry of every class sum.
pub fn three_term_check(sym: &EigenSymbol, p: u64, n_max: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("three_term", "pi(Theta_n(E)) = a_p Theta_(n-1)(E) - nu(Theta_(n-2)(E))");
    let ap = match check_prime(&sym.curve, p).and_then(|_| ap_oracle(&sym.curve, p as i64)) {
        Ok(a) => a,
        Err(e) => {
            rep.error("prime", e);
            return rep;
        }
    };
    let mut thetas = Vec::new();
    for n in 0..=n_max {
        match mazur_tate(sym, p, n) {
            Ok(t) => {
                let m = t.modulus as i64;
                let sym_ok = t.coeffs.keys().all(|&a| sym.value(a as i64, m) == sym.value(m - a as i64, m));
                rep.check(format!("p={p} n={n} [a/M]^+ = [-a/M]^+"), sym_ok, "symmetric", "asymmetric");
                thetas.push(project_gn(&t));
            }
            Err(e) => {
                rep.error(format!("p={p} n={n}"), e);
                return rep;
            }
        }
    }
    for n in 2..=n_max as usize {
        let lhs = thetas[n].project().expect("n >= 2");
        let rhs = thetas[n - 1].scale(&Q::from_integer(ap.into())).sub(&thetas[n - 2].trace_lift()).expect("same level");
        let label = if ap == 0 { "pi(Theta_n) = -nu(Theta_(n-2))" } else { "pi(Theta_n) = a_p Theta_(n-1) - nu(Theta_(n-2))" };
        rep.check(format!("p={p} a_p={ap} n={n} {label}"), lhs == rhs, format!("{:?}", rhs.strings()), format!("{:?}", lhs.strings()));
    }
    rep
}

/// Order of vanishing of `Theta_n(E)` at a character with the rank bound it suggests.
#[derive(Clone, Debug, Serialize)]
pub struct OrdReport {
    pub p: u64,
    pub n: u32,
    pub character: CharacterSpec,
    pub ord: Ord,
    /// Upper bound statement; reported, not verified.
    pub report: String,
}

/// `ord_chi Theta_n(E)`; fails with the denominator when `Theta_n(E)` is not p-integral.
pub fn ord_report(theta: &RationalGroupRing, chi: &CharacterSpec, r: &Ring) -> Result<OrdReport> {
    let x = theta.to_group_ring(r)?;
    let ord = ord_at(&x, chi)?;
    let bound = match ord {
        Ord::Exact(k) => format!("<= {k}"),
        Ord::AtLeast(k) => format!("unbounded at working precision (ord >= {k})"),
    };
    let report = format!(
        "dim of the chi-part of E(Q(mu_p^{}))^(p) tensor Q_p {bound} for chi = (m={}, k={}) (bound, not verified)",
        theta.n + 1,
        chi.m,
        chi.k
    );
    Ok(OrdReport { p: theta.p, n: theta.n, character: *chi, ord, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iwalg::all_characters;
    use crate::modsym::symbol::eigen_symbol;
    use crate::padic::RingSpec;

    #[test]
    fn three_term_relation_ordinary_and_supersingular() {
        for (label, p) in [("11a1", 3), ("11a1", 5), ("17a1", 3), ("14a1", 5)] {
            let e = EllipticCurve::named(label).unwrap();
            let sym = eigen_symbol(&e, 20).unwrap();
            let rep = three_term_check(&sym, p, 2);
            assert!(rep.all_passed(), "{label} p={p}: {rep:?}");
        }
        let e = EllipticCurve::named("17a1").unwrap();
        assert_eq!(ap_oracle(&e, 3).unwrap(), 0);
        assert_eq!(ap_oracle(&EllipticCurve::named("14a1").unwrap(), 5).unwrap(), 0);
    }

    #[test]
    fn bad_primes_are_rejected() {
        let sym = eigen_symbol(&EllipticCurve::named("11a1").unwrap(), 20).unwrap();
        assert!(mazur_tate(&sym, 11, 1).is_err());
        assert!(mazur_tate(&sym, 2, 1).is_err());
    }

    #[test]
    fn rank_zero_curve_has_order_zero_at_trivial_character() {
        let sym = eigen_symbol(&EllipticCurve::named("11a1").unwrap(), 20).unwrap();
        let theta = project_gn(&mazur_tate(&sym, 5, 1).unwrap());
        let r = Ring::new(RingSpec::zp(5, 30)).unwrap();
        let rep = ord_report(&theta, &CharacterSpec::trivial(1), &r).unwrap();
        assert_eq!(rep.ord, Ord::Exact(0));
        for chi in all_characters(5, 1) {
            ord_report(&theta, &chi, &r).unwrap();
        }
    }

    #[test]
    fn constant_and_constructed_orders() {
        let r = Ring::new(RingSpec::zp(3, 30)).unwrap();
        let c = RationalGroupRing::new(3, 1, vec![Q::from_integer(2.into()), Q::zero(), Q::zero()]).unwrap();
        for chi in all_characters(3, 1) {
            assert_eq!(ord_report(&c, &chi, &r).unwrap().ord, Ord::Exact(0));
        }
        // (gamma - 1)^2 vanishes to order 2 at the trivial character.
        let g = RationalGroupRing::new(3, 1, vec![Q::one(), -Q::from_integer(2.into()), Q::one()]).unwrap();
        assert!(matches!(ord_report(&g, &CharacterSpec::trivial(1), &r).unwrap().ord, Ord::Exact(k) | Ord::AtLeast(k) if k >= 2));
        let half = c.scale(&Q::new(1.into(), 3.into()));
        assert!(matches!(ord_report(&half, &CharacterSpec::trivial(1), &r), Err(Error::Indivisible(_))));
    }

    #[test]
    fn trace_and_projection() {
        let x = RationalGroupRing::new(3, 1, vec![Q::one(), Q::from_integer(2.into()), Q::zero()]).unwrap();
        let y = x.trace_lift();
        assert_eq!(y.coeffs.len(), 9);
        assert_eq!(y.project().unwrap(), x.scale(&Q::from_integer(3.into())));
    }
}
