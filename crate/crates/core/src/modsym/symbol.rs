//! The plus eigen-symbol of a rational elliptic curve and its values `[a/M]^+`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::curve::{ap_oracle, EllipticCurve};
use super::qlinalg::{mat_vec, nullspace, q, sub_scalar, QMat, Q};
use super::space::{is_prime, ManinSpace};
use crate::error::{Error, Result};
use crate::report::SuiteReport;

/// A Hecke eigen-functional on `M_2(Gamma_0(N))` fixed by the star involution.
///
/// Normalized so that its values on all Manin symbols are coprime integers,
/// with the first nonzero value among `[0]^+` and the Manin symbols positive.
#[derive(Clone, Debug)]
pub struct EigenSymbol {
    pub curve: EllipticCurve,
    pub space: ManinSpace,
    /// Values on the quotient basis.
    pub phi: Vec<Q>,
    /// Factor applied to the first nullspace vector.
    pub normalization: Q,
    /// The `(l, a_l)` pairs that cut out the eigenspace.
    pub eigenvalues: Vec<(i64, i64)>,
}

/// Good primes `l <= l_max` of `e`.
fn good_primes(e: &EllipticCurve, l_max: i64) -> Vec<i64> {
    (2..=l_max).filter(|&l| is_prime(l as u64) && !e.conductor.is_multiple_of(l as u64) && e.discriminant() % l as i128 != 0).collect()
}

/// Extracts the plus eigen-symbol cut out by `a_l` for good `l <= l_max`.
pub fn eigen_symbol(curve: &EllipticCurve, l_max: i64) -> Result<EigenSymbol> {
    let space = ManinSpace::new(curve.conductor)?;
    let d = space.dim();
    let mut eigenvalues = Vec::new();
    let mut stack: QMat = Vec::new();
    for l in good_primes(curve, l_max) {
        let a = ap_oracle(curve, l)?;
        stack.extend(sub_scalar(&space.hecke(l)?, &q(a)));
        eigenvalues.push((l, a));
    }
    stack.extend(sub_scalar(&space.star(), &Q::one()));
    let ns = nullspace(&stack, d);
    if ns.len() != 1 {
        return Err(Error::Degenerate(format!(
            "the eigensystem of a_l for l <= {l_max} is not isolated in the plus space: multiplicity {}",
            ns.len()
        )));
    }
    let raw = ns.into_iter().next().expect("one vector");
    let mut sym = EigenSymbol { curve: curve.clone(), space, phi: raw, normalization: Q::one(), eigenvalues };
    let gens: Vec<Q> = (0..sym.space.p1.len()).map(|x| sym.generator_value(x)).collect();
    let den = gens.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let num = gens.iter().fold(BigInt::zero(), |acc, v| acc.gcd(&(v.numer() * (&den / v.denom()))));
    if num.is_zero() {
        return Err(Error::Degenerate("eigen-symbol vanishes on every Manin symbol".into()));
    }
    let mut scale = Q::new(den, num);
    let lead = std::iter::once(sym.value(0, 1)).chain(gens).find(|v| !v.is_zero()).expect("nonzero value");
    if lead.is_negative() {
        scale = -scale;
    }
    sym.phi = sym.phi.iter().map(|x| x * &scale).collect();
    sym.normalization = scale;
    Ok(sym)
}

/// Continued-fraction convergent denominators `q_{-1} = 0, q_0, ..., q_k` of `a/m`.
fn convergent_denominators(a: i64, m: i64) -> Vec<i64> {
    let (mut x, mut y) = (a, m);
    let (mut q_prev, mut q_cur) = (1i64, 0i64);
    let mut out = vec![0];
    while y != 0 {
        let t = x.div_euclid(y);
        (x, y) = (y, x - t * y);
        (q_prev, q_cur) = (q_cur, t * q_cur + q_prev);
        out.push(q_cur);
    }
    out
}

impl EigenSymbol {
    pub fn level(&self) -> u64 {
        self.space.level()
    }

    /// Value on the Manin symbol with index `x`.
    pub fn generator_value(&self, x: usize) -> Q {
        self.space.coords(x).iter().zip(&self.phi).fold(Q::zero(), |acc, (c, v)| acc + c * v)
    }

    fn manin(&self, c: i64, d: i64) -> Q {
        let x = self.space.p1.index(c, d).expect("consecutive convergent denominators are coprime");
        self.generator_value(x)
    }

    /// `[a/m]^+`, the value on the path `{oo, a/m}`.
    pub fn value(&self, a: i64, m: i64) -> Q {
        assert!(m > 0, "modulus must be positive");
        let g = a.gcd(&m);
        let qs = convergent_denominators(a / g, m / g);
        (1..qs.len())
            .map(|j| {
                // The j-th step is (q_j : (-1)^(j-1) q_(j-1)) with j counted from 0.
                let s = if (j - 1) % 2 == 1 { 1 } else { -1 };
                self.manin(s * qs[j], qs[j - 1])
            })
            .fold(Q::zero(), |acc, v| acc + v)
    }

    /// Eigenvalue of the dual `T_l` on this functional, or `None` if not an eigenvector.
    pub fn hecke_eigenvalue(&self, l: i64) -> Result<Option<Q>> {
        let t = self.space.hecke(l)?;
        let img = mat_vec(&t, &self.phi);
        let Some(i) = self.phi.iter().position(|x| !x.is_zero()) else { return Ok(None) };
        let a = &img[i] / &self.phi[i];
        Ok(img.iter().zip(&self.phi).all(|(x, y)| *x == &a * y).then_some(a))
    }
}

/// Eigenvalues against point counts for good `l <= l_max`, the value-level
/// Hecke relation at `r = a/m`, plus symmetry and integrality over `(Z/m)^x`.
pub fn eigen_check(sym: &EigenSymbol, l_max: i64, m: i64) -> SuiteReport {
    let mut rep =
        SuiteReport::new("eigen_symbol", "T_l phi = a_l phi with a_l = l + 1 - #E(F_l); sum_j [(r+j)/l]^+ + [l r]^+ = a_l [r]^+; [a/M]^+ = [-a/M]^+");
    let e = &sym.curve;
    for l in good_primes(e, l_max) {
        let expected = match ap_oracle(e, l) {
            Ok(a) => a,
            Err(err) => {
                rep.error(format!("l={l} point count"), err);
                continue;
            }
        };
        match sym.hecke_eigenvalue(l) {
            Ok(got) => rep.check(
                format!("l={l} T_l eigenvalue"),
                got.as_ref() == Some(&q(expected)),
                expected.to_string(),
                got.map_or("not an eigenvector".into(), |v| v.to_string()),
            ),
            Err(err) => rep.error(format!("l={l} T_l"), err),
        }
        for a in [1, 2] {
            let lhs = (0..l).map(|j| sym.value(a + j * m, l * m)).fold(Q::zero(), |acc, v| acc + v) + sym.value(l * a, m);
            let rhs = sym.value(a, m) * q(expected);
            rep.check(format!("l={l} Hecke relation at r={a}/{m}"), lhs == rhs, rhs.to_string(), lhs.to_string());
        }
    }
    let units: Vec<i64> = (1..m).filter(|a| a.gcd(&m) == 1).collect();
    let sym_ok = units.iter().all(|&a| sym.value(a, m) == sym.value(-a, m));
    rep.check(format!("[a/{m}]^+ = [-a/{m}]^+"), sym_ok, "symmetric", "asymmetric");
    let bad = units.iter().map(|&a| sym.value(a, m)).find(|v| !v.is_integer());
    rep.check(format!("[a/{m}]^+ integral"), bad.is_none(), "integers", bad.map_or(String::new(), |v| v.to_string()));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continued_fraction_steps() {
        assert_eq!(convergent_denominators(3, 7), vec![0, 1, 2, 7]);
        assert_eq!(convergent_denominators(0, 1), vec![0, 1]);
        assert_eq!(convergent_denominators(-1, 5), vec![0, 1, 1, 5]);
    }

    #[test]
    fn eleven_a_symbol() {
        let e = EllipticCurve::named("11a1").unwrap();
        let sym = eigen_symbol(&e, 20).unwrap();
        assert_eq!(sym.hecke_eigenvalue(2).unwrap(), Some(q(-2)));
        assert!(!sym.value(0, 1).is_zero());
        let rep = eigen_check(&sym, 20, 27);
        assert!(rep.all_passed(), "{rep:?}");
    }

    #[test]
    fn rank_one_curve_vanishes_at_zero() {
        let e = EllipticCurve::named("37a1").unwrap();
        let sym = eigen_symbol(&e, 20).unwrap();
        assert!(sym.value(0, 1).is_zero());
        assert!(eigen_check(&sym, 20, 25).all_passed());
    }
}
