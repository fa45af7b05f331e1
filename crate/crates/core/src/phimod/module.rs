//! Filtered phi-modules: the matrix of `phi`, eigenvector bases and the
//! power recursion for two-dimensional eigenform data.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::linalg::dot;
use crate::padic::{Mat, PadicElem, PadicJson, Ring, RingSpec, Verdict};
use crate::report::SuiteReport;

/// A `d`-dimensional space with a linear `phi`, an optional vector `omega`
/// spanning `Fil^1` and the scalar `<phi(omega), omega*>`.
///
/// The dual carries `phi* = (phi^T)^{-1}`, so that `<phi x, phi* y> = <x, y>`.
#[derive(Clone, Debug)]
pub struct PhiModule {
    pub phi: Mat,
    pub omega: Option<Vec<PadicElem>>,
    pub pairing_scalar: Option<PadicElem>,
}

/// Serialized form `{"ring", "rank", "phi", "omega", "pairing_scalar"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiModuleJson {
    pub ring: RingSpec,
    pub rank: usize,
    pub phi: Vec<Vec<PadicJson>>,
    #[serde(default)]
    pub omega: Option<Vec<PadicJson>>,
    #[serde(default)]
    pub pairing_scalar: Option<PadicJson>,
}

/// `v_alpha, v_beta` and the dual basis `v*_alpha, v*_beta`.
#[derive(Clone, Debug)]
pub struct Eigenbasis {
    pub v_alpha: Vec<PadicElem>,
    pub v_beta: Vec<PadicElem>,
    pub vd_alpha: Vec<PadicElem>,
    pub vd_beta: Vec<PadicElem>,
}

/// `phi^n` by repeated squaring and by `C_n phi - alpha beta C_{n-1}`.
#[derive(Clone, Debug)]
pub struct PhiPower {
    pub n: u32,
    pub direct: Mat,
    pub recursive: Mat,
    pub c_n: PadicElem,
    pub c_prev: PadicElem,
}

fn random_elem<R: Rng + ?Sized>(r: &Ring, rng: &mut R) -> PadicElem {
    PadicElem::from_oelem(r, &r.random(rng, r.prec()), r.prec())
}

fn nonzero(x: &PadicElem) -> bool {
    x.valuation().is_some()
}

/// `det` of a 2x2 matrix.
fn det2(m: &Mat) -> PadicElem {
    m.rows[0][0].mul(&m.rows[1][1]).sub(&m.rows[0][1].mul(&m.rows[1][0]))
}

impl PhiModule {
    pub fn new(phi: Mat) -> Result<Self> {
        if phi.nrows() == 0 || phi.nrows() != phi.ncols() {
            return Err(Error::Invalid("phi must be a nonempty square matrix".into()));
        }
        phi.inverse().map_err(|_| Error::Degenerate("phi is not invertible".into()))?;
        Ok(PhiModule { phi, omega: None, pairing_scalar: None })
    }

    /// Attaches `omega` and `<phi(omega), omega*>`.
    pub fn with_omega(mut self, omega: Vec<PadicElem>, pairing_scalar: PadicElem) -> Result<Self> {
        if omega.len() != self.rank() {
            return Err(Error::Invalid("omega has the wrong length".into()));
        }
        self.omega = Some(omega);
        self.pairing_scalar = Some(pairing_scalar);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.phi.nrows()
    }

    pub fn ring(&self) -> &Ring {
        self.phi.rows[0][0].ring()
    }

    /// Scalar `phi = a` on a line.
    pub fn scalar(a: &PadicElem) -> Result<Self> {
        Self::new(Mat::from_rows(vec![vec![a.clone()]]))
    }

    /// `P diag(alpha, beta) P^{-1}` for a random `P`, with a random `omega` that
    /// is not an eigenvector and pairing scalar 1.
    pub fn random_eigenform<R: Rng + ?Sized>(alpha: &PadicElem, beta: &PadicElem, rng: &mut R) -> Result<Self> {
        let r = alpha.ring().clone();
        let z = PadicElem::zero(&r);
        let d = Mat::from_rows(vec![vec![alpha.clone(), z.clone()], vec![z, beta.clone()]]);
        for _ in 0..64 {
            let p = Mat::from_rows((0..2).map(|_| (0..2).map(|_| random_elem(&r, rng)).collect()).collect());
            if !det2(&p).is_unit() {
                continue;
            }
            let phi = p.mul(&d).mul(&p.inverse()?);
            let omega: Vec<PadicElem> = (0..2).map(|_| random_elem(&r, rng)).collect();
            let po = phi.apply(&omega);
            let wedge = omega[0].mul(&po[1]).sub(&omega[1].mul(&po[0]));
            if !wedge.is_unit() {
                continue;
            }
            return Self::new(phi)?.with_omega(omega, PadicElem::one(&r));
        }
        Err(Error::Degenerate("no admissible random phi-module found".into()))
    }

    /// Random `d x d` module with `phi` and `1 - phi` invertible.
    pub fn random<R: Rng + ?Sized>(r: &Ring, d: usize, rng: &mut R) -> Result<Self> {
        for _ in 0..64 {
            let phi = Mat::from_rows((0..d).map(|_| (0..d).map(|_| random_elem(r, rng)).collect()).collect());
            let one_minus = Mat::identity(r, d).sub(&phi);
            if phi.inverse().is_ok() && one_minus.inverse().is_ok() {
                return Self::new(phi);
            }
        }
        Err(Error::Degenerate("no admissible random phi-module found".into()))
    }

    /// `phi* = (phi^T)^{-1}`.
    pub fn dual_phi(&self) -> Result<Mat> {
        self.phi.transpose().inverse()
    }

    /// `(1 - phi)^{-1}`, failing when 1 is an eigenvalue.
    pub fn one_minus_phi_inv(&self) -> Result<Mat> {
        Mat::identity(self.ring(), self.rank())
            .sub(&self.phi)
            .inverse()
            .map_err(|_| Error::Degenerate("1 is an eigenvalue of phi, so 1 - phi is singular".into()))
    }

    /// `omega*`: the dual vector with `<omega, omega*> = 0` and `<phi(omega), omega*> = s`.
    pub fn omega_dual(&self) -> Result<Vec<PadicElem>> {
        let (omega, s) = self.omega_data()?;
        if self.rank() != 2 {
            return Err(Error::Invalid("omega* is determined only in rank 2".into()));
        }
        let po = self.phi.apply(omega);
        let m = Mat::from_rows(vec![omega.clone(), po]);
        let inv = m.inverse().map_err(|_| Error::Degenerate("omega is an eigenvector of phi".into()))?;
        Ok(inv.apply(&[PadicElem::zero(self.ring()), s.clone()]))
    }

    fn omega_data(&self) -> Result<(&Vec<PadicElem>, &PadicElem)> {
        match (&self.omega, &self.pairing_scalar) {
            (Some(o), Some(s)) => Ok((o, s)),
            _ => Err(Error::Invalid("the module carries no omega".into())),
        }
    }

    pub fn to_json(&self) -> PhiModuleJson {
        PhiModuleJson {
            ring: self.ring().spec().clone(),
            rank: self.rank(),
            phi: self.phi.rows.iter().map(|row| row.iter().map(PadicElem::to_json).collect()).collect(),
            omega: self.omega.as_ref().map(|o| o.iter().map(PadicElem::to_json).collect()),
            pairing_scalar: self.pairing_scalar.as_ref().map(PadicElem::to_json),
        }
    }

    pub fn from_json(j: &PhiModuleJson) -> Result<Self> {
        let r = Ring::new(j.ring.clone())?;
        if j.phi.len() != j.rank || j.phi.iter().any(|row| row.len() != j.rank) {
            return Err(Error::Invalid(format!("phi must be {0} x {0}", j.rank)));
        }
        let rows = j.phi.iter().map(|row| row.iter().map(|x| PadicElem::from_json(&r, x)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let m = Self::new(Mat::from_rows(rows))?;
        match (&j.omega, &j.pairing_scalar) {
            (Some(o), Some(s)) => {
                let o = o.iter().map(|x| PadicElem::from_json(&r, x)).collect::<Result<Vec<_>>>()?;
                m.with_omega(o, PadicElem::from_json(&r, s)?)
            }
            (None, None) => Ok(m),
            _ => Err(Error::Invalid("omega and pairing_scalar come together".into())),
        }
    }
}

/// Checks that `alpha, beta` are the roots of the characteristic polynomial.
fn check_roots(m: &PhiModule, alpha: &PadicElem, beta: &PadicElem, digits: i64) -> Result<()> {
    if m.rank() != 2 {
        return Err(Error::Invalid("eigenform data is two-dimensional".into()));
    }
    if !nonzero(&alpha.sub(beta)) {
        return Err(Error::Degenerate("alpha = beta".into()));
    }
    let tr = m.phi.rows[0][0].add(&m.phi.rows[1][1]);
    let ok = tr.agree(&alpha.add(beta), digits).is_equal() && det2(&m.phi).agree(&alpha.mul(beta), digits).is_equal();
    if !ok {
        return Err(Error::Invalid("alpha, beta are not the roots of the characteristic polynomial of phi".into()));
    }
    Ok(())
}

/// `v_lambda = (phi(omega) - lambda' omega) / s` and
/// `v*_lambda = lambda/(lambda - lambda') (omega* - lambda' phi*(omega*))`.
pub fn eigenbasis(m: &PhiModule, alpha: &PadicElem, beta: &PadicElem) -> Result<Eigenbasis> {
    if m.rank() != 2 {
        return Err(Error::Invalid("eigenform data is two-dimensional".into()));
    }
    if !nonzero(&alpha.sub(beta)) {
        return Err(Error::Degenerate("alpha = beta".into()));
    }
    let (omega, s) = m.omega_data()?;
    if !nonzero(s) {
        return Err(Error::Degenerate("pairing scalar is zero".into()));
    }
    let po = m.phi.apply(omega);
    let od = m.omega_dual()?;
    let pod = m.dual_phi()?.apply(&od);
    let v = |other: &PadicElem| -> Result<Vec<PadicElem>> { po.iter().zip(omega).map(|(a, b)| a.sub(&b.mul(other)).div(s)).collect() };
    let vd = |lam: &PadicElem, other: &PadicElem| -> Result<Vec<PadicElem>> {
        let c = lam.div(&lam.sub(other))?;
        Ok(od.iter().zip(&pod).map(|(a, b)| a.sub(&b.mul(other)).mul(&c)).collect())
    };
    Ok(Eigenbasis { v_alpha: v(beta)?, v_beta: v(alpha)?, vd_alpha: vd(alpha, beta)?, vd_beta: vd(beta, alpha)? })
}

fn vec_agree(a: &[PadicElem], b: &[PadicElem], digits: i64) -> Verdict {
    a.iter().zip(b).fold(Verdict::Equal(i64::MAX), |v, (x, y)| v.and(x.agree(y, digits)))
}

/// Eigen-equations, duality and `v_alpha = v_beta` modulo the line of `omega`.
pub fn eigenbasis_check(m: &PhiModule, alpha: &PadicElem, beta: &PadicElem, digits: i64) -> Result<SuiteReport> {
    check_roots(m, alpha, beta, digits)?;
    let eb = eigenbasis(m, alpha, beta)?;
    let r = m.ring();
    let mut rep = SuiteReport::new("eigenbasis", "phi v_lambda = lambda v_lambda, <v_lambda, v*_mu> = delta, v_alpha = v_beta mod Fil^1");
    let scale = |v: &[PadicElem], c: &PadicElem| v.iter().map(|x| x.mul(c)).collect::<Vec<_>>();
    rep.verdict("phi v_alpha = alpha v_alpha", vec_agree(&m.phi.apply(&eb.v_alpha), &scale(&eb.v_alpha, alpha), digits));
    rep.verdict("phi v_beta = beta v_beta", vec_agree(&m.phi.apply(&eb.v_beta), &scale(&eb.v_beta, beta), digits));
    let one = PadicElem::one(r);
    let zero = PadicElem::zero(r);
    let pairs = [
        ("<v_alpha, v*_alpha> = 1", &eb.v_alpha, &eb.vd_alpha, &one),
        ("<v_alpha, v*_beta> = 0", &eb.v_alpha, &eb.vd_beta, &zero),
        ("<v_beta, v*_alpha> = 0", &eb.v_beta, &eb.vd_alpha, &zero),
        ("<v_beta, v*_beta> = 1", &eb.v_beta, &eb.vd_beta, &one),
    ];
    for (name, a, b, want) in pairs {
        rep.verdict(name, dot(a, b).agree(want, digits));
    }
    let omega = m.omega.as_ref().expect("checked by eigenbasis");
    let diff: Vec<PadicElem> = eb.v_alpha.iter().zip(&eb.v_beta).map(|(a, b)| a.sub(b)).collect();
    let wedge = diff[0].mul(&omega[1]).sub(&diff[1].mul(&omega[0]));
    rep.verdict("v_alpha - v_beta in L omega", wedge.agree(&zero, digits));
    Ok(rep)
}

/// `C_0 = 0, C_1 = 1, C_{k+1} = (alpha + beta) C_k - alpha beta C_{k-1}`.
pub fn c_sequence(alpha: &PadicElem, beta: &PadicElem, n: u32) -> Vec<PadicElem> {
    let r = alpha.ring();
    let (s, q) = (alpha.add(beta), alpha.mul(beta));
    let mut c = vec![PadicElem::zero(r), PadicElem::one(r)];
    while c.len() <= n as usize {
        let k = c.len();
        c.push(s.mul(&c[k - 1]).sub(&q.mul(&c[k - 2])));
    }
    c.truncate(n as usize + 1);
    c
}

/// `phi^n` two ways. `n = 0` gives the identity on both sides.
pub fn phi_power(m: &PhiModule, alpha: &PadicElem, beta: &PadicElem, n: u32) -> Result<PhiPower> {
    check_roots(m, alpha, beta, m.ring().prec() / 2)?;
    let r = m.ring();
    let direct = m.phi.pow(n as i64)?;
    let c = c_sequence(alpha, beta, n.max(1));
    let (c_n, c_prev, recursive) = if n == 0 {
        let prev = alpha.mul(beta).inv()?.neg();
        (PadicElem::zero(r), prev, Mat::identity(r, 2))
    } else {
        let (cn, cp) = (c[n as usize].clone(), c[n as usize - 1].clone());
        let rec = m.phi.scale(&cn).sub(&Mat::identity(r, 2).scale(&alpha.mul(beta).mul(&cp)));
        (cn, cp, rec)
    };
    Ok(PhiPower { n, direct, recursive, c_n, c_prev })
}

/// Coefficients of `BF_{phi^n(omega^+-)}` on `(BF_alpha, BF_beta)`: from the
/// recursion `C_n BF_{phi(omega)} - alpha beta C_{n-1} BF_{omega}` and in closed
/// form `(alpha^n, -+ beta^n)`.
pub fn bf_formal(alpha: &PadicElem, beta: &PadicElem, n: u32, plus: bool) -> Result<([PadicElem; 2], [PadicElem; 2])> {
    let r = alpha.ring();
    let sgn = PadicElem::from_i64(r, if plus { -1 } else { 1 });
    let base = [PadicElem::one(r), sgn.clone()];
    let first = [alpha.clone(), beta.mul(&sgn)];
    let rec = match n {
        0 => base.clone(),
        1 => first.clone(),
        _ => {
            let c = c_sequence(alpha, beta, n);
            let q = alpha.mul(beta).mul(&c[n as usize - 1]);
            [0, 1].map(|i| c[n as usize].mul(&first[i]).sub(&q.mul(&base[i])))
        }
    };
    let closed = [alpha.pow(n as i64)?, beta.pow(n as i64)?.mul(&sgn)];
    Ok((rec, closed))
}

/// Lemma-level checks: `phi^k` two ways for `k <= n_max`, the closed form of
/// `C_k`, the formal BF recursion and the expansion of `phi^k(omega)` in the eigenbasis.
pub fn phi_power_check(m: &PhiModule, alpha: &PadicElem, beta: &PadicElem, n_max: u32, digits: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("phi_power", "phi^n = C_n phi - alpha beta C_(n-1), C_n = (alpha^n - beta^n)/(alpha - beta)");
    check_roots(m, alpha, beta, digits)?;
    let r = m.ring();
    let c = c_sequence(alpha, beta, n_max.max(1));
    rep.verdict("C_0 = 0", c[0].agree(&PadicElem::zero(r), digits));
    rep.verdict("C_1 = 1", c[1].agree(&PadicElem::one(r), digits));
    let eb = if m.omega.is_some() { Some(eigenbasis(m, alpha, beta)?) } else { None };
    let ab = alpha.sub(beta);
    for n in 0..=n_max {
        let pp = phi_power(m, alpha, beta, n)?;
        rep.verdict(format!("n={n} phi^n direct = recursive"), pp.direct.agree(&pp.recursive, digits));
        let closed = alpha.pow(n as i64)?.sub(&beta.pow(n as i64)?).div(&ab)?;
        rep.verdict(format!("n={n} C_n closed form"), c[n as usize].agree(&closed, digits));
        for plus in [true, false] {
            let (rec, cl) = bf_formal(alpha, beta, n, plus)?;
            let s = if plus { "+" } else { "-" };
            rep.verdict(format!("n={n} BF_(phi^n omega^{s}) recursion"), vec_agree(&rec, &cl, digits));
        }
        if let (Some(eb), Some(omega), Some(s)) = (&eb, &m.omega, &m.pairing_scalar) {
            let lhs = pp.direct.apply(omega);
            let k = s.div(&ab)?;
            let (an, bn) = (alpha.pow(n as i64)?.mul(&k), beta.pow(n as i64)?.mul(&k));
            let rhs: Vec<PadicElem> = eb.v_alpha.iter().zip(&eb.v_beta).map(|(x, y)| x.mul(&an).sub(&y.mul(&bn))).collect();
            rep.verdict(format!("n={n} phi^n omega = s/(alpha-beta) (alpha^n v_alpha - beta^n v_beta)"), vec_agree(&lhs, &rhs, digits));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zp(p: u64, n: i64) -> Ring {
        Ring::new(RingSpec::zp(p, n)).unwrap()
    }

    #[test]
    fn diagonal_phi_has_coordinate_eigenvectors() {
        let r = zp(5, 40);
        let e = |x: i64| PadicElem::from_i64(&r, x);
        let phi = Mat::from_rows(vec![vec![e(2), e(0)], vec![e(0), e(15)]]);
        let m = PhiModule::new(phi).unwrap().with_omega(vec![e(1), e(1)], e(2).sub(&e(15))).unwrap();
        let eb = eigenbasis(&m, &e(2), &e(15)).unwrap();
        assert!(vec_agree(&eb.v_alpha, &[e(1), e(0)], 30).is_equal());
        assert!(vec_agree(&eb.v_beta, &[e(0), e(-1)], 30).is_equal());
        assert!(eigenbasis_check(&m, &e(2), &e(15), 30).unwrap().all_passed());
        assert!(matches!(eigenbasis(&m, &e(2), &e(2)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn random_duality_is_the_identity() {
        let r = zp(5, 60);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..4 {
            let a = random_elem(&r, &mut rng);
            let b = PadicElem::from_i64(&r, 5).mul(&random_elem(&r, &mut rng)).add(&PadicElem::one(&r));
            let m = PhiModule::random_eigenform(&a, &b, &mut rng).unwrap();
            let rep = eigenbasis_check(&m, &a, &b, 30).unwrap();
            assert!(rep.all_passed(), "{rep:?}");
        }
    }

    #[test]
    fn roots_two_and_three() {
        let r = zp(7, 40);
        let e = |x: i64| PadicElem::from_i64(&r, x);
        let c = c_sequence(&e(2), &e(3), 2);
        assert!(c[2].agree(&e(5), 30).is_equal());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = PhiModule::random_eigenform(&e(2), &e(3), &mut rng).unwrap();
        let sq = m.phi.mul(&m.phi);
        let rhs = m.phi.scale(&e(5)).sub(&Mat::identity(&r, 2).scale(&e(6)));
        assert!(sq.agree(&rhs, 30).is_equal());
    }

    #[test]
    fn phi_power_at_p5_up_to_eight() {
        let r = zp(5, 120);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_elem(&r, &mut rng);
        let b = random_elem(&r, &mut rng).mul_int(5).add(&PadicElem::from_i64(&r, 2));
        let m = PhiModule::random_eigenform(&a, &b, &mut rng).unwrap();
        let rep = phi_power_check(&m, &a, &b, 8, 40).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
    }

    #[test]
    fn json_round_trip() {
        let r = zp(3, 30);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let m = PhiModule::random(&r, 2, &mut rng).unwrap();
        let j = serde_json::to_string(&m.to_json()).unwrap();
        let back = PhiModule::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert!(back.phi.agree(&m.phi, 30).is_equal());
    }
}
