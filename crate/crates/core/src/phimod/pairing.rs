//! The twisting operator `gamma_n`, dual-exponential tables and the
//! finite-level pairings `P_n` and `script P_n`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::galois::{all_galois_characters, embed, gauss_sum, log_gamma, GaloisChar};
use super::module::PhiModule;
use crate::error::{Error, Result};
use crate::iwalg::{all_characters, evaluate, GroupRingElem};
use crate::padic::cyclo::units_mod;
use crate::padic::zpoly;
use crate::padic::{CycloElem, CycloRing, Fx, Mat, PadicElem, Ring, RingSpec, Verdict};
use crate::report::SuiteReport;
use crate::theta::CycloJson;

/// `a b` as a unit index modulo `p^n` (always 1 at level 0).
fn mul_index(p: u64, n: u32, a: i64, b: i64) -> i64 {
    if n == 0 {
        return 1;
    }
    let q = p.pow(n) as i64;
    ((a as i128 * b as i128).rem_euclid(q as i128)) as i64
}

/// `[x, y] = sum_i x_i y_i` over the cyclotomic ring.
pub fn pair(x: &[CycloElem], y: &[CycloElem]) -> CycloElem {
    x.iter().zip(y).skip(1).fold(x[0].mul(&y[0]), |acc, (a, b)| acc.add(&a.mul(b)))
}

/// `[w, y]` for a vector `w` over the fraction field of `O`.
fn pair_scalar(w: &[PadicElem], y: &[CycloElem]) -> CycloElem {
    w.iter().zip(y).skip(1).fold(y[0].scale(&w[0]), |acc, (a, b)| acc.add(&b.scale(a)))
}

fn p_pow(r: &Ring, e: i64) -> Result<PadicElem> {
    PadicElem::from_i64(r, r.p_u64() as i64).pow(e)
}

/// `gamma_n(v)` with `zeta_{p^{n-i}}` replaced by `zeta_{p^{n-i}}^a`:
/// `p^{-n} (sum_{i<n} phi^{i-n}(v) zeta_{p^{n-i}}^a + (1 - phi)^{-1}(v))`.
pub fn gamma_twist_at(m: &PhiModule, v: &[PadicElem], n: u32, a: i64) -> Result<Vec<CycloElem>> {
    if v.len() != m.rank() {
        return Err(Error::Invalid("vector length differs from the rank".into()));
    }
    let r = m.ring();
    let ring = CycloRing::new(r, n);
    let tail = m.one_minus_phi_inv()?.apply(v);
    let phi_inv = m.phi.inverse()?;
    let scale = p_pow(r, -(n as i64))?;
    let mut out: Vec<CycloElem> = tail.iter().map(|c| ring.from_scalar(c)).collect();
    // w = phi^{i-n} v, starting from i = n - 1.
    let mut w = phi_inv.apply(v);
    for i in (0..n).rev() {
        let z = ring.zeta_pow(a * r.p_u64().pow(i) as i64);
        for (o, c) in out.iter_mut().zip(&w) {
            *o = o.add(&z.scale(c));
        }
        w = phi_inv.apply(&w);
    }
    Ok(out.into_iter().map(|x| x.scale(&scale)).collect())
}

/// `gamma_n(v) = p^{-n}(sum_{i=0}^{n-1} phi^{i-n}(v) zeta_{p^{n-i}} + (1 - phi)^{-1}(v))`.
pub fn gamma_twist(m: &PhiModule, v: &[PadicElem], n: u32) -> Result<Vec<CycloElem>> {
    gamma_twist_at(m, v, n, 1)
}

fn conj_vec(x: &[CycloElem], a: i64) -> Result<Vec<CycloElem>> {
    x.iter().map(|c| c.conj(a)).collect()
}

fn random_cyclo<R: Rng + ?Sized>(ring: &CycloRing, rng: &mut R) -> CycloElem {
    let r = ring.base();
    let coeffs = (0..ring.dim()).map(|_| r.random(rng, r.prec())).collect();
    ring.from_fx(&Fx::from_coeffs(r, coeffs, r.prec()))
}

/// The values `exp*(z^sigma)` for every `sigma` of the level-`n` group, keyed by `a` with `sigma = sigma_a`.
#[derive(Clone, Debug)]
pub struct DualExpTable {
    pub n: u32,
    pub rank: usize,
    pub entries: BTreeMap<i64, Vec<CycloElem>>,
    /// `exp*(z^{sigma tau}) = exp*(z^sigma)^tau`, as checked at construction.
    pub equivariant: bool,
}

/// Serialized table `{"ring", "n", "rank", "entries": {a: [value, ...]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualExpTableJson {
    pub ring: RingSpec,
    pub n: u32,
    pub rank: usize,
    pub entries: BTreeMap<String, Vec<CycloJson>>,
}

impl DualExpTable {
    /// The equivariant table generated by `exp*(z) = x`.
    pub fn equivariant(x: Vec<CycloElem>) -> Result<Self> {
        let ring = x.first().ok_or_else(|| Error::Invalid("empty vector".into()))?.ring().clone();
        let n = ring.level();
        let mut entries = BTreeMap::new();
        for a in units_mod(ring.base().p_u64(), n) {
            entries.insert(a, conj_vec(&x, a)?);
        }
        Ok(DualExpTable { n, rank: x.len(), entries, equivariant: true })
    }

    /// A table from arbitrary entries; equivariance is tested to `digits`.
    pub fn from_entries(r: &Ring, n: u32, rank: usize, entries: BTreeMap<i64, Vec<CycloElem>>, digits: i64) -> Result<Self> {
        let keys: Vec<i64> = entries.keys().copied().collect();
        if keys != units_mod(r.p_u64(), n) {
            return Err(Error::Invalid(format!("a level-{n} table needs one entry per unit modulo p^{n}")));
        }
        let ring = CycloRing::new(r, n);
        for v in entries.values() {
            if v.len() != rank || v.iter().any(|c| c.ring() != &ring) {
                return Err(Error::Invalid("table entries must be rank-length vectors at the table level".into()));
            }
        }
        let mut t = DualExpTable { n, rank, entries, equivariant: false };
        t.equivariant = t.equivariance(digits)?.is_equal();
        Ok(t)
    }

    pub fn zero(r: &Ring, n: u32, rank: usize) -> Result<Self> {
        Self::equivariant(vec![CycloRing::new(r, n).zero(); rank])
    }

    pub fn random_equivariant<R: Rng + ?Sized>(r: &Ring, n: u32, rank: usize, rng: &mut R) -> Result<Self> {
        let ring = CycloRing::new(r, n);
        Self::equivariant((0..rank).map(|_| random_cyclo(&ring, rng)).collect())
    }

    /// Independent random entries; not equivariant in general.
    pub fn random<R: Rng + ?Sized>(r: &Ring, n: u32, rank: usize, rng: &mut R) -> Result<Self> {
        let ring = CycloRing::new(r, n);
        let entries = units_mod(r.p_u64(), n).into_iter().map(|a| (a, (0..rank).map(|_| random_cyclo(&ring, rng)).collect())).collect();
        Self::from_entries(r, n, rank, entries, r.prec() / 2)
    }

    fn ring(&self) -> &Ring {
        self.entries.values().next().expect("nonempty")[0].base()
    }

    /// `exp*(z)`, the entry at the identity.
    pub fn base_value(&self) -> &[CycloElem] {
        &self.entries[&1]
    }

    /// Agreement of every entry with the conjugate of `exp*(z)`.
    pub fn equivariance(&self, digits: i64) -> Result<Verdict> {
        let x = self.base_value();
        let mut v = Verdict::Equal(i64::MAX);
        for (&a, e) in &self.entries {
            for (c, d) in conj_vec(x, a)?.iter().zip(e) {
                v = v.and(c.agree(d, digits));
            }
        }
        Ok(v)
    }

    /// `exp*(cores z) = sum_sigma exp*(z^sigma)`.
    pub fn corestriction(&self) -> Vec<CycloElem> {
        let mut it = self.entries.values();
        let first = it.next().expect("nonempty").clone();
        it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| a.add(b)).collect())
    }

    pub fn to_json(&self) -> DualExpTableJson {
        DualExpTableJson {
            ring: self.ring().spec().clone(),
            n: self.n,
            rank: self.rank,
            entries: self.entries.iter().map(|(a, v)| (a.to_string(), v.iter().map(CycloJson::from_elem).collect())).collect(),
        }
    }

    pub fn from_json(j: &DualExpTableJson, digits: i64) -> Result<Self> {
        let r = Ring::new(j.ring.clone())?;
        let mut entries = BTreeMap::new();
        for (k, v) in &j.entries {
            let a: i64 = k.parse().map_err(|_| Error::Invalid(format!("bad group index {k}")))?;
            entries.insert(a, v.iter().map(|c| c.to_elem(&r, j.n)).collect::<Result<Vec<_>>>()?);
        }
        Self::from_entries(&r, j.n, j.rank, entries, digits)
    }
}

/// `sum_a c_a sigma_a` in `L(mu_{p^n})[G]`, coefficients keyed by `a`.
#[derive(Clone, Debug)]
pub struct PairingElement {
    pub n: u32,
    pub coeffs: BTreeMap<i64, CycloElem>,
}

impl PairingElement {
    /// `psi(x) = sum_a c_a psi(sigma_a)`.
    pub fn eval(&self, psi: &GaloisChar) -> CycloElem {
        let mut it = self.coeffs.iter();
        let (&a0, c0) = it.next().expect("nonempty");
        let r = c0.base();
        it.fold(c0.mul(&psi.value(r, a0)), |acc, (&a, c)| acc.add(&c.mul(&psi.value(r, a))))
    }

    pub fn agree(&self, o: &PairingElement, digits: i64) -> Verdict {
        self.coeffs.iter().zip(&o.coeffs).fold(
            Verdict::Equal(i64::MAX),
            |v, ((a, x), (b, y))| {
                if a != b {
                    Verdict::Unequal
                } else {
                    v.and(x.agree(y, digits))
                }
            },
        )
    }

    /// The coefficients as elements of `L`, when every one descends.
    pub fn scalars(&self) -> Result<BTreeMap<i64, PadicElem>> {
        self.coeffs.iter().map(|(&a, c)| Ok((a, c.to_scalar()?))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(CycloElem::is_zero)
    }
}

/// `P_n(v, z)` as the raw double sum `sum_{sigma, tau} [gamma^sigma, exp*(z^tau)] sigma tau^{-1}`.
pub fn pairing_raw(m: &PhiModule, v: &[PadicElem], table: &DualExpTable) -> Result<PairingElement> {
    let n = table.n;
    let p = m.ring().p_u64();
    let units = units_mod(p, n);
    let conj: BTreeMap<i64, Vec<CycloElem>> = units.iter().map(|&a| Ok((a, gamma_twist_at(m, v, n, a)?))).collect::<Result<_>>()?;
    let mut coeffs = BTreeMap::new();
    for &g in &units {
        let mut it = units.iter();
        let t0 = *it.next().expect("nonempty");
        let first = pair(&conj[&mul_index(p, n, g, t0)], &table.entries[&t0]);
        let c = it.fold(first, |acc, &t| acc.add(&pair(&conj[&mul_index(p, n, g, t)], &table.entries[&t])));
        coeffs.insert(g, c);
    }
    Ok(PairingElement { n, coeffs })
}

/// `P_n(v, z) = sum_sigma Tr[gamma^sigma, exp*(z)] sigma`, for equivariant tables.
pub fn pairing_trace(m: &PhiModule, v: &[PadicElem], table: &DualExpTable) -> Result<PairingElement> {
    if !table.equivariant {
        return Err(Error::Invalid("the trace formula needs an equivariant table".into()));
    }
    let n = table.n;
    let ring = CycloRing::new(m.ring(), n);
    let x = table.base_value();
    let mut coeffs = BTreeMap::new();
    for a in units_mod(m.ring().p_u64(), n) {
        let g = gamma_twist_at(m, v, n, a)?;
        coeffs.insert(a, ring.from_scalar(&pair(&g, x).trace()));
    }
    Ok(PairingElement { n, coeffs })
}

/// `P_n` with the evaluator that applies.
#[derive(Clone, Debug)]
pub struct PairingOutcome {
    pub value: PairingElement,
    pub method: &'static str,
    pub warning: Option<String>,
}

/// The trace formula on equivariant tables; otherwise the raw sum with a warning.
pub fn pairing_p(m: &PhiModule, v: &[PadicElem], table: &DualExpTable) -> Result<PairingOutcome> {
    if table.equivariant {
        return Ok(PairingOutcome { value: pairing_trace(m, v, table)?, method: "trace", warning: None });
    }
    Ok(PairingOutcome {
        value: pairing_raw(m, v, table)?,
        method: "raw",
        warning: Some("table is not Galois-equivariant; raw double sum returned, trace formula inapplicable".into()),
    })
}

/// `script P_n(v, z) = pi_n P_{n+1}(v, z)` for a level-`(n+1)` table, as an element of `L[G_n]`.
pub fn pairing_script_p(m: &PhiModule, v: &[PadicElem], table: &DualExpTable) -> Result<GroupRingElem> {
    if table.n == 0 {
        return Err(Error::Invalid("script P_n needs a table at level n + 1 >= 1".into()));
    }
    let n = table.n - 1;
    let r = m.ring();
    let p = r.p_u64();
    let out = pairing_p(m, v, table)?;
    let coeffs = out.value.scalars()?;
    let mut slots: BTreeMap<u64, PadicElem> = BTreeMap::new();
    for (a, c) in coeffs {
        let l = log_gamma(p, n + 1, a);
        let e = slots.entry(l).or_insert_with(|| PadicElem::zero(r));
        *e = e.add(&c);
    }
    Ok(slots
        .into_iter()
        .fold(GroupRingElem::zero(r, n), |acc, (l, c)| acc.add(&GroupRingElem::from_int_poly(r, n, &zpoly::binomial_row(l)).scale(&c))))
}

/// `[(1 - phi)^{-1}(1 - phi^{-1}/p)(v), exp*(cores z)]`.
pub fn trivial_char_value(m: &PhiModule, v: &[PadicElem], cores: &[CycloElem]) -> Result<CycloElem> {
    let r = m.ring();
    let pinv = p_pow(r, -1)?;
    let fv = m.phi.inverse()?.apply(v);
    let inner: Vec<PadicElem> = v.iter().zip(&fv).map(|(a, b)| a.sub(&b.mul(&pinv))).collect();
    Ok(pair_scalar(&m.one_minus_phi_inv()?.apply(&inner), cores))
}

/// The same value through `((p-1)/p (1 - phi)^{-1} - phi^{-1}/p)(v)`.
pub fn trivial_char_value_alt(m: &PhiModule, v: &[PadicElem], cores: &[CycloElem]) -> Result<CycloElem> {
    let r = m.ring();
    let p = r.p_u64() as i64;
    let pinv = p_pow(r, -1)?;
    let a: Mat = m.one_minus_phi_inv()?.scale(&PadicElem::from_i64(r, p - 1).mul(&pinv));
    let b: Mat = m.phi.inverse()?.scale(&pinv);
    Ok(pair_scalar(&a.sub(&b).apply(v), cores))
}

/// `p^{-m} tau(psi) sum_sigma psi^{-1}(sigma) [phi^{-m}(v), exp*(z^sigma)]` for conductor `p^m`, `m >= 1`,
/// and the trivial-character value otherwise. Valid at levels `n >= 1`.
pub fn character_value(m: &PhiModule, v: &[PadicElem], table: &DualExpTable, psi: &GaloisChar) -> Result<CycloElem> {
    let r = m.ring();
    if table.n == 0 {
        return Err(Error::Invalid("the character formulas hold at levels n >= 1".into()));
    }
    let c = psi.conductor();
    if c == 0 {
        return trivial_char_value(m, v, &table.corestriction());
    }
    let w = m.phi.pow(-(c as i64))?.apply(v);
    let inv = psi.inverse();
    let mut it = table.entries.iter();
    let (&a0, e0) = it.next().expect("nonempty");
    let sum = it.fold(pair_scalar(&w, e0).mul(&inv.value(r, a0)), |acc, (&a, e)| acc.add(&pair_scalar(&w, e).mul(&inv.value(r, a))));
    Ok(gauss_sum(r, psi, c)?.mul(&sum).scale(&p_pow(r, -(c as i64))?))
}

/// Two-evaluator and character-lemma checks of `P_n` on one table.
pub fn pairing_check(m: &PhiModule, v: &[PadicElem], table: &DualExpTable, digits: i64) -> Result<SuiteReport> {
    let n = table.n;
    let r = m.ring();
    let p = r.p_u64();
    let mut rep = SuiteReport::new(
        "pairing",
        "P_n raw double sum = trace formula; psi(P_n) = p^-m tau(psi) sum psi^-1(sigma)[phi^-m v, exp*(z^sigma)]; 1(P_n) = [(1-phi)^-1(1-phi^-1/p)v, exp*(cores z)]",
    );
    let tag = format!("p={p} d={} n={n} {}", m.rank(), if table.equivariant { "equivariant" } else { "free" });
    let raw = pairing_raw(m, v, table)?;
    if table.equivariant {
        let tr = pairing_trace(m, v, table)?;
        rep.verdict(format!("{tag} raw = trace"), raw.agree(&tr, digits));
        rep.check(format!("{tag} coefficients in L"), raw.scalars().is_ok(), "scalar coefficients", "cyclotomic coefficients");
    }
    if n == 0 {
        let direct = pair_scalar(&m.one_minus_phi_inv()?.apply(v), table.base_value());
        rep.verdict(format!("{tag} P_0 = [(1-phi)^-1 v, exp*(z)]"), raw.coeffs[&1].agree(&direct, digits));
        return Ok(rep);
    }
    for psi in all_galois_characters(p, n) {
        let lhs = raw.eval(&psi);
        let rhs = character_value(m, v, table, &psi)?;
        rep.verdict(format!("{tag} psi=(u={},b={}) m={}", psi.u, psi.b, psi.conductor()), lhs.agree(&rhs, digits));
    }
    let cores = table.corestriction();
    let (a, b) = (trivial_char_value(m, v, &cores)?, trivial_char_value_alt(m, v, &cores)?);
    rep.verdict(format!("{tag} trivial value, second evaluator"), a.agree(&b, digits));
    Ok(rep)
}

/// `chi(script P_n) = (chi o pi_n)(P_{n+1})` for every character of `G_n`.
pub fn script_check(m: &PhiModule, v: &[PadicElem], table: &DualExpTable, digits: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("script_pairing", "chi(pi_n P_(n+1)(v, z)) = (chi o pi_n)(P_(n+1)(v, z))");
    let n = table.n.checked_sub(1).ok_or_else(|| Error::Invalid("table level must be >= 1".into()))?;
    let p = m.ring().p_u64();
    let sp = pairing_script_p(m, v, table)?;
    let full = pairing_p(m, v, table)?.value;
    for chi in all_characters(p, n) {
        let lhs = embed(&evaluate(&sp, &chi)?, n + 1)?;
        let b = if chi.is_trivial() { 0 } else { chi.k.rem_euclid(p.pow(n) as i64) as u64 * p.pow(n + 1 - chi.m) % p.pow(n) };
        let psi = GaloisChar::new(p, n + 1, 0, b)?;
        rep.verdict(format!("p={p} n={n} chi=(m={},k={})", chi.m, chi.k), lhs.agree(&full.eval(&psi), digits));
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
    fn rank_one_gamma_by_substitution() {
        let r = zp(3, 60);
        let a = PadicElem::from_i64(&r, 7);
        let m = PhiModule::scalar(&a).unwrap();
        let one = PadicElem::one(&r);
        let g = gamma_twist(&m, std::slice::from_ref(&one), 2).unwrap();
        let ring = CycloRing::new(&r, 2);
        // 1/9 (a^{-2} zeta_9 + a^{-1} zeta_3 + (1 - a)^{-1}).
        let want = ring
            .zeta_pow(1)
            .scale(&a.pow(-2).unwrap())
            .add(&ring.zeta_pow(3).scale(&a.pow(-1).unwrap()))
            .add(&ring.from_scalar(&one.sub(&a).inv().unwrap()))
            .scale(&PadicElem::from_i64(&r, 9).inv().unwrap());
        assert!(g[0].agree(&want, 40).is_equal());
    }

    #[test]
    fn eigenvalue_one_is_rejected() {
        let r = zp(5, 30);
        let e = |x: i64| PadicElem::from_i64(&r, x);
        let m = PhiModule::new(Mat::from_rows(vec![vec![e(1), e(0)], vec![e(0), e(2)]])).unwrap();
        assert!(matches!(gamma_twist(&m, &[e(1), e(1)], 1), Err(Error::Degenerate(_))));
        assert!(trivial_char_value(&m, &[e(1), e(1)], &[CycloRing::new(&r, 0).one(), CycloRing::new(&r, 0).one()]).is_err());
    }

    #[test]
    fn conjugates_of_gamma_match_rederivation() {
        let r = zp(5, 60);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = PhiModule::random(&r, 2, &mut rng).unwrap();
        let v = vec![PadicElem::from_i64(&r, 3), PadicElem::from_i64(&r, -2)];
        let g = gamma_twist(&m, &v, 2).unwrap();
        for a in [2, 7, 13, 24] {
            let c = conj_vec(&g, a).unwrap();
            let d = gamma_twist_at(&m, &v, 2, a).unwrap();
            for (x, y) in c.iter().zip(&d) {
                assert!(x.agree(y, 30).is_equal());
            }
        }
    }

    #[test]
    fn zero_table_pairs_to_zero() {
        let r = zp(3, 40);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let m = PhiModule::random(&r, 2, &mut rng).unwrap();
        let t = DualExpTable::zero(&r, 2, 2).unwrap();
        let v = vec![PadicElem::one(&r), PadicElem::one(&r)];
        assert!(pairing_p(&m, &v, &t).unwrap().value.is_zero());
        assert!(pairing_script_p(&m, &v, &t).unwrap().is_zero());
    }

    #[test]
    fn scalar_trivial_value() {
        let r = zp(5, 40);
        let a = PadicElem::from_i64(&r, 3);
        let m = PhiModule::scalar(&a).unwrap();
        let one = PadicElem::one(&r);
        let z = CycloRing::new(&r, 0).from_i64(4);
        let got = trivial_char_value(&m, std::slice::from_ref(&one), &[z]).unwrap().to_scalar().unwrap();
        let p = PadicElem::from_i64(&r, 5);
        let want = one.sub(&a).inv().unwrap().mul(&one.sub(&a.inv().unwrap().div(&p).unwrap())).mul_int(4);
        assert!(got.agree(&want, 30).is_equal());
        let zero = CycloRing::new(&r, 0).zero();
        assert!(trivial_char_value(&m, &[one], &[zero]).unwrap().is_zero());
    }

    #[test]
    fn both_evaluators_and_character_lemmas() {
        for (p, seed) in [(3u64, 9u64), (5, 10)] {
            let r = zp(p, 80);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for d in [1usize, 2] {
                let m = PhiModule::random(&r, d, &mut rng).unwrap();
                let v: Vec<PadicElem> = (0..d).map(|i| PadicElem::from_i64(&r, 2 + i as i64)).collect();
                for n in 0..=2 {
                    let t = DualExpTable::random_equivariant(&r, n, d, &mut rng).unwrap();
                    let rep = pairing_check(&m, &v, &t, 30).unwrap();
                    assert!(rep.all_passed(), "{rep:?}");
                    if n >= 1 {
                        let rep = script_check(&m, &v, &t, 30).unwrap();
                        assert!(rep.all_passed(), "{rep:?}");
                    }
                }
                let free = DualExpTable::random(&r, 1, d, &mut rng).unwrap();
                assert!(!free.equivariant);
                assert!(pairing_p(&m, &v, &free).unwrap().warning.is_some());
                assert!(pairing_check(&m, &v, &free, 30).unwrap().all_passed());
            }
        }
    }

    #[test]
    fn table_json_round_trip() {
        let r = zp(3, 30);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = DualExpTable::random_equivariant(&r, 2, 2, &mut rng).unwrap();
        let j = serde_json::to_string(&t.to_json()).unwrap();
        let back = DualExpTable::from_json(&serde_json::from_str(&j).unwrap(), 20).unwrap();
        assert!(back.equivariant);
        assert_eq!(back.entries.len(), 6);
    }
}
