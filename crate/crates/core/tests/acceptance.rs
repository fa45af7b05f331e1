//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime against the limit.

use std::time::{Duration, Instant};

use theta_forge::iwalg::{all_characters, evaluate};
use theta_forge::modsym::{eigen_symbol, three_term_check, EllipticCurve};
use theta_forge::phimod::appendix_suite;
use theta_forge::report::SuiteReport;
use theta_forge::suites::{fitting_suite, growth_suite, modsym_suite, supersingular_curve, synth_ordinary, synth_signed, theta_suite};
use theta_forge::theta::{theta_pm, LFamily, SignedPair};

const PRIMES: [u64; 2] = [3, 5];
const DIGITS: i64 = 40;
const N_MAX: u32 = 3;
const PRECISION: i64 = 160;
const SIGNED_PRECISION: i64 = 100;

struct Outcome {
    id: usize,
    name: &'static str,
    report: SuiteReport,
    elapsed: Duration,
    limit: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.report.all_passed() && self.report.cases > 0 && self.elapsed <= self.limit
    }

    fn line(&self) -> String {
        let r = &self.report;
        format!(
            "{} [{}] {}: {}/{} cases, {} failed, {} indeterminate, {:.2}s (limit {}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            r.passed,
            r.cases,
            r.failed.len(),
            r.indeterminate.len(),
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
        )
    }
}

fn run(id: usize, name: &'static str, limit_secs: u64, f: impl FnOnce() -> SuiteReport) -> Outcome {
    let start = Instant::now();
    let report = f();
    Outcome { id, name, report, elapsed: start.elapsed(), limit: Duration::from_secs(limit_secs) }
}

fn absorb(rep: &mut SuiteReport, label: String, r: theta_forge::error::Result<SuiteReport>) {
    match r {
        Ok(mut s) => {
            s.suite = format!("{label} {}", s.suite);
            rep.absorb(s);
        }
        Err(e) => rep.error(label, e),
    }
}

fn ordinary(p: u64, seed: u64) -> theta_forge::error::Result<LFamily> {
    synth_ordinary(p, PRECISION, N_MAX, seed)
}

fn signed(p: u64, seed: u64) -> theta_forge::error::Result<(LFamily, SignedPair)> {
    synth_signed(p, SIGNED_PRECISION, N_MAX, seed)
}

/// Runs `names` on one ordinary and one signed family per prime and seed.
fn theta_criterion(name: &'static str, names: &[&str], ordinary_too: bool, seeds: &[u64]) -> SuiteReport {
    let mut rep = SuiteReport::new(name, name);
    for &p in &PRIMES {
        for &seed in seeds {
            if ordinary_too {
                match ordinary(p, seed) {
                    Ok(fam) => {
                        for s in names {
                            absorb(&mut rep, format!("p={p} seed={seed} ordinary"), theta_suite(s, &fam, None, DIGITS));
                        }
                    }
                    Err(e) => rep.error(format!("p={p} seed={seed} ordinary"), e),
                }
            }
            match signed(p, seed) {
                Ok((fam, pair)) => {
                    for s in names {
                        absorb(&mut rep, format!("p={p} seed={seed} signed"), theta_suite(s, &fam, Some(&pair), DIGITS));
                    }
                }
                Err(e) => rep.error(format!("p={p} seed={seed} signed"), e),
            }
        }
    }
    rep
}

fn reconstruct() -> SuiteReport {
    theta_criterion("reconstruct", &["reconstruct"], true, &[1, 2])
}

fn interpolation() -> SuiteReport {
    theta_criterion("interp", &["interp"], true, &[3, 4])
}

fn ledger() -> SuiteReport {
    let mut rep = SuiteReport::new("ledger", "ledger");
    for i in 0..20u64 {
        let p = PRIMES[(i % 2) as usize];
        let seed = 100 + i;
        match synth_ordinary(p, PRECISION, N_MAX, seed) {
            Ok(fam) => absorb(&mut rep, format!("p={p} seed={seed}"), theta_suite("ledger", &fam, None, DIGITS)),
            Err(e) => rep.error(format!("p={p} seed={seed}"), e),
        }
    }
    rep
}

fn signed_suite() -> SuiteReport {
    let mut rep = theta_criterion("pm", &["trace", "pm"], false, &[5, 6]);
    // Both parities of the trace relation and the vanishing of the wrong-sign element.
    for &p in &PRIMES {
        match signed(p, 7) {
            Ok((fam, _)) => {
                for n in 0..=N_MAX {
                    match theta_pm(&fam, n) {
                        Ok((tp, tm)) => {
                            for chi in all_characters(p, n).into_iter().filter(|c| c.m >= 2) {
                                let killed = if chi.m % 2 == 1 { &tp } else { &tm };
                                let zero = evaluate(&killed.elem, &chi).is_ok_and(|v| v.is_zero());
                                rep.check(format!("p={p} n={n} m={} wrong sign vanishes", chi.m), zero, "0", "nonzero");
                            }
                        }
                        Err(e) => rep.error(format!("p={p} n={n}"), e),
                    }
                }
            }
            Err(e) => rep.error(format!("p={p}"), e),
        }
    }
    rep
}

fn fitting() -> SuiteReport {
    fitting_suite(2024, 50, 50)
}

fn appendix() -> SuiteReport {
    let mut rep = SuiteReport::new("appendix", "appendix");
    for &p in &PRIMES {
        for seed in [1, 2] {
            let mut s = appendix_suite(p, 100, 2, seed, DIGITS);
            s.suite = format!("p={p} seed={seed} {}", s.suite);
            rep.absorb(s);
        }
    }
    rep
}

fn modsym() -> SuiteReport {
    let mut rep = SuiteReport::new("modsym", "modsym");
    for &p in &PRIMES {
        let mut s = modsym_suite(p, 2);
        s.suite = format!("p={p} {}", s.suite);
        rep.absorb(s);
        // The three-term relation must have been exercised for an ordinary and an a_p = 0 curve.
        for label in ["11a1", supersingular_curve(p).unwrap()] {
            match EllipticCurve::named(label).and_then(|e| eigen_symbol(&e, 20)) {
                Ok(sym) => {
                    let t = three_term_check(&sym, p, 2);
                    rep.check(format!("p={p} {label} three-term at n=2 ran"), t.cases > 0 && t.all_passed(), "exact", format!("{t:?}"));
                }
                Err(e) => rep.error(format!("p={p} {label}"), e),
            }
        }
    }
    rep
}

fn integrality() -> SuiteReport {
    let mut rep = SuiteReport::new("integrality", "integrality");
    for &p in &PRIMES {
        for seed in 1..=7u64 {
            match ordinary(p, seed) {
                Ok(fam) => absorb(&mut rep, format!("p={p} seed={seed} ordinary"), theta_suite("integrality", &fam, None, DIGITS)),
                Err(e) => rep.error(format!("p={p} seed={seed} ordinary"), e),
            }
            match signed(p, seed) {
                Ok((fam, pair)) => absorb(&mut rep, format!("p={p} seed={seed} signed"), theta_suite("integrality", &fam, Some(&pair), DIGITS)),
                Err(e) => rep.error(format!("p={p} seed={seed} signed"), e),
            }
        }
        for seed in 1..=3 {
            let mut s = growth_suite(p, PRECISION, N_MAX, seed);
            s.suite = format!("p={p} seed={seed} {}", s.suite);
            rep.absorb(s);
        }
    }
    rep
}

fn main() {
    let outcomes = vec![
        run(1, "theta/L round trip", 10, reconstruct),
        run(2, "interpolation at every character", 30, interpolation),
        run(3, "C_n ledger on 20 non-anomalous parameter sets", 60, ledger),
        run(4, "signed trace relations and congruences", 30, signed_suite),
        run(5, "Fitting ideal oracle", 60, fitting),
        run(6, "phi-module and pairing identities", 30, appendix),
        run(7, "modular symbols end to end", 300, modsym),
        run(8, "integrality and growth ledgers", 60, integrality),
    ];
    for o in &outcomes {
        println!("{}", o.line());
    }
    for o in outcomes.iter().filter(|o| !o.passed()) {
        for f in o.report.failed.iter().chain(&o.report.indeterminate).take(5) {
            println!("  [{}] {}: expected {}, got {}", o.id, f.case, f.expected, f.got);
        }
    }
    if !outcomes.iter().all(Outcome::passed) {
        std::process::exit(1);
    }
}
