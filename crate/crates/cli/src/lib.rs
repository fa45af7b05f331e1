//! Command-line front end: synthesis, verification suites, Fitting-ideal
//! queries and the elliptic-curve pipeline, all with JSON input and output.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use theta_forge::fitting::{fitting_generators, Ideal, Membership, PresentationJson, PresentationMatrix, QuotientRing};
use theta_forge::iwalg::{CharacterSpec, GroupRingElem, GroupRingJson};
use theta_forge::modsym::{eigen_symbol, mazur_tate, ord_report, project_gn, CurveJson, EllipticCurve};
use theta_forge::padic::ring::{DEFAULT_PRECISION, PRECISION_ENV};
use theta_forge::padic::{default_precision, Ring, RingSpec};
use theta_forge::phimod::appendix_suite;
use theta_forge::report::SuiteReport;
use theta_forge::suites::{all_suites, synth_ordinary, synth_signed, theta_suite, THETA_SUITES};
use theta_forge::theta::{thetas_at, FamilyJson, LFamily, SignedPair};
use theta_forge::Error;

/// Exit code for unreadable or malformed input.
pub const EXIT_PARSE: i32 = 2;
/// Exit code for evaluation errors.
pub const EXIT_FAIL: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "theta-forge", version, about = "Theta elements, pairings, Fitting ideals and Mazur-Tate elements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded synthetic family (ordinary over Z_p, signed over Z_p[sqrt(-p)]).
    Synth(Common),
    /// Theta elements of a family.
    #[command(subcommand)]
    Theta(ThetaCmd),
    /// Finite-level pairings and phi-module identities.
    #[command(subcommand)]
    Pairing(PairingCmd),
    /// Fitting ideals of presentations.
    #[command(subcommand)]
    Fitt(FittCmd),
    /// Mazur-Tate elements of elliptic curves.
    #[command(subcommand)]
    Ec(EcCmd),
    /// Combined suites.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Debug, Subcommand)]
pub enum ThetaCmd {
    /// Theta elements of the family at levels `0..=n-max`, or at `--n` only.
    Build(Common),
    /// One verification suite on a family from `--in` or synthesized from the seed.
    Verify(Common),
}

#[derive(Debug, Subcommand)]
pub enum PairingCmd {
    Verify(Common),
}

#[derive(Debug, Subcommand)]
pub enum FittCmd {
    /// Generators of the Fitting ideal of `{"presentation"}` or a bare presentation.
    Gens(Common),
    /// Membership of `{"element"}` in the Fitting ideal of `{"presentation"}`.
    Member(Common),
    /// Containment of the ideal `{"ideal"}` in the Fitting ideal of `{"presentation"}`.
    Contains(Common),
}

#[derive(Debug, Subcommand)]
pub enum EcCmd {
    /// `theta_{E, p^{n+1}}` and its image in `Q[G_n]`.
    Theta(Common),
    /// Order of vanishing of `Theta_n(E)` at `--char`.
    Ord(Common),
}

#[derive(Debug, Subcommand)]
pub enum SuiteCmd {
    All(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    /// `Z_p`, ordinary families.
    Zp,
    /// `Z_p[sqrt(-p)]`, signed families.
    SqrtNegP,
}

/// Flags shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct Common {
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    /// Working precision in digits of `p`; defaults to THETA_FORGE_PRECISION,
    /// else 40 plus 20 digits per level.
    #[arg(long)]
    pub precision: Option<i64>,
    #[arg(long = "n-max", default_value_t = 2)]
    pub n_max: u32,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = RingArg::Zp)]
    pub ring: RingArg,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub suite: Option<String>,
    /// Digits required for equality; defaults to 40, capped at half the precision.
    #[arg(long)]
    pub digits: Option<i64>,
    /// Character `trivial` or `m,k`.
    #[arg(long = "char")]
    pub character: Option<String>,
    /// Curve label for `ec` when `--in` is absent.
    #[arg(long, default_value = "11a1")]
    pub curve: String,
}

impl Common {
    pub fn precision(&self) -> i64 {
        if let Some(p) = self.precision {
            return p;
        }
        if std::env::var(PRECISION_ENV).is_ok() {
            return default_precision();
        }
        DEFAULT_PRECISION + 20 * (self.n_max as i64 + 1)
    }
    pub fn digits(&self) -> i64 {
        self.digits.unwrap_or((self.precision() / 2).clamp(1, 40))
    }
}

impl Cli {
    pub fn common(&self) -> &Common {
        match &self.command {
            Command::Synth(c) => c,
            Command::Theta(ThetaCmd::Build(c) | ThetaCmd::Verify(c)) => c,
            Command::Pairing(PairingCmd::Verify(c)) => c,
            Command::Fitt(FittCmd::Gens(c) | FittCmd::Member(c) | FittCmd::Contains(c)) => c,
            Command::Ec(EcCmd::Theta(c) | EcCmd::Ord(c)) => c,
            Command::Suite(SuiteCmd::All(c)) => c,
        }
    }
}

/// A failure with its exit code.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Run(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Run(_) => EXIT_FAIL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(s) => write!(f, "input: {s}"),
            CliError::Run(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Json(_) | Error::Invalid(_) | Error::InvalidRing(_) | Error::InvalidCharacter(_) => CliError::Parse(e.to_string()),
            other => CliError::Run(other.to_string()),
        }
    }
}

/// JSON output with its exit code.
pub struct Output {
    pub json: String,
    pub code: i32,
}

fn to_json<T: Serialize>(x: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(x).map_err(|e| CliError::Run(e.to_string()))
}

fn report(rep: &SuiteReport) -> Result<Output, CliError> {
    Ok(Output { json: to_json(rep)?, code: rep.exit_code() })
}

fn ok<T: Serialize>(x: &T) -> Result<Output, CliError> {
    Ok(Output { json: to_json(x)?, code: 0 })
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn require_input(c: &Common) -> Result<&Path, CliError> {
    c.input.as_deref().ok_or_else(|| CliError::Parse("--in is required".into()))
}

/// Writes `json` to `out`, or to standard output.
pub fn emit(json: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, format!("{json}\n")).map_err(|e| CliError::Run(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{json}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Run(e.to_string())),
                _ => Ok(()),
            }
        }
    }
}

/// `L^{++}` and `L^{--}` of a signed family.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SignedJson {
    pub lpp: GroupRingJson,
    pub lmm: GroupRingJson,
}

/// Output of `synth` and input of `theta build|verify`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SynthJson {
    pub family: FamilyJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signed: Option<SignedJson>,
}

fn synthesize(c: &Common) -> Result<(LFamily, Option<SignedPair>), CliError> {
    Ok(match c.ring {
        RingArg::Zp => (synth_ordinary(c.p, c.precision(), c.n_max, c.seed)?, None),
        RingArg::SqrtNegP => {
            let (f, s) = synth_signed(c.p, c.precision(), c.n_max, c.seed)?;
            (f, Some(s))
        }
    })
}

fn load_family(c: &Common) -> Result<(LFamily, Option<SignedPair>), CliError> {
    let Some(path) = c.input.as_deref() else { return synthesize(c) };
    let j: SynthJson = read_json(path)?;
    let fam = LFamily::from_json(&j.family)?;
    let pair = match &j.signed {
        Some(s) => {
            let r = fam.ring();
            Some(SignedPair { lpp: GroupRingElem::from_json(r, &s.lpp)?, lmm: GroupRingElem::from_json(r, &s.lmm)? })
        }
        None => None,
    };
    Ok((fam, pair))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PresentationInput {
    Wrapped { presentation: PresentationJson },
    Bare(PresentationJson),
}

#[derive(Deserialize)]
struct MemberInput {
    presentation: PresentationJson,
    element: Vec<String>,
}

#[derive(Deserialize)]
struct ContainsInput {
    presentation: PresentationJson,
    ideal: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct GensOutput {
    ring: theta_forge::fitting::QuotientSpec,
    generators: Vec<Vec<String>>,
    length: u64,
}

fn membership(m: Membership) -> Result<Output, CliError> {
    let code = if matches!(m, Membership::Indeterminate) { 3 } else { 0 };
    Ok(Output { json: to_json(&m)?, code })
}

fn load_curve(c: &Common) -> Result<EllipticCurve, CliError> {
    match c.input.as_deref() {
        Some(path) => {
            let j: CurveJson = read_json(path)?;
            let e = EllipticCurve::from(j);
            Ok(EllipticCurve::new([e.a1, e.a2, e.a3, e.a4, e.a6], e.conductor)?)
        }
        None => Ok(EllipticCurve::named(&c.curve)?),
    }
}

fn parse_char(c: &Common, n: u32) -> Result<CharacterSpec, CliError> {
    let s = c.character.as_deref().unwrap_or("trivial");
    if s == "trivial" {
        return Ok(CharacterSpec::trivial(n));
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::Parse(format!("--char expects `trivial` or `m,k`, got {s:?}"));
    let [m, k] = parts.as_slice() else { return Err(bad()) };
    let m: u32 = m.parse().map_err(|_| bad())?;
    let k: i64 = k.parse().map_err(|_| bad())?;
    Ok(CharacterSpec::new(c.p, n, m, k)?)
}

/// Executes a parsed command.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Synth(c) => {
            let (fam, pair) = synthesize(c)?;
            let signed = pair.map(|s| SignedJson { lpp: s.lpp.to_json(), lmm: s.lmm.to_json() });
            ok(&SynthJson { family: fam.to_json(), signed })
        }
        Command::Theta(ThetaCmd::Build(c)) => {
            let (fam, _) = load_family(c)?;
            let levels: Vec<u32> = match c.n {
                Some(n) => vec![n],
                None => (0..=fam.n_max).collect(),
            };
            let mut out = Vec::new();
            for n in levels {
                out.extend(thetas_at(&fam, n)?.iter().map(|t| t.to_json()));
            }
            ok(&out)
        }
        Command::Theta(ThetaCmd::Verify(c)) => {
            let name = c.suite.as_deref().ok_or_else(|| CliError::Parse(format!("--suite is required: one of {THETA_SUITES:?}")))?;
            let (fam, pair) = load_family(c)?;
            report(&theta_suite(name, &fam, pair.as_ref(), c.digits())?)
        }
        Command::Pairing(PairingCmd::Verify(c)) => report(&appendix_suite(c.p, c.precision(), c.n_max, c.seed, c.digits())),
        Command::Fitt(FittCmd::Gens(c)) => {
            let pres = match read_json::<PresentationInput>(require_input(c)?)? {
                PresentationInput::Wrapped { presentation } | PresentationInput::Bare(presentation) => presentation,
            };
            let pm = PresentationMatrix::from_json(&pres)?;
            let f = fitting_generators(&pm);
            ok(&GensOutput { ring: pres.ring, generators: f.gens().iter().map(QuotientRing::to_strings).collect(), length: f.length() })
        }
        Command::Fitt(FittCmd::Member(c)) => {
            let j: MemberInput = read_json(require_input(c)?)?;
            let pm = PresentationMatrix::from_json(&j.presentation)?;
            let x = pm.ring.from_strings(&j.element)?;
            membership(fitting_generators(&pm).contains(&x)?)
        }
        Command::Fitt(FittCmd::Contains(c)) => {
            let j: ContainsInput = read_json(require_input(c)?)?;
            let pm = PresentationMatrix::from_json(&j.presentation)?;
            let gens = j.ideal.iter().map(|g| pm.ring.from_strings(g)).collect::<Result<Vec<_>, _>>()?;
            let other = Ideal::new(&pm.ring, gens);
            membership(fitting_generators(&pm).contains_ideal(&other)?)
        }
        Command::Ec(EcCmd::Theta(c)) => {
            let e = load_curve(c)?;
            let sym = eigen_symbol(&e, 20)?;
            ok(&mazur_tate(&sym, c.p, c.n.unwrap_or(1))?.to_json())
        }
        Command::Ec(EcCmd::Ord(c)) => {
            let e = load_curve(c)?;
            let n = c.n.unwrap_or(1);
            let sym = eigen_symbol(&e, 20)?;
            let theta = project_gn(&mazur_tate(&sym, c.p, n)?);
            let r = Ring::new(RingSpec::zp(c.p, c.precision()))?;
            ok(&ord_report(&theta, &parse_char(c, n)?, &r)?)
        }
        Command::Suite(SuiteCmd::All(c)) => report(&all_suites(c.p, c.precision(), c.n_max, c.seed, c.digits())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("theta-forge").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults_scale_with_level() {
        let cli = parse(&["suite", "all", "--n-max", "3"]);
        let c = cli.common();
        if std::env::var(PRECISION_ENV).is_err() {
            assert_eq!(c.precision(), DEFAULT_PRECISION + 80);
        }
        assert_eq!(parse(&["synth", "--precision", "30"]).common().digits(), 15);
        assert_eq!(parse(&["synth", "--precision", "30", "--digits", "7"]).common().digits(), 7);
    }

    #[test]
    fn characters_parse_or_fail_cleanly() {
        let c = parse(&["ec", "ord", "--p", "5", "--char", "2, 1"]).common().clone();
        let chi = parse_char(&c, 1).unwrap();
        assert_eq!((chi.m, chi.n), (2, 1));
        assert!(parse_char(&parse(&["ec", "ord"]).common().clone(), 2).is_ok());
        let bad = parse(&["ec", "ord", "--char", "2"]).common().clone();
        assert!(matches!(parse_char(&bad, 1), Err(CliError::Parse(_))));
        assert!(Cli::try_parse_from(["theta-forge", "synth", "--ring", "qp"]).is_err());
    }
}
