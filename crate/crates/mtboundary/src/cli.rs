//! Command-line front end. `run` never touches the process: it returns the
//! exit code and the text for stdout and stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::boundary::{
    analyze, build_algebra, check_f_shape, orbit_check, reference_lmhs, render_diagram, render_verdicts, validate_cone,
    AnalysisInput, AnalysisOptions, BoundaryReport, Classification, HodgeCount, OrbitReport, SCHEMA_VERSION,
};
use crate::boundary::report::hodge_counts;
use crate::corpus::{self, Mismatch, FIXTURE_NAMES};
use crate::error::Error;
use crate::liealg::AlgebraValidation;

#[derive(Parser, Debug)]
#[command(name = "mtboundary", version, about = "Boundary components of Mumford-Tate domains, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Flags {
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the sign in B(x, y) = sign·Tr(xy).
    #[arg(long = "sign-b", global = true, allow_hyphen_values = true, value_parser = parse_sign)]
    sign_b: Option<i32>,
    /// Analyze F even if it does not span a nilpotent orbit.
    #[arg(long, global = true)]
    skip_orbit_check: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the algebra, the cone and F, and run the nilpotent-orbit test.
    Validate { input: PathBuf, #[command(flatten)] flags: Flags },
    /// Full boundary-component report.
    Analyze { input: PathBuf, #[command(flatten)] flags: Flags },
    /// I^{p,q} dot diagrams for V and the adjoint representation.
    Diagram { input: PathBuf, #[command(flatten)] flags: Flags },
    /// Classification verdicts only.
    Classify { input: PathBuf, #[command(flatten)] flags: Flags },
    /// Run built-in fixtures (all, or the named ones); `corpus export NAME`
    /// prints a fixture's input.
    Corpus { names: Vec<String>, #[command(flatten)] flags: Flags },
}

fn parse_sign(s: &str) -> std::result::Result<i32, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err("must be +1 or -1".into()),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// 2 for malformed input, 1 for inputs that are well formed but fail a
/// mathematical requirement.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Schema { .. }
        | Error::Domain(_)
        | Error::DiscriminantMismatch(..)
        | Error::Dimension(_)
        | Error::NotNilpotent
        | Error::NotHermitian
        | Error::NotInAlgebra(_)
        | Error::Algebra(_)
        | Error::Cone(_) => 2,
        Error::DivisionByZero | Error::Mhs(_) | Error::NoSolution(_) | Error::Internal(_) => 1,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Schema { .. } => "schema",
        Error::Domain(_) => "domain",
        Error::DiscriminantMismatch(..) => "discriminant_mismatch",
        Error::DivisionByZero => "division_by_zero",
        Error::Dimension(_) => "dimension",
        Error::NotNilpotent => "not_nilpotent",
        Error::NotHermitian => "not_hermitian",
        Error::NotInAlgebra(_) => "not_in_algebra",
        Error::Algebra(_) => "algebra",
        Error::Cone(_) => "cone",
        Error::Mhs(_) => "mhs",
        Error::NoSolution(_) => "no_solution",
        Error::Internal(_) => "internal",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub kind: String,
    pub pointer: Option<String>,
    pub message: String,
}

impl ErrorReport {
    pub fn new(e: &Error) -> Self {
        let pointer = match e {
            Error::Schema { pointer, .. } => Some(pointer.clone()),
            _ => None,
        };
        ErrorReport { schema_version: SCHEMA_VERSION, kind: error_kind(e).into(), pointer, message: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub schema_version: u32,
    pub watermark: Option<String>,
    pub algebra: AlgebraValidation,
    pub cone_rank: usize,
    pub center: i32,
    /// dim F^p for each p where F jumps.
    pub filtration: Vec<(i32, usize)>,
    pub orbit: Option<OrbitReport>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.orbit.as_ref().is_none_or(|o| o.nilpotent_orbit)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        if let Some(w) = &self.watermark {
            let _ = writeln!(s, "*** {w} ***");
        }
        let a = &self.algebra;
        let _ = writeln!(s, "algebra: ok, dim {} on V of dim {}", a.dim, a.ambient_dim);
        let _ = writeln!(s, "cone: ok, rank {}, W centered at {}", self.cone_rank, self.center);
        let f = self.filtration.iter().map(|(p, d)| format!("F^{p}:{d}")).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "filtration: ok, {f}");
        match &self.orbit {
            Some(o) if o.nilpotent_orbit => {
                let _ = writeln!(s, "nilpotent orbit: yes (level {})", o.level);
            }
            Some(o) => {
                let _ = writeln!(s, "nilpotent orbit: no");
                for f in o.failures() {
                    let _ = writeln!(s, "  failure: {f}");
                }
            }
            None => {
                let _ = writeln!(s, "nilpotent orbit: not checked");
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub schema_version: u32,
    pub watermark: Option<String>,
    pub v: Vec<HodgeCount>,
    pub adjoint: Vec<HodgeCount>,
}

impl DiagramReport {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        if let Some(w) = &self.watermark {
            let _ = writeln!(s, "*** {w} ***");
        }
        s.push_str("I^(p,q) on V\n");
        s.push_str(&render_diagram(&self.v));
        s.push_str("I^(p,q) on g\n");
        s.push_str(&render_diagram(&self.adjoint));
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub schema_version: u32,
    pub watermark: Option<String>,
    pub classification: Classification,
}

impl ClassifyReport {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        if let Some(w) = &self.watermark {
            let _ = writeln!(s, "*** {w} ***");
        }
        s.push_str(&render_verdicts(&self.classification));
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub title: String,
    pub nilpotent_orbit: bool,
    pub summary: Option<String>,
    pub mismatches: Vec<Mismatch>,
    pub error: Option<String>,
}

impl CorpusEntry {
    pub fn passed(&self) -> bool {
        self.nilpotent_orbit && self.mismatches.is_empty() && self.error.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub schema_version: u32,
    pub fixtures: Vec<CorpusEntry>,
}

impl CorpusReport {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for e in &self.fixtures {
            let _ = writeln!(s, "{}: {} ({})", e.name, if e.passed() { "ok" } else { "FAIL" }, e.title);
            if let Some(err) = &e.error {
                let _ = writeln!(s, "  error: {err}");
            }
            if !e.nilpotent_orbit && e.error.is_none() {
                let _ = writeln!(s, "  F does not span a nilpotent orbit");
            }
            if let Some(sum) = &e.summary {
                let _ = writeln!(s, "  verdict: {sum}");
            }
            for m in &e.mismatches {
                let actual = m.actual.as_ref().map_or("missing".to_string(), |v| v.to_string());
                let _ = writeln!(s, "  mismatch {}: expected {}, got {}", m.key, m.expected, actual);
            }
        }
        let ok = self.fixtures.iter().filter(|e| e.passed()).count();
        let _ = writeln!(s, "{ok}/{} fixtures match", self.fixtures.len());
        s
    }
}

pub fn run_fixture(name: &str) -> crate::Result<CorpusEntry> {
    let fx = corpus::build(name)?;
    let mut entry = CorpusEntry {
        name: fx.name.into(),
        title: fx.title.into(),
        nilpotent_orbit: false,
        summary: None,
        mismatches: Vec::new(),
        error: None,
    };
    match analyze(&fx.input, AnalysisOptions::default()) {
        Ok(a) => {
            entry.nilpotent_orbit = a.is_nilpotent_orbit();
            let report = BoundaryReport::from_analysis(&a);
            entry.summary = Some(report.classification.summary.clone());
            entry.mismatches = corpus::diff(&fx, &report);
        }
        Err(e) => entry.error = Some(e.to_string()),
    }
    Ok(entry)
}

fn read_input(path: &Path) -> crate::Result<AnalysisInput> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::Parse(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    };
    AnalysisInput::from_json_str(&text)
}

fn options(flags: &Flags) -> AnalysisOptions {
    AnalysisOptions { sign_b: flags.sign_b, skip_orbit_check: flags.skip_orbit_check }
}

fn watermark(flags: &Flags) -> Option<String> {
    flags.skip_orbit_check.then(|| "NOT A NILPOTENT ORBIT".to_string())
}

fn emit<T: Serialize>(flags: &Flags, value: &T, text: String, code: i32) -> Outcome {
    let body = if flags.json { serde_json::to_string_pretty(value).expect("report serializes") + "\n" } else { text };
    match &flags.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome { code, ..Default::default() },
            Err(e) => Outcome { code: 2, stderr: format!("error: cannot write {}: {e}\n", path.display()), ..Default::default() },
        },
        None => Outcome { code, stdout: body, ..Default::default() },
    }
}

fn fail(flags: &Flags, e: &Error) -> Outcome {
    let stdout = if flags.json {
        serde_json::to_string_pretty(&ErrorReport::new(e)).expect("error serializes") + "\n"
    } else {
        String::new()
    };
    Outcome { code: exit_code(e), stdout, stderr: format!("error: {e}\n") }
}

fn validate(input: &AnalysisInput, flags: &Flags) -> crate::Result<ValidationReport> {
    let g = build_algebra(&input.algebra, input.discriminant, flags.sign_b)?;
    let algebra = g.validate();
    if !algebra.passed() {
        return Err(Error::Algebra(format!("algebra fails validation: {algebra:?}")));
    }
    let center = input.center.unwrap_or(g.weight());
    let cone = validate_cone(&g, &input.cone, center)?;
    let f = input.filtration(g.ambient_dim())?;
    check_f_shape(&g, &f)?;
    let filtration = f.steps().iter().map(|(p, s)| (*p, s.dim())).filter(|(_, d)| *d > 0).collect();
    let orbit = if flags.skip_orbit_check { None } else { Some(orbit_check(&g, &cone, &f)?) };
    Ok(ValidationReport { schema_version: SCHEMA_VERSION, watermark: watermark(flags), algebra, cone_rank: cone.rank(), center, filtration, orbit })
}

fn diagram(input: &AnalysisInput, flags: &Flags) -> crate::Result<DiagramReport> {
    let g = build_algebra(&input.algebra, input.discriminant, flags.sign_b)?;
    let center = input.center.unwrap_or(g.weight());
    let cone = validate_cone(&g, &input.cone, center)?;
    let f = input.filtration(g.ambient_dim())?;
    check_f_shape(&g, &f)?;
    if !flags.skip_orbit_check {
        let o = orbit_check(&g, &cone, &f)?;
        if !o.nilpotent_orbit {
            return Err(Error::Mhs(format!("F does not span a nilpotent orbit: {}", o.failures().join("; "))));
        }
    }
    let r = reference_lmhs(&g, &cone, &f)?;
    Ok(DiagramReport {
        schema_version: SCHEMA_VERSION,
        watermark: watermark(flags),
        v: hodge_counts(&r.bigrading_v),
        adjoint: hodge_counts(&r.adjoint),
    })
}

fn corpus_cmd(names: &[String], flags: &Flags) -> Outcome {
    if names.first().map(String::as_str) == Some("export") {
        let [_, name] = names else {
            return fail(flags, &Error::Domain("usage: corpus export NAME".into()));
        };
        return match corpus::build(name) {
            Ok(fx) => {
                let body = fx.input.to_json_pretty() + "\n";
                match &flags.out {
                    Some(path) => match std::fs::write(path, &body) {
                        Ok(()) => Outcome::default(),
                        Err(e) => Outcome { code: 2, stderr: format!("error: cannot write {}: {e}\n", path.display()), ..Default::default() },
                    },
                    None => Outcome { stdout: body, ..Default::default() },
                }
            }
            Err(e) => fail(flags, &e),
        };
    }
    let selected: Vec<String> = if names.is_empty() { FIXTURE_NAMES.iter().map(|s| s.to_string()).collect() } else { names.to_vec() };
    if let Some(bad) = selected.iter().find(|n| !FIXTURE_NAMES.contains(&n.as_str())) {
        return fail(flags, &Error::Domain(format!("unknown fixture {bad:?}; known: {}", FIXTURE_NAMES.join(", "))));
    }
    let fixtures: Vec<CorpusEntry> = std::thread::scope(|s| {
        let handles: Vec<_> = selected.iter().map(|n| s.spawn(move || run_fixture(n).expect("name was checked"))).collect();
        handles.into_iter().map(|h| h.join().expect("fixture thread panicked")).collect()
    });
    let report = CorpusReport { schema_version: SCHEMA_VERSION, fixtures };
    let code = if report.fixtures.iter().all(CorpusEntry::passed) { 0 } else { 1 };
    let text = report.render_text();
    emit(flags, &report, text, code)
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, ..Default::default() }
            } else {
                Outcome { code, stderr: text, ..Default::default() }
            };
        }
    };
    match cli.command {
        Command::Corpus { names, flags } => corpus_cmd(&names, &flags),
        Command::Validate { input, flags } => {
            let r = read_input(&input).and_then(|i| validate(&i, &flags));
            match r {
                Ok(rep) => {
                    let code = if rep.passed() { 0 } else { 1 };
                    let text = rep.render_text();
                    emit(&flags, &rep, text, code)
                }
                Err(e) => fail(&flags, &e),
            }
        }
        Command::Analyze { input, flags } => {
            match read_input(&input).and_then(|i| analyze(&i, options(&flags))) {
                Ok(a) => {
                    let rep = BoundaryReport::from_analysis(&a);
                    let code = if rep.criteria_pass() { 0 } else { 1 };
                    let text = rep.render_text();
                    emit(&flags, &rep, text, code)
                }
                Err(e) => fail(&flags, &e),
            }
        }
        Command::Diagram { input, flags } => match read_input(&input).and_then(|i| diagram(&i, &flags)) {
            Ok(rep) => {
                let text = rep.render_text();
                emit(&flags, &rep, text, 0)
            }
            Err(e) => fail(&flags, &e),
        },
        Command::Classify { input, flags } => {
            match read_input(&input).and_then(|i| analyze(&i, options(&flags))) {
                Ok(a) => {
                    let rep = BoundaryReport::from_analysis(&a);
                    let code = if rep.criteria_pass() { 0 } else { 1 };
                    let c = ClassifyReport { schema_version: SCHEMA_VERSION, watermark: rep.watermark, classification: rep.classification };
                    let text = c.render_text();
                    emit(&flags, &c, text, code)
                }
                Err(e) => fail(&flags, &e),
            }
        }
    }
}
