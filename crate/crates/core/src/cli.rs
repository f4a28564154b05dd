//! The `hecke-eis` command-line driver.
//!
//! Subcommands:
//!
//! * `eval-eisenstein --base-field F --lattice "a,z,b" --s "re[,im]" [--tol T] [--method M]`
//! * `verify --suite {fourier|fe|klf|hecke|theta|special|all} [--seed N] [--jobs J] [--out FILE]`
//! * `limit-formula --K "Q(sqrtN)" [--ideal I]`
//!
//! JSON goes to stdout, human-readable lines to stderr. Exit codes: `0`
//! success, `1` a verification failed, `2` bad input, `3` numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::basefield::{FieldDescriptor, FracIdeal, QuadElement, Rat};
use crate::dalgebra::{DNumber, Quaternion};
use crate::eisenstein::{EisensteinEvaluator, Method};
use crate::error::{Error, Result};
use crate::heckeint::HeckeSetup;
use crate::lattice::OFLattice;
use crate::report::{fmt_s, params, CValue, VerificationReport};
use crate::specialfun::{gamma_f, PrecisionConfig};
use crate::suites::{run_suite, Suite, SuiteOptions};

/// Tolerance of the relative limit formula check.
pub const LIMIT_FORMULA_TOL: f64 = 1e-5;

#[derive(Parser, Debug)]
#[command(name = "hecke-eis", version, about = "Eisenstein series over number fields and Hecke's integral formula")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the completed and plain Eisenstein series of a lattice a z + b.
    EvalEisenstein(EvalArgs),
    /// Run an invariant suite and emit one JSON report per check.
    Verify(VerifyArgs),
    /// Check the relative Kronecker limit formula for a real quadratic K over Q.
    LimitFormula(LimitArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Base field: Q, Q(sqrt-1), Q(sqrt-2), Q(sqrt-3), Q(sqrt-7) or Q(sqrt-11).
    #[arg(long, default_value = "Q")]
    base_field: String,
    /// "a,z,b": ideals a and b, and z as real components (x+y over Q,
    /// x_re+x_im+y_re+y_im over an imaginary quadratic field).
    #[arg(long, allow_hyphen_values = true)]
    lattice: String,
    /// "re" or "re,im".
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    /// Target absolute tolerance (overrides HECKE_EIS_PRECISION).
    #[arg(long)]
    tol: Option<f64>,
    /// direct, expansion or auto.
    #[arg(long, default_value = "auto")]
    method: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// fourier, fe, klf, hecke, theta, special or all.
    #[arg(long)]
    suite: String,
    /// Seed for the random lattices.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximal number of worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Also write the JSON reports to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Real quadratic field, e.g. "Q(sqrt5)".
    #[arg(long = "K")]
    k: String,
    /// Ideal of K: "O" or generators "[g1, g2]" such as "[2, 1+sqrt5]".
    #[arg(long, default_value = "O")]
    ideal: String,
}

/// Output of `eval-eisenstein`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvaluationReport {
    pub command: String,
    pub field: String,
    pub parameters: std::collections::BTreeMap<String, String>,
    /// The path actually used (`direct` or `expansion`).
    pub method: String,
    /// `Ê(Λ, s)`.
    pub completed: CValue,
    /// `E(Λ, s)`.
    pub eisenstein: CValue,
    pub tolerance: f64,
    pub wall_time_ms: u64,
}

/// Exit code for an error: `2` for bad input, `3` for numerical failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidField(_)
        | Error::UnsupportedBaseField(_)
        | Error::InvalidIdeal(_)
        | Error::InvalidArgument(_) => 2,
        _ => 3,
    }
}

fn advice(e: &Error) -> Option<&'static str> {
    match e {
        Error::DirectSumDomain { .. } => Some("use --method expansion (or auto), which continues to all s"),
        Error::Pole { .. } => Some("s is a pole of the completed series; evaluate at a nearby point"),
        Error::TooManyPoints { .. } => Some("loosen --tol or use --method expansion"),
        Error::NoConvergence { .. } => Some("try the other --method or a looser --tol"),
        Error::IllConditioned(_) | Error::DegenerateLattice(_) => {
            Some("choose z with |y| bounded away from 0, or reduce it first")
        }
        _ => None,
    }
}

fn parse_err(field: &str, message: String) -> Error {
    Error::Parse { field: field.into(), message }
}

/// Parses `"re"` or `"re,im"`.
pub fn parse_s(text: &str) -> Result<Complex64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |p: &str| -> Result<f64> {
        p.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| parse_err("s", format!("not a finite number: {p:?}")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(parse_err("s", format!("expected \"re\" or \"re,im\", got {text:?}"))),
    }
}

fn parse_rat(field: &str, t: &str) -> Result<Rat> {
    t.parse::<Rat>().map_err(|_| parse_err(field, format!("not a rational number: {t:?}")))
}

/// Parses a field element `a`, `a+b*sqrtN`, `b sqrt(N)`, or `a+bi` in
/// `Q(sqrt-1)`; `N` must be the squarefree `d` of `field`.
pub fn parse_element(field: &FieldDescriptor, text: &str) -> Result<QuadElement> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let re = Regex::new(
        r"^(?P<a>[+-]?\d+(?:/\d+)?)?(?:(?P<sign>[+-])?(?P<b>\d+(?:/\d+)?)?\*?(?:sqrt\(?(?P<n>-?\d+)\)?|(?P<i>i)))?$",
    )
    .expect("static regex");
    let caps = re
        .captures(&t)
        .filter(|_| !t.is_empty())
        .ok_or_else(|| parse_err("ideal", format!("cannot read field element {text:?}")))?;
    let a = match caps.name("a") {
        Some(m) => parse_rat("ideal", m.as_str())?,
        None => Rat::from_integer(0),
    };
    let has_root = caps.name("n").is_some() || caps.name("i").is_some();
    if !has_root {
        return Ok(QuadElement::rational(field.d(), a));
    }
    if caps.name("a").is_some() && caps.name("sign").is_none() {
        return Err(parse_err("ideal", format!("missing sign before the root in {text:?}")));
    }
    let n = match caps.name("n") {
        Some(m) => m.as_str().parse::<i64>().map_err(|_| parse_err("ideal", format!("bad radicand in {text:?}")))?,
        None => -1,
    };
    if field.is_rational() || n != field.d() {
        return Err(parse_err("ideal", format!("sqrt({n}) does not lie in {field}")));
    }
    let mut b = match caps.name("b") {
        Some(m) => parse_rat("ideal", m.as_str())?,
        None => Rat::from_integer(1),
    };
    if caps.name("sign").map(|m| m.as_str()) == Some("-") {
        b = -b;
    }
    // a + b√d in the basis {1, ω}
    if field.d().rem_euclid(4) == 1 {
        Ok(field.element(a - b, b * Rat::from_integer(2)))
    } else {
        Ok(field.element(a, b))
    }
}

/// Splits at commas that are not inside brackets.
fn split_top_level(text: &str) -> Vec<String> {
    let mut parts = vec![String::new()];
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            parts.push(String::new());
        } else {
            parts.last_mut().expect("nonempty").push(ch);
        }
    }
    parts
}

/// Parses an ideal: `O`, a single generator (a rational over `Q`), or a
/// bracketed generator list `[g1, g2]` (`;` also separates).
pub fn parse_ideal(field: &FieldDescriptor, text: &str) -> Result<FracIdeal> {
    let t = text.trim();
    if t == "O" || t == "Z" {
        return Ok(FracIdeal::unit(field));
    }
    let inner = if (t.starts_with('[') && t.ends_with(']')) || (t.starts_with('(') && t.ends_with(')')) {
        &t[1..t.len() - 1]
    } else {
        t
    };
    let gens = inner
        .split([',', ';'])
        .map(|g| parse_element(field, g))
        .collect::<Result<Vec<_>>>()?;
    if field.is_rational() {
        if gens.len() != 1 {
            return Err(parse_err("ideal", format!("an ideal of Q is given by one rational, got {text:?}")));
        }
        return FracIdeal::rational(gens[0].a);
    }
    if gens.iter().all(|g| g.is_zero()) {
        return Err(parse_err("ideal", format!("the zero ideal is not allowed: {text:?}")));
    }
    FracIdeal::generated_by(field, &gens)
}

/// Parses the real components of `z` (signed decimals written one after
/// the other, e.g. `0.3+1.2` or `0.1-0.2+0.9+0.05`).
pub fn parse_z(field: &FieldDescriptor, text: &str) -> Result<DNumber> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let re = Regex::new(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?").expect("static regex");
    let mut comps = Vec::new();
    let mut end = 0;
    for m in re.find_iter(&t) {
        if m.start() != end || (end > 0 && !m.as_str().starts_with(['+', '-'])) {
            return Err(parse_err("lattice", format!("cannot read z components from {text:?}")));
        }
        end = m.end();
        comps.push(m.as_str().parse::<f64>().map_err(|_| parse_err("lattice", format!("bad number in {text:?}")))?);
    }
    if end != t.len() || comps.is_empty() {
        return Err(parse_err("lattice", format!("cannot read z components from {text:?}")));
    }
    match (field.is_rational(), comps.as_slice()) {
        (true, [x, y]) => Ok(DNumber::complex(Complex64::new(*x, *y))),
        (false, [a, b, c, d]) => Ok(DNumber::quaternion(Quaternion::new(Complex64::new(*a, *b), Complex64::new(*c, *d)))),
        _ => Err(parse_err(
            "lattice",
            format!(
                "z needs {} components over {field}, got {} in {text:?}",
                if field.is_rational() { 2 } else { 4 },
                comps.len()
            ),
        )),
    }
}

/// Parses `"a,z,b"` into the lattice `a z + b` over `field`.
pub fn parse_lattice(field: &FieldDescriptor, text: &str) -> Result<OFLattice> {
    let parts = split_top_level(text);
    if parts.len() != 3 {
        return Err(parse_err("lattice", format!("expected \"a,z,b\", got {text:?}")));
    }
    let a = parse_ideal(field, &parts[0]).map_err(|e| relabel(e, "lattice"))?;
    let z = parse_z(field, &parts[1])?;
    let b = parse_ideal(field, &parts[2]).map_err(|e| relabel(e, "lattice"))?;
    OFLattice::new(field, a, b, z)
}

fn relabel(e: Error, field: &str) -> Error {
    match e {
        Error::Parse { message, .. } => Error::Parse { field: field.into(), message },
        other => other,
    }
}

fn parse_field(text: &str, arg: &str) -> Result<FieldDescriptor> {
    FieldDescriptor::parse(text).map_err(|e| relabel(e, arg))
}

fn precision(tol: Option<f64>) -> Result<PrecisionConfig> {
    let cfg = PrecisionConfig::from_env()?;
    match tol {
        Some(t) => cfg.with_tol(t),
        None => Ok(cfg),
    }
}

/// `eval-eisenstein`.
pub fn eval_eisenstein(
    base_field: &str,
    lattice: &str,
    s: &str,
    tol: Option<f64>,
    method: &str,
) -> Result<EvaluationReport> {
    let start = Instant::now();
    let field = parse_field(base_field, "base-field")?;
    field.require_base()?;
    let lat = parse_lattice(&field, lattice)?;
    let s_val = parse_s(s)?;
    let method: Method = method.parse()?;
    let cfg = precision(tol)?;
    let ev = EisensteinEvaluator::new(lat, &cfg)?;
    let used = match method {
        Method::Auto if s_val.re > crate::eisenstein::DIRECT_MIN_RE => Method::Direct,
        Method::Auto => Method::Expansion,
        m => m,
    };
    let completed = ev.completed(s_val, used)?;
    let eisenstein = completed / gamma_f(&field, s_val * 2.0)?;
    Ok(EvaluationReport {
        command: "eval-eisenstein".into(),
        field: field.to_string(),
        parameters: params([("lattice", lattice.to_string()), ("s", fmt_s(s_val)), ("method", method.to_string())]),
        method: used.to_string(),
        completed: completed.into(),
        eisenstein: eisenstein.into(),
        tolerance: cfg.tol(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// `limit-formula`.
pub fn limit_formula(k: &str, ideal: &str) -> Result<VerificationReport> {
    let start = Instant::now();
    let field = parse_field(k, "K")?;
    if !field.is_real_quadratic() {
        return Err(Error::InvalidField(format!(
            "{field} is not real quadratic; the relative limit formula needs a real quadratic K"
        )));
    }
    let a = parse_ideal(&field, ideal)?;
    let cfg = precision(None)?;
    let r = HeckeSetup::new(&field, &a, &cfg)?.relative_klf()?;
    let terms = [
        ("ctXiF", r.ct_xi_f_term),
        ("logNorm", r.log_norm_term),
        ("quadrature", r.quadrature_term),
        ("cK", r.c_k),
        ("cKFromMeasure", r.c_k_from_measure),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    let mut report = VerificationReport::new(
        "limit-formula",
        "relative-klf",
        &field.to_string(),
        params([("ideal", ideal.to_string()), ("a", "Z".into()), ("b", "Z".into())]),
        r.lhs.into(),
        r.rhs.into(),
        LIMIT_FORMULA_TOL,
    )
    .with_terms(terms);
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn fail(stderr: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    if let Some(hint) = advice(e) {
        let _ = writeln!(stderr, "hint: {hint}");
    }
    exit_code(e)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

/// Runs the driver on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match cli.command {
        Command::EvalEisenstein(a) => match eval_eisenstein(&a.base_field, &a.lattice, &a.s, a.tol, &a.method) {
            Ok(r) => {
                let _ = writeln!(stderr, "field      {}", r.field);
                let _ = writeln!(stderr, "method     {}", r.method);
                let _ = writeln!(stderr, "Ê(Λ, s)    {:.15e} {:+.15e}i", r.completed.re, r.completed.im);
                let _ = writeln!(stderr, "E(Λ, s)    {:.15e} {:+.15e}i", r.eisenstein.re, r.eisenstein.im);
                let _ = writeln!(stdout, "{}", to_json(&r));
                0
            }
            Err(e) => fail(stderr, &e),
        },
        Command::Verify(a) => {
            let suite: Suite = match a.suite.parse() {
                Ok(s) => s,
                Err(e) => return fail(stderr, &e),
            };
            let precision = match precision(None) {
                Ok(p) => p,
                Err(e) => return fail(stderr, &e),
            };
            let opts = SuiteOptions { seed: a.seed, jobs: a.jobs, precision };
            let reports = match run_suite(suite, &opts) {
                Ok(r) => r,
                Err(e) => return fail(stderr, &e),
            };
            for r in &reports {
                let _ = writeln!(stderr, "{}", r.summary_line());
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            let _ = writeln!(stderr, "{} checks, {} failed", reports.len(), failed);
            let json = to_json(&reports);
            if let Some(path) = &a.out {
                if let Err(e) = std::fs::write(path, format!("{json}\n")) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return 3;
                }
            }
            let _ = writeln!(stdout, "{json}");
            if failed == 0 {
                0
            } else {
                1
            }
        }
        Command::LimitFormula(a) => match limit_formula(&a.k, &a.ideal) {
            Ok(r) => {
                let _ = writeln!(stderr, "{}", r.summary_line());
                let _ = writeln!(stdout, "{}", to_json(&r));
                if r.pass {
                    0
                } else {
                    1
                }
            }
            Err(e) => fail(stderr, &e),
        },
    }
}
