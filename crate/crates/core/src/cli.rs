//! The `weylmod` command-line interface.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{default_eps, fmt_q, FieldDescriptor, Mat, Q};
use crate::error::{Error, Result};
use crate::families::{default_points, purity_scan, rigidity_check, specialize, FamilyWDRep, RigidityReport, RigidityVerdict};
use crate::io::{
    canonical_string, filtration_to_json, parse_json, parse_scalar, purity_to_json, rep_from_json, rep_to_json,
    rigidity_from_json, rigidity_to_json, signature_to_json, weight_to_json,
};
use crate::schur::Partition;
use crate::wd::{
    fmt_charpoly, frss_signature, monodromy_filtration, purity_check, wd_schur, wd_validate, Filtration, PurityReport,
    Signature, WDRep, WeightSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RIGIDITY_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CERTIFICATION: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "weylmod", version, about = "Weil-Deligne representations, Schur functors and purity scans")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every invariant of a representation.
    Validate { input: PathBuf },
    /// Apply a Schur functor.
    Schur {
        #[arg(long)]
        partition: Partition,
        input: PathBuf,
    },
    /// Signature of the Frobenius-semisimplification.
    Frss { input: PathBuf },
    /// Monodromy filtration of the nilpotent operator.
    Filtration { input: PathBuf },
    /// Certified purity check.
    Purity {
        /// An integer weight, or `infer`.
        #[arg(long, default_value = "infer", allow_hyphen_values = true)]
        weight: WeightSpec,
        /// Width bound for root-modulus intervals, e.g. `10^-30`.
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        input: PathBuf,
    },
    /// Evaluate a Q(t) family at a rational point.
    Specialize {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        input: PathBuf,
    },
    /// Purity scan of a family followed by the rigidity verdict.
    Scan {
        #[arg(long)]
        partition: Partition,
        /// Comma-separated inclusive integer ranges `a..b` and rationals;
        /// defaults to -25..25.
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        #[arg(long, default_value = "infer", allow_hyphen_values = true)]
        weight: WeightSpec,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        input: PathBuf,
    },
    /// Re-check the verdict of a saved scan report.
    Rigidity { input: PathBuf },
}

/// Parses point lists such as `-5..5,1/2,7`: inclusive integer ranges and
/// rationals, returned sorted without duplicates.
pub fn parse_points(spec: &str) -> Result<Vec<Q>> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let bad = || Error::parse("--points", format!("invalid range {item:?}"));
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            if hi < lo || hi - lo > 100_000 {
                return Err(bad());
            }
            out.extend((lo..=hi).map(|a| Q::from_integer(a.into())));
        } else {
            out.push(parse_rational(item, "--points")?);
        }
    }
    if out.is_empty() {
        return Err(Error::parse("--points", "no points given"));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn parse_rational(s: &str, loc: &str) -> Result<Q> {
    parse_scalar(s, &FieldDescriptor::Q)
        .map_err(|m| Error::parse(loc, m))?
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::parse(loc, "expected a rational number"))
}

fn parse_eps(s: Option<&str>) -> Result<Q> {
    match s {
        None => Ok(default_eps()),
        Some(s) => {
            let e = parse_rational(s, "--eps")?;
            if !e.is_positive() {
                return Err(Error::parse("--eps", "must be positive"));
            }
            Ok(e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CertificationFailed { .. } => EXIT_CERTIFICATION,
        _ => EXIT_INPUT,
    }
}

struct Outcome {
    result: Value,
    table: String,
    diagnostics: Vec<String>,
    code: i32,
}

impl Outcome {
    fn ok(result: Value, table: String) -> Self {
        Self {
            result,
            table,
            diagnostics: Vec::new(),
            code: EXIT_OK,
        }
    }
}

fn read_input(path: &Path) -> Result<(String, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    Ok((text, bytes))
}

fn load_rep(text: &str) -> Result<WDRep> {
    let rho = rep_from_json(&parse_json(text)?)?;
    wd_validate(&rho).map_err(Error::Validation)?;
    Ok(rho)
}

fn load_family(text: &str) -> Result<FamilyWDRep> {
    FamilyWDRep::new(load_rep(text)?)
}

fn rep_table(rho: &WDRep) -> String {
    let mut s = format!("q: {}\nfield: {}\ndim: {}\n", rho.q(), rho.field(), rho.dim());
    let _ = write!(s, "phi:\n{}nilp:\n{}", indent(rho.phi()), indent(rho.nilp()));
    for g in rho.inertia() {
        let _ = write!(s, "inertia {}:\n{}", g.label, indent(&g.matrix));
    }
    s
}

fn indent(m: &Mat) -> String {
    m.to_rows()
        .iter()
        .map(|r| format!("  [{}]\n", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect()
}

pub fn signature_table(sig: &Signature) -> String {
    if sig.is_empty() {
        return "(zero representation)\n".into();
    }
    sig.to_string()
}

fn signature_inline(sig: &Signature) -> String {
    if sig.is_empty() {
        return "0".into();
    }
    sig.to_string().trim_end().replace('\n', " + ")
}

fn purity_table(r: &PurityReport) -> String {
    let mut s = format!("verdict: {}\n", r.verdict.as_str());
    let _ = writeln!(s, "weight: {}", r.weight.map_or("none".into(), |w| w.to_string()));
    for g in &r.per_graded {
        let target = g.target_weight.map_or("none".into(), |w| w.to_string());
        let _ = writeln!(
            s,
            "gr_{} (dim {}): charpoly {}, target weight {}, {}",
            g.k,
            g.dim,
            fmt_charpoly(&g.charpoly),
            target,
            if g.pure { "ok" } else { "fails" }
        );
    }
    s
}

fn filtration_table(f: &Filtration) -> String {
    let mut s = format!("dim: {}\n", f.dim());
    for (k, basis) in f.steps() {
        let _ = writeln!(s, "M_{k}: dim {}", basis.cols());
    }
    for (k, d) in f.graded_dims() {
        let _ = writeln!(s, "gr_{k}: dim {d}");
    }
    s
}

pub fn rigidity_table(r: &RigidityReport) -> String {
    let mut s = format!("partition: {}\nweight: {}\n", r.mu, r.weight);
    let _ = writeln!(s, "generic signature: {}", signature_inline(&r.generic_signature));
    for p in &r.points {
        let a = fmt_q(&p.a);
        if !p.defined {
            let _ = writeln!(s, "a = {a}: undefined ({})", p.error.as_deref().unwrap_or(""));
            continue;
        }
        let purity = match &p.purity {
            Some(pr) => match pr.weight {
                Some(w) if pr.is_pure() => format!("pure of weight {w}"),
                _ => pr.verdict.as_str().to_string(),
            },
            None => "unknown".into(),
        };
        let sig = p.signature.as_ref().map_or("undefined".into(), signature_inline);
        let _ = write!(s, "a = {a}: {purity}: {sig}");
        if let Some(e) = &p.error {
            let _ = write!(s, " ({e})");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "verdict: {}", r.verdict.map_or("unset", |v| v.as_str()));
    if !r.failures.is_empty() {
        let _ = writeln!(s, "failures: {}", r.failures.iter().map(fmt_q).collect::<Vec<_>>().join(", "));
    }
    s
}

fn rigidity_outcome(report: RigidityReport) -> Outcome {
    let mut diagnostics = Vec::new();
    for p in &report.points {
        if let Some(e) = &p.error {
            diagnostics.push(format!("a = {}: {e}", fmt_q(&p.a)));
        }
    }
    let code = match report.verdict {
        Some(RigidityVerdict::Fail) => {
            diagnostics.push(format!(
                "rigidity fails at {}",
                report.failures.iter().map(fmt_q).collect::<Vec<_>>().join(", ")
            ));
            EXIT_RIGIDITY_FAIL
        }
        Some(RigidityVerdict::Vacuous) => {
            diagnostics.push("no pure points: verdict is vacuous".into());
            EXIT_OK
        }
        _ => EXIT_OK,
    };
    Outcome {
        result: rigidity_to_json(&report),
        table: rigidity_table(&report),
        diagnostics,
        code,
    }
}

/// Command name and resolved flags, without file paths.
fn command_echo(cmd: &Command) -> Result<Value> {
    let mut flags = Map::new();
    let name = match cmd {
        Command::Validate { .. } => "validate",
        Command::Schur { partition, .. } => {
            flags.insert("partition".into(), json!(partition.to_string()));
            "schur"
        }
        Command::Frss { .. } => "frss",
        Command::Filtration { .. } => "filtration",
        Command::Purity { weight, eps, .. } => {
            flags.insert("weight".into(), weight_to_json(*weight));
            flags.insert("eps".into(), json!(fmt_q(&parse_eps(eps.as_deref())?)));
            "purity"
        }
        Command::Specialize { point, .. } => {
            flags.insert("point".into(), json!(fmt_q(&parse_rational(point, "--point")?)));
            "specialize"
        }
        Command::Scan {
            partition,
            points,
            weight,
            eps,
            ..
        } => {
            flags.insert("partition".into(), json!(partition.to_string()));
            flags.insert("points".into(), json!(points.as_deref().unwrap_or("-25..25")));
            flags.insert("weight".into(), weight_to_json(*weight));
            flags.insert("eps".into(), json!(fmt_q(&parse_eps(eps.as_deref())?)));
            "scan"
        }
        Command::Rigidity { .. } => "rigidity",
    };
    Ok(json!({"name": name, "flags": flags}))
}

fn input_path(cmd: &Command) -> &Path {
    match cmd {
        Command::Validate { input }
        | Command::Schur { input, .. }
        | Command::Frss { input }
        | Command::Filtration { input }
        | Command::Purity { input, .. }
        | Command::Specialize { input, .. }
        | Command::Scan { input, .. }
        | Command::Rigidity { input } => input,
    }
}

fn execute(cmd: &Command, text: &str) -> Result<Outcome> {
    match cmd {
        Command::Validate { .. } => {
            let rho = rep_from_json(&parse_json(text)?)?;
            match wd_validate(&rho) {
                Ok(()) => Ok(Outcome::ok(
                    json!({"valid": true, "dim": rho.dim(), "field": rho.field().name(), "q": rho.q()}),
                    format!("valid: yes\nq: {}\nfield: {}\ndim: {}\n", rho.q(), rho.field(), rho.dim()),
                )),
                Err(v) => Ok(Outcome {
                    result: json!({"valid": false, "violation": v.to_string(), "matrix": v.matrix()}),
                    table: format!("valid: no\nviolation: {v}\n"),
                    diagnostics: vec![Error::Validation(v).to_string()],
                    code: EXIT_INPUT,
                }),
            }
        }
        Command::Schur { partition, .. } => {
            let image = wd_schur(&load_rep(text)?, partition)?;
            Ok(Outcome::ok(rep_to_json(&image), rep_table(&image)))
        }
        Command::Frss { .. } => {
            let sig = frss_signature(&load_rep(text)?)?;
            Ok(Outcome::ok(signature_to_json(&sig), signature_table(&sig)))
        }
        Command::Filtration { .. } => {
            let f = monodromy_filtration(load_rep(text)?.nilp())?;
            Ok(Outcome::ok(filtration_to_json(&f), filtration_table(&f)))
        }
        Command::Purity { weight, eps, .. } => {
            let r = purity_check(&load_rep(text)?, *weight, &parse_eps(eps.as_deref())?)?;
            Ok(Outcome::ok(purity_to_json(&r), purity_table(&r)))
        }
        Command::Specialize { point, .. } => {
            let a = parse_rational(point, "--point")?;
            let rho = specialize(load_family(text)?.rep(), &a)?;
            Ok(Outcome::ok(rep_to_json(&rho), rep_table(&rho)))
        }
        Command::Scan {
            partition,
            points,
            weight,
            eps,
            ..
        } => {
            let pts = match points {
                Some(p) => parse_points(p)?,
                None => default_points(),
            };
            let eps = parse_eps(eps.as_deref())?;
            let fam = load_family(text)?;
            Ok(rigidity_outcome(rigidity_check(&purity_scan(&fam, partition, &pts, *weight, &eps)?)))
        }
        Command::Rigidity { .. } => Ok(rigidity_outcome(rigidity_check(&rigidity_from_json(&parse_json(text)?)?))),
    }
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

/// The report envelope; identical inputs and flags give identical bytes.
fn envelope(cmd: &Value, bytes: &[u8], outcome: &Outcome) -> Value {
    json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": cmd,
        "input_digest": digest(bytes),
        "result": outcome.result,
        "diagnostics": outcome.diagnostics,
    })
}

/// Runs one invocation, writing the payload to `out` (or `--output`) and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let fail = |err: &mut dyn Write, e: &Error| {
        let _ = writeln!(err, "error: {e}");
        exit_code(e)
    };
    let echo = match command_echo(&cli.command) {
        Ok(v) => v,
        Err(e) => return fail(err, &e),
    };
    let (text, bytes) = match read_input(input_path(&cli.command)) {
        Ok(x) => x,
        Err(e) => return fail(err, &e),
    };
    let outcome = match execute(&cli.command, &text) {
        Ok(o) => o,
        Err(e) => return fail(err, &e),
    };
    for d in &outcome.diagnostics {
        let _ = writeln!(err, "{d}");
    }
    let payload = match cli.format {
        Format::Json => canonical_string(&envelope(&echo, &bytes, &outcome)),
        Format::Table => outcome.table.clone(),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, payload.as_bytes()),
        None => out.write_all(payload.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_INPUT;
    }
    outcome.code
}
