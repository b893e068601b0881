mod commands;
mod pretty;
mod request;
mod verify;

use std::fs;
use std::io::{self, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use request::{List, Preset, Request};

pub const VERSION: &str = concat!("hypercert ", env!("CARGO_PKG_VERSION"));

#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit code 1.
    Input(String),
    /// A certificate failed re-verification: exit code 3.
    Internal(String),
}

impl Failure {
    fn exit(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 3,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Input(msg) => json!({"kind": "input", "message": msg}),
            Failure::Internal(msg) => json!({"kind": "internal", "message": msg}),
        }
    }
}

impl From<hypercert::Error> for Failure {
    fn from(e: hypercert::Error) -> Self {
        match e {
            hypercert::Error::Internal(msg) => Failure::Internal(msg),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "hypercert",
    version,
    about = "Exact certificates for the hyperplanes X^r Y = F and plane coordinates"
)]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Cmd>,
    /// Re-verify the reports in this file (JSON or JSON lines) instead of running a command.
    #[arg(long, value_name = "REPORTS")]
    verify_only: Option<PathBuf>,
    /// Emit JSON reports.
    #[arg(long, global = true)]
    json: bool,
    /// Emit a human summary with the statement labels (i)-(v).
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether f is a coordinate of k[Z,T].
    Coord(Flags),
    /// Decide whether k[Z,T]/(f) is a polynomial ring in one variable.
    Line(Flags),
    /// Decide whether G = X^r Y - F is a coordinate, with a verified coordinate system.
    #[command(name = "theorem-b")]
    TheoremB(Flags),
    /// Decide whether A is factorial.
    Ufd(Flags),
    /// Decide whether A is an A^2-fibration over k[x].
    Fibration(Flags),
    /// Build and verify the two translation exponential maps of A.
    Expmap(Flags),
    /// Graded presentation for a weight vector, or the two-step regrading.
    Gr(Flags),
    /// Compare two presentations by isomorphism invariants.
    Iso(Flags),
    /// Decide whether the endomorphism given by preset images is an automorphism.
    Aut(Flags),
    /// Pairwise non-isomorphic presentations sharing one Segre-Nagata f.
    Catalog(Flags),
    /// Run a JSON-lines file of commands.
    Batch(BatchFlags),
}

#[derive(Args, Default)]
struct Flags {
    /// Ground field: Q or F<p>.
    #[arg(long)]
    field: Option<String>,
    /// Polynomial in Z, T.
    #[arg(long)]
    poly: Option<String>,
    /// Presentation file {"m","r","field","F"}; repeat for iso.
    #[arg(long)]
    preset: Vec<String>,
    #[arg(long)]
    m: Option<usize>,
    /// Exponents r1,...,rm.
    #[arg(long, value_name = "a,b,...")]
    r: Option<String>,
    /// F in X1..Xm, Z, T.
    #[arg(long = "F", value_name = "POLY")]
    big_f: Option<String>,
    #[arg(long, value_name = "e1,...", allow_hyphen_values = true)]
    weights: Option<String>,
    /// Segre-Nagata parameters.
    #[arg(long, value_name = "p,e,s")]
    sn: Option<String>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    degree_cap: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Plane automorphism file for iso (tame word or automorphism JSON).
    #[arg(long)]
    alpha: Option<String>,
}

#[derive(Args)]
struct BatchFlags {
    file: PathBuf,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    jobs: Option<usize>,
}

fn request(command: &str, f: Flags) -> Request {
    Request {
        command: command.into(),
        field: f.field,
        poly: f.poly,
        preset: f.preset.into_iter().map(Preset::Path).collect(),
        m: f.m,
        r: f.r.map(List::Text),
        big_f: f.big_f,
        weights: f.weights.map(List::Text),
        sn: f.sn.map(List::Text),
        count: f.count,
        degree_cap: f.degree_cap,
        seed: Some(f.seed.unwrap_or(0)),
        alpha: f.alpha.map(Value::String),
    }
}

fn panic_message(e: Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| e.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

/// Resolves, dispatches and wraps one request into a report.
fn run(req: Result<Request, Failure>, base: &Path) -> (Value, i32) {
    let start = Instant::now();
    let mut echo = Value::Null;
    let result = req.and_then(|r| r.resolve(base)).and_then(|r| {
        echo = serde_json::to_value(&r)?;
        panic::catch_unwind(AssertUnwindSafe(|| commands::dispatch(&r)))
            .unwrap_or_else(|e| Err(Failure::Internal(format!("panic: {}", panic_message(e)))))
    });
    let timing_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(out) => (
            json!({
                "command": echo,
                "verdict": out.verdict,
                "certificate": out.certificate,
                "timing_ms": timing_ms,
                "version": VERSION,
                "hypothesis_flags": out.flags,
                "exit_code": out.exit,
            }),
            out.exit,
        ),
        Err(f) => (
            json!({
                "command": echo,
                "error": f.to_json(),
                "timing_ms": timing_ms,
                "version": VERSION,
                "exit_code": f.exit(),
            }),
            f.exit(),
        ),
    }
}

fn summary(report: &Value) -> String {
    match report.get("error") {
        Some(err) => {
            format!("error ({}): {}\n", err["kind"].as_str().unwrap_or("?"), err["message"].as_str().unwrap_or(""))
        }
        None => format!("{}\n", report["verdict"].as_str().unwrap_or("?")),
    }
}

fn emit(report: &Value, json_mode: bool, pretty_mode: bool) {
    let text = if pretty_mode {
        pretty::render(report)
    } else if json_mode {
        format!("{report}\n")
    } else {
        summary(report)
    };
    let _ = io::stdout().write_all(text.as_bytes());
}

fn batch(flags: &BatchFlags, pretty_mode: bool) -> Result<i32, Failure> {
    let text = fs::read_to_string(&flags.file)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", flags.file.display())))?;
    let base = flags.file.parent().map(Path::to_path_buf).unwrap_or_default();
    let lines: Vec<(usize, &str)> =
        text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).map(|(i, l)| (i + 1, l)).collect();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = flags.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| Failure::Input(e.to_string()))?;
    let reports: Vec<(Value, i32)> = pool.install(|| {
        lines
            .par_iter()
            .map(|&(n, line)| {
                let req = serde_json::from_str::<Request>(line).map_err(|e| Failure::Input(format!("line {n}: {e}")));
                let (mut report, code) = run(req, &base);
                report["line"] = json!(n);
                (report, code)
            })
            .collect()
    });
    let mut worst = 0;
    for (report, code) in &reports {
        emit(report, true, pretty_mode);
        worst = worst.max(*code);
    }
    Ok(worst)
}

fn read_reports(path: &Path) -> Result<Vec<Value>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    if let Ok(v) = serde_json::from_str::<Value>(&text) {
        return Ok(match v {
            Value::Array(items) => items,
            other => vec![other],
        });
    }
    text.lines().filter(|l| !l.trim().is_empty()).map(|l| Ok(serde_json::from_str(l)?)).collect()
}

fn verify_only(path: &Path) -> Result<i32, Failure> {
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut worst = 0;
    for (i, report) in read_reports(path)?.iter().enumerate() {
        let line = if report.get("error").is_some() {
            json!({"index": i, "status": "skipped", "detail": "error report"})
        } else {
            match verify::verify_report(report, &base) {
                Ok(detail) => json!({"index": i, "status": "verified", "detail": detail}),
                Err(f) => {
                    worst = worst.max(f.exit());
                    json!({"index": i, "status": "failed", "error": f.to_json()})
                }
            }
        };
        let _ = writeln!(io::stdout(), "{line}");
    }
    Ok(worst)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match (cli.command, &cli.verify_only) {
        (_, Some(path)) => verify_only(path),
        (Some(Cmd::Batch(flags)), None) => batch(&flags, cli.pretty),
        (Some(cmd), None) => {
            let (name, flags) = match cmd {
                Cmd::Coord(f) => ("coord", f),
                Cmd::Line(f) => ("line", f),
                Cmd::TheoremB(f) => ("theorem-b", f),
                Cmd::Ufd(f) => ("ufd", f),
                Cmd::Fibration(f) => ("fibration", f),
                Cmd::Expmap(f) => ("expmap", f),
                Cmd::Gr(f) => ("gr", f),
                Cmd::Iso(f) => ("iso", f),
                Cmd::Aut(f) => ("aut", f),
                Cmd::Catalog(f) => ("catalog", f),
                Cmd::Batch(_) => unreachable!(),
            };
            let (report, code) = run(Ok(request(name, flags)), Path::new("."));
            emit(&report, cli.json, cli.pretty);
            Ok(code)
        }
        (None, None) => Err(Failure::Input("expected a subcommand or --verify-only".into())),
    };
    match code {
        Ok(c) => ExitCode::from(c as u8),
        Err(f) => {
            eprintln!("hypercert: {}", f.to_json()["message"].as_str().unwrap_or_default());
            ExitCode::from(f.exit() as u8)
        }
    }
}
