//! The `shuf` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 size-cap refusal. `SHUF_SIZE_CAP` overrides every default size cap;
//! `--size-cap` overrides the environment and `--force` disables the cap.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::lattices::{bubble_covers, build_shuffle_lattice, hasse_diagram};
use crate::triangles::{compute, m_series, Method, TriangleKind, BRUTE_SIZE_CAP};
use crate::verify::{self, Suite, SuiteConfig, VerificationReport};
use crate::words::{enumerate_shuffle_words, rank, ShuffleParams, DEFAULT_SIZE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SIZE_CAP: i32 = 3;

pub const SIZE_CAP_ENV: &str = "SHUF_SIZE_CAP";

#[derive(Debug, Parser)]
#[command(name = "shuf", version, about = "Shuffle and bubble lattices: enumeration, triangles and verification")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Refuse lattices with more elements than this.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub size_cap: Option<u64>,
    /// Ignore the size cap.
    #[arg(long, global = true)]
    pub force: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Dims {
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Shuf,
    Bub,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HasseFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Interval,
    Formula,
    Compsum,
    Series,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Interval => Method::Interval,
            MethodArg::Formula => Method::Formula,
            MethodArg::Compsum => Method::CompositionSum,
            MethodArg::Series => Method::Series,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Identities,
    Relations,
    Methods,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Relations => Suite::Relations,
            SuiteArg::Methods => Suite::Methods,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the words of Shuf(m, n), one per line.
    Enumerate {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Hasse diagram of Shuf(m, n) or cover graph of Bub(m, n).
    Hasse {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value = "shuf")]
        order: Order,
        #[arg(long, value_enum, default_value = "dot")]
        format: HasseFormat,
        #[command(flatten)]
        common: Common,
    },
    /// M-triangle M_{m,n}(q, t).
    Mtriangle {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value = "formula")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        common: Common,
    },
    /// H-triangle H_{m,n}(q, t).
    Htriangle {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value = "formula")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Reverse characteristic polynomial ch~_{m,n}(q).
    Chpoly {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value = "formula")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Coefficients of the M-triangle generating series up to (max-m, max-n).
    Series {
        #[arg(long, default_value_t = 4)]
        max_m: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Largest m for the brute-force comparisons.
        #[arg(long, default_value_t = 4)]
        max_m: usize,
        /// Largest n for the brute-force comparisons.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Emit the JSON report, to the given file or to stdout.
        #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
        json: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Enumerate { common, .. }
            | Command::Hasse { common, .. }
            | Command::Mtriangle { common, .. }
            | Command::Htriangle { common, .. }
            | Command::Chpoly { common, .. }
            | Command::Series { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }
}

enum Failure {
    Usage(String),
    SizeCap(String),
    Io(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::SizeLimitExceeded { .. } => Failure::SizeCap(format!("{e}; pass --force or raise --size-cap")),
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

/// Output of a successful command plus whether it represents a passing run.
struct Rendered {
    text: String,
    passed: bool,
    path: Option<PathBuf>,
}

impl Rendered {
    fn ok(text: String) -> Rendered {
        Rendered { text, passed: true, path: None }
    }
}

fn resolve_cap(common: &Common, default: u64) -> Result<u64, Failure> {
    if common.force {
        return Ok(u64::MAX);
    }
    if let Some(cap) = common.size_cap {
        return Ok(cap);
    }
    match std::env::var(SIZE_CAP_ENV) {
        Ok(raw) => match raw.trim().parse::<u64>() {
            Ok(cap) if cap >= 1 => Ok(cap),
            _ => Err(Failure::Usage(format!("{SIZE_CAP_ENV}={raw:?} is not a positive integer"))),
        },
        Err(_) => Ok(default),
    }
}

fn with_schema<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("serializable");
    if let serde_json::Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(1));
    }
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn triangle(
    kind: TriangleKind,
    dims: &Dims,
    method: MethodArg,
    as_json: bool,
    common: &Common,
) -> Result<Rendered, Failure> {
    let method = Method::from(method);
    if !Method::supported(kind).contains(&method) {
        let allowed: Vec<&str> = Method::supported(kind).iter().map(|m| m.name()).collect();
        return Err(Failure::Usage(format!(
            "--method {method} is not available here; choose one of {}",
            allowed.join(", ")
        )));
    }
    let params = ShuffleParams::new(dims.m, dims.n);
    let result = compute(kind, method, params, resolve_cap(common, BRUTE_SIZE_CAP)?)?;
    Ok(Rendered::ok(if as_json {
        with_schema(&json!({
            "params": result.params,
            "kind": result.kind,
            "method": result.method.name(),
            "value": result.value,
            "text": result.value.to_string(),
        }))
    } else {
        format!("{}\n", result.value)
    }))
}

fn hasse(dims: &Dims, order: Order, format: HasseFormat, common: &Common) -> Result<Rendered, Failure> {
    let params = ShuffleParams::new(dims.m, dims.n);
    let cap = resolve_cap(common, DEFAULT_SIZE_CAP)?;
    let bubble = order == Order::Bub;
    if format == HasseFormat::Dot {
        return Ok(Rendered::ok(hasse_diagram(params, bubble, cap)?));
    }
    let words = enumerate_shuffle_words(params, cap)?;
    let nodes: Vec<_> = words.iter().map(|w| json!({"word": w, "rank": rank(w, params)})).collect();
    let edges: Vec<_> = if bubble {
        bubble_covers(params, cap)?
            .iter()
            .map(|c| json!({"lower": c.lower, "upper": c.upper, "kind": c.kind.dot_name()}))
            .collect()
    } else {
        let lattice = build_shuffle_lattice(params, cap)?;
        lattice.covers().iter().map(|&(a, b)| json!({"lower": lattice.label(a), "upper": lattice.label(b)})).collect()
    };
    let order = if bubble { "bub" } else { "shuf" };
    Ok(Rendered::ok(with_schema(&json!({"params": params, "order": order, "nodes": nodes, "edges": edges}))))
}

fn execute(command: &Command) -> Result<Rendered, Failure> {
    match command {
        Command::Enumerate { dims, json: as_json, common } => {
            let params = ShuffleParams::new(dims.m, dims.n);
            let words = enumerate_shuffle_words(params, resolve_cap(common, DEFAULT_SIZE_CAP)?)?;
            Ok(Rendered::ok(if *as_json {
                with_schema(&json!({"params": params, "count": words.len(), "words": words}))
            } else {
                words.iter().map(|w| format!("{w}\n")).collect()
            }))
        }
        Command::Hasse { dims, order, format, common } => hasse(dims, *order, *format, common),
        Command::Mtriangle { dims, method, json, common } => {
            triangle(TriangleKind::MTriangle, dims, *method, *json, common)
        }
        Command::Htriangle { dims, method, json, common } => {
            triangle(TriangleKind::HTriangle, dims, *method, *json, common)
        }
        Command::Chpoly { dims, method, json, common } => {
            triangle(TriangleKind::CharPoly, dims, *method, *json, common)
        }
        Command::Series { max_m, max_n, json: as_json, .. } => {
            let series = m_series(*max_m, *max_n);
            let cells: Vec<(usize, usize)> = (0..=*max_m).flat_map(|m| (0..=*max_n).map(move |n| (m, n))).collect();
            Ok(Rendered::ok(if *as_json {
                let coefficients: Vec<_> = cells
                    .iter()
                    .map(|&(m, n)| json!({"m": m, "n": n, "value": series.get(m, n), "text": series.get(m, n).to_string()}))
                    .collect();
                with_schema(&json!({"max_m": max_m, "max_n": max_n, "coefficients": coefficients}))
            } else {
                cells.iter().map(|&(m, n)| format!("{m} {n}: {}\n", series.get(m, n))).collect()
            }))
        }
        Command::Verify { suite, max_m, max_n, json: json_path, common } => {
            let config = SuiteConfig {
                brute_max: ShuffleParams::new(*max_m, *max_n),
                interval_max: ShuffleParams::new(*max_m, *max_n),
                cap: resolve_cap(common, BRUTE_SIZE_CAP)?,
                ..SuiteConfig::default()
            };
            let report = verify::run((*suite).into(), &config)?;
            let format = if json_path.is_some() { ReportFormat::Json } else { ReportFormat::Text };
            let path = json_path.as_ref().filter(|p| p.as_os_str() != "-").cloned();
            Ok(Rendered { text: emit_report(&report, format), passed: report.all_passed(), path })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Renders a verification report: a table with a summary line and the
/// adjudication notes, or the JSON document.
pub fn emit_report(report: &VerificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => report.to_json() + "\n",
    }
}

fn write_output(rendered: &Rendered, fallback: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match rendered.path.as_ref().or(fallback) {
        Some(path) => std::fs::write(path, &rendered.text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => stdout.write_all(rendered.text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

/// Runs a parsed command, writing its output to `stdout` (or the requested
/// file) and diagnostics to `stderr`. Returns the process exit code.
pub fn run(config: CliConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = execute(&config.command).and_then(|rendered| {
        write_output(&rendered, config.command.common().output.as_ref(), stdout)?;
        Ok(rendered.passed)
    });
    let (code, message) = match outcome {
        Ok(true) => (EXIT_OK, None),
        Ok(false) => (EXIT_VERIFICATION_FAILED, Some("verification failed".to_string())),
        Err(Failure::Usage(m)) => (EXIT_USAGE, Some(m)),
        Err(Failure::SizeCap(m)) => (EXIT_SIZE_CAP, Some(m)),
        Err(Failure::Io(m) | Failure::Other(m)) => (EXIT_VERIFICATION_FAILED, Some(m)),
    };
    if let Some(message) = message {
        let _ = writeln!(stderr, "shuf: {message}");
    }
    code
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(config) => run(config, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            code
        }
    }
}
