use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use minor_spread_core::invariants::{formula_report, full_report};
use minor_spread_core::minors::{build_d1, build_d2, build_theta, join_irreducibles};
use minor_spread_core::verify::{sweep, verify, VerifyOptions, DEFAULT_D_MAX, SWEEP_CEILING};
use minor_spread_core::{Error, Poset, PosetError, ProblemSpec, SpecError};

mod example;
mod spec_doc;

use spec_doc::SpecDocument;

const TOOL: &str = "minor-spread";
const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Largest poset rendered by `hasse`.
const HASSE_NODE_LIMIT: usize = 500;

#[derive(Parser)]
#[command(name = TOOL, version, about = "Analytic spread and reduction number of ideals of maximal minors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed forms for one spec.
    Compute {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also compute the lattice-rank oracle and agreement flags.
        #[arg(long)]
        with_oracle: bool,
    },
    /// Reproduce the worked example (u = 13, k = 8) and self-check it.
    Example,
    /// Write the Hasse diagram of one of the posets as DOT.
    Hasse {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum)]
        which: Which,
        /// Output path; DOT goes to standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every formula-versus-oracle check on one spec.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = DEFAULT_D_MAX)]
        d_max: usize,
        /// Perturb the closed form to confirm the checks can fail.
        #[arg(long, hide = true)]
        mutate: bool,
    },
    /// Check every valid spec with m <= max-m and n <= max-n.
    Sweep {
        #[arg(long, default_value_t = 5)]
        max_m: u32,
        #[arg(long, default_value_t = 5)]
        max_n: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Theta,
    D1,
    D2,
    P,
    P1,
    P2,
}

#[derive(Args)]
struct SpecArgs {
    /// SpecDocument JSON file.
    #[arg(long, conflicts_with_all = ["m", "n", "r", "a", "b", "u"])]
    spec: Option<PathBuf>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    r: Option<i64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    a: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    b: Option<Vec<i64>>,
    #[arg(long, allow_negative_numbers = true)]
    u: Option<i64>,
}

/// Error with its exit code and stable machine-readable code.
struct Failure {
    exit: u8,
    code: &'static str,
    message: String,
    report: Option<Value>,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            exit: 2,
            code: "invalid_input",
            message: message.into(),
            report: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (exit, code) = match &e {
            Error::Spec(SpecError::Invalid(_)) => (2, "invalid_input"),
            Error::Spec(SpecError::NoMaximalMinors { .. }) => (3, "no_maximal_minors"),
            Error::Poset(PosetError::TooLarge { .. } | PosetError::SizeBoundExceeded { .. }) => {
                (2, "size_bound_exceeded")
            }
            _ => (1, "internal_error"),
        };
        Self {
            exit,
            code,
            message: e.to_string(),
            report: None,
        }
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Error::from(e).into()
    }
}

impl From<PosetError> for Failure {
    fn from(e: PosetError) -> Self {
        Error::from(e).into()
    }
}

impl SpecArgs {
    fn load(&self) -> Result<ProblemSpec, Failure> {
        let doc = match &self.spec {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
                SpecDocument::parse(&text)?
            }
            None => {
                let missing = |name: &str| Failure::invalid(format!("missing --{name} (or pass --spec)"));
                SpecDocument {
                    m: self.m.ok_or_else(|| missing("m"))?,
                    n: self.n.ok_or_else(|| missing("n"))?,
                    r: self.r.ok_or_else(|| missing("r"))?,
                    a: self.a.clone().ok_or_else(|| missing("a"))?,
                    b: self.b.clone().ok_or_else(|| missing("b"))?,
                    u: self.u.ok_or_else(|| missing("u"))?,
                }
            }
        };
        doc.into_spec()
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    #[serde(flatten)]
    body: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn hasse<T>(p: &Poset<T>, out: Option<&PathBuf>) -> Result<Value, Failure>
where
    T: std::fmt::Display,
{
    if p.len() > HASSE_NODE_LIMIT {
        return Err(PosetError::SizeBoundExceeded {
            size: p.len(),
            bound: HASSE_NODE_LIMIT,
        }
        .into());
    }
    let dot = p.to_dot();
    let summary = json!({
        "nodes": p.len(),
        "edges": p.covers().len(),
        "sinks": p.minimal_indices().len(),
    });
    match out {
        Some(path) => {
            fs::write(path, &dot).map_err(|e| Failure {
                exit: 1,
                code: "io_error",
                message: format!("cannot write {}: {e}", path.display()),
                report: None,
            })?;
            let mut s = summary;
            s["out"] = json!(path.display().to_string());
            Ok(s)
        }
        None => {
            print!("{dot}");
            Ok(Value::Null)
        }
    }
}

fn run(cli: &Cli) -> Result<(&'static str, Value), Failure> {
    match &cli.command {
        Command::Compute { spec, with_oracle } => {
            let spec = spec.load()?;
            let report = if *with_oracle {
                serde_json::to_value(full_report(&spec)?)
            } else {
                serde_json::to_value(json!({ "formula": formula_report(&spec) }))
            }
            .expect("serializable");
            Ok(("compute", json!({ "spec": spec, "report": report })))
        }
        Command::Example => {
            let outcome = example::run()?;
            let body = serde_json::to_value(&outcome).expect("serializable");
            if !outcome.self_check_passed {
                return Err(Failure {
                    exit: 1,
                    code: "self_check_failed",
                    message: format!("drifted values: {}", outcome.drift.join(", ")),
                    report: Some(body),
                });
            }
            Ok(("example", body))
        }
        Command::Hasse { spec, which, out } => {
            let spec = spec.load()?;
            let summary = match which {
                Which::Theta => hasse(&build_theta(&spec)?, out.as_ref())?,
                Which::D1 => hasse(&build_d1(&spec)?, out.as_ref())?,
                Which::D2 => hasse(&build_d2(&spec)?, out.as_ref())?,
                Which::P => hasse(&join_irreducibles(&build_theta(&spec)?)?, out.as_ref())?,
                Which::P1 => hasse(&join_irreducibles(&build_d1(&spec)?)?, out.as_ref())?,
                Which::P2 => hasse(&join_irreducibles(&build_d2(&spec)?)?, out.as_ref())?,
            };
            Ok(("hasse", summary))
        }
        Command::Verify { spec, d_max, mutate } => {
            let spec = spec.load()?;
            let opts = VerifyOptions {
                d_max: *d_max,
                corrupt_formula: *mutate,
            };
            let report = verify(&spec, &opts)?;
            let body = json!({ "spec": spec, "verification": report });
            if !report.passed {
                return Err(Failure {
                    exit: 1,
                    code: "verification_failed",
                    message: format!("failed checks: {}", report.failed_checks().join(", ")),
                    report: Some(body),
                });
            }
            Ok(("verify", body))
        }
        Command::Sweep { max_m, max_n, jobs } => {
            if *max_m == 0 || *max_n == 0 || *max_m > SWEEP_CEILING || *max_n > SWEEP_CEILING {
                return Err(Failure::invalid(format!(
                    "sweep bounds must lie in [1, {SWEEP_CEILING}]"
                )));
            }
            let summary = sweep(*max_m, *max_n, *jobs)?;
            let body = serde_json::to_value(&summary).expect("serializable");
            if !summary.passed {
                let first = summary
                    .first_failure
                    .as_ref()
                    .map(|f| format!("{}: {}", serde_json::to_string(&f.spec).unwrap(), f.checks.join(", ")))
                    .unwrap_or_else(|| "spec count mismatch".into());
                return Err(Failure {
                    exit: 1,
                    code: "verification_failed",
                    message: format!("{} failing specs; first {first}", summary.failures),
                    report: Some(body),
                });
            }
            Ok(("sweep", body))
        }
    }
}

fn emit(command: &str, body: Value, timing: Option<f64>) {
    if body.is_null() {
        return;
    }
    print_json(&Envelope {
        tool: TOOL,
        version: VERSION,
        command,
        body: if body.is_object() {
            body
        } else {
            json!({ "result": body })
        },
        timing_ms: timing,
    });
}

fn fail(f: Failure) -> ExitCode {
    let err = json!({
        "error": { "code": f.code, "message": f.message },
        "exit_code": f.exit,
    });
    eprintln!("{}", serde_json::to_string(&err).expect("serializable"));
    ExitCode::from(f.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return fail(Failure::invalid(e.to_string().trim().to_string()));
        }
    };
    let start = Instant::now();
    let result = run(&cli);
    let timing = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    match result {
        Ok((command, body)) => {
            emit(command, body, timing);
            ExitCode::SUCCESS
        }
        Err(mut f) => {
            if let Some(report) = f.report.take() {
                let command = match cli.command {
                    Command::Example => "example",
                    Command::Verify { .. } => "verify",
                    Command::Sweep { .. } => "sweep",
                    _ => "compute",
                };
                emit(command, report, timing);
            }
            fail(f)
        }
    }
}
