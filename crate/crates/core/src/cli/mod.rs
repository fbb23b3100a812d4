//! Command line front end.
//!
//! Every subcommand resolves its inputs (files or generators), calls the
//! library, and assembles a JSON report with sorted keys. Exit codes:
//! `0` success, `2` invalid input, `3` budget exceeded, `4` a finding
//! (falsified invariant, invalid decomposition, failed structural check).

pub mod commands;
pub mod inputs;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;

pub use commands::*;

/// Seed used when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 7;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_FINDING: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "cheeger", version, about = "Certified Cheeger bounds for graphs, trees and metric spaces")]
#[command(after_help = inputs::GENERATORS)]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Enumeration budget; each subcommand has its own default.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Record wall time in the report (which is then no longer reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact interior Cheeger constant of a window.
    Cheeger(CheegerArgs),
    /// Function certificate lower bound, optionally with a Green identity check.
    Certify(CertifyArgs),
    /// Four-point hyperbolicity constant.
    Delta(DeltaArgs),
    /// Pseudo-regularity, complementedness and Cheeger bounds of a rooted tree.
    Tree(TreeArgs),
    /// End space of a rooted tree and its perfectness certificates.
    Endspace(EndspaceArgs),
    /// Hyperbolic approximation of a metric space with structural checks.
    Approx(ApproxArgs),
    /// Epsilon-net graph of a metric space.
    Net(NetArgs),
    /// Uniform perfectness check on a declared scale range.
    Perfect(PerfectArgs),
    /// Validate a decomposition file and print its bound.
    Decomp(DecompArgs),
    /// Graft a copy of one graph onto every vertex of another.
    Graft(GraftArgs),
    /// Interior Cheeger constants along a sequence of windows.
    Scan(ScanArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Cheeger(_) => "cheeger",
            Command::Certify(_) => "certify",
            Command::Delta(_) => "delta",
            Command::Tree(_) => "tree",
            Command::Endspace(_) => "endspace",
            Command::Approx(_) => "approx",
            Command::Net(_) => "net",
            Command::Perfect(_) => "perfect",
            Command::Decomp(_) => "decomp",
            Command::Graft(_) => "graft",
            Command::Scan(_) => "scan",
        }
    }

    fn parameters(&self) -> Value {
        fn v<T: Serialize>(t: &T) -> Value {
            serde_json::to_value(t).expect("arguments serialize")
        }
        match self {
            Command::Cheeger(a) => v(a),
            Command::Certify(a) => v(a),
            Command::Delta(a) => v(a),
            Command::Tree(a) => v(a),
            Command::Endspace(a) => v(a),
            Command::Approx(a) => v(a),
            Command::Net(a) => v(a),
            Command::Perfect(a) => v(a),
            Command::Decomp(a) => v(a),
            Command::Graft(a) => v(a),
            Command::Scan(a) => v(a),
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub seed: u64,
    pub budget: Option<u64>,
}

impl Context {
    pub fn budget_or(&self, default: u128) -> u128 {
        self.budget.map_or(default, u128::from)
    }
}

/// What a subcommand hands back to the report.
#[derive(Debug, Default)]
pub struct CommandOutput {
    pub inputs: Vec<Value>,
    pub results: Value,
    /// Horizon, resolution and budget actually used.
    pub disclosures: Value,
    /// Files written, with digests.
    pub outputs: Vec<Value>,
    /// Set when the run produced a finding (exit 4).
    pub finding: Option<String>,
}

/// Exit code and report of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Falsified(_) | Error::InvalidDecomposition(_) => EXIT_FINDING,
        _ => EXIT_INVALID,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidInput(_) => "invalid-input",
        Error::BudgetExceeded { .. } => "budget-exceeded",
        Error::EmptyWindow(_) => "empty-window",
        Error::InvalidSupport(_) => "invalid-support",
        Error::InvalidHorizon(_) => "invalid-horizon",
        Error::Precondition { .. } => "precondition",
        Error::InvalidDecomposition(_) => "invalid-decomposition",
        Error::Falsified(_) => "falsified",
        Error::Io(_) => "io",
        Error::Json(_) => "malformed-document",
    }
}

/// Runs a parsed command line and builds its report. Nothing is printed.
pub fn execute(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let ctx = Context {
        seed: cli.seed,
        budget: cli.budget,
    };
    let run = || dispatch(&cli.command, &ctx);
    let result = match cli.threads {
        Some(0) => Err(Error::InvalidInput("--threads must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Error::InvalidInput(format!("cannot start {n} threads: {e}"))),
        },
        None => run(),
    };
    let mut report = json!({
        "command": cli.command.name(),
        "parameters": cli.command.parameters(),
        "seed": cli.seed,
        "budget": cli.budget,
    });
    let code = match result {
        Ok(out) => {
            let code = if out.finding.is_some() { EXIT_FINDING } else { EXIT_OK };
            report["inputs"] = Value::Array(out.inputs);
            report["results"] = out.results;
            report["disclosures"] = out.disclosures;
            report["outputs"] = Value::Array(out.outputs);
            report["finding"] = out.finding.map_or(Value::Null, Value::String);
            code
        }
        Err(e) => {
            report["error"] = json!({"kind": error_kind(&e), "message": e.to_string()});
            exit_code(&e)
        }
    };
    report["exit_code"] = json!(code);
    if cli.timing {
        report["wall_time_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Outcome { code, report }
}

fn dispatch(cmd: &Command, ctx: &Context) -> crate::Result<CommandOutput> {
    match cmd {
        Command::Cheeger(a) => commands::cheeger(a, ctx),
        Command::Certify(a) => commands::certify(a, ctx),
        Command::Delta(a) => commands::delta(a, ctx),
        Command::Tree(a) => commands::tree(a, ctx),
        Command::Endspace(a) => commands::endspace(a, ctx),
        Command::Approx(a) => commands::approx(a, ctx),
        Command::Net(a) => commands::net(a, ctx),
        Command::Perfect(a) => commands::perfect(a, ctx),
        Command::Decomp(a) => commands::decomp(a, ctx),
        Command::Graft(a) => commands::graft(a, ctx),
        Command::Scan(a) => commands::scan(a, ctx),
    }
}

/// Report as written to disk: pretty JSON with sorted keys and a trailing newline.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Full entry point: parse, execute, write the report, return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = execute(&cli);
    let text = render(&outcome.report);
    match &cli.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write report {}: {e}", path.display());
                return EXIT_INVALID;
            }
            println!("{} seed={} exit={} report={}", cli.command.name(), cli.seed, outcome.code, path.display());
        }
        None => {
            eprintln!("seed={}", cli.seed);
            print!("{text}");
        }
    }
    if let Some(err) = outcome.report.get("error") {
        eprintln!("error: {}", err["message"].as_str().unwrap_or_default());
    }
    if let Some(f) = outcome.report.get("finding").and_then(Value::as_str) {
        eprintln!("finding: {f}");
    }
    outcome.code
}
