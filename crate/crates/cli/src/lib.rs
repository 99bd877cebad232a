//! Command-line front end for `dpplab-core`.
//!
//! Every command writes a JSON envelope `{command, params, seed, results,
//! timing_ms}` (or a CSV table where the payload is tabular) and exits with
//! 0 on success, 1 when a check fails and 2 on usage or precondition errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser};

pub mod commands;
pub mod config;
pub mod output;
pub mod parse;
pub mod replicate;
pub mod rng;

pub use config::{Format, RunConfig};
pub use output::{Outcome, Table};
pub use rng::{derive_substream, RandomState, DEFAULT_SEED};

/// Failure before a verdict could be reached.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or inputs.
    #[error("{0}")]
    Usage(String),
    /// Error raised by the library.
    #[error("{0}")]
    Core(#[from] dpplab_core::Error),
    /// Output could not be written.
    #[error("i/o error: {0}")]
    Io(String),
}

/// Flags accepted by every command.
#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Root seed (decimal or 0x-hex); falls back to DPPLAB_SEED, then 0xD5EED.
    #[arg(long, global = true, value_parser = config::parse_seed)]
    pub seed: Option<u64>,
    /// Number of independent replicas.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub replicas: u64,
    /// Worker threads for replicas.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Tolerance override for checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// File of key=value lines supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Report wall-clock milliseconds in `timing_ms` (output is then no longer
    /// byte-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

/// Top-level parser.
#[derive(Debug, Parser)]
#[command(name = "dpplab", version, about = "Determinantal processes, spanning trees, eigenvalue ensembles, last passage and stochastic dominance")]
pub struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: commands::Command,
}

/// Parses `argv`, runs the command and returns the rendered output with the
/// exit code, or the error message with exit code 2.
pub fn execute(argv: Vec<OsString>) -> (Result<String, String>, i32) {
    let argv = match config::expand_config(argv) {
        Ok(a) => a,
        Err(e) => return (Err(e.to_string()), 2),
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 { (Ok(e.to_string()), 0) } else { (Err(e.render().to_string()), 2) };
        }
    };
    let env = std::env::var(config::SEED_ENV).ok();
    let seed = match config::resolve_seed(cli.global.seed, env.as_deref()) {
        Ok(s) => s,
        Err(e) => return (Err(e.to_string()), 2),
    };
    let (command, params) = cli.command.describe();
    let config = RunConfig {
        command,
        params,
        seed,
        replicas: cli.global.replicas as usize,
        jobs: cli.global.jobs.map(|j| j as usize),
        format: cli.global.format,
        out: cli.global.out.clone(),
        tol: cli.global.tol,
        timing: cli.global.timing,
    };
    let start = Instant::now();
    let outcome = match cli.command.run(&config) {
        Ok(o) => o,
        Err(e) => return (Err(format!("error: {e}")), 2),
    };
    let timing = config.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let text = match output::render(&config, &outcome, timing) {
        Ok(t) => t,
        Err(e) => return (Err(format!("error: {e}")), 2),
    };
    let code = if outcome.passed { 0 } else { 1 };
    match &config.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => (Ok(String::new()), code),
            Err(e) => (Err(format!("error: cannot write {}: {e}", path.display())), 2),
        },
        None => (Ok(text), code),
    }
}

/// Entry point used by the binary: prints and returns the exit code.
pub fn run(argv: Vec<OsString>) -> i32 {
    let (result, code) = execute(argv);
    match result {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            let _ = out.flush();
        }
        Err(msg) => {
            let _ = writeln!(std::io::stderr(), "{}", msg.trim_end());
        }
    }
    code
}
