//! Run configuration: seed resolution and `key=value` config files.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::rng::DEFAULT_SEED;
use crate::CliError;

/// Environment variable consulted when no seed is given.
pub const SEED_ENV: &str = "DPPLAB_SEED";

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// JSON envelope.
    Json,
    /// CSV table (only for commands with tabular output).
    Csv,
}

/// Settings shared by every command after flags, config file and
/// environment have been merged.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Subcommand path, e.g. `["ust", "exact"]`.
    pub command: Vec<String>,
    /// Command parameters as given (after defaults).
    pub params: serde_json::Value,
    /// Root seed.
    pub seed: u64,
    /// Replica count, at least 1.
    pub replicas: usize,
    /// Worker threads for replicas (`None`: run sequentially).
    pub jobs: Option<usize>,
    /// Output encoding.
    pub format: Format,
    /// Destination file (`None`: standard output).
    pub out: Option<PathBuf>,
    /// Tolerance override for checks.
    pub tol: Option<f64>,
    /// Report wall-clock time in the envelope.
    pub timing: bool,
}

/// Parses a seed written in decimal or as `0x…` hex.
pub fn parse_seed(text: &str) -> Result<u64, String> {
    let t = text.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|_| format!("invalid seed '{text}'"))
}

/// Flag, then environment, then [`DEFAULT_SEED`].
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64, CliError> {
    match (flag, env) {
        (Some(s), _) => Ok(s),
        (None, Some(text)) => parse_seed(text).map_err(|e| CliError::Usage(format!("{SEED_ENV}: {e}"))),
        (None, None) => Ok(DEFAULT_SEED),
    }
}

/// Reads `key=value` lines; blank lines and `#` comments are skipped.
pub fn read_config_file(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config file {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key=value", path.display(), no + 1)))?;
        out.push((k.trim().trim_start_matches("--").to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Appends config-file entries as flags unless the same flag is already on
/// the command line; `key=true` becomes a bare switch and `key=false` is
/// dropped.
pub fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let strings: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let mut path = None;
    for (i, a) in strings.iter().enumerate() {
        if a == "--config" {
            path = strings.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(argv);
    };
    let present = |key: &str| {
        let flag = format!("--{key}");
        strings.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
    };
    let mut out = argv;
    for (k, v) in read_config_file(Path::new(&path))? {
        if k == "config" || present(&k) {
            continue;
        }
        match v.as_str() {
            "true" => out.push(format!("--{k}").into()),
            "false" => {}
            _ => {
                out.push(format!("--{k}").into());
                out.push(v.into());
            }
        }
    }
    Ok(out)
}
