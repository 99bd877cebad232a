//! Subcommands.

use clap::Subcommand;
use serde::Serialize;
use serde_json::Value;

use crate::{CliError, Outcome, RunConfig};

pub mod dominate;
pub mod dpp;
pub mod ensemble;
pub mod lpp;
pub mod ust;

/// Command groups.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Determinantal processes on finite ground sets.
    #[command(subcommand)]
    Dpp(dpp::DppCommand),
    /// Uniform spanning tree of the complete graph.
    #[command(subcommand)]
    Ust(ust::UstCommand),
    /// Wishart, Jacobi and Meixner eigenvalue ensembles.
    #[command(subcommand)]
    Ensemble(ensemble::EnsembleCommand),
    /// Directed last-passage percolation.
    #[command(subcommand)]
    Lpp(lpp::LppCommand),
    /// Stochastic dominance checks.
    #[command(subcommand)]
    Dominate(dominate::DominateCommand),
}

impl Command {
    /// Command path and parameters for the envelope.
    pub fn describe(&self) -> (Vec<String>, Value) {
        let (group, (name, params)) = match self {
            Command::Dpp(c) => ("dpp", c.describe()),
            Command::Ust(c) => ("ust", c.describe()),
            Command::Ensemble(c) => ("ensemble", c.describe()),
            Command::Lpp(c) => ("lpp", c.describe()),
            Command::Dominate(c) => ("dominate", c.describe()),
        };
        (vec![group.to_string(), name.to_string()], params)
    }

    /// Runs the command.
    pub fn run(&self, cfg: &RunConfig) -> Result<Outcome, CliError> {
        match self {
            Command::Dpp(c) => c.run(cfg),
            Command::Ust(c) => c.run(cfg),
            Command::Ensemble(c) => c.run(cfg),
            Command::Lpp(c) => c.run(cfg),
            Command::Dominate(c) => c.run(cfg),
        }
    }
}

pub(crate) fn params<T: Serialize>(name: &'static str, args: &T) -> (&'static str, Value) {
    (name, serde_json::to_value(args).unwrap_or(Value::Null))
}

pub(crate) fn fmt_set(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Mean and unbiased variance, or zeros for fewer than two values.
pub(crate) fn summary(values: &[f64]) -> Value {
    let (mean, var) = if values.len() >= 2 { dpplab_core::stats::mean_var(values) } else { (values.first().copied().unwrap_or(0.0), 0.0) };
    serde_json::json!({ "count": values.len(), "mean": mean, "variance": var })
}
