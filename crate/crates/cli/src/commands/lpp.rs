//! `lpp` subcommands.

use clap::{Args, Subcommand, ValueEnum};
use dpplab_core::ensembles::{EnsembleSampler, EnsembleSpec};
use dpplab_core::lpp::{bridge_shift, sample_corner, sample_grid, WeightKind};
use dpplab_core::stats::{ks_critical_value, ks_two_sample};
use serde::Serialize;
use serde_json::{json, Value};

use super::{params, summary};
use crate::replicate::run_replicas;
use crate::{CliError, Outcome, RunConfig, Table};

/// Site weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weights {
    /// Exponential of the given rate.
    Exponential,
    /// Geometric on {0, 1, ...} with ratio q.
    Geometric,
}

/// Grid and weights.
#[derive(Debug, Clone, Args, Serialize)]
pub struct GridArgs {
    /// Rows.
    #[arg(long)]
    pub m: usize,
    /// Columns.
    #[arg(long)]
    pub n: usize,
    /// Weight distribution.
    #[arg(long, value_enum, default_value_t = Weights::Exponential)]
    pub weights: Weights,
    /// Exponential rate.
    #[arg(long, default_value_t = 1.0)]
    pub rate: f64,
    /// Geometric ratio.
    #[arg(long, default_value_t = 0.5)]
    pub q: f64,
}

impl GridArgs {
    fn kind(&self) -> WeightKind {
        match self.weights {
            Weights::Exponential => WeightKind::Exponential { rate: self.rate },
            Weights::Geometric => WeightKind::Geometric { q: self.q },
        }
    }
}

/// Arguments of `lpp sample`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Emit every passage time of each grid, not only the corner.
    #[arg(long)]
    pub full: bool,
}

/// Arguments of `lpp bridge`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct BridgeArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Significance level of the two-sample KS test.
    #[arg(long, default_value_t = 0.001)]
    pub alpha: f64,
}

/// `lpp` subcommands.
#[derive(Debug, Subcommand)]
pub enum LppCommand {
    /// Sample passage times (one grid per replica).
    Sample(SampleArgs),
    /// Two-sample KS test of G(m, n) against the largest eigenvalue or
    /// particle of the matching ensemble.
    Bridge(BridgeArgs),
}

impl LppCommand {
    pub(crate) fn describe(&self) -> (&'static str, Value) {
        match self {
            Self::Sample(a) => params("sample", a),
            Self::Bridge(a) => params("bridge", a),
        }
    }

    pub(crate) fn run(&self, cfg: &RunConfig) -> Result<Outcome, CliError> {
        match self {
            Self::Sample(a) => {
                let (m, n, kind) = (a.grid.m, a.grid.n, a.grid.kind());
                if a.full {
                    let grids = run_replicas(cfg.seed, 0, cfg.replicas, cfg.jobs, |rng| Ok(sample_grid(m, n, kind, rng)?))?;
                    let mut table = Table::new(&["replica", "i", "j", "g"]);
                    for (r, g) in grids.iter().enumerate() {
                        for (k, v) in g.values().iter().enumerate() {
                            table.push([r.to_string(), (k / n + 1).to_string(), (k % n + 1).to_string(), v.to_string()]);
                        }
                    }
                    let values: Vec<&[f64]> = grids.iter().map(|g| g.values()).collect();
                    let corners: Vec<f64> = grids.iter().map(|g| g.corner()).collect();
                    return Ok(Outcome::ok(json!({ "grids": values, "corners": corners, "summary": summary(&corners) }))
                        .with_table(table));
                }
                let corners = run_replicas(cfg.seed, 0, cfg.replicas, cfg.jobs, |rng| Ok(sample_corner(m, n, kind, rng)?))?;
                let mut table = Table::new(&["replica", "corner"]);
                for (r, c) in corners.iter().enumerate() {
                    table.push([r.to_string(), c.to_string()]);
                }
                Ok(Outcome::ok(json!({ "corners": corners, "summary": summary(&corners) })).with_table(table))
            }
            Self::Bridge(a) => bridge(a, cfg),
        }
    }
}

/// The ensemble whose largest value matches `G(m, n)` in law, and the shift.
pub fn bridge_target(m: usize, n: usize, kind: WeightKind) -> Result<(EnsembleSpec, usize), CliError> {
    // G(m, n) and G(n, m) have the same law
    let (lo, hi) = (m.min(n), m.max(n));
    match kind {
        WeightKind::Exponential { rate: 1.0 } => Ok((EnsembleSpec::Wishart { m: lo, n: hi }, bridge_shift(kind, lo))),
        WeightKind::Geometric { q } => Ok((EnsembleSpec::Meixner { m: lo, n: hi, q }, bridge_shift(kind, lo))),
        _ => Err(CliError::Usage("the bridge needs unit-rate exponential or geometric weights".into())),
    }
}

fn bridge(a: &BridgeArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (m, n, kind) = (a.grid.m, a.grid.n, a.grid.kind());
    let (spec, shift) = bridge_target(m, n, kind)?;
    let count = cfg.replicas;
    if count < 2 {
        return Err(CliError::Usage("the bridge test needs --replicas ≥ 2".into()));
    }
    let corners = run_replicas(cfg.seed, 0, count, cfg.jobs, |rng| Ok(sample_corner(m, n, kind, rng)?))?;
    let sampler = EnsembleSampler::new(spec)?;
    let top = run_replicas(cfg.seed, count as u32, count, cfg.jobs, |rng| Ok(sampler.sample(rng)?.max() - shift as f64))?;
    let d = ks_two_sample(&corners, &top)?;
    let crit = ks_critical_value(a.alpha, count, count);
    let passed = d < crit;
    Ok(Outcome::ok(json!({
        "ensemble": format!("{spec:?}"),
        "shift": shift,
        "replicas": count,
        "ks": d,
        "critical_value": crit,
        "alpha": a.alpha,
        "passage_summary": summary(&corners),
        "ensemble_summary": summary(&top),
        "passed": passed,
    }))
    .verdict(passed))
}
