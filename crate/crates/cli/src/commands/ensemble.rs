//! `ensemble` subcommands.

use clap::{Args, Subcommand, ValueEnum};
use dpplab_core::ensembles::{log_density, projection_frame, EnsembleSampler, EnsembleSpec};
use serde::Serialize;
use serde_json::{json, Value};

use super::{params, summary};
use crate::replicate::run_replicas;
use crate::{parse, CliError, Outcome, RunConfig, Table};

/// Ensemble family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Eigenvalues of `AA*`, `A` an `m × n` complex Gaussian matrix.
    Wishart,
    /// Eigenvalues of `AA*(AA* + BB*)^{-1}`.
    Jacobi,
    /// Meixner particles on the nonnegative integers.
    Meixner,
}

/// Ensemble selection.
#[derive(Debug, Clone, Args, Serialize)]
pub struct SpecArgs {
    /// Ensemble family.
    #[arg(long, value_enum)]
    pub ensemble: Family,
    /// Rows (Wishart) or particle count (Meixner).
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Columns (Wishart), shape (Meixner) or matrix size (Jacobi).
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Columns of `A` (Jacobi).
    #[arg(long, default_value_t = 1)]
    pub n1: usize,
    /// Columns of `B` (Jacobi).
    #[arg(long, default_value_t = 1)]
    pub n2: usize,
    /// Ratio (Meixner).
    #[arg(long, default_value_t = 0.5)]
    pub q: f64,
}

impl SpecArgs {
    pub(crate) fn spec(&self) -> Result<EnsembleSpec, CliError> {
        let spec = match self.ensemble {
            Family::Wishart => EnsembleSpec::Wishart { m: self.m, n: self.n },
            Family::Jacobi => EnsembleSpec::Jacobi { n1: self.n1, n2: self.n2, n: self.n },
            Family::Meixner => EnsembleSpec::Meixner { m: self.m, n: self.n, q: self.q },
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Arguments of `ensemble density`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct DensityArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Configuration `x1,x2,...`.
    #[arg(long)]
    pub points: String,
}

/// `ensemble` subcommands.
#[derive(Debug, Subcommand)]
pub enum EnsembleCommand {
    /// Draw configurations (one per replica).
    Sample(SpecArgs),
    /// Log joint density of a configuration.
    Density(DensityArgs),
    /// One-point intensity of the projection kernel on its support.
    Kernel(SpecArgs),
}

impl EnsembleCommand {
    pub(crate) fn describe(&self) -> (&'static str, Value) {
        match self {
            Self::Sample(a) => params("sample", a),
            Self::Density(a) => params("density", a),
            Self::Kernel(a) => params("kernel", a),
        }
    }

    pub(crate) fn run(&self, cfg: &RunConfig) -> Result<Outcome, CliError> {
        match self {
            Self::Sample(a) => {
                let sampler = EnsembleSampler::new(a.spec()?)?;
                let draws = run_replicas(cfg.seed, 0, cfg.replicas, cfg.jobs, |rng| Ok(sampler.sample(rng)?.values))?;
                let mut table = Table::new(&["replica", "index", "value"]);
                for (r, d) in draws.iter().enumerate() {
                    for (i, v) in d.iter().enumerate() {
                        table.push([r.to_string(), i.to_string(), v.to_string()]);
                    }
                }
                let maxima: Vec<f64> = draws.iter().map(|d| d.last().copied().unwrap_or(f64::NAN)).collect();
                Ok(Outcome::ok(json!({
                    "samples": draws,
                    "max": maxima,
                    "max_summary": summary(&maxima),
                }))
                .with_table(table))
            }
            Self::Density(a) => {
                let d = log_density(&a.spec.spec()?, &parse::numbers(&a.points)?)?;
                Ok(Outcome::ok(json!({
                    "unnormalized": d.unnormalized,
                    "log_normalizer": d.log_normalizer,
                    "log_density": d.normalized(),
                })))
            }
            Self::Kernel(a) => {
                let frame = projection_frame(&a.spec()?)?;
                let k = frame.kernel().absorbed();
                let points = frame.space().points().to_vec();
                let intensity: Vec<f64> = (0..points.len()).map(|i| k[(i, i)].re).collect();
                let mut table = Table::new(&["point", "intensity"]);
                for (x, p) in points.iter().zip(&intensity) {
                    table.push([x.to_string(), p.to_string()]);
                }
                Ok(Outcome::ok(json!({
                    "rank": frame.rank(),
                    "support": points.len(),
                    "orthonormality_defect": frame.orthonormality_defect(),
                    "trace": intensity.iter().sum::<f64>(),
                    "points": points,
                    "intensity": intensity,
                }))
                .with_table(table))
            }
        }
    }
}
