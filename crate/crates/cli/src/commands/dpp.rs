//! `dpp` subcommands.

use std::collections::BTreeMap;

use clap::{Args, Subcommand};
use dpplab_core::dpp::{
    check_admissible, mixed_probability, projection_exact_law, Configuration, GroundSpace, KernelMatrix, ProjectionFrame,
    ProjectionSampler,
};
use dpplab_core::numerics::DenseMatrix;
use serde::Serialize;
use serde_json::{json, Value};

use super::{fmt_set, params};
use crate::replicate::run_replicas;
use crate::rng::setup_stream;
use crate::{parse, CliError, Outcome, RunConfig, Table};

/// Projection frame: explicit rows or a seeded random frame. Points are
/// indexed from 0.
#[derive(Debug, Clone, Args, Serialize)]
pub struct FrameArgs {
    /// Rows `φ_i` as `a,b,..;c,d,..` (orthonormal under the weights).
    #[arg(long, conflicts_with_all = ["ground", "rank"])]
    pub rows: Option<String>,
    /// Ground-set size of a random frame.
    #[arg(long, requires = "rank")]
    pub ground: Option<usize>,
    /// Rank of a random frame.
    #[arg(long, requires = "ground")]
    pub rank: Option<usize>,
    /// Draw a real rather than complex random frame.
    #[arg(long)]
    pub real: bool,
    /// Point masses (default: counting measure).
    #[arg(long)]
    pub weights: Option<String>,
}

impl FrameArgs {
    pub(crate) fn frame(&self, seed: u64) -> Result<ProjectionFrame, CliError> {
        let space_for = |len: usize| -> Result<GroundSpace, CliError> {
            match &self.weights {
                Some(w) => {
                    let w = parse::numbers(w)?;
                    if w.len() != len {
                        return Err(CliError::Usage(format!("{} weights for {len} points", w.len())));
                    }
                    Ok(GroundSpace::new((0..len).map(|i| i as f64).collect(), w)?)
                }
                None => Ok(GroundSpace::new((0..len).map(|i| i as f64).collect(), vec![1.0; len])?),
            }
        };
        match (&self.rows, self.ground, self.rank) {
            (Some(rows), _, _) => {
                let m = parse::matrix(rows)?;
                Ok(ProjectionFrame::new(space_for(m.cols())?, m)?)
            }
            (None, Some(g), Some(r)) => {
                let mut rng = setup_stream(seed);
                let space = space_for(g)?;
                Ok(if self.real {
                    ProjectionFrame::random_real(space, r, &mut rng)?
                } else {
                    ProjectionFrame::random(space, r, &mut rng)?
                })
            }
            _ => Err(CliError::Usage("give --rows or both --ground and --rank".into())),
        }
    }
}

/// Kernel given directly or through a projection frame.
#[derive(Debug, Clone, Args, Serialize)]
pub struct KernelArgs {
    /// Real symmetric kernel matrix `a,b;c,d`.
    #[arg(long, conflicts_with_all = ["rows", "ground"])]
    pub kernel: Option<String>,
    #[command(flatten)]
    pub frame: FrameArgs,
}

impl KernelArgs {
    fn kernel(&self, seed: u64) -> Result<KernelMatrix, CliError> {
        match &self.kernel {
            Some(k) => {
                let m: DenseMatrix = parse::matrix(k)?;
                let len = m.rows();
                let weights = match &self.frame.weights {
                    Some(w) => parse::numbers(w)?,
                    None => vec![1.0; len],
                };
                let space = GroundSpace::new((0..len).map(|i| i as f64).collect(), weights)?;
                Ok(KernelMatrix::new(space, m)?)
            }
            None => Ok(self.frame.frame(seed)?.kernel()),
        }
    }
}

/// Arguments of `dpp prob`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct ProbArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    /// Points required in the configuration.
    #[arg(long, default_value = "")]
    pub include: String,
    /// Points required to be absent.
    #[arg(long, default_value = "")]
    pub exclude: String,
}

/// `dpp` subcommands.
#[derive(Debug, Subcommand)]
pub enum DppCommand {
    /// Check that a kernel's spectrum lies in [0, 1].
    Admissible(KernelArgs),
    /// Exact law of a projection process over all rank-subsets.
    Law(FrameArgs),
    /// P(include ⊆ X, exclude ∩ X = ∅).
    Prob(ProbArgs),
    /// Sample a projection process (one configuration per replica).
    Sample(FrameArgs),
}

impl DppCommand {
    pub(crate) fn describe(&self) -> (&'static str, Value) {
        match self {
            Self::Admissible(a) => params("admissible", a),
            Self::Law(a) => params("law", a),
            Self::Prob(a) => params("prob", a),
            Self::Sample(a) => params("sample", a),
        }
    }

    pub(crate) fn run(&self, cfg: &RunConfig) -> Result<Outcome, CliError> {
        match self {
            Self::Admissible(a) => {
                let r = check_admissible(&a.kernel(cfg.seed)?)?;
                Ok(Outcome::ok(json!({
                    "admissible": r.admissible,
                    "eigenvalues": r.eigenvalues,
                    "offenders": r.offenders,
                }))
                .verdict(r.admissible))
            }
            Self::Law(a) => {
                let frame = a.frame(cfg.seed)?;
                let law = projection_exact_law(&frame)?;
                let mut table = Table::new(&["set", "probability"]);
                let entries: Vec<Value> = law
                    .iter()
                    .map(|(c, p)| {
                        table.push([fmt_set(c.indices()), p.to_string()]);
                        json!({ "set": c.indices(), "probability": p })
                    })
                    .collect();
                Ok(Outcome::ok(json!({
                    "ground": frame.space().len(),
                    "rank": frame.rank(),
                    "total": law.total(),
                    "law": entries,
                }))
                .with_table(table))
            }
            Self::Prob(a) => {
                let k = a.kernel.kernel(cfg.seed)?;
                let p = mixed_probability(&k, &parse::indices(&a.include)?, &parse::indices(&a.exclude)?)?;
                Ok(Outcome::ok(json!({ "probability": p })))
            }
            Self::Sample(a) => {
                let frame = a.frame(cfg.seed)?;
                let sampler = ProjectionSampler::new(&frame);
                let draws = run_replicas(cfg.seed, 0, cfg.replicas, cfg.jobs, |rng| Ok(sampler.sample(rng)?))?;
                let mut counts: BTreeMap<Configuration, u64> = BTreeMap::new();
                for d in &draws {
                    *counts.entry(d.clone()).or_default() += 1;
                }
                let exact = projection_exact_law(&frame).ok();
                let n = draws.len() as f64;
                let mut table = Table::new(&["set", "count", "frequency", "exact"]);
                let mut rows = Vec::new();
                let mut keys: Vec<Configuration> = counts.keys().cloned().collect();
                if let Some(law) = &exact {
                    keys = law.probabilities().keys().cloned().collect();
                }
                let mut tv = 0.0;
                for c in keys {
                    let count = counts.get(&c).copied().unwrap_or(0);
                    let freq = count as f64 / n;
                    let p = exact.as_ref().map(|l| l.probability(&c));
                    if let Some(p) = p {
                        tv += (freq - p).abs() / 2.0;
                    }
                    table.push([fmt_set(c.indices()), count.to_string(), freq.to_string(), p.map_or(String::new(), |v| v.to_string())]);
                    rows.push(json!({ "set": c.indices(), "count": count, "frequency": freq, "exact": p }));
                }
                let sizes_ok = draws.iter().all(|d| d.len() == frame.rank());
                Ok(Outcome::ok(json!({
                    "rank": frame.rank(),
                    "replicas": draws.len(),
                    "all_of_rank_size": sizes_ok,
                    "total_variation": exact.as_ref().map(|_| tv),
                    "frequencies": rows,
                }))
                .with_table(table)
                .verdict(sizes_ok))
            }
        }
    }
}
