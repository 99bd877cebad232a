//! `dominate` subcommands.

use clap::{Args, Subcommand, ValueEnum};
use dpplab_core::dominance::{
    density_ratio_domination, detequality_continuous, detequality_discrete, dominance_exact, empirical_dominance,
    positivity_check, strassen_flow, verify_lyons, verify_vandermonde, DominanceMethod, EmpiricalSample,
    EmpiricalVerdict, FinitePoset, MeasurePair, VandermondeWeight,
};
use dpplab_core::dpp::{Configuration, GroundSpace, ProjectionFrame};
use dpplab_core::ensembles::{EnsembleSampler, EnsembleSpec};
use dpplab_core::lpp::{sample_corner, WeightKind};
use dpplab_core::numerics::gauss_laguerre;
use dpplab_core::C64;
use rand::Rng;
use rand_distr::Exp1;
use serde::Serialize;
use serde_json::{json, Value};

use super::{fmt_set, params};
use crate::replicate::run_replicas;
use crate::rng::{derive_substream, setup_stream, RandomState};
use crate::{parse, CliError, Outcome, RunConfig, Table};

/// A finite poset with two measures.
#[derive(Debug, Clone, Args, Serialize)]
pub struct PosetArgs {
    /// Element labels `a,b,c` (default: 0, 1, ... matching the measures).
    #[arg(long)]
    pub elements: Option<String>,
    /// Strict relations `a<b,a<c` (order generated by them).
    #[arg(long, default_value = "")]
    pub relations: String,
    /// Use the chain order on the listed elements.
    #[arg(long, conflicts_with = "relations")]
    pub chain: bool,
    /// Smaller measure, e.g. `1/3,1/3,1/3`.
    #[arg(long)]
    pub p1: String,
    /// Larger measure.
    #[arg(long)]
    pub p2: String,
}

impl PosetArgs {
    fn build(&self) -> Result<(FinitePoset, MeasurePair), CliError> {
        let pair = MeasurePair::new(parse::numbers(&self.p1)?, parse::numbers(&self.p2)?)?;
        let len = pair.p1.len();
        let labels: Vec<String> = match &self.elements {
            Some(e) => e.split(',').map(|s| s.trim().to_string()).collect(),
            None => (0..len).map(|i| i.to_string()).collect(),
        };
        if labels.len() != len {
            return Err(CliError::Usage(format!("{} elements but measures of length {len}", labels.len())));
        }
        let poset = if self.chain {
            FinitePoset::chain(len)
        } else {
            FinitePoset::new(len, &parse::relations(&self.relations, &labels)?)?
        };
        Ok((poset.with_labels(labels)?, pair))
    }
}

/// Method of `dominate exact`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Enumerate upsets.
    Enumerate,
    /// Max-flow.
    Flow,
}

/// Arguments of `dominate exact`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct ExactArgs {
    #[command(flatten)]
    pub poset: PosetArgs,
    /// Decision method.
    #[arg(long, value_enum, default_value_t = Method::Flow)]
    pub method: Method,
}

/// Arguments of `dominate lyons`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct LyonsArgs {
    /// Ground-set size.
    #[arg(long)]
    pub ground: usize,
    /// Points `n` of the smaller process (frames have `n + 1` rows).
    #[arg(long)]
    pub rank: usize,
    /// Number of random frames.
    #[arg(long, default_value_t = 1)]
    pub trials: u32,
    /// Real rather than complex frames.
    #[arg(long)]
    pub real: bool,
}

/// Reference weight of `dominate vandermonde`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightChoice {
    /// `q^x` on the integers.
    Geometric,
    /// `e^{-x}` on the grid `step·{0..T}`.
    Grid,
}

/// Increasing tilts available from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tilt {
    /// `H = 1`.
    One,
    /// `H = 1 + Σ x_i`.
    Sum,
    /// `H = Π (1 + x_i)`.
    Product,
    /// `H = 1 + max x_i`.
    Max,
    /// `H = Π x_i² / ((x_i + 1)(x_i + 2))`.
    Meixner,
}

impl Tilt {
    /// Evaluates the tilt on an increasing vector.
    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            Tilt::One => 1.0,
            Tilt::Sum => 1.0 + x.iter().sum::<f64>(),
            Tilt::Product => x.iter().map(|v| 1.0 + v).product(),
            Tilt::Max => 1.0 + x.iter().copied().fold(0.0, f64::max),
            Tilt::Meixner => x.iter().map(|h| h * h / ((h + 1.0) * (h + 2.0))).product(),
        }
    }
}

/// Arguments of `dominate vandermonde`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct VandermondeArgs {
    /// Reference weight.
    #[arg(long, value_enum, default_value_t = WeightChoice::Geometric)]
    pub weight: WeightChoice,
    /// Geometric ratio.
    #[arg(long, default_value_t = 0.5)]
    pub q: f64,
    /// Grid spacing.
    #[arg(long, default_value_t = 0.5)]
    pub step: f64,
    /// Particle count.
    #[arg(long)]
    pub n: usize,
    /// Lattice truncation `{0..T}`.
    #[arg(long = "truncate", short = 'T', default_value_t = 10)]
    pub truncate: usize,
    /// Increasing tilt `H`.
    #[arg(long, value_enum, default_value_t = Tilt::Sum)]
    pub tilt: Tilt,
}

/// Preset families for `dominate ratio`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RatioFamily {
    /// Poisson masses with means `a` (f) and `b` (g).
    Poisson,
    /// Geometric masses with ratios `a` (f) and `b` (g).
    Geometric,
}

/// Arguments of `dominate ratio`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct RatioArgs {
    /// Density `f` (explicit form).
    #[arg(long, requires = "g", conflicts_with = "family")]
    pub f: Option<String>,
    /// Density `g` (explicit form).
    #[arg(long, requires = "f")]
    pub g: Option<String>,
    /// Point weights (default 1).
    #[arg(long)]
    pub weights: Option<String>,
    /// Preset family; `--params a,b` and `--truncate T` then define f and g.
    #[arg(long, value_enum)]
    pub family: Option<RatioFamily>,
    /// Preset parameters `a,b`.
    #[arg(long, default_value = "2,1")]
    pub params: String,
    /// Preset truncation.
    #[arg(long = "truncate", default_value_t = 30)]
    pub truncate: usize,
}

/// Arguments of `dominate empirical`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct EmpiricalArgs {
    /// First source: `wishart:m,n`, `jacobi:n1,n2,n`, `meixner:m,n,q`,
    /// `lpp-exp:m,n`, `lpp-geom:m,n,q` or `exp:shift`.
    #[arg(long)]
    pub first: String,
    /// Second source.
    #[arg(long)]
    pub second: String,
    /// DKW confidence parameter.
    #[arg(long, default_value_t = 0.01)]
    pub delta: f64,
    /// Verdict required for exit code 0.
    #[arg(long, value_enum, default_value_t = Expect::Dominates)]
    pub expect: Expect,
}

/// Expected verdict of `dominate empirical`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expect {
    /// The second sample dominates the first.
    Dominates,
    /// The first sample dominates the second.
    DominatedBy,
    /// No separation.
    Inconclusive,
    /// Report only.
    Any,
}

/// Arguments of `dominate identities`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct IdentityArgs {
    /// Ground-set size for the discrete checks.
    #[arg(long, default_value_t = 5)]
    pub ground: usize,
    /// Set size `n` (frames of rank `n + 1`).
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Random frames / instances / evaluation points per check.
    #[arg(long, default_value_t = 10)]
    pub trials: u32,
}

/// `dominate` subcommands.
#[derive(Debug, Subcommand)]
pub enum DominateCommand {
    /// Decide P1 ≺ P2 on a finite poset.
    Exact(ExactArgs),
    /// Monotone coupling by max-flow, or a violating upset.
    Flow(PosetArgs),
    /// Projection processes of ranks n and n + 1 on random frames.
    Lyons(LyonsArgs),
    /// Increasing tilts of Vandermonde-squared laws on a lattice.
    Vandermonde(VandermondeArgs),
    /// Whether `f·w` dominates `g·w` on a chain, via the ratio `f / g`.
    Ratio(RatioArgs),
    /// DKW-banded comparison of two sampled laws.
    Empirical(EmpiricalArgs),
    /// Determinant identities and the positivity lemma.
    Identities(IdentityArgs),
}

impl DominateCommand {
    pub(crate) fn describe(&self) -> (&'static str, Value) {
        match self {
            Self::Exact(a) => params("exact", a),
            Self::Flow(a) => params("flow", a),
            Self::Lyons(a) => params("lyons", a),
            Self::Vandermonde(a) => params("vandermonde", a),
            Self::Ratio(a) => params("ratio", a),
            Self::Empirical(a) => params("empirical", a),
            Self::Identities(a) => params("identities", a),
        }
    }

    pub(crate) fn run(&self, cfg: &RunConfig) -> Result<Outcome, CliError> {
        match self {
            Self::Exact(a) => {
                let (poset, pair) = a.poset.build()?;
                let method = match a.method {
                    Method::Enumerate => DominanceMethod::Enumerate,
                    Method::Flow => DominanceMethod::Flow,
                };
                let r = dominance_exact(&poset, &pair, method)?;
                let witness = r.witness.as_ref().map(|w| labels_of(&poset, w));
                Ok(Outcome::ok(json!({ "dominated": r.dominated, "margin": r.margin, "witness": witness }))
                    .verdict(r.dominated))
            }
            Self::Flow(a) => {
                let (poset, pair) = a.build()?;
                let c = strassen_flow(&poset, &pair)?;
                let mut table = Table::new(&["from", "to", "mass"]);
                let coupling: Vec<Value> = c
                    .coupling
                    .iter()
                    .map(|&(x, y, w)| {
                        let (lx, ly) = (poset.labels()[x].clone(), poset.labels()[y].clone());
                        table.push([lx.clone(), ly.clone(), w.to_string()]);
                        json!({ "from": lx, "to": ly, "mass": w })
                    })
                    .collect();
                let witness = c.witness.as_ref().map(|w| labels_of(&poset, w));
                Ok(Outcome::ok(json!({
                    "feasible": c.feasible,
                    "flow_value": c.flow_value,
                    "coupling": coupling,
                    "witness": witness,
                }))
                .with_table(table)
                .verdict(c.feasible))
            }
            Self::Lyons(a) => lyons(a, cfg),
            Self::Vandermonde(a) => {
                let weight = match a.weight {
                    WeightChoice::Geometric => VandermondeWeight::Geometric { q: a.q },
                    WeightChoice::Grid => VandermondeWeight::ExponentialGrid { step: a.step },
                };
                let tilt = a.tilt;
                let r = verify_vandermonde(&weight, &|x| tilt.eval(x), a.n, a.truncate)?;
                Ok(Outcome::ok(json!({
                    "states": r.states,
                    "feasible": r.feasible,
                    "flow_value": r.flow_value,
                    "margin": r.margin,
                    "witness": r.witness,
                }))
                .verdict(r.feasible))
            }
            Self::Ratio(a) => ratio(a),
            Self::Empirical(a) => empirical(a, cfg),
            Self::Identities(a) => identities(a, cfg),
        }
    }
}

fn labels_of(poset: &FinitePoset, set: &[usize]) -> Vec<String> {
    set.iter().map(|&i| poset.labels()[i].clone()).collect()
}

fn lyons(a: &LyonsArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let tol = cfg.tol.unwrap_or(1e-10);
    let mut trials = Vec::new();
    let mut table = Table::new(&["trial", "flow_value", "feasible", "family_margin", "families"]);
    let (mut min_flow, mut min_margin) = (f64::INFINITY, f64::INFINITY);
    let mut passed = true;
    for t in 0..a.trials {
        let mut rng = derive_substream(cfg.seed, t);
        let space = GroundSpace::counting(a.ground);
        let frame = if a.real {
            ProjectionFrame::random_real(space, a.rank + 1, &mut rng)?
        } else {
            ProjectionFrame::random(space, a.rank + 1, &mut rng)?
        };
        let r = verify_lyons(&frame)?;
        let ok = r.coupling.feasible && r.family_margin.is_none_or(|m| m >= -tol);
        passed &= ok;
        min_flow = min_flow.min(r.coupling.flow_value);
        if let Some(m) = r.family_margin {
            min_margin = min_margin.min(m);
        }
        table.push([
            t.to_string(),
            r.coupling.flow_value.to_string(),
            r.coupling.feasible.to_string(),
            r.family_margin.map_or(String::new(), |m| m.to_string()),
            r.families_checked.to_string(),
        ]);
        let witness: Option<Vec<String>> = r.witness.as_ref().map(|w| w.iter().map(|c| fmt_set(c.indices())).collect());
        trials.push(json!({
            "flow_value": r.coupling.flow_value,
            "feasible": r.coupling.feasible,
            "family_margin": r.family_margin,
            "families_checked": r.families_checked,
            "witness": witness,
        }));
    }
    Ok(Outcome::ok(json!({
        "ground": a.ground,
        "n": a.rank,
        "trials": trials,
        "min_flow_value": min_flow,
        "min_margin": if min_margin.is_finite() { Some(min_margin) } else { None },
        "passed": passed,
    }))
    .with_table(table)
    .verdict(passed))
}

fn ratio(a: &RatioArgs) -> Result<Outcome, CliError> {
    let (f, g, w) = match (&a.f, &a.g, a.family) {
        (Some(f), Some(g), _) => {
            let (f, g) = (parse::numbers(f)?, parse::numbers(g)?);
            let w = match &a.weights {
                Some(w) => parse::numbers(w)?,
                None => vec![1.0; f.len()],
            };
            (f, g, w)
        }
        (_, _, Some(family)) => {
            let p = parse::numbers(&a.params)?;
            if p.len() != 2 {
                return Err(CliError::Usage("--params needs two values a,b".into()));
            }
            let pmf = |par: f64| -> Vec<f64> {
                let raw: Vec<f64> = (0..=a.truncate)
                    .map(|k| match family {
                        RatioFamily::Poisson => (-par + k as f64 * par.ln() - libm::lgamma(k as f64 + 1.0)).exp(),
                        RatioFamily::Geometric => par.powi(k as i32),
                    })
                    .collect();
                let z: f64 = raw.iter().sum();
                raw.into_iter().map(|v| v / z).collect()
            };
            (pmf(p[0]), pmf(p[1]), vec![1.0; a.truncate + 1])
        }
        _ => return Err(CliError::Usage("give --f and --g, or --family".into())),
    };
    let r = density_ratio_domination(&w, &f, &g)?;
    Ok(Outcome::ok(json!({
        "ratio_increasing": r.ratio_increasing,
        "dominated": r.dominated(),
        "max_violation": r.max_violation,
    }))
    .verdict(r.dominated()))
}

/// Where empirical draws come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    /// Largest value of an ensemble.
    Ensemble(EnsembleSpec),
    /// Corner passage time.
    Passage {
        /// Rows.
        m: usize,
        /// Columns.
        n: usize,
        /// Weights.
        kind: WeightKind,
    },
    /// `shift + Exp(1)`.
    Exponential(f64),
}

impl Source {
    /// Parses `family:a,b,...`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let (family, rest) = text.split_once(':').unwrap_or((text, ""));
        let p = parse::numbers(rest)?;
        let need = |k: usize| -> Result<(), CliError> {
            if p.len() == k {
                Ok(())
            } else {
                Err(CliError::Usage(format!("source '{text}' needs {k} parameters")))
            }
        };
        let int = |v: f64| v as usize;
        let s = match family {
            "wishart" => {
                need(2)?;
                Source::Ensemble(EnsembleSpec::Wishart { m: int(p[0]), n: int(p[1]) })
            }
            "jacobi" => {
                need(3)?;
                Source::Ensemble(EnsembleSpec::Jacobi { n1: int(p[0]), n2: int(p[1]), n: int(p[2]) })
            }
            "meixner" => {
                need(3)?;
                Source::Ensemble(EnsembleSpec::Meixner { m: int(p[0]), n: int(p[1]), q: p[2] })
            }
            "lpp-exp" => {
                need(2)?;
                Source::Passage { m: int(p[0]), n: int(p[1]), kind: WeightKind::unit_exponential() }
            }
            "lpp-geom" => {
                need(3)?;
                Source::Passage { m: int(p[0]), n: int(p[1]), kind: WeightKind::Geometric { q: p[2] } }
            }
            "exp" => {
                need(1)?;
                Source::Exponential(p[0])
            }
            _ => return Err(CliError::Usage(format!("unknown source '{text}'"))),
        };
        if let Source::Ensemble(spec) = s {
            spec.validate()?;
        }
        Ok(s)
    }

    /// Draws on substreams `start..start + count`.
    pub fn draw(&self, seed: u64, start: u32, count: usize, jobs: Option<usize>) -> Result<Vec<f64>, CliError> {
        match *self {
            Source::Ensemble(spec) => {
                let sampler = EnsembleSampler::new(spec)?;
                run_replicas(seed, start, count, jobs, |rng| Ok(sampler.sample(rng)?.max()))
            }
            Source::Passage { m, n, kind } => run_replicas(seed, start, count, jobs, |rng| Ok(sample_corner(m, n, kind, rng)?)),
            Source::Exponential(shift) => {
                run_replicas(seed, start, count, jobs, |rng: &mut RandomState| Ok(shift + rng.sample::<f64, _>(Exp1)))
            }
        }
    }
}

fn empirical(a: &EmpiricalArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (s1, s2) = (Source::parse(&a.first)?, Source::parse(&a.second)?);
    let n = cfg.replicas;
    let first = EmpiricalSample::new(s1.draw(cfg.seed, 0, n, cfg.jobs)?, a.first.clone(), cfg.seed);
    let second = EmpiricalSample::new(s2.draw(cfg.seed, n as u32, n, cfg.jobs)?, a.second.clone(), cfg.seed);
    let r = empirical_dominance(&first, &second, a.delta)?;
    let verdict = match r.verdict {
        EmpiricalVerdict::Dominates => "dominates",
        EmpiricalVerdict::DominatedBy => "dominated-by",
        EmpiricalVerdict::Inconclusive => "inconclusive",
    };
    let passed = match a.expect {
        Expect::Dominates => r.verdict == EmpiricalVerdict::Dominates,
        Expect::DominatedBy => r.verdict == EmpiricalVerdict::DominatedBy,
        Expect::Inconclusive => r.verdict == EmpiricalVerdict::Inconclusive,
        Expect::Any => true,
    };
    Ok(Outcome::ok(json!({
        "verdict": verdict,
        "replicas": n,
        "d12": r.d12,
        "d21": r.d21,
        "band": r.band,
        "margin": r.margin,
    }))
    .verdict(passed))
}

fn identities(a: &IdentityArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut rng = setup_stream(cfg.seed);
    let tol_discrete = cfg.tol.unwrap_or(1e-12);
    let n = a.rank;
    let mut worst_discrete: f64 = 0.0;
    for _ in 0..a.trials {
        let frame = ProjectionFrame::random(GroundSpace::counting(a.ground), n + 1, &mut rng)?;
        for set in k_subsets(a.ground, n) {
            worst_discrete = worst_discrete.max(detequality_discrete(&frame, &Configuration::new(set)?)?);
        }
    }

    let mut worst_factor: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    let size = a.ground.max(n + 1);
    let all = k_subsets(size, n.max(1));
    for _ in 0..a.trials {
        let phi: Vec<C64> = (0..size).map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
        let family: Vec<Configuration> = all
            .iter()
            .filter(|_| rng.random::<bool>())
            .map(|s| Configuration::new(s.clone()))
            .collect::<Result<_, _>>()?;
        let family = if family.is_empty() { vec![Configuration::new(all[0].clone())?] } else { family };
        let signs: Vec<f64> = (0..size * all.len()).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect();
        let eps = |x: usize, c: &Configuration| {
            let idx = all.iter().position(|s| s.as_slice() == c.indices()).unwrap_or(0);
            signs[idx * size + x]
        };
        let r = positivity_check(size, &phi, &eps, &family)?;
        worst_factor = worst_factor.max(r.factorization_error);
        min_eig = min_eig.min(r.min_eigenvalue);
    }

    let rule = gauss_laguerre(24)?;
    let mut worst_continuous: f64 = 0.0;
    for dim in 1..=2 {
        for _ in 0..a.trials {
            let x: Vec<f64> = (0..dim).map(|_| 4.0 * rng.random::<f64>()).collect();
            worst_continuous = worst_continuous.max(detequality_continuous(dim, &rule, &x)?.residual());
        }
    }
    let checks = json!({
        "discrete_residual": worst_discrete,
        "factorization_error": worst_factor,
        "min_eigenvalue": min_eig,
        "continuous_residual": worst_continuous,
    });
    let passed = worst_discrete < tol_discrete && worst_factor < 1e-12 && min_eig >= -1e-10 && worst_continuous < 1e-8;
    Ok(Outcome::ok(json!({ "checks": checks, "passed": passed })).verdict(passed))
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
