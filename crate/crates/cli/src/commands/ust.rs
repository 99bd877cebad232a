//! `ust` subcommands. Vertices are numbered from 1.

use clap::{Args, Subcommand, ValueEnum};
use dpplab_core::ust::{
    degree_factorial_moment, degree_factorial_moment_exact, distance_pmf, distance_pmf_exact, enumerate_trees,
    kirchhoff_count, leaf_statistics, leaf_statistics_exact, sample_distance, sample_wilson, shape_probability,
    shape_probability_exact, subset_probability, Graph, SpanningTree, ENUMERATION_LIMIT, EXACT_LIMIT,
};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use super::{params, summary};
use crate::replicate::run_replicas;
use crate::{parse, CliError, Outcome, RunConfig, Table};

/// Exact statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactStat {
    /// Law of the distance between vertices 1 and 2.
    Distance,
    /// Factorial moments of a vertex degree, orders 1..=k.
    Degree,
    /// Leaf probability, covariance and leaf-fraction variance.
    Leaf,
    /// P(in-edges ⊆ T, out-edges ∩ T = ∅).
    Subset,
    /// Probability of a binary subtree shape with given leg lengths.
    Shape,
}

/// Arguments of `ust exact`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct ExactArgs {
    /// Number of vertices.
    #[arg(long)]
    pub n: usize,
    /// Statistic to compute.
    #[arg(long, value_enum)]
    pub stat: ExactStat,
    /// Highest moment order (degree) or number of marked vertices (shape).
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Required edges `u-v,...` (subset).
    #[arg(long, default_value = "")]
    pub in_edges: String,
    /// Forbidden edges (subset).
    #[arg(long, default_value = "")]
    pub out_edges: String,
    /// Leg lengths (shape).
    #[arg(long, default_value = "")]
    pub legs: String,
}

/// Sampled statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleStat {
    /// Distance between vertices 1 and 2.
    Distance,
    /// Degree of vertex 1.
    Degree,
    /// Fraction of leaves.
    Leaves,
    /// The whole edge list.
    Tree,
}

/// Arguments of `ust sample`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    /// Number of vertices.
    #[arg(long)]
    pub n: usize,
    /// What to record per replica.
    #[arg(long, value_enum, default_value_t = SampleStat::Distance)]
    pub stat: SampleStat,
}

/// Arguments of `ust verify`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Number of vertices (at most 8).
    #[arg(long)]
    pub n: usize,
}

/// `ust` subcommands.
#[derive(Debug, Subcommand)]
pub enum UstCommand {
    /// Closed-form statistics (exact rationals for n ≤ 64).
    Exact(ExactArgs),
    /// Wilson's algorithm, one tree per replica.
    Sample(SampleArgs),
    /// Compare closed forms with full enumeration of trees.
    Verify(VerifyArgs),
}

fn exact_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(num.into(), den.into())
}

impl UstCommand {
    pub(crate) fn describe(&self) -> (&'static str, Value) {
        match self {
            Self::Exact(a) => params("exact", a),
            Self::Sample(a) => params("sample", a),
            Self::Verify(a) => params("verify", a),
        }
    }

    pub(crate) fn run(&self, cfg: &RunConfig) -> Result<Outcome, CliError> {
        match self {
            Self::Exact(a) => exact(a),
            Self::Sample(a) => sample(a, cfg),
            Self::Verify(a) => verify(a.n),
        }
    }
}

fn exact(a: &ExactArgs) -> Result<Outcome, CliError> {
    let n = a.n;
    let small = n <= EXACT_LIMIT;
    let mut table = Table::new(&["index", "value", "exact"]);
    let (name, values, exact): (&str, Value, Option<Vec<String>>) = match a.stat {
        ExactStat::Distance => {
            let v = distance_pmf(n)?;
            let e = if small { Some(exact_strings(&distance_pmf_exact(n)?)) } else { None };
            ("distance_pmf", json!(v), e)
        }
        ExactStat::Degree => {
            let v: Vec<f64> = (1..=a.k).map(|k| degree_factorial_moment(n, k)).collect::<Result<_, _>>()?;
            let e = if small {
                let ex: Vec<BigRational> = (1..=a.k).map(|k| degree_factorial_moment_exact(n, k)).collect::<Result<_, _>>()?;
                Some(exact_strings(&ex))
            } else {
                None
            };
            ("degree_factorial_moment", json!(v), e)
        }
        ExactStat::Leaf => {
            let s = leaf_statistics(n)?;
            let v = json!({
                "p_leaf": s.p_leaf,
                "expected_fraction": s.expected_fraction,
                "cov_pair": s.cov_pair,
                "var_fraction": s.var_fraction,
            });
            let e = if small {
                let x = leaf_statistics_exact(n)?;
                Some(exact_strings(&[x.p_leaf, x.expected_fraction, x.cov_pair, x.var_fraction]))
            } else {
                None
            };
            ("leaf_statistics", v, e)
        }
        ExactStat::Subset => {
            let p = subset_probability(n, &parse::edges(&a.in_edges)?, &parse::edges(&a.out_edges)?)?;
            let f = p.to_f64().unwrap_or(f64::NAN);
            ("subset_probability", json!([f]), Some(vec![p.to_string()]))
        }
        ExactStat::Shape => {
            let legs = parse::indices(&a.legs)?;
            let v = shape_probability(n, a.k, &legs)?;
            let e = if small { Some(vec![shape_probability_exact(n, a.k, &legs)?.to_string()]) } else { None };
            ("shape_probability", json!([v]), e)
        }
    };
    if let Some(list) = values.as_array() {
        for (i, v) in list.iter().enumerate() {
            let ex = exact.as_ref().and_then(|e| e.get(i).cloned()).unwrap_or_default();
            table.push([(i + 1).to_string(), v.to_string(), ex]);
        }
    }
    let mut results = json!({ "n": n, "statistic": name, "values": values });
    if let Some(e) = exact {
        results["exact"] = json!(e);
    }
    Ok(Outcome::ok(results).with_table(table))
}

fn sample(a: &SampleArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let n = a.n;
    let mut table = Table::new(&["replica", "value"]);
    let (name, values) = match a.stat {
        SampleStat::Distance => {
            let d = run_replicas(cfg.seed, 0, cfg.replicas, cfg.jobs, |rng| Ok(sample_distance(n, rng)? as f64))?;
            ("distance", d)
        }
        SampleStat::Degree => {
            let d = run_replicas(cfg.seed, 0, cfg.replicas, cfg.jobs, |rng| Ok(sample_wilson(n, rng)?.degree(1) as f64))?;
            ("degree", d)
        }
        SampleStat::Leaves => {
            let d = run_replicas(cfg.seed, 0, cfg.replicas, cfg.jobs, |rng| {
                Ok(sample_wilson(n, rng)?.leaf_count() as f64 / n as f64)
            })?;
            ("leaf_fraction", d)
        }
        SampleStat::Tree => {
            let trees = run_replicas(cfg.seed, 0, cfg.replicas, cfg.jobs, |rng| Ok(sample_wilson(n, rng)?))?;
            let mut table = Table::new(&["replica", "u", "v"]);
            for (i, t) in trees.iter().enumerate() {
                for &(u, v) in t.edges() {
                    table.push([i.to_string(), u.to_string(), v.to_string()]);
                }
            }
            let edges: Vec<&[(usize, usize)]> = trees.iter().map(SpanningTree::edges).collect();
            return Ok(Outcome::ok(json!({ "n": n, "statistic": "tree", "trees": edges })).with_table(table));
        }
    };
    for (i, v) in values.iter().enumerate() {
        table.push([i.to_string(), v.to_string()]);
    }
    Ok(Outcome::ok(json!({ "n": n, "statistic": name, "values": values, "summary": summary(&values) })).with_table(table))
}

/// Every closed form against enumeration, in rational arithmetic.
fn verify(n: usize) -> Result<Outcome, CliError> {
    if !(2..=8.min(ENUMERATION_LIMIT)).contains(&n) {
        return Err(CliError::Usage(format!("ust verify needs 2 ≤ n ≤ 8, got {n}")));
    }
    let trees: Vec<SpanningTree> = enumerate_trees(n)?.collect();
    let total = trees.len();
    let mut checks = Vec::new();
    let mut record = |name: &str, ok: bool| checks.push(json!({ "check": name, "ok": ok }));

    record("kirchhoff", kirchhoff_count(&Graph::complete(n))? == total.into());

    let mut dist = vec![0usize; n];
    for t in &trees {
        dist[t.distance(1, 2)] += 1;
    }
    let pmf = distance_pmf_exact(n)?;
    record("distance_pmf", (1..n).all(|k| pmf[k - 1] == ratio(dist[k], total)));

    let falling = |d: usize, k: usize| -> usize { (0..k).map(|i| d.saturating_sub(i)).product() };
    let moments_ok = (1..=3).all(|k| {
        let sum: usize = trees.iter().map(|t| falling(t.degree(1), k)).sum();
        degree_factorial_moment_exact(n, k).map(|m| m == ratio(sum, total)).unwrap_or(false)
    });
    record("degree_factorial_moment", moments_ok);

    let leaf1 = trees.iter().filter(|t| t.degree(1) == 1).count();
    let both = if n >= 3 { trees.iter().filter(|t| t.degree(1) == 1 && t.degree(2) == 1).count() } else { total };
    let leaves: Vec<usize> = trees.iter().map(SpanningTree::leaf_count).collect();
    let mean_l = ratio(leaves.iter().sum(), total);
    let mean_l2 = ratio(leaves.iter().map(|l| l * l).sum(), total);
    let nn = ratio(n, 1);
    let s = leaf_statistics_exact(n)?;
    let p = ratio(leaf1, total);
    record(
        "leaf_statistics",
        s.p_leaf == p
            && s.expected_fraction == &mean_l / &nn
            && s.cov_pair == ratio(both, total) - &p * &p
            && s.var_fraction == (mean_l2 - &mean_l * &mean_l) / (&nn * &nn),
    );

    let edges: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    let mut subsets_ok = true;
    let mut subsets_checked = 0usize;
    for a in 0..edges.len() {
        for b in a + 1..=edges.len() {
            let set: Vec<(usize, usize)> = if b == edges.len() { vec![edges[a]] } else { vec![edges[a], edges[b]] };
            for split in 0u32..1 << set.len() {
                let (ins, outs): (Vec<_>, Vec<_>) =
                    set.iter().enumerate().partition::<Vec<_>, _>(|(k, _)| split >> k & 1 == 1);
                let ins: Vec<(usize, usize)> = ins.into_iter().map(|(_, &e)| e).collect();
                let outs: Vec<(usize, usize)> = outs.into_iter().map(|(_, &e)| e).collect();
                let count = trees
                    .iter()
                    .filter(|t| ins.iter().all(|&(u, v)| t.contains_edge(u, v)) && outs.iter().all(|&(u, v)| !t.contains_edge(u, v)))
                    .count();
                subsets_ok &= subset_probability(n, &ins, &outs)? == ratio(count, total);
                subsets_checked += 1;
            }
        }
    }
    record("subset_probability", subsets_ok);

    let passed = checks.iter().all(|c| c["ok"] == json!(true));
    Ok(Outcome::ok(json!({
        "n": n,
        "trees": total,
        "subset_cases": subsets_checked,
        "checks": checks,
        "passed": passed,
    }))
    .verdict(passed))
}
