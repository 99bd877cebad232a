use alloc::vec::Vec;

use super::{strassen_flow, FinitePoset, MeasurePair};
use crate::dpp::{binomial, k_subsets};
use crate::error::arg_err;
use crate::{Error, Result};

const STATE_LIMIT: f64 = 3000.0;
const MONOTONE_TOL: f64 = 1e-12;
const TRANSLATION_TOL: f64 = 1e-12;
const SUM_TOL: f64 = 1e-10;

/// Reference measure on the lattice `{0, …, T}`.
#[derive(Debug, Clone, PartialEq)]
pub enum VandermondeWeight {
    /// `μ(x) = q^x` at label `x`.
    Geometric {
        /// Ratio in `(0, ∞)`.
        q: f64,
    },
    /// `μ(x) = e^{−step·x}` at label `step·x`.
    ExponentialGrid {
        /// Positive grid spacing.
        step: f64,
    },
    /// Arbitrary positive masses at labels `0, …, T`; must satisfy
    /// `μ(x + y) μ(0) = μ(x) μ(y)` when more than one particle is used.
    Masses(Vec<f64>),
}

impl VandermondeWeight {
    fn lattice(&self, t: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        match self {
            Self::Geometric { q } => {
                if !(*q > 0.0) || !q.is_finite() {
                    return Err(arg_err!("geometric ratio must be positive, got {q}"));
                }
                Ok(((0..=t).map(|x| x as f64).collect(), (0..=t).map(|x| libm::pow(*q, x as f64)).collect()))
            }
            Self::ExponentialGrid { step } => {
                if !(*step > 0.0) || !step.is_finite() {
                    return Err(arg_err!("grid step must be positive, got {step}"));
                }
                let labels: Vec<f64> = (0..=t).map(|x| step * x as f64).collect();
                let masses = labels.iter().map(|l| libm::exp(-l)).collect();
                Ok((labels, masses))
            }
            Self::Masses(m) => {
                if m.len() != t + 1 {
                    return Err(arg_err!("{} masses for the lattice 0..={t}", m.len()));
                }
                if m.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
                    return Err(arg_err!("masses must be positive and finite"));
                }
                Ok(((0..=t).map(|x| x as f64).collect(), m.clone()))
            }
        }
    }

    fn check_translation(&self, masses: &[f64]) -> Result<()> {
        if !matches!(self, Self::Masses(_)) {
            return Ok(());
        }
        let t = masses.len() - 1;
        for x in 0..=t {
            for y in 0..=t - x {
                let lhs = masses[x + y] * masses[0];
                let rhs = masses[x] * masses[y];
                if (lhs - rhs).abs() > TRANSLATION_TOL * lhs.abs().max(rhs.abs()) {
                    return Err(Error::Precondition(alloc::format!(
                        "masses are not translation-multiplicative at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of [`verify_vandermonde`].
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeReport {
    /// Number of strictly increasing `n`-vectors in `{0..T}`.
    pub states: usize,
    /// The reweighted law dominates the base law.
    pub feasible: bool,
    /// Max flow of the coupling network (1 when feasible).
    pub flow_value: f64,
    /// `min_U P_H(U) − P(U)` over upsets (0 when feasible).
    pub margin: f64,
    /// Violating upset as label vectors, when infeasible.
    pub witness: Option<Vec<Vec<f64>>>,
}

/// With `P(x) ∝ Δ(x)² Π μ(x_i)` on strictly increasing `n`-vectors of
/// lattice labels and `P_H ∝ H · P`, checks that `P_H` dominates `P` in the
/// componentwise order.
///
/// `h` receives the increasing label vector and must be nonnegative and
/// increasing in each coordinate; this is checked on every unit step, which
/// generates the componentwise order on increasing vectors.
pub fn verify_vandermonde(
    weight: &VandermondeWeight,
    h: &dyn Fn(&[f64]) -> f64,
    n: usize,
    t: usize,
) -> Result<VandermondeReport> {
    if n == 0 || n > t + 1 {
        return Err(arg_err!("need 1 ≤ n ≤ T + 1, got n = {n}, T = {t}"));
    }
    if binomial(t + 1, n) > STATE_LIMIT {
        return Err(Error::Size(alloc::format!("C({}, {n}) states exceeds {STATE_LIMIT}", t + 1)));
    }
    let (labels, masses) = weight.lattice(t)?;
    if n >= 2 {
        weight.check_translation(&masses)?;
    }
    let states: Vec<Vec<usize>> = k_subsets(t + 1, n).collect();
    let values: Vec<Vec<f64>> = states.iter().map(|s| s.iter().map(|&i| labels[i]).collect()).collect();
    let hv: Vec<f64> = values.iter().map(|v| h(v)).collect();
    if let Some(k) = hv.iter().position(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(Error::Precondition(alloc::format!("H is negative or not finite at {:?}", values[k])));
    }
    for (k, s) in states.iter().enumerate() {
        for i in 0..n {
            let bumped = s[i] + 1;
            if bumped > t || (i + 1 < n && bumped == s[i + 1]) {
                continue;
            }
            let mut up = values[k].clone();
            up[i] = labels[bumped];
            let hu = h(&up);
            if hv[k] > hu + MONOTONE_TOL * hv[k].abs().max(hu.abs()) {
                return Err(Error::Precondition(alloc::format!(
                    "H decreases from {:?} to {up:?}",
                    values[k]
                )));
            }
        }
    }
    let base: Vec<f64> = states
        .iter()
        .zip(&values)
        .map(|(s, v)| {
            let mut d = 1.0;
            for i in 0..n {
                for j in i + 1..n {
                    d *= v[j] - v[i];
                }
            }
            d * d * s.iter().map(|&x| masses[x]).product::<f64>()
        })
        .collect();
    let tilted: Vec<f64> = base.iter().zip(&hv).map(|(b, h)| b * h).collect();
    let normalize = |p: Vec<f64>| -> Result<Vec<f64>> {
        let z: f64 = p.iter().sum();
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::Degenerate(alloc::format!("total mass {z}")));
        }
        Ok(p.into_iter().map(|v| v / z).collect())
    };
    let pair = MeasurePair::new(normalize(base)?, normalize(tilted)?)?;
    let poset = FinitePoset::from_comparator(states.len(), |a, b| {
        states[a].iter().zip(&states[b]).all(|(x, y)| x <= y)
    })?;
    let c = strassen_flow(&poset, &pair)?;
    let margin = c
        .witness
        .as_ref()
        .map_or(0.0, |w| w.iter().map(|&i| pair.p2[i] - pair.p1[i]).sum::<f64>().min(0.0));
    let witness = c.witness.as_ref().map(|w| w.iter().map(|&i| values[i].clone()).collect());
    Ok(VandermondeReport { states: states.len(), feasible: c.feasible, flow_value: c.flow_value, margin, witness })
}

/// Outcome of [`density_ratio_domination`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioReport {
    /// `f / g` is nondecreasing along the lattice.
    pub ratio_increasing: bool,
    /// `max_x (P_g(≥ x) − P_f(≥ x))⁺`; zero when `f·w` dominates `g·w`.
    pub max_violation: f64,
}

impl RatioReport {
    /// `f·w` dominates `g·w` (violation at most `1e-12`).
    pub fn dominated(&self) -> bool {
        self.max_violation <= 1e-12
    }
}

/// Compares the laws `f·w` and `g·w` on the ordered points `0, 1, …`. When
/// `f / g` is increasing the first dominates the second.
pub fn density_ratio_domination(weights: &[f64], f: &[f64], g: &[f64]) -> Result<RatioReport> {
    let len = weights.len();
    if f.len() != len || g.len() != len {
        return Err(Error::Dimension(alloc::format!(
            "{len} weights with densities of length {} and {}",
            f.len(),
            g.len()
        )));
    }
    if weights.iter().chain(f).chain(g).any(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(arg_err!("weights and densities must be nonnegative"));
    }
    for (name, d) in [("f", f), ("g", g)] {
        let total: f64 = d.iter().zip(weights).map(|(a, b)| a * b).sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(arg_err!("{name} integrates to {total}, not 1"));
        }
    }
    let ratio_increasing = (1..len).all(|x| {
        let (a, b) = (f[x - 1] * g[x], f[x] * g[x - 1]);
        a <= b + MONOTONE_TOL * a.abs().max(b.abs())
    });
    let mut tail_f = 0.0;
    let mut tail_g = 0.0;
    let mut max_violation: f64 = 0.0;
    for x in (0..len).rev() {
        tail_f += f[x] * weights[x];
        tail_g += g[x] * weights[x];
        max_violation = max_violation.max(tail_g - tail_f);
    }
    Ok(RatioReport { ratio_increasing, max_violation })
}
