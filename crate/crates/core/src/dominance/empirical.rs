use alloc::string::String;
use alloc::vec::Vec;

use crate::error::arg_err;
use crate::stats::{dkw_epsilon, ecdf_gaps, Ecdf};
use crate::{Error, Result};

/// Smallest sample accepted by [`empirical_dominance`].
pub const MIN_SAMPLE: usize = 100;

/// Scalar draws with a note of where they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSample {
    /// The draws.
    pub values: Vec<f64>,
    /// Free-form description of the generating model.
    pub source: String,
    /// Seed the draws were generated from.
    pub seed: u64,
}

impl EmpiricalSample {
    /// Wraps draws with their provenance.
    pub fn new(values: Vec<f64>, source: impl Into<String>, seed: u64) -> Self {
        Self { values, source: source.into(), seed }
    }

    /// Number of draws.
    pub fn replicas(&self) -> usize {
        self.values.len()
    }
}

/// Direction reported by [`empirical_dominance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmpiricalVerdict {
    /// The second sample dominates the first.
    Dominates,
    /// The first sample dominates the second.
    DominatedBy,
    /// Neither direction is separated from the band.
    Inconclusive,
}

/// Outcome of [`empirical_dominance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalReport {
    /// Verdict.
    pub verdict: EmpiricalVerdict,
    /// `sup_t F̂₂(t) − F̂₁(t)`.
    pub d12: f64,
    /// `sup_t F̂₁(t) − F̂₂(t)`.
    pub d21: f64,
    /// `ε₁ + ε₂` from the DKW inequality.
    pub band: f64,
    /// `max(d12, d21) − band`: how far the separated direction clears the band.
    pub margin: f64,
}

/// Compares two empirical CDFs against the DKW band `ε₁ + ε₂` with
/// `ε_i = √(ln(2/δ) / (2 N_i))`.
///
/// The second sample dominates when `F̂₂ ≤ F̂₁ + band` everywhere while
/// `F̂₁ − F̂₂` exceeds the band somewhere; symmetrically for the first.
pub fn empirical_dominance(s1: &EmpiricalSample, s2: &EmpiricalSample, delta: f64) -> Result<EmpiricalReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(arg_err!("delta must lie in (0, 1), got {delta}"));
    }
    for s in [s1, s2] {
        if s.replicas() < MIN_SAMPLE {
            return Err(Error::Size(alloc::format!(
                "sample '{}' has {} draws, need at least {MIN_SAMPLE}",
                s.source,
                s.replicas()
            )));
        }
    }
    let (e1, e2) = (Ecdf::new(&s1.values)?, Ecdf::new(&s2.values)?);
    let (d12, d21) = ecdf_gaps(&e1, &e2);
    let band = dkw_epsilon(s1.replicas(), delta) + dkw_epsilon(s2.replicas(), delta);
    let verdict = if d12 <= band && d21 > band {
        EmpiricalVerdict::Dominates
    } else if d21 <= band && d12 > band {
        EmpiricalVerdict::DominatedBy
    } else {
        EmpiricalVerdict::Inconclusive
    };
    Ok(EmpiricalReport { verdict, d12, d21, band, margin: d12.max(d21) - band })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_distr::Exp1;

    fn exp_sample(n: usize, shift: f64, seed: u64) -> EmpiricalSample {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let v = (0..n).map(|_| shift + rng.sample::<f64, _>(Exp1)).collect();
        EmpiricalSample::new(v, "exp", seed)
    }

    #[test]
    fn shifted_exponential_dominates() {
        let r = empirical_dominance(&exp_sample(10_000, 0.0, 1), &exp_sample(10_000, 1.0, 2), 0.01).unwrap();
        assert_eq!(r.verdict, EmpiricalVerdict::Dominates);
        assert!(r.margin > 0.0);
        let r = empirical_dominance(&exp_sample(10_000, 1.0, 2), &exp_sample(10_000, 0.0, 1), 0.01).unwrap();
        assert_eq!(r.verdict, EmpiricalVerdict::DominatedBy);
    }

    #[test]
    fn identical_laws_inconclusive() {
        let hits = (0..100)
            .filter(|&k| {
                let r = empirical_dominance(&exp_sample(500, 0.0, 2 * k), &exp_sample(500, 0.0, 2 * k + 1), 0.05).unwrap();
                r.verdict == EmpiricalVerdict::Inconclusive
            })
            .count();
        assert!(hits >= 95, "{hits}");
    }

    #[test]
    fn small_samples_rejected() {
        let e = empirical_dominance(&exp_sample(50, 0.0, 1), &exp_sample(500, 0.0, 2), 0.05).unwrap_err();
        assert!(matches!(e, Error::Size(_)));
        assert!(empirical_dominance(&exp_sample(500, 0.0, 1), &exp_sample(500, 0.0, 2), 1.5).is_err());
    }
}
