use alloc::vec::Vec;

use rand::Rng;

use super::{Configuration, ProjectionFrame};
use crate::{Error, Result, C64};

const DEGENERATE_TOL: f64 = 1e-12;
const MAX_RETRIES: usize = 100;

/// Sequential chain-rule sampler for a projection DPP.
///
/// Each point carries its column `c_x = √μ_x (φ_1(x), …, φ_r(x))`; a point is
/// drawn with probability `‖c_x‖² / (remaining rank)` and every column is then
/// projected onto the orthocomplement of the chosen one.
#[derive(Debug, Clone)]
pub struct ProjectionSampler {
    columns: Vec<Vec<C64>>,
    rank: usize,
}

impl ProjectionSampler {
    /// Precomputes the weighted columns of the frame.
    pub fn new(f: &ProjectionFrame) -> Self {
        let v = f.absorbed();
        Self { columns: (0..v.cols()).map(|x| v.col(x)).collect(), rank: f.rank() }
    }

    /// Number of points in every sample.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Draws one configuration.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Configuration> {
        for _ in 0..MAX_RETRIES {
            if let Some(c) = self.attempt(rng) {
                return Ok(c);
            }
        }
        Err(Error::Degenerate(alloc::format!(
            "projection step degenerate in {MAX_RETRIES} consecutive attempts"
        )))
    }

    fn attempt<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Configuration> {
        let mut cols = self.columns.clone();
        let mut norms: Vec<f64> = cols.iter().map(|c| norm_sqr(c)).collect();
        let mut chosen = Vec::with_capacity(self.rank);
        for _ in 0..self.rank {
            for (i, v) in norms.iter_mut().enumerate() {
                if *v < 0.0 || chosen.contains(&i) {
                    *v = 0.0;
                }
            }
            let total: f64 = norms.iter().sum();
            if total < DEGENERATE_TOL {
                return None;
            }
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = None;
            for (i, &v) in norms.iter().enumerate() {
                if v > 0.0 {
                    acc += v;
                    pick = Some(i);
                    if target < acc {
                        break;
                    }
                }
            }
            let x = pick?;
            let nx = libm::sqrt(norms[x]);
            if nx < DEGENERATE_TOL {
                return None;
            }
            let u: Vec<C64> = cols[x].iter().map(|z| z / nx).collect();
            for (y, c) in cols.iter_mut().enumerate() {
                if norms[y] == 0.0 {
                    continue;
                }
                let dot: C64 = u.iter().zip(c.iter()).map(|(a, b)| a.conj() * b).sum();
                for (ci, ui) in c.iter_mut().zip(&u) {
                    *ci -= dot * ui;
                }
                norms[y] = norm_sqr(c);
            }
            chosen.push(x);
        }
        chosen.sort_unstable();
        Some(Configuration::from_sorted(chosen))
    }
}

fn norm_sqr(c: &[C64]) -> f64 {
    c.iter().map(|z| z.norm_sqr()).sum()
}

/// Draws one configuration; see [`ProjectionSampler`] for repeated draws.
pub fn sample_projection<R: Rng + ?Sized>(f: &ProjectionFrame, rng: &mut R) -> Result<Configuration> {
    ProjectionSampler::new(f).sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpp::{projection_exact_law, GroundSpace};
    use crate::numerics::DenseMatrix;
    use alloc::collections::BTreeMap;
    use rand::SeedableRng;

    #[test]
    fn full_rank_gives_everything() {
        let mut rng = rand::rngs::SmallRng::seed_from_u64(0);
        let f = ProjectionFrame::random(GroundSpace::counting(5), 5, &mut rng).unwrap();
        for _ in 0..50 {
            assert_eq!(sample_projection(&f, &mut rng).unwrap().indices(), &[0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn symmetric_single_point() {
        let mut rng = rand::rngs::SmallRng::seed_from_u64(1);
        let s = 1.0 / libm::sqrt(2.0);
        let f = ProjectionFrame::new(GroundSpace::counting(2), DenseMatrix::from_real(1, 2, &[s, s]).unwrap()).unwrap();
        let sampler = ProjectionSampler::new(&f);
        let n = 100_000;
        let hits = (0..n).filter(|_| sampler.sample(&mut rng).unwrap().contains(0)).count();
        let sigma = libm::sqrt(0.25 / n as f64);
        assert!((hits as f64 / n as f64 - 0.5).abs() < 3.0 * sigma);
    }

    #[test]
    fn weighted_frame_matches_exact_law() {
        let mut rng = rand::rngs::SmallRng::seed_from_u64(2);
        let space = GroundSpace::new(alloc::vec![0.0, 1.0, 2.0, 3.0, 4.0], alloc::vec![0.2, 1.0, 3.0, 0.7, 1.1]).unwrap();
        let f = ProjectionFrame::random(space, 2, &mut rng).unwrap();
        let law = projection_exact_law(&f).unwrap();
        let sampler = ProjectionSampler::new(&f);
        let n = 200_000;
        let mut counts: BTreeMap<Configuration, usize> = BTreeMap::new();
        for _ in 0..n {
            let c = sampler.sample(&mut rng).unwrap();
            assert_eq!(c.len(), 2);
            *counts.entry(c).or_default() += 1;
        }
        let tv: f64 = 0.5
            * law.iter().map(|(c, p)| (p - *counts.get(c).unwrap_or(&0) as f64 / n as f64).abs()).sum::<f64>();
        assert!(tv < 0.01, "tv {tv}");
    }
}
