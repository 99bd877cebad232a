//! Directed last-passage percolation on `{1..m} × {1..n}`:
//! `G(i, j) = w(i, j) + max(G(i−1, j), G(i, j−1))`.
//!
//! Geometric weights live on `{0, 1, 2, …}` with `P(w = k) = (1−q) q^k`.
//! With this convention `G(m, n)` has the law of the largest Meixner particle
//! minus `m − 1`; exponential weights of mean 1 give the largest Wishart
//! eigenvalue with no shift.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Exp, Geometric};

use crate::error::arg_err;
use crate::Result;

/// Site-weight distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightKind {
    /// Exponential with the given rate (mean `1/rate`).
    Exponential {
        /// Positive rate.
        rate: f64,
    },
    /// Geometric on `{0, 1, …}` with `P(k) = (1−q) q^k`.
    Geometric {
        /// Ratio in `(0, 1)`.
        q: f64,
    },
    /// Every site has the same weight (for testing).
    Constant {
        /// The weight.
        value: f64,
    },
}

impl WeightKind {
    /// Exponential weights of mean 1.
    pub fn unit_exponential() -> Self {
        WeightKind::Exponential { rate: 1.0 }
    }

    /// Checks parameter ranges.
    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightKind::Exponential { rate } if !(rate > 0.0 && rate.is_finite()) => {
                Err(arg_err!("exponential rate must be positive, got {rate}"))
            }
            WeightKind::Geometric { q } if !(q > 0.0 && q < 1.0) => {
                Err(arg_err!("geometric q must lie in (0, 1), got {q}"))
            }
            WeightKind::Constant { value } if !value.is_finite() => Err(arg_err!("constant weight must be finite")),
            _ => Ok(()),
        }
    }

    fn sampler(&self) -> Result<WeightSampler> {
        self.validate()?;
        Ok(match *self {
            WeightKind::Exponential { rate } => WeightSampler::Exp(Exp::new(rate).expect("validated")),
            WeightKind::Geometric { q } => WeightSampler::Geo(Geometric::new(1.0 - q).expect("validated")),
            WeightKind::Constant { value } => WeightSampler::Const(value),
        })
    }
}

enum WeightSampler {
    Exp(Exp<f64>),
    Geo(Geometric),
    Const(f64),
}

impl WeightSampler {
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            WeightSampler::Exp(d) => d.sample(rng),
            WeightSampler::Geo(d) => d.sample(rng) as f64,
            WeightSampler::Const(v) => *v,
        }
    }
}

/// Last-passage times on an `m × n` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PassageGrid {
    m: usize,
    n: usize,
    kind: WeightKind,
    g: Vec<f64>,
}

impl PassageGrid {
    /// Builds the grid from explicit site weights (row-major, `m × n`).
    pub fn from_weights(m: usize, n: usize, kind: WeightKind, weights: &[f64]) -> Result<Self> {
        if m == 0 || n == 0 || weights.len() != m * n {
            return Err(arg_err!("{} weights for a {m}x{n} grid", weights.len()));
        }
        let mut g = vec![0.0; m * n];
        for i in 0..m {
            for j in 0..n {
                let up = if i > 0 { g[(i - 1) * n + j] } else { f64::NEG_INFINITY };
                let left = if j > 0 { g[i * n + j - 1] } else { f64::NEG_INFINITY };
                let best = up.max(left);
                g[i * n + j] = weights[i * n + j] + if best.is_finite() { best } else { 0.0 };
            }
        }
        Ok(Self { m, n, kind, g })
    }

    /// Row count.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Column count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Weight distribution the grid was drawn from.
    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    /// Row-major passage times.
    pub fn values(&self) -> &[f64] {
        &self.g
    }

    /// `G(m, n)`.
    pub fn corner(&self) -> f64 {
        self.g[self.m * self.n - 1]
    }
}

/// Draws one weight per site, row by row, and fills in `G`.
pub fn sample_grid<R: Rng + ?Sized>(m: usize, n: usize, kind: WeightKind, rng: &mut R) -> Result<PassageGrid> {
    if m == 0 || n == 0 {
        return Err(arg_err!("grid extents must be positive, got {m}x{n}"));
    }
    let s = kind.sampler()?;
    let weights: Vec<f64> = (0..m * n).map(|_| s.draw(rng)).collect();
    PassageGrid::from_weights(m, n, kind, &weights)
}

/// `G(m, n)` alone, using one row of scratch; consumes the generator exactly
/// as [`sample_grid`] does.
pub fn sample_corner<R: Rng + ?Sized>(m: usize, n: usize, kind: WeightKind, rng: &mut R) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(arg_err!("grid extents must be positive, got {m}x{n}"));
    }
    let s = kind.sampler()?;
    let mut row = vec![0.0f64; n];
    for i in 0..m {
        let mut left = f64::NEG_INFINITY;
        for cell in row.iter_mut() {
            let up = if i > 0 { *cell } else { f64::NEG_INFINITY };
            let best = up.max(left);
            let base = if best.is_finite() { best } else { 0.0 };
            *cell = s.draw(rng) + base;
            left = *cell;
        }
    }
    Ok(row[n - 1])
}

/// `G(i, j)` for `1 ≤ i ≤ m`, `1 ≤ j ≤ n`.
pub fn last_passage_time(grid: &PassageGrid, i: usize, j: usize) -> Result<f64> {
    if i == 0 || j == 0 || i > grid.m || j > grid.n {
        return Err(arg_err!("({i}, {j}) outside the {}x{} grid", grid.m, grid.n));
    }
    Ok(grid.g[(i - 1) * grid.n + j - 1])
}

/// Offset between `G(m, n)` and the largest particle of the matching
/// ensemble: 0 for exponential weights, `m − 1` for geometric ones.
pub fn bridge_shift(kind: WeightKind, m: usize) -> usize {
    match kind {
        WeightKind::Geometric { .. } => m.saturating_sub(1),
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn brute_force(m: usize, n: usize, w: &[f64]) -> f64 {
        // every up-right path is a choice of which of the m+n−2 steps go down
        let steps = m + n - 2;
        let mut best = f64::NEG_INFINITY;
        for mask in 0u32..(1 << steps) {
            if mask.count_ones() as usize != m - 1 {
                continue;
            }
            let (mut i, mut j) = (0, 0);
            let mut total = w[0];
            for s in 0..steps {
                if mask >> s & 1 == 1 {
                    i += 1;
                } else {
                    j += 1;
                }
                total += w[i * n + j];
            }
            best = best.max(total);
        }
        best
    }

    #[test]
    fn constant_weights_count_sites() {
        let mut rng = rand::rngs::SmallRng::seed_from_u64(0);
        let g = sample_grid(4, 6, WeightKind::Constant { value: 1.0 }, &mut rng).unwrap();
        for i in 1..=4 {
            for j in 1..=6 {
                assert_eq!(last_passage_time(&g, i, j).unwrap(), (i + j - 1) as f64);
            }
        }
        assert!(last_passage_time(&g, 5, 1).is_err());
        assert!(last_passage_time(&g, 0, 1).is_err());
    }

    #[test]
    fn dp_matches_path_enumeration() {
        let mut rng = rand::rngs::SmallRng::seed_from_u64(1);
        let e = Exp::new(1.0).unwrap();
        for _ in 0..200 {
            let w: Vec<f64> = (0..9).map(|_| e.sample(&mut rng)).collect();
            let g = PassageGrid::from_weights(3, 3, WeightKind::unit_exponential(), &w).unwrap();
            assert_eq!(g.corner(), brute_force(3, 3, &w));
        }
    }

    #[test]
    fn corner_agrees_with_grid() {
        for kind in [WeightKind::unit_exponential(), WeightKind::Geometric { q: 0.4 }] {
            let mut a = rand::rngs::SmallRng::seed_from_u64(2);
            let mut b = rand::rngs::SmallRng::seed_from_u64(2);
            for _ in 0..50 {
                let g = sample_grid(3, 5, kind, &mut a).unwrap();
                assert_eq!(g.corner(), sample_corner(3, 5, kind, &mut b).unwrap());
            }
        }
    }

    #[test]
    fn monotone_in_both_coordinates() {
        let mut rng = rand::rngs::SmallRng::seed_from_u64(3);
        for _ in 0..100 {
            let g = sample_grid(5, 7, WeightKind::Geometric { q: 0.5 }, &mut rng).unwrap();
            for i in 1..=5 {
                for j in 1..=7 {
                    let v = last_passage_time(&g, i, j).unwrap();
                    if i < 5 {
                        assert!(v <= last_passage_time(&g, i + 1, j).unwrap());
                    }
                    if j < 7 {
                        assert!(v <= last_passage_time(&g, i, j + 1).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn geometric_mean() {
        let mut rng = rand::rngs::SmallRng::seed_from_u64(4);
        let q = 0.5;
        let n = 50_000;
        let mean = (0..n).map(|_| sample_corner(1, 1, WeightKind::Geometric { q }, &mut rng).unwrap()).sum::<f64>()
            / n as f64;
        // mean q/(1−q) = 1, variance q/(1−q)² = 2
        assert!((mean - 1.0).abs() < 4.0 * libm::sqrt(2.0 / n as f64));
    }

    #[test]
    fn shifts() {
        assert_eq!(bridge_shift(WeightKind::unit_exponential(), 7), 0);
        assert_eq!(bridge_shift(WeightKind::Geometric { q: 0.5 }, 1), 0);
        assert_eq!(bridge_shift(WeightKind::Geometric { q: 0.5 }, 4), 3);
        assert!(WeightKind::Geometric { q: 1.0 }.validate().is_err());
        assert!(WeightKind::Exponential { rate: 0.0 }.validate().is_err());
    }
}
