//! Wishart, Jacobi and Meixner ensembles (β = 2): matrix-model and
//! projection-DPP samplers, joint densities, and orthonormal frames.

mod density;
mod frame;

pub use density::{log_density, LogDensity};
pub use frame::{
    meixner_truncate, meixner_weights, projection_frame, projection_frame_on, wishart_support,
    FrameMethod, MEIXNER_TOL, QUADRATURE_POINTS,
};

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::dpp::{ProjectionSampler};
use crate::error::arg_err;
use crate::numerics::{cholesky, hermitian_eigenvalues, solve_lower, DenseMatrix};
use crate::{Result, C64};

/// Ensemble and its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnsembleSpec {
    /// Eigenvalues of `AA*`, `A` an `m × n` standard complex Gaussian matrix.
    Wishart {
        /// Rows of `A`.
        m: usize,
        /// Columns of `A`.
        n: usize,
    },
    /// Eigenvalues of `AA*(AA* + BB*)^{−1}` with `A` of size `n × n1` and `B`
    /// of size `n × n2`.
    Jacobi {
        /// Columns of `A`.
        n1: usize,
        /// Columns of `B`.
        n2: usize,
        /// Matrix size.
        n: usize,
    },
    /// `m` particles on `ℕ` with weight `C(h+n−m, h) q^h`.
    Meixner {
        /// Particle count.
        m: usize,
        /// Shape parameter, `n >= m`.
        n: usize,
        /// Ratio in `(0, 1)`.
        q: f64,
    },
}

impl EnsembleSpec {
    /// Checks the parameter constraints.
    pub fn validate(&self) -> Result<()> {
        match *self {
            EnsembleSpec::Wishart { m, n } => {
                if m == 0 || m > n {
                    return Err(arg_err!("Wishart needs 1 <= m <= n, got m={m}, n={n}"));
                }
            }
            EnsembleSpec::Jacobi { n1, n2, n } => {
                if n == 0 || n > n1 || n > n2 {
                    return Err(arg_err!("Jacobi needs 1 <= n <= min(n1, n2), got n1={n1}, n2={n2}, n={n}"));
                }
            }
            EnsembleSpec::Meixner { m, n, q } => {
                if m == 0 || m > n {
                    return Err(arg_err!("Meixner needs 1 <= m <= n, got m={m}, n={n}"));
                }
                if !(q > 0.0 && q < 1.0) {
                    return Err(arg_err!("Meixner needs 0 < q < 1, got {q}"));
                }
            }
        }
        Ok(())
    }

    /// Number of eigenvalues / particles.
    pub fn size(&self) -> usize {
        match *self {
            EnsembleSpec::Wishart { m, .. } | EnsembleSpec::Meixner { m, .. } => m,
            EnsembleSpec::Jacobi { n, .. } => n,
        }
    }
}

/// One draw: ascending eigenvalues or particle positions.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSample {
    /// Ensemble drawn from.
    pub spec: EnsembleSpec,
    /// Ascending values.
    pub values: Vec<f64>,
}

impl EigenSample {
    /// Largest value.
    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }
}

/// Reusable sampler; the Meixner lattice frame is built once.
#[derive(Debug, Clone)]
pub struct EnsembleSampler {
    spec: EnsembleSpec,
    meixner: Option<(ProjectionSampler, Vec<f64>)>,
}

impl EnsembleSampler {
    /// Validates the spec and prepares any precomputation.
    pub fn new(spec: EnsembleSpec) -> Result<Self> {
        spec.validate()?;
        let meixner = match spec {
            EnsembleSpec::Meixner { .. } => {
                let f = projection_frame(&spec)?;
                Some((ProjectionSampler::new(&f), f.space().points().to_vec()))
            }
            _ => None,
        };
        Ok(Self { spec, meixner })
    }

    /// Ensemble being sampled.
    pub fn spec(&self) -> EnsembleSpec {
        self.spec
    }

    /// Draws one sample.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<EigenSample> {
        let values = match (self.spec, &self.meixner) {
            (EnsembleSpec::Wishart { m, n }, _) => {
                let a = gaussian(m, n, rng);
                hermitian_eigenvalues(&a.matmul(&a.adjoint()))?
            }
            (EnsembleSpec::Jacobi { n1, n2, n }, _) => {
                let a = gaussian(n, n1, rng);
                let b = gaussian(n, n2, rng);
                let aa = a.matmul(&a.adjoint());
                let s = aa.add(&b.matmul(&b.adjoint()));
                let l = cholesky(&s)?;
                // C = L⁻¹ A A* L⁻*, congruent to the pencil (AA*, S)
                let x = solve_lower(&l, &a);
                let c = x.matmul(&x.adjoint());
                hermitian_eigenvalues(&c.hermitian_part())?
            }
            (EnsembleSpec::Meixner { .. }, Some((sampler, labels))) => {
                let c = sampler.sample(rng)?;
                c.indices().iter().map(|&i| labels[i]).collect()
            }
            (EnsembleSpec::Meixner { .. }, None) => unreachable!("built in new"),
        };
        Ok(EigenSample { spec: self.spec, values })
    }
}

/// Entries with independent `N(0, 1/2)` real and imaginary parts.
fn gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DenseMatrix {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    DenseMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * s, im * s)
    })
}

/// Draws one sample; see [`EnsembleSampler`] for repeated draws.
pub fn sample_eigs<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> Result<EigenSample> {
    EnsembleSampler::new(*spec)?.sample(rng)
}
