use alloc::vec::Vec;

use super::GroundSpace;
use crate::error::arg_err;
use crate::numerics::{det, hermitian_eigenvalues, DenseMatrix};
use crate::{Error, Result, C64};

const HERMITIAN_TOL: f64 = 1e-12;
const SPECTRUM_TOL: f64 = 1e-10;

/// Hermitian kernel `K(x_i, x_j)` on a weighted ground set.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    space: GroundSpace,
    k: DenseMatrix,
}

impl KernelMatrix {
    /// Checks shape and Hermitian symmetry (within `1e-12`).
    pub fn new(space: GroundSpace, k: DenseMatrix) -> Result<Self> {
        if !k.is_square() || k.rows() != space.len() {
            return Err(Error::Dimension(alloc::format!(
                "kernel is {}x{} on {} points",
                k.rows(),
                k.cols(),
                space.len()
            )));
        }
        let dev = k.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::Symmetry { deviation: dev });
        }
        Ok(Self { space, k })
    }

    /// Ground space.
    pub fn space(&self) -> &GroundSpace {
        &self.space
    }

    /// Kernel entries.
    pub fn matrix(&self) -> &DenseMatrix {
        &self.k
    }

    /// `√μ_i K(x_i, x_j) √μ_j`: the kernel with the measure absorbed, whose
    /// spectrum is that of the integral operator on `L²(μ)`.
    pub fn absorbed(&self) -> DenseMatrix {
        let w = self.space.weights();
        DenseMatrix::from_fn(self.k.rows(), self.k.cols(), |i, j| {
            self.k[(i, j)] * libm::sqrt(w[i] * w[j])
        })
    }
}

/// Outcome of the spectral admissibility test.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    /// True iff every eigenvalue lies in `[−1e-10, 1 + 1e-10]`.
    pub admissible: bool,
    /// Ascending eigenvalues of the weighted operator.
    pub eigenvalues: Vec<f64>,
    /// Eigenvalues outside `[0, 1]` beyond the tolerance.
    pub offenders: Vec<f64>,
}

/// A Hermitian kernel defines a DPP iff its operator spectrum lies in `[0, 1]`.
pub fn check_admissible(k: &KernelMatrix) -> Result<AdmissibilityReport> {
    let eigenvalues = hermitian_eigenvalues(&k.absorbed())?;
    let offenders: Vec<f64> = eigenvalues
        .iter()
        .copied()
        .filter(|l| !(-SPECTRUM_TOL..=1.0 + SPECTRUM_TOL).contains(l))
        .collect();
    Ok(AdmissibilityReport { admissible: offenders.is_empty(), eigenvalues, offenders })
}

/// `P(in ⊆ X, out ∩ X = ∅)` as the determinant of the kernel restricted to
/// `in ∪ out` with the `out` rows replaced by `δ_ij − K(x_i, x_j)`.
///
/// Point masses are absorbed symmetrically (`√(μ_i μ_j) K`), so on counting
/// measure this is the textbook block formula verbatim.
pub fn mixed_probability(k: &KernelMatrix, in_points: &[usize], out_points: &[usize]) -> Result<f64> {
    let n = k.space.len();
    let mut all: Vec<usize> = in_points.iter().chain(out_points).copied().collect();
    if let Some(bad) = all.iter().find(|&&i| i >= n) {
        return Err(arg_err!("point index {bad} outside ground set of size {n}"));
    }
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(arg_err!("in/out point lists overlap or repeat a point"));
    }
    let report = check_admissible(k)?;
    if !report.admissible {
        return Err(Error::Domain(alloc::format!(
            "kernel spectrum outside [0,1]: {:?}",
            report.offenders
        )));
    }
    let order: Vec<usize> = in_points.iter().chain(out_points).copied().collect();
    let kin = in_points.len();
    let w = k.space.weights();
    let m = DenseMatrix::from_fn(order.len(), order.len(), |i, j| {
        let (x, y) = (order[i], order[j]);
        let kv = k.k[(x, y)] * libm::sqrt(w[x] * w[y]);
        if i < kin {
            kv
        } else {
            let delta = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            delta - kv
        }
    });
    Ok(det(&m)?.re)
}
