use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::arg_err;
use crate::numerics::{orthonormalize, DenseMatrix, WeightedInnerProduct};
use crate::{Error, Result, C64};

/// Finite ground set: sorted distinct labels with positive point masses.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundSpace {
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl GroundSpace {
    /// Validates strict ordering of labels and positivity of weights.
    pub fn new(points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::Dimension(alloc::format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        if points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(arg_err!("ground-set labels must be strictly increasing"));
        }
        if weights.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
            return Err(arg_err!("ground-set weights must be positive and finite"));
        }
        Ok(Self { points, weights })
    }

    /// Labels `1..=n` with counting measure.
    pub fn counting(n: usize) -> Self {
        Self { points: (1..=n).map(|i| i as f64).collect(), weights: alloc::vec![1.0; n] }
    }

    /// Labels `0..=t` with the given masses.
    pub fn lattice(weights: Vec<f64>) -> Result<Self> {
        Self::new((0..weights.len()).map(|i| i as f64).collect(), weights)
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// True for the empty space.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point labels.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Point masses.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Inner product induced by the masses.
    pub fn inner_product(&self) -> WeightedInnerProduct {
        WeightedInnerProduct::new(self.weights.clone()).expect("weights validated at construction")
    }

    /// Label of point `i`.
    pub fn label(&self, i: usize) -> f64 {
        self.points[i]
    }
}

/// Sorted distinct point indices into a [`GroundSpace`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration(Vec<usize>);

impl Configuration {
    /// Sorts and checks distinctness.
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(arg_err!("configuration has a repeated point"));
        }
        Ok(Self(indices))
    }

    pub(crate) fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self(indices)
    }

    /// The indices.
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the empty configuration.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// True when every index of `self` is in `other`.
    pub fn is_subset_of(&self, other: &Configuration) -> bool {
        self.0.iter().all(|i| other.contains(*i))
    }
}

/// `rank` functions on a ground set, orthonormal in `L²(μ)`; row `i` of
/// `rows` holds `φ_i` evaluated at every point.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionFrame {
    space: GroundSpace,
    rows: DenseMatrix,
}

/// Default orthonormality tolerance for frames.
pub const FRAME_TOL: f64 = 1e-10;

impl ProjectionFrame {
    /// Validates orthonormality within `1e-10`.
    pub fn new(space: GroundSpace, rows: DenseMatrix) -> Result<Self> {
        Self::with_tolerance(space, rows, FRAME_TOL)
    }

    /// Validates orthonormality within `tol` (max-abs deviation of the Gram
    /// matrix from the identity).
    pub fn with_tolerance(space: GroundSpace, rows: DenseMatrix, tol: f64) -> Result<Self> {
        if rows.cols() != space.len() {
            return Err(Error::Dimension(alloc::format!(
                "frame has {} columns for {} points",
                rows.cols(),
                space.len()
            )));
        }
        if rows.rows() > space.len() {
            return Err(Error::Dimension(alloc::format!(
                "rank {} exceeds ground-set size {}",
                rows.rows(),
                space.len()
            )));
        }
        let frame = Self { space, rows };
        let dev = frame.orthonormality_defect();
        if !(dev <= tol) {
            return Err(Error::Precondition(alloc::format!(
                "frame rows are not orthonormal (Gram deviation {dev:e})"
            )));
        }
        Ok(frame)
    }

    /// Orthonormalizes the given functions under the space's weights.
    pub fn from_functions(space: GroundSpace, functions: &[Vec<C64>]) -> Result<Self> {
        let ortho = orthonormalize(functions, &space.inner_product())?;
        let n = space.len();
        let data = ortho.into_iter().flatten().collect();
        let rows = DenseMatrix::from_vec(functions.len(), n, data)?;
        Self::new(space, rows)
    }

    /// Random frame: complex Gaussian rows orthonormalized under the weights.
    pub fn random<R: Rng + ?Sized>(space: GroundSpace, rank: usize, rng: &mut R) -> Result<Self> {
        let n = space.len();
        let functions: Vec<Vec<C64>> = (0..rank)
            .map(|_| {
                (0..n)
                    .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                    .collect()
            })
            .collect();
        Self::from_functions(space, &functions)
    }

    /// Random real frame.
    pub fn random_real<R: Rng + ?Sized>(space: GroundSpace, rank: usize, rng: &mut R) -> Result<Self> {
        let n = space.len();
        let functions: Vec<Vec<C64>> = (0..rank)
            .map(|_| (0..n).map(|_| C64::new(rng.sample(StandardNormal), 0.0)).collect())
            .collect();
        Self::from_functions(space, &functions)
    }

    /// Max-abs deviation of the weighted Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let ip = self.space.inner_product();
        let mut dev: f64 = 0.0;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let g = ip.inner(self.rows.row(i), self.rows.row(j));
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((g - C64::new(target, 0.0)).norm());
            }
        }
        dev
    }

    /// Ground space.
    pub fn space(&self) -> &GroundSpace {
        &self.space
    }

    /// Number of functions.
    pub fn rank(&self) -> usize {
        self.rows.rows()
    }

    /// Function values, one row per function.
    pub fn rows(&self) -> &DenseMatrix {
        &self.rows
    }

    /// Frame made of the first `k` functions.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k > self.rank() {
            return Err(arg_err!("cannot keep {k} of {} functions", self.rank()));
        }
        let idx: Vec<usize> = (0..k).collect();
        let cols: Vec<usize> = (0..self.space.len()).collect();
        Ok(Self { space: self.space.clone(), rows: self.rows.select(&idx, &cols) })
    }

    /// Kernel `K(x, y) = Σ φ_i(x) conj(φ_i(y))` with respect to `μ`.
    pub fn kernel(&self) -> super::KernelMatrix {
        let n = self.space.len();
        let k = DenseMatrix::from_fn(n, n, |x, y| {
            (0..self.rank()).map(|i| self.rows[(i, x)] * self.rows[(i, y)].conj()).sum()
        });
        super::KernelMatrix::new(self.space.clone(), k).expect("projection kernel is Hermitian")
    }

    /// Rows multiplied by `√μ`, so that they are orthonormal in plain `ℓ²`.
    pub(crate) fn absorbed(&self) -> DenseMatrix {
        let w = self.space.weights();
        DenseMatrix::from_fn(self.rank(), self.space.len(), |i, x| {
            self.rows[(i, x)] * libm::sqrt(w[x])
        })
    }

    /// Reweighted frame: rows `φ_i · g` on the space with masses `μ / g²`.
    /// The induced law is unchanged.
    pub fn reweight(&self, g: &[f64]) -> Result<Self> {
        if g.len() != self.space.len() {
            return Err(Error::Dimension(alloc::format!(
                "reweighting function has {} values for {} points",
                g.len(),
                self.space.len()
            )));
        }
        if g.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(arg_err!("reweighting function must be positive"));
        }
        let weights = self.space.weights().iter().zip(g).map(|(w, v)| w / (v * v)).collect();
        let space = GroundSpace::new(self.space.points().to_vec(), weights)?;
        let rows = DenseMatrix::from_fn(self.rank(), self.space.len(), |i, x| self.rows[(i, x)] * g[x]);
        Ok(Self { space, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn space_validation() {
        assert!(GroundSpace::new(alloc::vec![1.0, 1.0], alloc::vec![1.0, 1.0]).is_err());
        assert!(GroundSpace::new(alloc::vec![1.0, 2.0], alloc::vec![1.0, 0.0]).is_err());
        assert!(GroundSpace::new(alloc::vec![2.0, 1.0], alloc::vec![1.0, 1.0]).is_err());
        assert_eq!(GroundSpace::counting(3).points(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn configuration_sorted_distinct() {
        assert_eq!(Configuration::new(alloc::vec![3, 1]).unwrap().indices(), &[1, 3]);
        assert!(Configuration::new(alloc::vec![1, 1]).is_err());
    }

    #[test]
    fn random_frame_orthonormal_under_weights() {
        let mut rng = rand::rngs::SmallRng::seed_from_u64(7);
        let space = GroundSpace::new(alloc::vec![0.0, 1.0, 2.0, 3.0, 4.0], alloc::vec![0.5, 2.0, 1.0, 0.1, 3.0])
            .unwrap();
        let f = ProjectionFrame::random(space, 3, &mut rng).unwrap();
        assert!(f.orthonormality_defect() < 1e-12);
    }

    #[test]
    fn non_orthonormal_rejected() {
        let rows = DenseMatrix::from_real(1, 2, &[1.0, 1.0]).unwrap();
        assert!(matches!(
            ProjectionFrame::new(GroundSpace::counting(2), rows),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reweight_by_two() {
        let s = 1.0 / libm::sqrt(2.0);
        let f = ProjectionFrame::new(GroundSpace::counting(2), DenseMatrix::from_real(1, 2, &[s, s]).unwrap())
            .unwrap();
        let g = f.reweight(&[2.0, 2.0]).unwrap();
        assert_eq!(g.space().weights(), &[0.25, 0.25]);
        let k0 = f.kernel();
        let k1 = g.kernel();
        assert!((k1.matrix()[(0, 1)] - k0.matrix()[(0, 1)] * 4.0).norm() < 1e-15);
        assert!(g.orthonormality_defect() < 1e-14);
    }
}
