use alloc::vec::Vec;

use crate::error::arg_err;
use crate::{Error, Result, C64};

/// Discrete (or quadrature) inner product `⟨u, v⟩ = Σ w_i u_i conj(v_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedInnerProduct {
    weights: Vec<f64>,
}

impl WeightedInnerProduct {
    /// Weights must be nonnegative with at least one positive entry.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(arg_err!("inner-product weights must be finite and nonnegative"));
        }
        if !weights.iter().any(|w| *w > 0.0) {
            return Err(arg_err!("inner-product weights are all zero"));
        }
        Ok(Self { weights })
    }

    /// Unit weights on `n` indices.
    pub fn counting(n: usize) -> Self {
        Self { weights: alloc::vec![1.0; n] }
    }

    /// The weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Size of the index set.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    /// True for an empty index set.
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `⟨u, v⟩`, linear in `u`.
    pub fn inner(&self, u: &[C64], v: &[C64]) -> C64 {
        u.iter().zip(v).zip(&self.weights).map(|((a, b), w)| a * b.conj() * *w).sum()
    }

    /// Induced norm.
    pub fn norm(&self, u: &[C64]) -> f64 {
        libm::sqrt(self.inner(u, u).re.max(0.0))
    }
}

/// Relative pivot below which a vector counts as dependent on the previous ones.
const RANK_TOL: f64 = 1e-12;

/// Modified Gram–Schmidt with one full re-orthogonalization pass.
///
/// Output `k` spans the same space as inputs `0..=k`, so processing order is
/// preserved. A vector whose residual norm drops below `1e-12` times its own
/// norm is reported as [`Error::Dependence`].
pub fn orthonormalize(vectors: &[Vec<C64>], ip: &WeightedInnerProduct) -> Result<Vec<Vec<C64>>> {
    let mut out: Vec<Vec<C64>> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != ip.len() {
            return Err(Error::Dimension(alloc::format!(
                "vector {index} has length {} but the inner product has {}",
                v.len(),
                ip.len()
            )));
        }
        let original = ip.norm(v);
        if original == 0.0 || !original.is_finite() {
            return Err(Error::Dependence { index });
        }
        let mut w = v.clone();
        for _pass in 0..2 {
            for q in &out {
                let c = ip.inner(&w, q);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let norm = ip.norm(&w);
        if norm < RANK_TOL * original {
            return Err(Error::Dependence { index });
        }
        for wi in w.iter_mut() {
            *wi /= norm;
        }
        out.push(w);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn re(v: &[f64]) -> Vec<C64> {
        v.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    #[test]
    fn two_step() {
        let out = orthonormalize(&[re(&[1.0, 0.0]), re(&[1.0, 1.0])], &WeightedInnerProduct::counting(2))
            .unwrap();
        assert!((out[0][0].re - 1.0).abs() < 1e-15 && out[0][1].norm() < 1e-15);
        assert!(out[1][0].norm() < 1e-15 && (out[1][1].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn geometric_weight_second_function() {
        // {1, x} under weights q^x on {0..T}: second function ∝ x − q/(1−q) = x − 1
        let t = 80;
        let ip = WeightedInnerProduct::new((0..=t).map(|x| libm::pow(0.5, x as f64)).collect()).unwrap();
        let ones = vec![C64::new(1.0, 0.0); t + 1];
        let xs: Vec<C64> = (0..=t).map(|x| C64::new(x as f64, 0.0)).collect();
        let out = orthonormalize(&[ones, xs], &ip).unwrap();
        // ratio of values at x=0 and x=3 must be (0-1)/(3-1)
        let r = out[1][0].re / out[1][3].re;
        assert!((r + 0.5).abs() < 1e-12);
        assert!((ip.norm(&out[1]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_point() {
        let ip = WeightedInnerProduct::counting(3);
        let inp = vec![re(&[1.0, 0.0, 0.0]), re(&[0.0, 0.6, 0.8])];
        let out = orthonormalize(&inp, &ip).unwrap();
        for (a, b) in out.iter().flatten().zip(inp.iter().flatten()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn dependence_reports_index() {
        let ip = WeightedInnerProduct::counting(2);
        let e = orthonormalize(&[re(&[1.0, 1.0]), re(&[2.0, 2.0])], &ip).unwrap_err();
        assert_eq!(e, Error::Dependence { index: 1 });
    }

    #[test]
    fn weights_validated() {
        assert!(WeightedInnerProduct::new(vec![0.0, 0.0]).is_err());
        assert!(WeightedInnerProduct::new(vec![1.0, -1.0]).is_err());
    }
}
