use alloc::vec::Vec;

use super::DenseMatrix;
use super::hermitian_eigenvalues;
use crate::error::arg_err;
use crate::{Result, C64};

/// Nodes and weights of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    /// Ascending nodes.
    pub nodes: Vec<f64>,
    /// Positive weights.
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// True for the empty rule.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Largest polynomial degree integrated exactly (Gauss rules: `2k − 1`).
    pub fn exact_degree(&self) -> usize {
        (2 * self.len()).saturating_sub(1)
    }

    /// `Σ w_i f(x_i)`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `(L_k(x), L_{k-1}(x))` by the Laguerre recurrence.
fn laguerre_pair(k: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = 1.0 - x;
    if k == 0 {
        return (p0, 0.0);
    }
    for j in 1..k {
        let jf = j as f64;
        let p2 = ((2.0 * jf + 1.0 - x) * p1 - jf * p0) / (jf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// `k`-point Gauss–Laguerre rule for `∫_0^∞ f(x) e^{−x} dx`.
///
/// Nodes start from the eigenvalues of the Jacobi matrix (diagonal `2j+1`,
/// off-diagonal `j`), are polished by Newton on `L_k`, and weights use
/// `w_i = x_i / ((k+1)² L_{k+1}(x_i)²)` so tiny tail weights keep full
/// relative accuracy.
pub fn gauss_laguerre(k: usize) -> Result<QuadratureRule> {
    if k == 0 || k > 180 {
        return Err(arg_err!("Gauss–Laguerre order must be in 1..=180, got {k}"));
    }
    let jac = DenseMatrix::from_fn(k, k, |i, j| {
        let v = if i == j {
            (2 * i + 1) as f64
        } else if i + 1 == j {
            j as f64
        } else if j + 1 == i {
            i as f64
        } else {
            0.0
        };
        C64::new(v, 0.0)
    });
    let mut nodes = hermitian_eigenvalues(&jac)?;
    let kf = k as f64;
    for x in nodes.iter_mut() {
        for _ in 0..8 {
            let (lk, lkm1) = laguerre_pair(k, *x);
            // x L_k' = k (L_k − L_{k−1})
            let deriv = kf * (lk - lkm1) / *x;
            let step = lk / deriv;
            *x -= step;
            if step.abs() <= 1e-15 * x.abs() {
                break;
            }
        }
    }
    let weights = nodes
        .iter()
        .map(|&x| {
            let (lk1, _) = laguerre_pair(k + 1, x);
            x / ((kf + 1.0) * (kf + 1.0) * lk1 * lk1)
        })
        .collect();
    Ok(QuadratureRule { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u32) -> f64 {
        (1..=n).map(|i| i as f64).product()
    }

    #[test]
    fn integrates_moments_exactly() {
        let rule = gauss_laguerre(64).unwrap();
        assert!((rule.weights.iter().sum::<f64>() - 1.0).abs() < 1e-13);
        for p in [1u32, 5, 20, 40, 60] {
            let got = rule.integrate(|x| libm::pow(x, p as f64));
            let want = factorial(p);
            assert!(((got - want) / want).abs() < 1e-11, "moment {p}: {got} vs {want}");
        }
    }

    #[test]
    fn small_rule_known_values() {
        // 2-point rule: nodes 2 ∓ √2
        let rule = gauss_laguerre(2).unwrap();
        let s = libm::sqrt(2.0);
        assert!((rule.nodes[0] - (2.0 - s)).abs() < 1e-14);
        assert!((rule.nodes[1] - (2.0 + s)).abs() < 1e-14);
        assert!((rule.weights[0] - (2.0 + s) / 4.0).abs() < 1e-14);
    }
}
