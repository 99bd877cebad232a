use alloc::vec;
use alloc::vec::Vec;

use crate::error::arg_err;
use crate::{Error, Result};

/// Orthonormal polynomials `p_0, …, p_{d-1}` of a discrete measure, held as
/// their three-term recurrence
/// `√b_{k+1} p_{k+1}(x) = (x − a_k) p_k(x) − √b_k p_{k−1}(x)`, `p_0 = 1/√b_0`.
///
/// Coefficients come from the discretized Stieltjes procedure, which stays
/// accurate where Gram–Schmidt on monomials (Hankel moments) does not.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalPolynomials {
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

impl OrthonormalPolynomials {
    /// Runs Stieltjes on the measure `Σ w_i δ_{x_i}` for `count` polynomials.
    pub fn stieltjes(nodes: &[f64], weights: &[f64], count: usize) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::Dimension(alloc::format!(
                "{} nodes but {} weights",
                nodes.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(arg_err!("measure weights must be nonnegative"));
        }
        let support = weights.iter().filter(|w| **w > 0.0).count();
        if count > support {
            return Err(Error::Dependence { index: support });
        }
        let n = nodes.len();
        let mut alpha = Vec::with_capacity(count);
        let mut beta = Vec::with_capacity(count);
        // monic p_{k-1}, p_k evaluated on the nodes, rescaled each step to
        // avoid overflow; the recurrence coefficients are scale-free.
        let mut prev = vec![0.0; n];
        let mut cur = vec![1.0; n];
        let mut prev_norm = 1.0;
        let mut cur_norm: f64 = weights.iter().sum();
        beta.push(cur_norm);
        for k in 0..count {
            let xnorm: f64 = (0..n).map(|i| weights[i] * nodes[i] * cur[i] * cur[i]).sum();
            let a = xnorm / cur_norm;
            alpha.push(a);
            if k + 1 == count {
                break;
            }
            let b = if k == 0 { 0.0 } else { cur_norm / prev_norm };
            let next: Vec<f64> = (0..n).map(|i| (nodes[i] - a) * cur[i] - b * prev[i]).collect();
            let next_norm: f64 = (0..n).map(|i| weights[i] * next[i] * next[i]).sum();
            if !(next_norm > 0.0) {
                return Err(Error::Dependence { index: k + 1 });
            }
            beta.push(next_norm / cur_norm);
            // rescale both to keep magnitudes near 1
            let s = 1.0 / libm::sqrt(next_norm);
            prev = cur.iter().map(|v| v * s).collect();
            cur = next.iter().map(|v| v * s).collect();
            prev_norm = cur_norm * s * s;
            cur_norm = 1.0;
        }
        Ok(Self { alpha, beta })
    }

    /// Builds from known recurrence coefficients (`beta[0]` is the total mass).
    pub fn from_recurrence(alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        if alpha.len() != beta.len() || beta.iter().any(|b| !(*b > 0.0)) {
            return Err(arg_err!("recurrence needs equal lengths and positive beta"));
        }
        Ok(Self { alpha, beta })
    }

    /// Number of polynomials.
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    /// True when no polynomials are held.
    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// Recurrence coefficients `(a_k, b_k)`.
    pub fn recurrence(&self) -> (&[f64], &[f64]) {
        (&self.alpha, &self.beta)
    }

    /// Values `p_0(x), …, p_{d-1}(x)`.
    pub fn eval_all(&self, x: f64) -> Vec<f64> {
        let d = self.len();
        let mut out = Vec::with_capacity(d);
        if d == 0 {
            return out;
        }
        let mut prev = 0.0;
        let mut cur = 1.0 / libm::sqrt(self.beta[0]);
        out.push(cur);
        for k in 0..d - 1 {
            let sb_next = libm::sqrt(self.beta[k + 1]);
            let sb = if k == 0 { 0.0 } else { libm::sqrt(self.beta[k]) };
            let next = ((x - self.alpha[k]) * cur - sb * prev) / sb_next;
            prev = cur;
            cur = next;
            out.push(cur);
        }
        out
    }

    /// Coefficient of `x^k` in `p_k`, i.e. `1/√(b_0 ⋯ b_k)`.
    pub fn leading_coefficient(&self, k: usize) -> f64 {
        let prod: f64 = self.beta[..=k].iter().product();
        1.0 / libm::sqrt(prod)
    }
}
