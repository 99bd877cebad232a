//! Determinantal point processes on finite weighted ground sets.
//!
//! Probabilities always carry the reference-measure factor `Π μ({x})`
//! explicitly: a projection frame with rows `φ_i` orthonormal in `L²(μ)`
//! gives `P(A) = |det(φ_i(x_j))|² Π_{x∈A} μ({x})`, which reduces to the
//! familiar `|det Q_A|²` on counting measure.

mod kernel;
mod law;
mod sample;
mod space;

pub use kernel::{check_admissible, mixed_probability, AdmissibilityReport, KernelMatrix};
pub use law::{
    biorthogonal_counterexample, biorthogonal_exact_law, correlation_from_top, inclusion_probability, projection_exact_law,
    BiorthogonalLaw, ExactLaw, ENUMERATION_CAP,
};
pub use sample::{sample_projection, ProjectionSampler};
pub use space::{Configuration, GroundSpace, ProjectionFrame, FRAME_TOL};

/// Subsets of `{0..n}` of size `k` in lexicographic order.
pub(crate) fn k_subsets(n: usize, k: usize) -> KSubsets {
    KSubsets { n, current: if k <= n { Some((0..k).collect()) } else { None } }
}

pub(crate) struct KSubsets {
    n: usize,
    current: Option<alloc::vec::Vec<usize>>,
}

impl Iterator for KSubsets {
    type Item = alloc::vec::Vec<usize>;

    fn next(&mut self) -> Option<Self::Item> {
        let out = self.current.take()?;
        let k = out.len();
        let mut nxt = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if nxt[i] < self.n - k + i {
                nxt[i] += 1;
                for j in i + 1..k {
                    nxt[j] = nxt[j - 1] + 1;
                }
                self.current = Some(nxt);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// `C(n, k)` as `f64` (saturating for huge values).
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerate_lexicographically() {
        let all: alloc::vec::Vec<_> = k_subsets(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], [0, 1]);
        assert_eq!(all[5], [2, 3]);
        assert_eq!(k_subsets(3, 0).count(), 1);
        assert_eq!(k_subsets(2, 3).count(), 0);
        assert_eq!(binomial(10, 3), 120.0);
    }
}
