//! Uniform spanning tree of the complete graph `K_n`: the transfer-current
//! kernel, exact edge-set probabilities, closed-form tree statistics, exact
//! enumeration, Wilson sampling and the matrix-tree count for small graphs.
//!
//! Vertices are labelled `1..=n`.

mod stats;
mod tree;

pub use stats::{
    degree_factorial_moment, degree_factorial_moment_exact, distance_pmf, distance_pmf_exact,
    leaf_statistics, leaf_statistics_exact, shape_probability, shape_probability_exact,
    LeafStatistics, LeafStatisticsExact, EXACT_LIMIT,
};
pub use tree::{
    enumerate_trees, kirchhoff_count, sample_distance, sample_wilson, Graph, SpanningTree,
    ENUMERATION_LIMIT,
};

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::arg_err;
use crate::numerics::bareiss_det;
use crate::Result;

/// Directed edge `tail → head` of `K_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    /// Start vertex.
    pub tail: usize,
    /// End vertex.
    pub head: usize,
}

impl OrientedEdge {
    /// Checks `1 ≤ tail, head ≤ n` and `tail ≠ head`.
    pub fn new(n: usize, tail: usize, head: usize) -> Result<Self> {
        if tail == head || tail == 0 || head == 0 || tail > n || head > n {
            return Err(arg_err!("({tail}→{head}) is not an edge of K_{n}"));
        }
        Ok(Self { tail, head })
    }

    /// Edge `{u, v}` oriented from the smaller label to the larger.
    pub fn canonical(n: usize, u: usize, v: usize) -> Result<Self> {
        Self::new(n, u.min(v), u.max(v))
    }

    /// Same edge, other orientation.
    pub fn reversed(self) -> Self {
        Self { tail: self.head, head: self.tail }
    }

    fn unordered(self) -> (usize, usize) {
        (self.tail.min(self.head), self.tail.max(self.head))
    }
}

/// `n · M(e, f)`, an integer in `{−2, −1, 0, 1, 2}`.
fn scaled_current(e: OrientedEdge, f: OrientedEdge) -> i64 {
    let ind = |b: bool| b as i64;
    ind(e.tail == f.tail) + ind(e.head == f.head) - ind(e.tail == f.head) - ind(e.head == f.tail)
}

fn check_edge(n: usize, e: OrientedEdge) -> Result<()> {
    OrientedEdge::new(n, e.tail, e.head).map(|_| ())
}

/// Current through `f` when a unit current enters at `tail(e)` and leaves at
/// `head(e)`, all edges of `K_n` having unit resistance. Equals `2/n` on the
/// diagonal, `±1/n` when the edges share exactly one endpoint and 0 when they
/// are disjoint.
pub fn transfer_current(n: usize, e: OrientedEdge, f: OrientedEdge) -> Result<BigRational> {
    if n < 2 {
        return Err(arg_err!("K_{n} has no edges"));
    }
    check_edge(n, e)?;
    check_edge(n, f)?;
    Ok(BigRational::new(BigInt::from(scaled_current(e, f)), BigInt::from(n)))
}

/// `P(in_edges ⊆ T, out_edges ∩ T = ∅)` for the uniform spanning tree `T` of
/// `K_n`, as the determinant of the transfer-current matrix with the rows of
/// the excluded edges replaced by `δ − M`.
///
/// Edges are unordered; orientations are chosen canonically and do not
/// affect the result.
pub fn subset_probability(
    n: usize,
    in_edges: &[(usize, usize)],
    out_edges: &[(usize, usize)],
) -> Result<BigRational> {
    if n < 2 {
        return Err(arg_err!("K_{n} has no edges"));
    }
    let edges: Vec<OrientedEdge> = in_edges
        .iter()
        .chain(out_edges)
        .map(|&(u, v)| OrientedEdge::canonical(n, u, v))
        .collect::<Result<_>>()?;
    let mut keys: Vec<(usize, usize)> = edges.iter().map(|e| e.unordered()).collect();
    keys.sort_unstable();
    if keys.windows(2).any(|w| w[0] == w[1]) {
        return Err(arg_err!("edge lists overlap or repeat an edge"));
    }
    let k = in_edges.len();
    let m = edges.len();
    let rows: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let c = scaled_current(edges[i], edges[j]);
                    let v = if i < k { c } else { (i == j) as i64 * n as i64 - c };
                    BigInt::from(v)
                })
                .collect()
        })
        .collect();
    let denom = num_traits::pow(BigInt::from(n), m);
    Ok(BigRational::new(bareiss_det(&rows), denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn current_table() {
        let e = OrientedEdge::new(4, 1, 2).unwrap();
        assert_eq!(transfer_current(4, e, e).unwrap(), q(1, 2));
        assert_eq!(transfer_current(4, e, OrientedEdge::new(4, 1, 3).unwrap()).unwrap(), q(1, 4));
        assert_eq!(transfer_current(4, e, OrientedEdge::new(4, 3, 1).unwrap()).unwrap(), q(-1, 4));
        let f = OrientedEdge::new(5, 3, 4).unwrap();
        assert!(transfer_current(5, OrientedEdge::new(5, 1, 2).unwrap(), f).unwrap().is_zero());
        assert!(OrientedEdge::new(4, 1, 5).is_err());
        assert!(OrientedEdge::new(4, 2, 2).is_err());
    }

    #[test]
    fn orientation_antisymmetry() {
        let n = 6;
        for (a, b, c, d) in [(1, 2, 2, 3), (1, 2, 1, 3), (4, 5, 5, 4), (1, 2, 3, 4)] {
            let e = OrientedEdge::new(n, a, b).unwrap();
            let f = OrientedEdge::new(n, c, d).unwrap();
            let m = transfer_current(n, e, f).unwrap();
            assert_eq!(transfer_current(n, e.reversed(), f).unwrap(), -m.clone());
            assert_eq!(transfer_current(n, e, f.reversed()).unwrap(), -m);
        }
    }

    #[test]
    fn small_subset_probabilities() {
        assert_eq!(subset_probability(4, &[(1, 2)], &[]).unwrap(), q(1, 2));
        assert_eq!(subset_probability(4, &[(1, 2), (2, 3)], &[]).unwrap(), q(3, 16));
        assert_eq!(subset_probability(4, &[], &[(1, 2), (1, 3)]).unwrap(), q(3, 16));
        assert_eq!(subset_probability(4, &[], &[]).unwrap(), BigRational::one());
        assert!(subset_probability(4, &[(1, 2), (2, 3), (1, 3)], &[]).unwrap().is_zero());
        assert!(subset_probability(4, &[(1, 2)], &[(2, 1)]).is_err());
    }
}
