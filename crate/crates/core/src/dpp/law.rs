use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{binomial, k_subsets, Configuration, GroundSpace, ProjectionFrame};
use crate::error::arg_err;
use crate::numerics::{det, DenseMatrix};
use crate::{Error, Result, C64};

/// Largest number of subsets enumerated by the exact-law builders.
pub const ENUMERATION_CAP: usize = 1_000_000;

const SUM_TOL: f64 = 1e-10;
const NEG_TOL: f64 = 1e-12;

/// Fixed-cardinality law: a probability for each `size`-subset.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactLaw {
    space: GroundSpace,
    size: usize,
    probs: BTreeMap<Configuration, f64>,
}

impl ExactLaw {
    /// Validates cardinalities, nonnegativity (within `1e-12`) and total mass
    /// (within `1e-10`).
    pub fn new(space: GroundSpace, size: usize, probs: BTreeMap<Configuration, f64>) -> Result<Self> {
        let n = space.len();
        for (c, &p) in &probs {
            if c.len() != size || c.indices().iter().any(|&i| i >= n) {
                return Err(arg_err!("configuration {:?} is not a {size}-subset of {n} points", c.indices()));
            }
            if !(p >= -NEG_TOL) {
                return Err(Error::Domain(alloc::format!("negative probability {p} at {:?}", c.indices())));
            }
        }
        let total: f64 = probs.values().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::Domain(alloc::format!("probabilities sum to {total}")));
        }
        Ok(Self { space, size, probs })
    }

    /// Ground space.
    pub fn space(&self) -> &GroundSpace {
        &self.space
    }

    /// Number of points in every configuration.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Probability of one configuration (0 off the stored support).
    pub fn probability(&self, c: &Configuration) -> f64 {
        self.probs.get(c).copied().unwrap_or(0.0)
    }

    /// All stored probabilities, keyed by configuration.
    pub fn probabilities(&self) -> &BTreeMap<Configuration, f64> {
        &self.probs
    }

    /// Iterates over `(configuration, probability)` in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Configuration, f64)> {
        self.probs.iter().map(|(c, p)| (c, *p))
    }

    /// Sum of all probabilities.
    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// Total-variation distance `½ Σ |p − q|`.
    pub fn total_variation(&self, other: &ExactLaw) -> f64 {
        let mut acc = 0.0;
        for (c, p) in &self.probs {
            acc += (p - other.probability(c)).abs();
        }
        for (c, q) in &other.probs {
            if !self.probs.contains_key(c) {
                acc += q.abs();
            }
        }
        0.5 * acc
    }
}

fn check_cap(n: usize, k: usize) -> Result<()> {
    let count = binomial(n, k);
    if count > ENUMERATION_CAP as f64 {
        return Err(Error::Size(alloc::format!(
            "C({n}, {k}) = {count:.3e} subsets exceeds the enumeration cap of {ENUMERATION_CAP}; sample instead"
        )));
    }
    Ok(())
}

/// `P(A) = |det φ_i(x_j)|² Π_{x∈A} μ({x})` over all `rank`-subsets.
pub fn projection_exact_law(f: &ProjectionFrame) -> Result<ExactLaw> {
    let n = f.space().len();
    let r = f.rank();
    check_cap(n, r)?;
    let v = f.absorbed();
    let rows: Vec<usize> = (0..r).collect();
    let mut probs = BTreeMap::new();
    for a in k_subsets(n, r) {
        let d = det(&v.select(&rows, &a))?;
        probs.insert(Configuration::from_sorted(a), d.norm_sqr());
    }
    ExactLaw::new(f.space().clone(), r, probs)
}

/// Law of a biorthogonal ensemble together with its normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct BiorthogonalLaw {
    /// The normalized law.
    pub law: ExactLaw,
    /// `det G`, `G_ij = Σ_x φ_i(x) ψ_j(x) μ({x})`, which equals the sum of
    /// the unnormalized weights.
    pub normalization: f64,
}

/// `P(A) ∝ det φ_i(x_j) · det ψ_i(x_j) · Π_{x∈A} μ({x})` over `n`-subsets,
/// `n` being the number of functions in each list.
pub fn biorthogonal_exact_law(phis: &[Vec<f64>], psis: &[Vec<f64>], space: &GroundSpace) -> Result<BiorthogonalLaw> {
    let n = space.len();
    let k = phis.len();
    if psis.len() != k {
        return Err(Error::Dimension(alloc::format!("{k} phis but {} psis", psis.len())));
    }
    if let Some(f) = phis.iter().chain(psis).find(|f| f.len() != n) {
        return Err(Error::Dimension(alloc::format!("function has {} values for {n} points", f.len())));
    }
    check_cap(n, k)?;
    let w = space.weights();
    let g = DenseMatrix::from_fn(k, k, |i, j| {
        C64::new((0..n).map(|x| phis[i][x] * psis[j][x] * w[x]).sum(), 0.0)
    });
    let normalization = det(&g)?.re;
    let scale = g.max_abs().max(1.0);
    if normalization.abs() <= 1e-12 * libm::pow(scale, k as f64) {
        return Err(Error::Degenerate(alloc::format!("Gram matrix is singular (det {normalization:e})")));
    }
    let mut probs = BTreeMap::new();
    for a in k_subsets(n, k) {
        let mphi = DenseMatrix::from_fn(k, k, |i, j| C64::new(phis[i][a[j]], 0.0));
        let mpsi = DenseMatrix::from_fn(k, k, |i, j| C64::new(psis[i][a[j]], 0.0));
        let mass: f64 = a.iter().map(|&x| w[x]).product();
        let p = det(&mphi)?.re * det(&mpsi)?.re * mass / normalization;
        probs.insert(Configuration::from_sorted(a), p);
    }
    let law = ExactLaw::new(space.clone(), k, probs)?;
    Ok(BiorthogonalLaw { law, normalization })
}

/// Functions on the three-point space `{a, b, c}` (labels 1, 2, 3, counting
/// measure) whose biorthogonal ensembles of one and two points are not
/// stochastically ordered: the one-point law sits on `a`, the two-point law
/// on `{b, c}`.
pub fn biorthogonal_counterexample() -> (GroundSpace, Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let phis = alloc::vec![alloc::vec![1.0, 1.0, 0.0], alloc::vec![1.0, 1.0, 1.0]];
    let psis = alloc::vec![alloc::vec![1.0, 0.0, -1.0], alloc::vec![-1.0, 1.0, 1.0]];
    (GroundSpace::counting(3), phis, psis)
}

/// `P(a ⊆ X)` for a law given as configuration probabilities (any
/// cardinalities).
pub fn inclusion_probability(probs: &BTreeMap<Configuration, f64>, a: &Configuration) -> f64 {
    probs.iter().filter(|(c, _)| a.is_subset_of(c)).map(|(_, p)| p).sum()
}

/// `k`-point correlations `A ↦ P(A ⊆ X)` over all `k`-subsets.
///
/// This is the unordered convention: for a discrete space the ordered
/// joint intensity is `ρ_k(x_1, …, x_k) = P({x_1, …, x_k} ⊆ X) / Π μ({x_i})`,
/// and the sum over supersets replaces the `1/(n−k)!`-weighted integral of
/// the top intensity.
pub fn correlation_from_top(law: &ExactLaw, k: usize) -> Result<BTreeMap<Configuration, f64>> {
    if k == 0 || k > law.size() {
        return Err(arg_err!("correlation order {k} outside 1..={}", law.size()));
    }
    let n = law.space().len();
    check_cap(n, k)?;
    let mut out = BTreeMap::new();
    for a in k_subsets(n, k) {
        let c = Configuration::from_sorted(a);
        let p = inclusion_probability(&law.probs, &c);
        out.insert(c, p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;

    fn cfg(v: &[usize]) -> Configuration {
        Configuration::new(v.to_vec()).unwrap()
    }

    fn frame(rows: usize, data: &[f64]) -> ProjectionFrame {
        let cols = data.len() / rows;
        ProjectionFrame::new(GroundSpace::counting(cols), DenseMatrix::from_real(rows, cols, data).unwrap()).unwrap()
    }

    #[test]
    fn small_projection_laws() {
        let law = projection_exact_law(&frame(1, &[1.0, 0.0])).unwrap();
        assert_eq!(law.probability(&cfg(&[0])), 1.0);
        assert_eq!(law.probability(&cfg(&[1])), 0.0);
        let s = 1.0 / libm::sqrt(2.0);
        let law = projection_exact_law(&frame(1, &[s, s])).unwrap();
        assert!((law.probability(&cfg(&[0])) - 0.5).abs() < 1e-15);
        let law = projection_exact_law(&frame(2, &[1.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(law.probability(&cfg(&[0, 1])), 1.0);
    }

    #[test]
    fn enumeration_cap() {
        let mut rng = rand::rngs::SmallRng::seed_from_u64(1);
        let f = ProjectionFrame::random_real(GroundSpace::counting(40), 10, &mut rng).unwrap();
        assert!(matches!(projection_exact_law(&f), Err(Error::Size(_))));
    }

    #[test]
    fn counterexample_laws() {
        let (space, phis, psis) = biorthogonal_counterexample();
        let one = biorthogonal_exact_law(&phis[..1], &psis[..1], &space).unwrap();
        assert_eq!(one.normalization, 1.0);
        assert_eq!(one.law.probability(&cfg(&[0])), 1.0);
        assert_eq!(one.law.probability(&cfg(&[1])), 0.0);
        assert_eq!(one.law.probability(&cfg(&[2])), 0.0);
        let two = biorthogonal_exact_law(&phis, &psis, &space).unwrap();
        assert_eq!(two.law.probability(&cfg(&[1, 2])), 1.0);
        assert_eq!(two.law.probability(&cfg(&[0, 1])), 0.0);
        assert_eq!(two.law.probability(&cfg(&[0, 2])), 0.0);
    }

    #[test]
    fn singular_gram() {
        let space = GroundSpace::counting(3);
        let phis = vec![vec![1.0, 0.0, 0.0]];
        let psis = vec![vec![0.0, 1.0, 0.0]];
        assert!(matches!(biorthogonal_exact_law(&phis, &psis, &space), Err(Error::Degenerate(_))));
    }

    #[test]
    fn biorthogonal_reduces_to_projection() {
        let mut rng = rand::rngs::SmallRng::seed_from_u64(3);
        let space = GroundSpace::new(vec![0.0, 1.0, 2.0, 3.0, 4.0], vec![0.3, 1.0, 2.0, 0.5, 1.5]).unwrap();
        let f = ProjectionFrame::random_real(space.clone(), 2, &mut rng).unwrap();
        let funcs: Vec<Vec<f64>> = (0..2).map(|i| f.rows().row(i).iter().map(|z| z.re).collect()).collect();
        let bi = biorthogonal_exact_law(&funcs, &funcs, &space).unwrap();
        let pr = projection_exact_law(&f).unwrap();
        assert!((bi.normalization - 1.0).abs() < 1e-12);
        assert!(bi.law.total_variation(&pr) < 1e-12);
    }

    #[test]
    fn first_correlation_is_weighted_diagonal() {
        let mut rng = rand::rngs::SmallRng::seed_from_u64(9);
        let space = GroundSpace::new(vec![1.0, 2.0, 3.0, 4.0], vec![0.5, 1.0, 2.0, 0.25]).unwrap();
        let f = ProjectionFrame::random(space, 2, &mut rng).unwrap();
        let law = projection_exact_law(&f).unwrap();
        let rho = correlation_from_top(&law, 1).unwrap();
        let k = f.kernel();
        for x in 0..4 {
            let expect = k.matrix()[(x, x)].re * f.space().weights()[x];
            assert!((rho[&cfg(&[x])] - expect).abs() < 1e-12);
        }
        let top = correlation_from_top(&law, 2).unwrap();
        for (c, p) in law.iter() {
            assert_eq!(top[c], p);
        }
        assert!(correlation_from_top(&law, 0).is_err());
        assert!(correlation_from_top(&law, 3).is_err());
    }

    #[test]
    fn law_validation() {
        let mut probs = BTreeMap::new();
        probs.insert(cfg(&[0]), 0.6);
        assert!(ExactLaw::new(GroundSpace::counting(2), 1, probs.clone()).is_err());
        probs.insert(cfg(&[1]), 0.4);
        assert!(ExactLaw::new(GroundSpace::counting(2), 1, probs.clone()).is_ok());
        assert!(ExactLaw::new(GroundSpace::counting(2), 2, probs).is_err());
    }
}
