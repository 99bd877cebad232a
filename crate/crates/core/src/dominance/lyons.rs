use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{strassen_flow, CouplingResult, FinitePoset, MeasurePair};
use crate::dpp::{binomial, k_subsets, projection_exact_law, Configuration, ProjectionFrame};
use crate::numerics::{det, hermitian_eigenvalues, DenseMatrix, QuadratureRule};
use crate::{Error, Result, C64};

const DEFECT_TOL: f64 = 1e-8;
const FAMILY_LIMIT: f64 = 12.0;
const CONTAINMENT_LIMIT: usize = 5000;
const TUPLE_LIMIT: f64 = 2e7;

/// Two laws on configurations placed on the containment order of the union
/// of their supports.
#[derive(Debug, Clone, PartialEq)]
pub struct ContainmentPair {
    /// Configurations, in the order used by `poset` and `pair`.
    pub elements: Vec<Configuration>,
    /// `A ≤ B` iff `A ⊆ B`.
    pub poset: FinitePoset,
    /// The two laws as vectors over `elements`.
    pub pair: MeasurePair,
}

impl ContainmentPair {
    /// Collects every configuration listed in either law.
    pub fn new(p1: &BTreeMap<Configuration, f64>, p2: &BTreeMap<Configuration, f64>) -> Result<Self> {
        let mut index: BTreeMap<Configuration, usize> = BTreeMap::new();
        for c in p1.keys().chain(p2.keys()) {
            let next = index.len();
            index.entry(c.clone()).or_insert(next);
        }
        if index.len() > CONTAINMENT_LIMIT {
            return Err(Error::Size(alloc::format!(
                "containment order on {} configurations exceeds {CONTAINMENT_LIMIT}",
                index.len()
            )));
        }
        let mut elements = vec![Configuration::from_sorted(Vec::new()); index.len()];
        for (c, &i) in &index {
            elements[i] = c.clone();
        }
        let labels: Vec<String> = elements.iter().map(set_label).collect();
        let poset = FinitePoset::from_comparator(elements.len(), |i, j| elements[i].is_subset_of(&elements[j]))?
            .with_labels(labels)?;
        let spread = |p: &BTreeMap<Configuration, f64>| {
            let mut v = vec![0.0; elements.len()];
            for (c, &m) in p {
                v[index[c]] = m;
            }
            v
        };
        let pair = MeasurePair::new(spread(p1), spread(p2))?;
        Ok(Self { elements, poset, pair })
    }

    /// Runs the flow check of `p1 ≺ p2`.
    pub fn coupling(&self) -> Result<CouplingResult> {
        strassen_flow(&self.poset, &self.pair)
    }
}

fn set_label(c: &Configuration) -> String {
    let parts: Vec<String> = c.indices().iter().map(|i| alloc::format!("{i}")).collect();
    alloc::format!("{{{}}}", parts.join(","))
}

/// Outcome of [`verify_lyons`].
#[derive(Debug, Clone, PartialEq)]
pub struct LyonsReport {
    /// Number of points `n` of the smaller process.
    pub n: usize,
    /// Flow check of the `n`-point law against the `(n+1)`-point law.
    pub coupling: CouplingResult,
    /// Witness upset as configurations, when infeasible.
    pub witness: Option<Vec<Configuration>>,
    /// `min_𝒜 P_{n+1}(𝒜⁺) − P_n(𝒜)` over every family `𝒜` of `n`-sets, where
    /// `𝒜⁺` collects the one-point extensions; `None` when there are more
    /// than 12 `n`-sets.
    pub family_margin: Option<f64>,
    /// Number of families examined.
    pub families_checked: usize,
}

impl LyonsReport {
    /// Coupling found and no family violates the inequality.
    pub fn holds(&self) -> bool {
        self.coupling.feasible && self.family_margin.is_none_or(|m| m >= -1e-10)
    }
}

/// Checks that the projection process of the first `n` rows of `frame` is
/// stochastically dominated (in the containment order) by the process of
/// all `n + 1` rows.
pub fn verify_lyons(frame: &ProjectionFrame) -> Result<LyonsReport> {
    if frame.rank() == 0 {
        return Err(Error::Precondition("frame needs at least one function".into()));
    }
    let defect = frame.orthonormality_defect();
    if defect > DEFECT_TOL {
        return Err(Error::Precondition(alloc::format!("frame is not orthonormal (Gram deviation {defect:e})")));
    }
    let n = frame.rank() - 1;
    let small = projection_exact_law(&frame.truncate(n)?)?;
    let large = projection_exact_law(frame)?;
    let cp = ContainmentPair::new(small.probabilities(), large.probabilities())?;
    let coupling = cp.coupling()?;
    let witness = coupling.witness.as_ref().map(|w| w.iter().map(|&i| cp.elements[i].clone()).collect());

    let size = frame.space().len();
    let (family_margin, families_checked) = if binomial(size, n) <= FAMILY_LIMIT {
        let sets: Vec<Vec<usize>> = k_subsets(size, n).collect();
        let p_small: Vec<f64> = sets.iter().map(|a| small.probability(&Configuration::from_sorted(a.clone()))).collect();
        let mut best = f64::INFINITY;
        let count = 1usize << sets.len();
        for mask in 0..count {
            let mut covered: BTreeMap<Configuration, ()> = BTreeMap::new();
            let mut mass = 0.0;
            for (k, a) in sets.iter().enumerate() {
                if mask >> k & 1 == 0 {
                    continue;
                }
                mass += p_small[k];
                for x in (0..size).filter(|x| !a.contains(x)) {
                    let mut b = a.clone();
                    b.push(x);
                    b.sort_unstable();
                    covered.insert(Configuration::from_sorted(b), ());
                }
            }
            let up: f64 = covered.keys().map(|b| large.probability(b)).sum();
            best = best.min(up - mass);
        }
        (Some(best), count)
    } else {
        (None, 0)
    };
    Ok(LyonsReport { n, coupling, witness, family_margin, families_checked })
}

/// `|Σ_{x∉A} (−1)^{r(A,x)} conj(v_{n+1}(x)) det V_{A∪{x}} − det V_A|`, where
/// `v_i = √μ φ_i` are the frame rows in plain coordinates, `V_B` takes the
/// columns `B` (sorted) of the first `|B|` rows, and `r(A, x)` counts the
/// elements of `A` above `x`.
///
/// The identity follows from expanding along the new column and holds for
/// every orthonormal frame of rank `n + 1` and every `n`-set `A`.
pub fn detequality_discrete(frame: &ProjectionFrame, a: &Configuration) -> Result<f64> {
    let rank = frame.rank();
    let size = frame.space().len();
    if rank == 0 || a.len() + 1 != rank {
        return Err(Error::Precondition(alloc::format!(
            "set of {} points needs a frame of rank {}, got {rank}",
            a.len(),
            a.len() + 1
        )));
    }
    if size <= a.len() {
        return Err(Error::Precondition(alloc::format!("ground set of {size} points must exceed |A| = {}", a.len())));
    }
    if let Some(&bad) = a.indices().iter().find(|&&i| i >= size) {
        return Err(crate::error::arg_err!("index {bad} outside the ground set"));
    }
    let n = a.len();
    let v = frame.absorbed();
    let first: Vec<usize> = (0..n).collect();
    let all: Vec<usize> = (0..=n).collect();
    let rhs = det(&v.select(&first, a.indices()))?;
    let mut lhs = C64::new(0.0, 0.0);
    for x in (0..size).filter(|&x| !a.contains(x)) {
        let above = a.indices().iter().filter(|&&k| k > x).count();
        let mut b = a.indices().to_vec();
        b.push(x);
        b.sort_unstable();
        let term = v[(n, x)].conj() * det(&v.select(&all, &b))?;
        lhs += if above % 2 == 0 { term } else { -term };
    }
    Ok((lhs - rhs).norm())
}

/// Outcome of [`positivity_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct PositivityReport {
    /// `max |𝓜 − X X*|` over the family.
    pub factorization_error: f64,
    /// Smallest eigenvalue of `𝓜`.
    pub min_eigenvalue: f64,
}

impl PositivityReport {
    /// Factorization within `1e-12` and spectrum above `−1e-10`.
    pub fn holds(&self) -> bool {
        self.factorization_error < 1e-12 && self.min_eigenvalue >= -1e-10
    }
}

/// Checks that the matrix indexed by a family of `n`-subsets of `{0..len}`,
/// with `𝓜(A, A) = Σ_{x∈A} |φ(x)|²`, `𝓜(A, C) = ε(x, A) ε(y, C) φ(x)
/// conj(φ(y))` when `A ∖ C = {x}` and `C ∖ A = {y}`, and zero otherwise,
/// factors as `X X*` with `X(A, T) = ε(x, A) φ(x)` for `T = A ∖ {x}`.
///
/// `eps(x, A)` must return a sign for `x ∈ A`.
pub fn positivity_check(
    len: usize,
    phi: &[C64],
    eps: &dyn Fn(usize, &Configuration) -> f64,
    family: &[Configuration],
) -> Result<PositivityReport> {
    if phi.len() != len {
        return Err(Error::Dimension(alloc::format!("φ has {} values for {len} points", phi.len())));
    }
    let Some(n) = family.first().map(Configuration::len) else {
        return Err(crate::error::arg_err!("empty family"));
    };
    if n == 0 || family.iter().any(|c| c.len() != n || c.indices().iter().any(|&i| i >= len)) {
        return Err(crate::error::arg_err!("family must consist of nonempty sets of one size inside the ground set"));
    }
    let m = family.len();
    let mut big = DenseMatrix::zeros(m, m);
    for (i, a) in family.iter().enumerate() {
        for (j, c) in family.iter().enumerate() {
            let only_a: Vec<usize> = a.indices().iter().copied().filter(|&x| !c.contains(x)).collect();
            let only_c: Vec<usize> = c.indices().iter().copied().filter(|&y| !a.contains(y)).collect();
            big[(i, j)] = match (only_a.as_slice(), only_c.as_slice()) {
                ([], []) => C64::new(a.indices().iter().map(|&x| phi[x].norm_sqr()).sum(), 0.0),
                (&[x], &[y]) => phi[x] * phi[y].conj() * (eps(x, a) * eps(y, c)),
                _ => C64::new(0.0, 0.0),
            };
        }
    }
    let mut columns: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for a in family {
        for &x in a.indices() {
            let t: Vec<usize> = a.indices().iter().copied().filter(|&k| k != x).collect();
            let next = columns.len();
            columns.entry(t).or_insert(next);
        }
    }
    let mut x_mat = DenseMatrix::zeros(m, columns.len());
    for (i, a) in family.iter().enumerate() {
        for &x in a.indices() {
            let t: Vec<usize> = a.indices().iter().copied().filter(|&k| k != x).collect();
            x_mat[(i, columns[&t])] = phi[x] * eps(x, a);
        }
    }
    let factorization_error = big.sub(&x_mat.matmul(&x_mat.adjoint())).max_abs();
    let min_eigenvalue = hermitian_eigenvalues(&big)?.first().copied().unwrap_or(0.0);
    Ok(PositivityReport { factorization_error, min_eigenvalue })
}

/// Laguerre polynomials `L_0(x), …, L_{count−1}(x)`, orthonormal under
/// `e^{−x} dx` on the half-line.
pub fn laguerre_functions(count: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let (mut p0, mut p1) = (1.0, 1.0 - x);
    for k in 0..count {
        match k {
            0 => out.push(p0),
            1 => out.push(p1),
            _ => {
                let j = (k - 1) as f64;
                let p2 = ((2.0 * j + 1.0 - x) * p1 - j * p0) / (j + 1.0);
                p0 = p1;
                p1 = p2;
                out.push(p2);
            }
        }
    }
    out
}

fn laguerre_det(points: &[f64]) -> Result<f64> {
    let n = points.len();
    let vals: Vec<Vec<f64>> = points.iter().map(|&x| laguerre_functions(n, x)).collect();
    Ok(det(&DenseMatrix::from_fn(n, n, |i, j| C64::new(vals[j][i], 0.0)))?.re)
}

fn require_degree(rule: &QuadratureRule, n: usize) -> Result<()> {
    if rule.exact_degree() < 2 * n {
        return Err(Error::Precondition(alloc::format!(
            "rule is exact to degree {} but degree {} is needed",
            rule.exact_degree(),
            2 * n
        )));
    }
    Ok(())
}

/// Both sides of a quadrature identity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    /// Left-hand side.
    pub lhs: f64,
    /// Right-hand side.
    pub rhs: f64,
}

impl IdentityCheck {
    /// `|lhs − rhs|`.
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// With `φ_i = L_{i−1}` and `K_n(x) = (φ_i(x_j))`, compares
/// `∫ φ_{n+1}(t) det K_{n+1}(x, t) e^{−t} dt` (by `rule`, `t` in the last
/// column) against `det K_n(x)`.
pub fn detequality_continuous(n: usize, rule: &QuadratureRule, x: &[f64]) -> Result<IdentityCheck> {
    if x.len() != n {
        return Err(Error::Dimension(alloc::format!("{} points for n = {n}", x.len())));
    }
    require_degree(rule, n)?;
    if x.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(crate::error::arg_err!("points must lie in [0, ∞)"));
    }
    let mut y = x.to_vec();
    y.push(0.0);
    let mut lhs = 0.0;
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        y[n] = t;
        lhs += w * laguerre_functions(n + 1, t)[n] * laguerre_det(&y)?;
    }
    Ok(IdentityCheck { lhs, rhs: laguerre_det(x)? })
}

/// Outcome of [`detinequality_continuous`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    /// `(1/n!) ∫_𝒜 |det K_n|²`.
    pub lhs: f64,
    /// `(1/(n+1)!) ∫ |Σ_{k: ŷ_k ∈ 𝒜} (−1)^k φ_{n+1}(y_k) det K_n(ŷ_k)|²`.
    pub rhs: f64,
}

impl InequalityCheck {
    /// `lhs ≥ rhs − 1e-8`.
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs - 1e-8
    }
}

/// Evaluates both sides of the continuous determinant inequality on the
/// product of `rule` with itself, for the symmetric set of `n`-tuples given
/// by `in_set`; `ŷ_k` drops coordinate `k` of `y`.
pub fn detinequality_continuous(
    n: usize,
    rule: &QuadratureRule,
    in_set: &dyn Fn(&[f64]) -> bool,
) -> Result<InequalityCheck> {
    if n == 0 {
        return Err(crate::error::arg_err!("need n ≥ 1"));
    }
    require_degree(rule, n)?;
    let k = rule.len();
    if libm::pow(k as f64, (n + 1) as f64) > TUPLE_LIMIT {
        return Err(Error::Size(alloc::format!("{k}^{} quadrature tuples is too many", n + 1)));
    }
    let vals: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| laguerre_functions(n + 1, x)).collect();
    let det_at = |idx: &[usize]| -> f64 {
        let m = idx.len();
        let mat = DenseMatrix::from_fn(m, m, |i, j| C64::new(vals[idx[j]][i], 0.0));
        det(&mat).map(|d| d.re).unwrap_or(0.0)
    };
    let points = |idx: &[usize]| -> Vec<f64> { idx.iter().map(|&i| rule.nodes[i]).collect() };
    let weight = |idx: &[usize]| -> f64 { idx.iter().map(|&i| rule.weights[i]).product() };

    let factorial = |m: usize| (1..=m).map(|v| v as f64).product::<f64>();
    let mut lhs = 0.0;
    for_each_tuple(k, n, |idx| {
        if in_set(&points(idx)) {
            let d = det_at(idx);
            lhs += weight(idx) * d * d;
        }
    });
    let mut rhs = 0.0;
    let mut hat = vec![0usize; n];
    for_each_tuple(k, n + 1, |idx| {
        let mut s = 0.0;
        for drop in 0..=n {
            let mut p = 0;
            for (j, &v) in idx.iter().enumerate() {
                if j != drop {
                    hat[p] = v;
                    p += 1;
                }
            }
            if in_set(&points(&hat)) {
                let sign = if drop % 2 == 0 { 1.0 } else { -1.0 };
                s += sign * vals[idx[drop]][n] * det_at(&hat);
            }
        }
        rhs += weight(idx) * s * s;
    });
    Ok(InequalityCheck { lhs: lhs / factorial(n), rhs: rhs / factorial(n + 1) })
}

fn for_each_tuple(k: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; len];
    loop {
        f(&idx);
        let mut p = len;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < k {
                break;
            }
            idx[p] = 0;
        }
    }
}
