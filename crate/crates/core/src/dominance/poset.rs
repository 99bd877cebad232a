use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::arg_err;
use crate::{Error, Result};

/// Largest poset accepted by upset enumeration.
pub const UPSET_LIMIT: usize = 25;

const SUM_TOL: f64 = 1e-10;
const NEG_TOL: f64 = 1e-12;
const VERDICT_TOL: f64 = 1e-10;

/// Finite partial order on `0..len`, stored as its reflexive transitive
/// closure (`above[i]` lists every `j` with `i ≤ j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Builds the order generated by the strict relations `a < b`; fails on
    /// cycles.
    pub fn new(len: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut succ = vec![Vec::new(); len];
        for &(a, b) in pairs {
            if a >= len || b >= len {
                return Err(arg_err!("relation ({a}, {b}) outside {len} elements"));
            }
            succ[a].push(b);
        }
        let mut leq = vec![vec![false; len]; len];
        for (s, row) in leq.iter_mut().enumerate() {
            let mut stack = vec![s];
            row[s] = true;
            while let Some(x) = stack.pop() {
                for &y in &succ[x] {
                    if y == s {
                        return Err(arg_err!("relation has a cycle through element {s}"));
                    }
                    if !row[y] {
                        row[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        Ok(Self { labels: (0..len).map(|i| i.to_string()).collect(), leq })
    }

    /// Uses `le(i, j)` as the order relation. The comparator must be a
    /// partial order; reflexivity and antisymmetry are checked.
    pub fn from_comparator(len: usize, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let leq: Vec<Vec<bool>> = (0..len).map(|i| (0..len).map(|j| i == j || le(i, j)).collect()).collect();
        for i in 0..len {
            for j in i + 1..len {
                if leq[i][j] && leq[j][i] {
                    return Err(arg_err!("comparator is not antisymmetric on ({i}, {j})"));
                }
            }
        }
        Ok(Self { labels: (0..len).map(|i| i.to_string()).collect(), leq })
    }

    /// Totally ordered `0 < 1 < ⋯ < len−1`.
    pub fn chain(len: usize) -> Self {
        Self::from_comparator(len, |i, j| i <= j).expect("chain is a partial order")
    }

    /// No two distinct elements comparable.
    pub fn antichain(len: usize) -> Self {
        Self::from_comparator(len, |i, j| i == j).expect("antichain is a partial order")
    }

    /// Replaces the element labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(arg_err!("{} labels for {} elements", labels.len(), self.len()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.leq.len()
    }

    /// True for the empty poset.
    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    /// Element labels.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `i ≤ j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Smallest upset containing `set`, as sorted indices.
    pub fn up_closure(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.len()];
        for &i in set {
            for (j, v) in inside.iter_mut().enumerate() {
                if self.leq[i][j] {
                    *v = true;
                }
            }
        }
        (0..self.len()).filter(|&j| inside[j]).collect()
    }

    /// True when `set` (sorted or not) is closed upwards.
    pub fn is_upset(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.len()];
        for &i in set {
            inside[i] = true;
        }
        set.iter().all(|&i| (0..self.len()).all(|j| !self.leq[i][j] || inside[j]))
    }

    /// Elements in an order where every element comes after all elements
    /// above it (maximal elements first).
    fn top_down(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        let height: Vec<usize> = (0..self.len()).map(|i| self.leq[i].iter().filter(|&&b| b).count()).collect();
        order.sort_by_key(|&i| height[i]);
        order
    }

    /// Visits every upset as a membership vector.
    pub(crate) fn for_each_upset(&self, mut visit: impl FnMut(&[bool])) -> Result<()> {
        if self.len() > UPSET_LIMIT {
            return Err(Error::Size(alloc::format!(
                "upset enumeration is limited to {UPSET_LIMIT} elements, got {}; use strassen_flow",
                self.len()
            )));
        }
        let order = self.top_down();
        let mut inside = vec![false; self.len()];
        self.recurse(&order, 0, &mut inside, &mut visit);
        Ok(())
    }

    fn recurse(&self, order: &[usize], pos: usize, inside: &mut Vec<bool>, visit: &mut impl FnMut(&[bool])) {
        if pos == order.len() {
            visit(inside);
            return;
        }
        let x = order[pos];
        self.recurse(order, pos + 1, inside, visit);
        // x may join only if everything strictly above it is already in
        let allowed = (0..self.len()).all(|y| y == x || !self.leq[x][y] || inside[y]);
        if allowed {
            inside[x] = true;
            self.recurse(order, pos + 1, inside, visit);
            inside[x] = false;
        }
    }
}

/// Every up-closed subset exactly once (including the empty and full sets),
/// as sorted index lists.
pub fn upset_enumerate(poset: &FinitePoset) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    poset.for_each_upset(|inside| out.push((0..inside.len()).filter(|&i| inside[i]).collect()))?;
    Ok(out)
}

/// Two probability vectors on the elements of one poset.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurePair {
    /// The measure expected to be smaller.
    pub p1: Vec<f64>,
    /// The measure expected to be larger.
    pub p2: Vec<f64>,
}

impl MeasurePair {
    /// Checks lengths, nonnegativity (within `1e-12`) and total mass (within
    /// `1e-10`).
    pub fn new(p1: Vec<f64>, p2: Vec<f64>) -> Result<Self> {
        if p1.len() != p2.len() {
            return Err(Error::Dimension(alloc::format!("measures of length {} and {}", p1.len(), p2.len())));
        }
        for (name, p) in [("p1", &p1), ("p2", &p2)] {
            if let Some(v) = p.iter().find(|v| !(**v >= -NEG_TOL)) {
                return Err(arg_err!("{name} has negative mass {v}"));
            }
            let total: f64 = p.iter().sum();
            if (total - 1.0).abs() > SUM_TOL {
                return Err(arg_err!("{name} sums to {total}"));
            }
        }
        Ok(Self { p1, p2 })
    }

    pub(crate) fn check(&self, poset: &FinitePoset) -> Result<()> {
        if self.p1.len() != poset.len() {
            return Err(Error::Dimension(alloc::format!(
                "measures of length {} on a poset of {} elements",
                self.p1.len(),
                poset.len()
            )));
        }
        Ok(())
    }
}

/// How [`dominance_exact`] decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceMethod {
    /// Enumerate all upsets.
    Enumerate,
    /// Max-flow coupling and its min cut.
    Flow,
}

/// Outcome of an exact dominance check of `p1` by `p2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    /// `p1(U) ≤ p2(U) + 1e-10` for every upset `U`.
    pub dominated: bool,
    /// `min_U p2(U) − p1(U)` (never positive: `U = ∅` gives 0).
    pub margin: f64,
    /// An upset attaining the margin, when the margin is negative.
    pub witness: Option<Vec<usize>>,
}

/// Decides whether `p2` stochastically dominates `p1`.
pub fn dominance_exact(poset: &FinitePoset, pair: &MeasurePair, method: DominanceMethod) -> Result<DominanceReport> {
    pair.check(poset)?;
    match method {
        DominanceMethod::Enumerate => {
            let mut best = 0.0f64;
            let mut witness: Option<Vec<bool>> = None;
            poset.for_each_upset(|inside| {
                let d: f64 = (0..inside.len()).filter(|&i| inside[i]).map(|i| pair.p2[i] - pair.p1[i]).sum();
                if d < best {
                    best = d;
                    witness = Some(inside.to_vec());
                }
            })?;
            let dominated = best >= -VERDICT_TOL;
            let witness = witness
                .filter(|_| best < 0.0)
                .map(|w| (0..w.len()).filter(|&i| w[i]).collect());
            Ok(DominanceReport { dominated, margin: best, witness })
        }
        DominanceMethod::Flow => {
            let c = super::strassen_flow(poset, pair)?;
            let margin = match &c.witness {
                Some(w) => w.iter().map(|&i| pair.p2[i] - pair.p1[i]).sum::<f64>().min(0.0),
                None => (c.flow_value - 1.0).min(0.0),
            };
            Ok(DominanceReport { dominated: c.feasible, margin, witness: c.witness })
        }
    }
}
