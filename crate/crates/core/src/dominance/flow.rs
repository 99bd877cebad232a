use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{FinitePoset, MeasurePair};
use crate::Result;

/// Masses are scaled by `2^40` and rounded to integer capacities.
pub const FLOW_SCALE: f64 = (1u64 << 40) as f64;

const FEASIBLE_TOL: f64 = 1e-9;

/// Result of the max-flow construction of a monotone coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingResult {
    /// Max flow divided by the scale; equals 1 exactly when a coupling exists.
    pub flow_value: f64,
    /// `flow_value ≥ 1 − 1e-9`.
    pub feasible: bool,
    /// Triples `(x, y, mass)` with `x ≤ y` and positive mass.
    pub coupling: Vec<(usize, usize, f64)>,
    /// Upset with `p1(U) > p2(U)` read off a minimum cut, when infeasible.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    rev: usize,
    cap: i64,
}

/// Dinic's max-flow over integer capacities.
struct Network {
    adj: Vec<Vec<Edge>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Self { adj: vec![Vec::new(); nodes], level: vec![0; nodes], cursor: vec![0; nodes] }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> (usize, usize) {
        let fwd = self.adj[from].len();
        let bwd = self.adj[to].len() + usize::from(from == to);
        self.adj[from].push(Edge { to, rev: bwd, cap });
        self.adj[to].push(Edge { to: from, rev: fwd, cap: 0 });
        (from, fwd)
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for e in &self.adj[u] {
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.cursor[u] < self.adj[u].len() {
            let i = self.cursor[u];
            let Edge { to, cap, .. } = self.adj[u][i];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.adj[u][i].cap -= got;
                    let rev = self.adj[u][i].rev;
                    self.adj[to][rev].cap += got;
                    return got;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual graph.
    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for e in &self.adj[u] {
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }
}

fn scaled(p: f64) -> i64 {
    libm::round(p.max(0.0) * FLOW_SCALE) as i64
}

/// Looks for a coupling `(X, Y)` with `X ~ p1`, `Y ~ p2` and `X ≤ Y` almost
/// surely, as a max flow from a source through left copies of the elements,
/// order edges `x → y` for `x ≤ y`, and right copies into a sink.
///
/// By the max-flow/min-cut theorem the flow saturates exactly when
/// `p1(U) ≤ p2(U)` for every upset `U`; otherwise the up-closure of the left
/// nodes reachable in the residual graph is a violating upset.
pub fn strassen_flow(poset: &FinitePoset, pair: &MeasurePair) -> Result<CouplingResult> {
    pair.check(poset)?;
    let n = poset.len();
    let (s, t) = (2 * n, 2 * n + 1);
    let mut net = Network::new(2 * n + 2);
    let mut supply = 0i64;
    for x in 0..n {
        let c = scaled(pair.p1[x]);
        supply += c;
        net.add_edge(s, x, c);
        net.add_edge(n + x, t, scaled(pair.p2[x]));
    }
    let mut middle = Vec::new();
    for x in 0..n {
        if scaled(pair.p1[x]) == 0 {
            continue;
        }
        for y in 0..n {
            if poset.leq(x, y) && scaled(pair.p2[y]) > 0 {
                let cap = supply + 1;
                middle.push((x, y, net.add_edge(x, n + y, cap), cap));
            }
        }
    }
    let flow = net.max_flow(s, t);
    let flow_value = flow as f64 / FLOW_SCALE;
    let feasible = flow_value >= 1.0 - FEASIBLE_TOL;
    let coupling = middle
        .iter()
        .filter_map(|&(x, y, (u, i), cap)| {
            let used = cap - net.adj[u][i].cap;
            (used > 0).then(|| (x, y, used as f64 / FLOW_SCALE))
        })
        .collect();
    let witness = if feasible || flow >= supply {
        None
    } else {
        let seen = net.reachable(s);
        let left: Vec<usize> = (0..n).filter(|&x| seen[x]).collect();
        Some(poset.up_closure(&left))
    };
    Ok(CouplingResult { flow_value, feasible, coupling, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_coupling_marginals() {
        let poset = FinitePoset::chain(4);
        let pair = MeasurePair::new(vec![0.4, 0.3, 0.2, 0.1], vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let c = strassen_flow(&poset, &pair).unwrap();
        assert!(c.feasible);
        assert!(c.witness.is_none());
        let mut m1 = [0.0; 4];
        let mut m2 = [0.0; 4];
        for &(x, y, w) in &c.coupling {
            assert!(x <= y);
            m1[x] += w;
            m2[y] += w;
        }
        for i in 0..4 {
            assert!((m1[i] - pair.p1[i]).abs() < 1e-9);
            assert!((m2[i] - pair.p2[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn infeasible_on_antichain() {
        let poset = FinitePoset::antichain(2);
        let pair = MeasurePair::new(vec![0.7, 0.3], vec![0.5, 0.5]).unwrap();
        let c = strassen_flow(&poset, &pair).unwrap();
        assert!(!c.feasible);
        assert!((c.flow_value - 0.8).abs() < 1e-12);
        assert_eq!(c.witness, Some(vec![0]));
    }

    #[test]
    fn zero_mass_elements_are_fine() {
        let poset = FinitePoset::chain(3);
        let pair = MeasurePair::new(vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]).unwrap();
        let c = strassen_flow(&poset, &pair).unwrap();
        assert!(c.feasible);
        assert_eq!(c.coupling, vec![(0, 2, 1.0)]);
    }
}
