use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::arg_err;
use crate::numerics::bareiss_det;
use crate::{Error, Result};

/// Largest `n` accepted by [`enumerate_trees`] (`9^7` trees).
pub const ENUMERATION_LIMIT: usize = 9;

const KIRCHHOFF_LIMIT: usize = 20;

/// Spanning tree of `K_n` stored as its `n − 1` edges `(u, v)`, `u < v`,
/// sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanningTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SpanningTree {
    /// Validates that the edges form a spanning tree of `K_n`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(arg_err!("a tree needs at least one vertex"));
        }
        if edges.len() != n - 1 {
            return Err(arg_err!("{} edges for a tree on {n} vertices", edges.len()));
        }
        let mut root: Vec<usize> = (0..=n).collect();
        fn find(root: &mut [usize], mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        for &(u, v) in edges {
            if u == v || u == 0 || v == 0 || u > n || v > n {
                return Err(arg_err!("({u}, {v}) is not an edge of K_{n}"));
            }
            let (a, b) = (find(&mut root, u), find(&mut root, v));
            if a == b {
                return Err(arg_err!("edges contain a cycle through ({u}, {v})"));
            }
            root[a] = b;
        }
        Ok(Self::from_edges_unchecked(n, edges.to_vec()))
    }

    fn from_edges_unchecked(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        Self { n, edges }
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted edges.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge membership, either orientation.
    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Degrees indexed by vertex (entry 0 unused).
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n + 1];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Number of degree-one vertices.
    pub fn leaf_count(&self) -> usize {
        self.degrees().iter().skip(1).filter(|&&d| d == 1).count()
    }

    /// Graph distance between `u` and `v`.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut dist = vec![usize::MAX; self.n + 1];
        let mut queue = alloc::collections::VecDeque::new();
        dist[u] = 0;
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            if x == v {
                return dist[x];
            }
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        usize::MAX
    }
}

/// Decodes a Prüfer sequence over `1..=n` (length `n − 2`).
fn prufer_decode(n: usize, seq: &[usize]) -> SpanningTree {
    let mut degree = vec![1usize; n + 1];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (1..=n).find(|&v| degree[v] == 1).unwrap_or(n);
    let mut leaf = ptr;
    for &s in seq {
        edges.push((leaf, s));
        degree[s] -= 1;
        if s < ptr && degree[s] == 1 {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    if n >= 2 {
        edges.push((leaf, n));
    }
    SpanningTree::from_edges_unchecked(n, edges)
}

/// Every labelled tree on `1..=n` exactly once, by decoding all Prüfer
/// sequences in lexicographic order.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = SpanningTree>> {
    if n == 0 {
        return Err(arg_err!("a tree needs at least one vertex"));
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::Size(alloc::format!(
            "enumeration is limited to n <= {ENUMERATION_LIMIT}, got {n}"
        )));
    }
    let len = n.saturating_sub(2);
    let mut seq = Some(vec![1usize; len]);
    Ok(core::iter::from_fn(move || {
        let cur = seq.take()?;
        let tree = prufer_decode(n, &cur);
        let mut next = cur;
        for i in (0..len).rev() {
            if next[i] < n {
                next[i] += 1;
                seq = Some(next);
                return Some(tree);
            }
            next[i] = 1;
        }
        Some(tree)
    }))
}

fn other_vertex<R: Rng + ?Sized>(n: usize, u: usize, rng: &mut R) -> usize {
    let r = rng.random_range(1..n);
    if r >= u {
        r + 1
    } else {
        r
    }
}

/// Uniform spanning tree of `K_n` by Wilson's algorithm: root 1, loop-erased
/// walks started from `2, 3, …, n` in order.
pub fn sample_wilson<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SpanningTree> {
    if n < 2 {
        return Err(arg_err!("Wilson sampling needs n >= 2, got {n}"));
    }
    let mut in_tree = vec![false; n + 1];
    let mut next = vec![0usize; n + 1];
    in_tree[1] = true;
    for start in 2..=n {
        let mut u = start;
        while !in_tree[u] {
            let v = other_vertex(n, u, rng);
            next[u] = v;
            u = v;
        }
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next[u];
        }
    }
    let edges = (2..=n).map(|v| (v, next[v])).collect();
    Ok(SpanningTree::from_edges_unchecked(n, edges))
}

/// Tree distance between vertices 1 and 2: the length of the first
/// loop-erased walk of [`sample_wilson`], which is the tree path from 2 to 1.
pub fn sample_distance<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<usize> {
    if n < 2 {
        return Err(arg_err!("distance needs n >= 2, got {n}"));
    }
    let mut next = vec![0usize; n + 1];
    let mut u = 2;
    while u != 1 {
        let v = other_vertex(n, u, rng);
        next[u] = v;
        u = v;
    }
    let (mut u, mut len) = (2, 0);
    while u != 1 {
        u = next[u];
        len += 1;
    }
    Ok(len)
}

/// Simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Rejects loops, repeated edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v || u == 0 || v == 0 || u > n || v > n {
                return Err(arg_err!("({u}, {v}) is not a simple edge on {n} vertices"));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(arg_err!("repeated edge"));
        }
        Ok(Self { n, edges: norm })
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        Self { n, edges }
    }

    /// Path `1 − 2 − ⋯ − n`.
    pub fn path(n: usize) -> Self {
        Self { n, edges: (1..n).map(|u| (u, u + 1)).collect() }
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|u| (u, u + 1)).collect();
        if n >= 3 {
            edges.push((1, n));
        }
        Self { n, edges }
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted edges `(u, v)`, `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Number of spanning trees, `det(Ã Ãᵀ)` with `Ã` the oriented incidence
/// matrix with the row of vertex 1 removed. Disconnected graphs give 0.
pub fn kirchhoff_count(g: &Graph) -> Result<BigInt> {
    let n = g.n;
    if n == 0 {
        return Err(arg_err!("empty graph"));
    }
    if n > KIRCHHOFF_LIMIT {
        return Err(Error::Size(alloc::format!("matrix-tree count limited to {KIRCHHOFF_LIMIT} vertices")));
    }
    // rows of Ã are vertices 2..=n; column e has +1 at the tail, −1 at the head
    let incidence: Vec<Vec<i64>> = (2..=n)
        .map(|v| g.edges.iter().map(|&(a, b)| (v == a) as i64 - (v == b) as i64).collect())
        .collect();
    let m = n - 1;
    let rows: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| BigInt::from(incidence[i].iter().zip(&incidence[j]).map(|(x, y)| x * y).sum::<i64>()))
                .collect()
        })
        .collect();
    Ok(bareiss_det(&rows))
}
