use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::arg_err;
use crate::Result;

/// Largest `n` for which the `f64` statistics are evaluated through exact
/// rational arithmetic.
pub const EXACT_LIMIT: usize = 64;

fn rat(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn check_exact(n: usize) -> Result<()> {
    if n > EXACT_LIMIT {
        return Err(crate::Error::Size(alloc::format!(
            "exact statistics are limited to n <= {EXACT_LIMIT}, got {n}"
        )));
    }
    Ok(())
}

/// Exact law of the tree distance between two fixed vertices, indexed by
/// `k = 1..n−1`: `P(d = k) = (k+1)/n · Π_{i=1}^{k−1} (1 − (i+1)/n)`.
pub fn distance_pmf_exact(n: usize) -> Result<Vec<BigRational>> {
    if n < 2 {
        return Err(arg_err!("distance needs n >= 2, got {n}"));
    }
    check_exact(n)?;
    let mut out = Vec::with_capacity(n - 1);
    let mut survive = BigRational::one();
    for k in 1..n {
        out.push(rat(k + 1, n) * &survive);
        survive *= rat(n - k - 1, n);
    }
    Ok(out)
}

/// `f64` version of [`distance_pmf_exact`], valid for any `n >= 2`.
pub fn distance_pmf(n: usize) -> Result<Vec<f64>> {
    if n <= EXACT_LIMIT {
        return Ok(distance_pmf_exact(n)?.iter().map(to_f64).collect());
    }
    let nf = n as f64;
    let mut out = Vec::with_capacity(n - 1);
    let mut survive = 1.0;
    for k in 1..n {
        out.push((k + 1) as f64 / nf * survive);
        survive *= 1.0 - (k + 1) as f64 / nf;
    }
    Ok(out)
}

fn check_shape(n: usize, k: usize, legs: &[usize]) -> Result<usize> {
    if k < 2 {
        return Err(arg_err!("a shape needs at least two leaves, got {k}"));
    }
    if legs.len() != 2 * k - 3 {
        return Err(arg_err!("a binary shape with {k} leaves has {} legs, got {}", 2 * k - 3, legs.len()));
    }
    if legs.contains(&0) {
        return Err(arg_err!("leg lengths must be positive"));
    }
    let m: usize = legs.iter().sum();
    if m + 1 > n {
        return Err(arg_err!("shape with {m} edges does not fit in K_{n}"));
    }
    Ok(m)
}

/// Probability that the subtree spanned by `k` fixed vertices has a given
/// binary shape with the given leg lengths:
/// `(n−k)!/(n−m−1)! · (m+1)/n^m`, `m` being the total length.
pub fn shape_probability_exact(n: usize, k: usize, legs: &[usize]) -> Result<BigRational> {
    let m = check_shape(n, k, legs)?;
    check_exact(n)?;
    let falling: BigInt = (n - m..=n - k).map(BigInt::from).product();
    let denom = num_traits::pow(BigInt::from(n), m);
    Ok(BigRational::new(falling * BigInt::from(m + 1), denom))
}

/// `f64` version of [`shape_probability_exact`].
pub fn shape_probability(n: usize, k: usize, legs: &[usize]) -> Result<f64> {
    let m = check_shape(n, k, legs)?;
    if n <= EXACT_LIMIT {
        return Ok(to_f64(&shape_probability_exact(n, k, legs)?));
    }
    let lg = |x: usize| libm::lgamma(x as f64 + 1.0);
    let log = lg(n - k) - lg(n - m - 1) + libm::log((m + 1) as f64) - m as f64 * libm::log(n as f64);
    Ok(libm::exp(log))
}

fn check_moment(n: usize, k: usize) -> Result<()> {
    if k == 0 || n < 2 {
        return Err(arg_err!("factorial moment of order {k} on K_{n}"));
    }
    Ok(())
}

/// `E[deg(v)(deg(v)−1)⋯(deg(v)−k+1)] = (k+1) Π_{i=1}^k (1 − i/n)`, which
/// vanishes for `k ≥ n`.
pub fn degree_factorial_moment_exact(n: usize, k: usize) -> Result<BigRational> {
    check_moment(n, k)?;
    check_exact(n)?;
    if k >= n {
        return Ok(rat(0, 1));
    }
    Ok((1..=k).fold(rat(k + 1, 1), |acc, i| acc * rat(n - i, n)))
}

/// `f64` version of [`degree_factorial_moment_exact`].
pub fn degree_factorial_moment(n: usize, k: usize) -> Result<f64> {
    check_moment(n, k)?;
    if n <= EXACT_LIMIT {
        return Ok(to_f64(&degree_factorial_moment_exact(n, k)?));
    }
    Ok((1..=k.min(n)).fold((k + 1) as f64, |acc, i| acc * (1.0 - i as f64 / n as f64)))
}

/// Leaf statistics of the uniform spanning tree of `K_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeafStatistics {
    /// `P(v is a leaf) = (1 − 1/n)^{n−2}`.
    pub p_leaf: f64,
    /// Expected fraction of leaves (equal to `p_leaf`).
    pub expected_fraction: f64,
    /// `Cov(1{u leaf}, 1{v leaf}) = (1 − 2/n)^{n−2} − (1 − 1/n)^{2(n−2)}`.
    pub cov_pair: f64,
    /// `Var(L/n) = p(1−p)/n + (n−1)/n · cov`.
    pub var_fraction: f64,
}

/// Exact counterpart of [`LeafStatistics`].
#[derive(Debug, Clone, PartialEq)]
pub struct LeafStatisticsExact {
    /// See [`LeafStatistics::p_leaf`].
    pub p_leaf: BigRational,
    /// See [`LeafStatistics::expected_fraction`].
    pub expected_fraction: BigRational,
    /// See [`LeafStatistics::cov_pair`].
    pub cov_pair: BigRational,
    /// See [`LeafStatistics::var_fraction`].
    pub var_fraction: BigRational,
}

impl LeafStatisticsExact {
    /// Converts every field to `f64`.
    pub fn to_f64(&self) -> LeafStatistics {
        LeafStatistics {
            p_leaf: to_f64(&self.p_leaf),
            expected_fraction: to_f64(&self.expected_fraction),
            cov_pair: to_f64(&self.cov_pair),
            var_fraction: to_f64(&self.var_fraction),
        }
    }
}

/// Exact leaf statistics for `3 <= n <= 64`.
pub fn leaf_statistics_exact(n: usize) -> Result<LeafStatisticsExact> {
    if n < 3 {
        return Err(arg_err!("leaf statistics need n >= 3, got {n}"));
    }
    check_exact(n)?;
    let p = num_traits::pow(rat(n - 1, n), n - 2);
    let both = num_traits::pow(rat(n - 2, n), n - 2);
    let cov = both - &p * &p;
    let var = &p * (BigRational::one() - &p) / rat(n, 1) + rat(n - 1, n) * &cov;
    Ok(LeafStatisticsExact { expected_fraction: p.clone(), p_leaf: p, cov_pair: cov, var_fraction: var })
}

/// Leaf statistics for any `n >= 3`.
pub fn leaf_statistics(n: usize) -> Result<LeafStatistics> {
    if n < 3 {
        return Err(arg_err!("leaf statistics need n >= 3, got {n}"));
    }
    if n <= EXACT_LIMIT {
        return Ok(leaf_statistics_exact(n)?.to_f64());
    }
    let nf = n as f64;
    let e = (n - 2) as f64;
    let p = libm::exp(e * libm::log1p(-1.0 / nf));
    let cov = libm::exp(e * libm::log1p(-2.0 / nf)) - p * p;
    Ok(LeafStatistics {
        p_leaf: p,
        expected_fraction: p,
        cov_pair: cov,
        var_fraction: p * (1.0 - p) / nf + (nf - 1.0) / nf * cov,
    })
}
