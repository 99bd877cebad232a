//! Empirical distribution tools: ECDFs, Kolmogorov–Smirnov statistics, the
//! DKW band, chi-square and total variation.

use alloc::vec::Vec;

use crate::error::arg_err;
use crate::Result;

/// Sorted sample with right-continuous empirical CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    /// Sorts the sample; NaN is rejected.
    pub fn new(sample: &[f64]) -> Result<Self> {
        if sample.iter().any(|x| x.is_nan()) {
            return Err(arg_err!("sample contains NaN"));
        }
        let mut sorted = sample.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
        Ok(Self { sorted })
    }

    /// Sample size.
    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    /// True for an empty sample.
    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Sorted values.
    pub fn values(&self) -> &[f64] {
        &self.sorted
    }

    /// `F̂(t) = #{x ≤ t} / N`.
    pub fn eval(&self, t: f64) -> f64 {
        if self.sorted.is_empty() {
            return 0.0;
        }
        self.sorted.partition_point(|&x| x <= t) as f64 / self.sorted.len() as f64
    }
}

/// One-sample statistic `sup_t |F̂(t) − F(t)|` for a continuous CDF `F`.
pub fn ks_one_sample(sample: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    let e = Ecdf::new(sample)?;
    if e.is_empty() {
        return Err(arg_err!("empty sample"));
    }
    let n = e.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in e.values().iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

/// One-sample statistic against a discrete CDF on integer support,
/// `sup_k |F̂(k) − F(k)|` over the jump points.
pub fn ks_discrete(sample: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    let e = Ecdf::new(sample)?;
    if e.is_empty() {
        return Err(arg_err!("empty sample"));
    }
    let lo = libm::floor(e.values()[0]) as i64 - 1;
    let hi = libm::ceil(e.values()[e.len() - 1]) as i64;
    let mut d: f64 = 0.0;
    for k in lo..=hi {
        let t = k as f64;
        d = d.max((e.eval(t) - cdf(t)).abs());
    }
    Ok(d)
}

/// Signed suprema `(sup_t F̂_b − F̂_a, sup_t F̂_a − F̂_b)` over the pooled
/// jump points; both are at least 0.
pub fn ecdf_gaps(a: &Ecdf, b: &Ecdf) -> (f64, f64) {
    let (xa, xb) = (a.values(), b.values());
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let (mut up, mut down) = (0.0f64, 0.0f64);
    while i < xa.len() || j < xb.len() {
        let t = match (xa.get(i), xb.get(j)) {
            (Some(&u), Some(&v)) => u.min(v),
            (Some(&u), None) => u,
            (None, Some(&v)) => v,
            (None, None) => unreachable!(),
        };
        while i < xa.len() && xa[i] <= t {
            i += 1;
        }
        while j < xb.len() && xb[j] <= t {
            j += 1;
        }
        let diff = j as f64 / nb - i as f64 / na;
        up = up.max(diff);
        down = down.max(-diff);
    }
    (up, down)
}

/// Two-sample statistic `sup_t |F̂_a(t) − F̂_b(t)|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    let (ea, eb) = (Ecdf::new(a)?, Ecdf::new(b)?);
    if ea.is_empty() || eb.is_empty() {
        return Err(arg_err!("empty sample"));
    }
    let (up, down) = ecdf_gaps(&ea, &eb);
    Ok(up.max(down))
}

/// Asymptotic two-sample critical value `c(α) √((n+m)/(nm))` with
/// `c(α) = √(−ln(α/2)/2)`.
pub fn ks_critical_value(alpha: f64, n: usize, m: usize) -> f64 {
    let c = libm::sqrt(-libm::log(alpha / 2.0) / 2.0);
    c * libm::sqrt((n + m) as f64 / (n as f64 * m as f64))
}

/// DKW half-width `√(ln(2/δ) / (2N))`.
pub fn dkw_epsilon(n: usize, delta: f64) -> f64 {
    libm::sqrt(libm::log(2.0 / delta) / (2.0 * n as f64))
}

/// Pearson statistic `Σ (O − E)² / E` over cells with `E > 0`.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> Result<f64> {
    if observed.len() != expected.len() {
        return Err(arg_err!("{} observed cells but {} expected", observed.len(), expected.len()));
    }
    Ok(observed
        .iter()
        .zip(expected)
        .filter(|(_, &e)| e > 0.0)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum())
}

/// `½ Σ |p_i − q_i|`, the shorter vector padded with zeros.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    let n = p.len().max(q.len());
    0.5 * (0..n)
        .map(|i| (p.get(i).copied().unwrap_or(0.0) - q.get(i).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}

/// Sample mean and unbiased variance.
pub fn mean_var(sample: &[f64]) -> (f64, f64) {
    let n = sample.len() as f64;
    let mean = sample.iter().sum::<f64>() / n;
    let var = sample.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ecdf_steps() {
        let e = Ecdf::new(&[3.0, 1.0, 2.0, 2.0]).unwrap();
        assert_eq!(e.eval(0.5), 0.0);
        assert_eq!(e.eval(2.0), 0.75);
        assert_eq!(e.eval(3.0), 1.0);
    }

    #[test]
    fn one_sample_uniform_grid() {
        let s: Vec<f64> = (0..10).map(|i| (i as f64 + 0.5) / 10.0).collect();
        let d = ks_one_sample(&s, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!((d - 0.05).abs() < 1e-12);
    }

    #[test]
    fn two_sample_known_gap() {
        let d = ks_two_sample(&[1.0, 2.0, 3.0, 4.0], &[3.5, 4.5, 5.5, 6.5]).unwrap();
        assert!((d - 0.75).abs() < 1e-12);
        let e1 = Ecdf::new(&[1.0, 2.0]).unwrap();
        let e2 = Ecdf::new(&[5.0, 6.0]).unwrap();
        // e2 lies to the right: F̂_1 − F̂_2 reaches 1, the other side 0
        assert_eq!(ecdf_gaps(&e1, &e2), (0.0, 1.0));
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
    }

    #[test]
    fn ties_are_handled_at_once() {
        let d = ks_two_sample(&[1.0, 1.0, 2.0], &[1.0, 2.0, 2.0]).unwrap();
        assert!((d - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn band_and_critical_values() {
        assert!((dkw_epsilon(100_000, 0.01) - 0.005146).abs() < 1e-6);
        let c = ks_critical_value(0.001, 20_000, 20_000);
        assert!((c - 1.9495 * libm::sqrt(1e-4)).abs() < 1e-4);
    }

    #[test]
    fn chi_square_and_tv() {
        assert_eq!(chi_square(&[10, 10], &[10.0, 10.0]).unwrap(), 0.0);
        assert!((chi_square(&[12, 8], &[10.0, 10.0]).unwrap() - 0.8).abs() < 1e-12);
        assert!((total_variation(&[0.5, 0.5], &[1.0]) - 0.5).abs() < 1e-15);
    }
}
