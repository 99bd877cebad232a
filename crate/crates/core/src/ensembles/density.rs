use alloc::vec::Vec;

use super::EnsembleSpec;
use crate::{Error, Result};

/// Log joint density of an unordered configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDensity {
    /// `Σ_{j<k} 2 ln|x_j − x_k| + Σ_j ln w(x_j)`.
    pub unnormalized: f64,
    /// `ln Z`, normalizing the symmetric density on ordered tuples (for
    /// sorted configurations multiply the result by `m!`).
    pub log_normalizer: Option<f64>,
}

impl LogDensity {
    /// `unnormalized − ln Z`, if the normalizer is known.
    pub fn normalized(&self) -> Option<f64> {
        self.log_normalizer.map(|z| self.unnormalized - z)
    }
}

fn lgamma(x: f64) -> f64 {
    libm::lgamma(x)
}

fn ln_factorial(k: usize) -> f64 {
    lgamma(k as f64 + 1.0)
}

/// `x^a` in logs, with `0^0 = 1`.
fn ln_pow(x: f64, a: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * libm::log(x)
    }
}

/// Joint density up to normalization, with the closed-form normalizer:
///
/// * Wishart `(m, n)`: weight `x^{n−m} e^{−x}`,
///   `Z = Π_{j<m} (j+1)! Γ(n−m+j+1)`;
/// * Jacobi `(n1, n2, n)` with `a = n1 − n`, `b = n2 − n`: weight
///   `x^a (1−x)^b` on `[0, 1]`,
///   `Z = Π_{j<n} Γ(a+1+j) Γ(b+1+j) (j+1)! / Γ(a+b+n+j+1)`;
/// * Meixner `(m, n, q)` with `β = n − m + 1`: weight `C(h+n−m, h) q^h`,
///   `Z = m! Π_{j<m} j! (β)_j q^j / (1−q)^{β+2j}`.
pub fn log_density(spec: &EnsembleSpec, config: &[f64]) -> Result<LogDensity> {
    spec.validate()?;
    let size = spec.size();
    if config.len() != size {
        return Err(Error::Dimension(alloc::format!("{} values for {size} particles", config.len())));
    }
    if config.iter().any(|x| !x.is_finite()) {
        return Err(Error::Support(alloc::format!("non-finite value in {config:?}")));
    }
    let mut vander = 0.0;
    for j in 0..size {
        for k in j + 1..size {
            vander += 2.0 * libm::log((config[j] - config[k]).abs());
        }
    }
    let (single, z): (Vec<f64>, f64) = match *spec {
        EnsembleSpec::Wishart { m, n } => {
            if let Some(x) = config.iter().find(|x| **x < 0.0) {
                return Err(Error::Support(alloc::format!("negative Wishart eigenvalue {x}")));
            }
            let a = (n - m) as f64;
            let z = (0..m).map(|j| ln_factorial(j + 1) + lgamma(a + j as f64 + 1.0)).sum();
            (config.iter().map(|&x| ln_pow(x, a) - x).collect(), z)
        }
        EnsembleSpec::Jacobi { n1, n2, n } => {
            if let Some(x) = config.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                return Err(Error::Support(alloc::format!("Jacobi eigenvalue {x} outside [0, 1]")));
            }
            let (a, b) = ((n1 - n) as f64, (n2 - n) as f64);
            let z = (0..n)
                .map(|j| {
                    let jf = j as f64;
                    lgamma(a + 1.0 + jf) + lgamma(b + 1.0 + jf) + ln_factorial(j + 1) - lgamma(a + b + n as f64 + jf + 1.0)
                })
                .sum();
            (config.iter().map(|&x| ln_pow(x, a) + ln_pow(1.0 - x, b)).collect(), z)
        }
        EnsembleSpec::Meixner { m, n, q } => {
            if let Some(x) = config.iter().find(|x| **x < 0.0 || x.fract() != 0.0) {
                return Err(Error::Support(alloc::format!("Meixner particle {x} is not a nonnegative integer")));
            }
            let k = (n - m) as f64;
            let beta = k + 1.0;
            let (lq, l1q) = (libm::log(q), libm::log1p(-q));
            let z = ln_factorial(m)
                + (0..m)
                    .map(|j| {
                        let jf = j as f64;
                        ln_factorial(j) + lgamma(beta + jf) - lgamma(beta) + jf * lq - (beta + 2.0 * jf) * l1q
                    })
                    .sum::<f64>();
            let single = config
                .iter()
                .map(|&h| lgamma(h + k + 1.0) - lgamma(h + 1.0) - lgamma(k + 1.0) + h * lq)
                .collect();
            (single, z)
        }
    };
    Ok(LogDensity { unnormalized: vander + single.iter().sum::<f64>(), log_normalizer: Some(z) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_laguerre;
    use alloc::vec;

    #[test]
    fn one_by_one_wishart() {
        let d = log_density(&EnsembleSpec::Wishart { m: 1, n: 1 }, &[2.5]).unwrap();
        assert!((d.normalized().unwrap() + 2.5).abs() < 1e-14);
        assert!(log_density(&EnsembleSpec::Wishart { m: 1, n: 1 }, &[-1.0]).is_err());
    }

    #[test]
    fn wishart_normalizer_by_quadrature() {
        let rule = gauss_laguerre(40).unwrap();
        for (m, n) in [(2, 2), (2, 4), (3, 3), (3, 4)] {
            let spec = EnsembleSpec::Wishart { m, n };
            let mut total = 0.0;
            let mut idx = vec![0usize; m];
            'outer: loop {
                let x: Vec<f64> = idx.iter().map(|&i| rule.nodes[i]).collect();
                let w: f64 = idx.iter().map(|&i| rule.weights[i] * libm::exp(rule.nodes[i])).product();
                let d = log_density(&spec, &x).unwrap();
                total += w * libm::exp(d.normalized().unwrap());
                for p in 0..m {
                    idx[p] += 1;
                    if idx[p] < rule.len() {
                        continue 'outer;
                    }
                    idx[p] = 0;
                }
                break;
            }
            assert!((total - 1.0).abs() < 1e-10, "({m},{n}): {total}");
        }
    }

    #[test]
    fn jacobi_normalizer_by_simpson() {
        let spec = EnsembleSpec::Jacobi { n1: 3, n2: 4, n: 2 };
        let k = 400;
        let h = 1.0 / k as f64;
        let simpson = |i: usize| if i == 0 || i == k { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let mut total = 0.0;
        for i in 0..=k {
            for j in 0..=k {
                let (x, y) = (i as f64 * h, j as f64 * h);
                if i == j {
                    continue;
                }
                let d = log_density(&spec, &[x, y]).unwrap();
                total += simpson(i) * simpson(j) * libm::exp(d.normalized().unwrap());
            }
        }
        total *= h * h / 9.0;
        assert!((total - 1.0).abs() < 1e-8, "{total}");
    }

    #[test]
    fn meixner_single_particle_is_negative_binomial() {
        let (n, q) = (3usize, 0.4);
        let spec = EnsembleSpec::Meixner { m: 1, n, q };
        for h in 0..20 {
            let d = log_density(&spec, &[h as f64]).unwrap();
            let hf = h as f64;
            let nb = libm::lgamma(hf + n as f64) - libm::lgamma(hf + 1.0) - libm::lgamma(n as f64)
                + n as f64 * libm::log(1.0 - q)
                + hf * libm::log(q);
            assert!((d.normalized().unwrap() - nb).abs() < 1e-12);
        }
    }

    #[test]
    fn meixner_normalizer_by_summation() {
        let spec = EnsembleSpec::Meixner { m: 2, n: 3, q: 0.5 };
        let mut total = 0.0;
        for a in 0..150 {
            for b in 0..150 {
                if a != b {
                    total += libm::exp(log_density(&spec, &[a as f64, b as f64]).unwrap().normalized().unwrap());
                }
            }
        }
        assert!((total - 1.0).abs() < 1e-12, "{total}");
    }

    #[test]
    fn symmetric_in_arguments() {
        let spec = EnsembleSpec::Wishart { m: 3, n: 5 };
        let a = log_density(&spec, &[0.3, 2.0, 1.1]).unwrap().unnormalized;
        let b = log_density(&spec, &[2.0, 1.1, 0.3]).unwrap().unnormalized;
        assert!((a - b).abs() < 1e-12);
    }
}
