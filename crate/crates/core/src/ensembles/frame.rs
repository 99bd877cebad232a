use alloc::vec::Vec;

use super::EnsembleSpec;
use crate::dpp::{GroundSpace, ProjectionFrame};
use crate::error::arg_err;
use crate::numerics::{gauss_laguerre, orthonormalize, DenseMatrix, OrthonormalPolynomials};
use crate::{Error, Result, C64};

/// Gauss–Laguerre points standing in for `(ℝ₊, e^{−x} dx)`.
pub const QUADRATURE_POINTS: usize = 64;

/// Default relative tail budget for the truncated Meixner lattice.
pub const MEIXNER_TOL: f64 = 1e-10;

const FRAME_TOL: f64 = 1e-8;
const MAX_CUTOFF: usize = 1_000_000;

/// How the orthonormal polynomials behind a frame are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameMethod {
    /// Stieltjes three-term recurrence.
    Recurrence,
    /// Gram–Schmidt of monomials (ill-conditioned beyond small degree; kept
    /// as an independent cross-check).
    GramSchmidt,
}

/// The 64-point Gauss–Laguerre rule as a weighted ground space.
pub fn wishart_support() -> Result<GroundSpace> {
    let rule = gauss_laguerre(QUADRATURE_POINTS)?;
    GroundSpace::new(rule.nodes, rule.weights)
}

fn ln_binomial(top: f64, k: f64) -> f64 {
    libm::lgamma(top + 1.0) - libm::lgamma(k + 1.0) - libm::lgamma(top - k + 1.0)
}

/// Meixner single-site weights `C(x+n−m, x) q^x` for `x = 0..=t`.
pub fn meixner_weights(m: usize, n: usize, q: f64, t: usize) -> Vec<f64> {
    let k = (n - m) as f64;
    (0..=t)
        .map(|x| {
            let xf = x as f64;
            libm::exp(ln_binomial(xf + k, xf) + xf * libm::log(q))
        })
        .collect()
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + libm::log1p(libm::exp(lo - hi))
}

/// Smallest `T` with `Σ_{x>T} x^{2(m−1)} C(x+n−m, x) q^x` below `tol` times
/// the sum over `x ≤ T`: doubling search, then bisection.
pub fn meixner_truncate(spec: &EnsembleSpec, tol: f64) -> Result<usize> {
    spec.validate()?;
    let EnsembleSpec::Meixner { m, n, q } = *spec else {
        return Err(arg_err!("truncation applies to the Meixner ensemble only"));
    };
    if !(tol > 0.0 && tol < 1.0) {
        return Err(arg_err!("tolerance must lie in (0, 1), got {tol}"));
    }
    let k = (n - m) as f64;
    let p = 2.0 * (m - 1) as f64;
    let lq = libm::log(q);
    let log_term = |x: usize| -> f64 {
        let xf = x as f64;
        let poly = if p == 0.0 { 0.0 } else if x == 0 { f64::NEG_INFINITY } else { p * libm::log(xf) };
        poly + ln_binomial(xf + k, xf) + xf * lq
    };
    let head = |t: usize| (0..=t).fold(f64::NEG_INFINITY, |acc, x| log_add(acc, log_term(x)));
    let tail = |t: usize| {
        let mut acc = f64::NEG_INFINITY;
        let mut prev = f64::NEG_INFINITY;
        let mut x = t + 1;
        loop {
            let lt = log_term(x);
            acc = log_add(acc, lt);
            // the terms are unimodal; stop once decreasing and negligible
            if lt < prev && lt < acc - 45.0 {
                break;
            }
            prev = lt;
            x += 1;
            if x > 100 * MAX_CUTOFF {
                break;
            }
        }
        acc
    };
    let ltol = libm::log(tol);
    let ok = |t: usize| tail(t) < ltol + head(t);
    let mut hi = 1usize;
    while !ok(hi) {
        hi *= 2;
        if hi > 2 * MAX_CUTOFF {
            return Err(Error::Size(alloc::format!("Meixner cutoff exceeds {MAX_CUTOFF} at tol {tol:e}")));
        }
    }
    let mut lo = hi / 2;
    if lo == 0 || ok(lo) {
        lo = 0;
    }
    // invariant: ok(hi), and lo fails unless lo == 0
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let t = if lo == 0 && ok(0) { 0 } else { hi };
    if t > MAX_CUTOFF {
        return Err(Error::Size(alloc::format!("Meixner cutoff {t} exceeds {MAX_CUTOFF}")));
    }
    Ok(t)
}

/// Frame on the default support: the 64-point Gauss–Laguerre rule for
/// Wishart, the lattice `{0..T}` with Meixner weights truncated at
/// [`MEIXNER_TOL`] for Meixner.
pub fn projection_frame(spec: &EnsembleSpec) -> Result<ProjectionFrame> {
    spec.validate()?;
    let space = match *spec {
        EnsembleSpec::Wishart { .. } => wishart_support()?,
        EnsembleSpec::Meixner { m, n, q } => {
            let t = meixner_truncate(spec, MEIXNER_TOL)?;
            GroundSpace::lattice(meixner_weights(m, n, q, t))?
        }
        EnsembleSpec::Jacobi { .. } => return Err(arg_err!("no projection frame is provided for Jacobi")),
    };
    projection_frame_on(spec, space, FrameMethod::Recurrence)
}

/// Orthonormal frame on a caller-supplied weighted space.
///
/// Wishart `(m, n)` with `n − m = 2ℓ` even: functions `x^ℓ p_j(x)`,
/// `j < m`, with `p_j` orthonormal under `x^{2ℓ} μ`; they span
/// `{x^ℓ, …, x^{ℓ+m−1}}` and are orthonormal under `μ` (the space's
/// weights, e.g. a Gauss–Laguerre rule). Meixner: polynomials of degree
/// `< m` orthonormal under `μ`.
pub fn projection_frame_on(spec: &EnsembleSpec, space: GroundSpace, method: FrameMethod) -> Result<ProjectionFrame> {
    spec.validate()?;
    let (rank, ell) = match *spec {
        EnsembleSpec::Wishart { m, n } => {
            if (n - m) % 2 != 0 {
                return Err(arg_err!("Wishart frames need n − m even, got m={m}, n={n}"));
            }
            (m, (n - m) / 2)
        }
        EnsembleSpec::Meixner { m, .. } => (m, 0),
        EnsembleSpec::Jacobi { .. } => return Err(arg_err!("no projection frame is provided for Jacobi")),
    };
    let x = space.points();
    let w = space.weights();
    let npts = space.len();
    let shift = |xi: f64| libm::pow(xi, ell as f64);
    let rows = match method {
        FrameMethod::Recurrence => {
            let folded: Vec<f64> = x.iter().zip(w).map(|(&xi, &wi)| wi * shift(xi) * shift(xi)).collect();
            let polys = OrthonormalPolynomials::stieltjes(x, &folded, rank)?;
            let mut rows = DenseMatrix::zeros(rank, npts);
            for (c, &xi) in x.iter().enumerate() {
                let s = shift(xi);
                for (j, v) in polys.eval_all(xi).into_iter().enumerate() {
                    rows[(j, c)] = C64::new(s * v, 0.0);
                }
            }
            rows
        }
        FrameMethod::GramSchmidt => {
            let monomials: Vec<Vec<C64>> = (0..rank)
                .map(|j| x.iter().map(|&xi| C64::new(libm::pow(xi, (ell + j) as f64), 0.0)).collect())
                .collect();
            let ortho = orthonormalize(&monomials, &space.inner_product())?;
            DenseMatrix::from_vec(rank, npts, ortho.into_iter().flatten().collect())?
        }
    };
    ProjectionFrame::with_tolerance(space, rows, FRAME_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laguerre(k: usize, x: f64) -> f64 {
        match k {
            0 => 1.0,
            1 => 1.0 - x,
            2 => 1.0 - 2.0 * x + x * x / 2.0,
            _ => unreachable!(),
        }
    }

    #[test]
    fn square_wishart_frame_is_laguerre() {
        let f = projection_frame(&EnsembleSpec::Wishart { m: 3, n: 3 }).unwrap();
        for (c, &x) in f.space().points().iter().enumerate() {
            for k in 0..3 {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let got = f.rows()[(k, c)].re;
                let want = sign * laguerre(k, x);
                assert!((got - want).abs() < 1e-8 * want.abs().max(1.0), "k={k} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn recurrence_and_gram_schmidt_agree() {
        for spec in [
            EnsembleSpec::Wishart { m: 4, n: 6 },
            EnsembleSpec::Wishart { m: 6, n: 6 },
            EnsembleSpec::Meixner { m: 5, n: 6, q: 0.5 },
        ] {
            let a = projection_frame(&spec).unwrap();
            let b = projection_frame_on(&spec, a.space().clone(), FrameMethod::GramSchmidt).unwrap();
            let (ka, kb) = (a.kernel(), b.kernel());
            let scale = ka.matrix().max_abs();
            assert!(ka.matrix().sub(kb.matrix()).max_abs() < 1e-6 * scale.max(1.0), "{spec:?}");
        }
    }

    #[test]
    fn odd_gap_rejected() {
        assert!(projection_frame(&EnsembleSpec::Wishart { m: 2, n: 5 }).is_err());
        assert!(projection_frame(&EnsembleSpec::Jacobi { n1: 3, n2: 3, n: 2 }).is_err());
    }

    #[test]
    fn truncation_geometric_tail() {
        let spec = EnsembleSpec::Meixner { m: 1, n: 1, q: 0.5 };
        let t = meixner_truncate(&spec, 1e-12).unwrap();
        // tail 2^{−T} against head 2 − 2^{−T}
        assert_eq!(t, 39);
        let mut prev = 0;
        for e in 2..14 {
            let t = meixner_truncate(&spec, libm::pow(10.0, -(e as f64))).unwrap();
            assert!(t >= prev);
            prev = t;
        }
    }

    #[test]
    fn truncated_mass_is_stable() {
        let spec = EnsembleSpec::Meixner { m: 3, n: 4, q: 0.5 };
        let tol = 1e-10;
        let t = meixner_truncate(&spec, tol).unwrap();
        let mass = |t: usize| -> f64 {
            meixner_weights(3, 4, 0.5, t).iter().enumerate().map(|(x, w)| libm::pow(x as f64, 4.0) * w).sum()
        };
        let (a, b) = (mass(t), mass(t + 10));
        assert!((b - a) / a < tol);
    }
}
