use alloc::vec;
use alloc::vec::Vec;

use num_complex::ComplexFloat;

use super::DenseMatrix;
use crate::{Error, Result, C64};

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and the
/// matching orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending real eigenvalues.
    pub values: Vec<f64>,
    /// Unitary matrix whose column `k` is the eigenvector of `values[k]`.
    pub vectors: DenseMatrix,
}

const SYMMETRY_TOL: f64 = 1e-10;

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

/// Full Hermitian eigen-decomposition.
///
/// Householder reduction to a Hermitian tridiagonal form, a diagonal phase
/// change making the off-diagonal real and nonnegative, then implicit-shift
/// QL on the real tridiagonal matrix with accumulated rotations.
pub fn hermitian_eigen(m: &DenseMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::Dimension(alloc::format!(
            "eigenvalues of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let dev = m.hermitian_deviation();
    if dev > SYMMETRY_TOL * m.max_abs().max(1.0) {
        return Err(Error::Symmetry { deviation: dev });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(HermitianEigen { values: Vec::new(), vectors: DenseMatrix::zeros(0, 0) });
    }
    let mut a = m.clone();
    let mut q = DenseMatrix::identity(n);
    tridiagonalize(&mut a, &mut q);

    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phase = vec![C64::new(1.0, 0.0); n];
    for k in 0..n.saturating_sub(1) {
        let beta = a[(k + 1, k)];
        let r = beta.abs();
        e[k] = r;
        phase[k + 1] = if r > 0.0 { phase[k] * (beta / r) } else { phase[k] };
    }
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tql2(&mut d, &mut e, &mut z, n);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    // V = Q · diag(phase) · Z
    let vectors = DenseMatrix::from_fn(n, n, |r, c| {
        let col = order[c];
        let mut s = C64::new(0.0, 0.0);
        for k in 0..n {
            s += q[(r, k)] * phase[k] * z[k * n + col];
        }
        s
    });
    Ok(HermitianEigen { values, vectors })
}

/// In-place unitary reduction `a ← Q* a Q` to Hermitian tridiagonal form;
/// `q` accumulates the transformation.
fn tridiagonalize(a: &mut DenseMatrix, q: &mut DenseMatrix) {
    let n = a.rows();
    let mut v = vec![C64::new(0.0, 0.0); n];
    let mut w = vec![C64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = libm::sqrt((k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum());
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let unit = if x0.abs() > 0.0 { x0 / x0.abs() } else { C64::new(1.0, 0.0) };
        let alpha = -unit * norm;
        for x in v.iter_mut() {
            *x = C64::new(0.0, 0.0);
        }
        for i in k + 1..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        // left: a ← a − τ v (v* a)
        for j in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for i in k + 1..n {
                s += v[i].conj() * a[(i, j)];
            }
            w[j] = s * tau;
        }
        for i in k + 1..n {
            for j in 0..n {
                let t = v[i] * w[j];
                a[(i, j)] -= t;
            }
        }
        // right: a ← a − τ (a v) v*
        for i in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for j in k + 1..n {
                s += a[(i, j)] * v[j];
            }
            w[i] = s * tau;
        }
        for i in 0..n {
            for j in k + 1..n {
                let t = w[i] * v[j].conj();
                a[(i, j)] -= t;
            }
        }
        // q ← q H
        for i in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for j in k + 1..n {
                s += q[(i, j)] * v[j];
            }
            let s = s * tau;
            for j in k + 1..n {
                let t = s * v[j].conj();
                q[(i, j)] -= t;
            }
        }
    }
}

/// Implicit-shift QL for a real symmetric tridiagonal matrix with diagonal
/// `d` and subdiagonal `e` (`e[i]` couples `i` and `i+1`, `e[n-1] = 0`).
/// Rotations are accumulated into the row-major `n × n` matrix `z`.
fn tql2(d: &mut [f64], e: &mut [f64], z: &mut [f64], n: usize) {
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        let m = m.min(n - 1);
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                let mut i = m;
                while i > l {
                    i -= 1;
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = libm::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let zk1 = z[k * n + i + 1];
                        let zk = z[k * n + i];
                        z[k * n + i + 1] = s * zk + c * zk1;
                        z[k * n + i] = c * zk - s * zk1;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 || iter >= 60 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
}
