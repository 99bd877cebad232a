use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Fraction-free (Bareiss) determinant of a square integer matrix given as
/// rows. Exact for any size; the empty matrix has determinant 1.
pub fn bareiss_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact determinant of a rational matrix: rows are brought to a common
/// denominator and the integer determinant is computed by Bareiss.
pub fn det_rational(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut scale = BigInt::one();
    let mut ints = Vec::with_capacity(n);
    for row in rows {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, r| num_integer::Integer::lcm(&acc, r.denom()));
        ints.push(
            row.iter()
                .map(|r| r.numer() * (&lcm / r.denom()))
                .collect::<Vec<_>>(),
        );
        scale *= lcm;
    }
    BigRational::new(bareiss_det(&ints), scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn small_integer_dets() {
        assert_eq!(bareiss_det(&[]), bi(1));
        assert_eq!(bareiss_det(&[vec![bi(7)]]), bi(7));
        let m = vec![vec![bi(0), bi(1)], vec![bi(1), bi(0)]];
        assert_eq!(bareiss_det(&m), bi(-1));
        let m = vec![
            vec![bi(2), bi(-1), bi(0)],
            vec![bi(-1), bi(2), bi(-1)],
            vec![bi(0), bi(-1), bi(2)],
        ];
        assert_eq!(bareiss_det(&m), bi(4));
        let singular = vec![vec![bi(1), bi(2)], vec![bi(2), bi(4)]];
        assert_eq!(bareiss_det(&singular), bi(0));
    }

    #[test]
    fn rational_det() {
        let r = |a: i64, b: i64| BigRational::new(bi(a), bi(b));
        let m = vec![vec![r(1, 2), r(1, 5)], vec![r(1, 5), r(2, 5)]];
        // 1/5 - 1/25 = 4/25
        assert_eq!(det_rational(&m), r(4, 25));
    }
}
