use dpplab_core::numerics::{det, hermitian_eigenvalues, orthonormalize, DenseMatrix, WeightedInnerProduct};
use dpplab_core::C64;
use proptest::prelude::*;

fn complex_matrix(rows: usize, cols: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), rows * cols).prop_map(move |v| {
        DenseMatrix::from_vec(rows, cols, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap()
    })
}

fn square_pair() -> impl Strategy<Value = (DenseMatrix, DenseMatrix)> {
    (1usize..7).prop_flat_map(|n| (complex_matrix(n, n), complex_matrix(n, n)))
}

/// Projector onto the span of the given vectors in plain coordinates.
fn span_projector(vectors: &[Vec<C64>]) -> DenseMatrix {
    let ip = WeightedInnerProduct::counting(vectors[0].len());
    let q = orthonormalize(vectors, &ip).unwrap();
    let n = vectors[0].len();
    DenseMatrix::from_fn(n, n, |i, j| q.iter().map(|v| v[i] * v[j].conj()).sum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_is_multiplicative((a, b) in square_pair()) {
        let lhs = det(&a.matmul(&b)).unwrap();
        let rhs = det(&a).unwrap() * det(&b).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0));
    }

    #[test]
    fn gram_spectrum_is_nonnegative(p in (1usize..7, 1usize..7).prop_flat_map(|(r, c)| complex_matrix(r, c))) {
        let vals = hermitian_eigenvalues(&p.matmul(&p.adjoint()).hermitian_part()).unwrap();
        prop_assert!(vals.iter().all(|&v| v >= -1e-12 * p.max_abs().powi(2).max(1.0)), "{vals:?}");
    }

    #[test]
    fn orthonormalize_keeps_the_span(m in (1usize..4).prop_flat_map(|k| complex_matrix(k, 6))) {
        let input: Vec<Vec<C64>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        // a different basis of the same span: add earlier vectors to later ones
        let mut mixed = input.clone();
        for i in 1..mixed.len() {
            for j in 0..i {
                let prev = input[j].clone();
                for (x, y) in mixed[i].iter_mut().zip(prev) {
                    *x += y * C64::new(0.5, -0.25);
                }
            }
        }
        let dev = span_projector(&input).sub(&span_projector(&mixed)).max_abs();
        prop_assert!(dev < 1e-9, "{dev}");
    }
}

#[test]
fn cauchy_binet_for_random_frames() {
    use dpplab_core::dpp::{projection_exact_law, GroundSpace, ProjectionFrame};
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for (size, rank) in [(4, 2), (6, 3), (8, 4), (9, 1)] {
        let f = ProjectionFrame::random(GroundSpace::counting(size), rank, &mut rng).unwrap();
        let total: f64 = projection_exact_law(&f).unwrap().probabilities().values().sum();
        assert!((total - 1.0).abs() < 1e-10, "{total}");
    }
}
