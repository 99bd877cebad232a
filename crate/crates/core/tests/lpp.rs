use dpplab_core::lpp::{last_passage_time, sample_corner, sample_grid, WeightKind};
use dpplab_core::stats::{chi_square, ks_one_sample};
use proptest::prelude::*;
use rand::SeedableRng;

fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn passage_times_increase_along_both_axes(m in 1usize..8, n in 1usize..8, geometric: bool, seed: u64) {
        let kind = if geometric { WeightKind::Geometric { q: 0.6 } } else { WeightKind::unit_exponential() };
        let g = sample_grid(m, n, kind, &mut rng(seed)).unwrap();
        for i in 1..=m {
            for j in 1..=n {
                let here = last_passage_time(&g, i, j).unwrap();
                if i < m {
                    prop_assert!(last_passage_time(&g, i + 1, j).unwrap() >= here);
                }
                if j < n {
                    prop_assert!(last_passage_time(&g, i, j + 1).unwrap() >= here);
                }
            }
        }
        prop_assert_eq!(g.corner(), sample_corner(m, n, kind, &mut rng(seed)).unwrap());
    }
}

#[test]
fn single_row_exponential_is_gamma() {
    let n = 5;
    let mut r = rng(4);
    let draws: Vec<f64> = (0..20_000).map(|_| sample_corner(1, n, WeightKind::unit_exponential(), &mut r).unwrap()).collect();
    // Gamma(n, 1) CDF for integer n
    let cdf = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..n {
            term *= x / k as f64;
            sum += term;
        }
        1.0 - (-x).exp() * sum
    };
    let d = ks_one_sample(&draws, cdf).unwrap();
    assert!(d < 1.63 / (draws.len() as f64).sqrt(), "{d}");
}

#[test]
fn single_row_geometric_is_negative_binomial() {
    let (n, q, reps) = (3usize, 0.5, 20_000);
    let mut r = rng(5);
    let cells = 12;
    let mut observed = vec![0u64; cells];
    for _ in 0..reps {
        let g = sample_corner(1, n, WeightKind::Geometric { q }, &mut r).unwrap() as usize;
        observed[g.min(cells - 1)] += 1;
    }
    let mut expected: Vec<f64> = (0..cells)
        .map(|k| {
            let log = libm::lgamma((k + n) as f64) - libm::lgamma(k as f64 + 1.0) - libm::lgamma(n as f64)
                + n as f64 * libm::log(1.0 - q)
                + k as f64 * libm::log(q);
            reps as f64 * libm::exp(log)
        })
        .collect();
    let head: f64 = expected[..cells - 1].iter().sum();
    expected[cells - 1] = reps as f64 - head;
    let stat = chi_square(&observed, &expected).unwrap();
    // 0.999 quantile of chi-square with 11 degrees of freedom
    assert!(stat < 31.26, "{stat}");
}
