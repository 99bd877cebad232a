use std::collections::BTreeMap;

use dpplab_core::dpp::{
    inclusion_probability, mixed_probability, projection_exact_law, sample_projection, Configuration, GroundSpace,
    ProjectionFrame,
};
use proptest::prelude::*;
use rand::SeedableRng;

fn frame(size: usize, rank: usize, seed: u64, weighted: bool) -> ProjectionFrame {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let space = if weighted {
        GroundSpace::new((0..size).map(|i| i as f64).collect(), (0..size).map(|i| 0.3 + 0.4 * i as f64).collect())
            .unwrap()
    } else {
        GroundSpace::counting(size)
    };
    ProjectionFrame::random(space, rank, &mut rng).unwrap()
}

fn subsets(size: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << size).map(move |mask| (0..size).filter(|&i| mask >> i & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_laws_are_normalized(size in 1usize..8, rank_frac in 0.0f64..1.0, seed: u64, weighted: bool) {
        let rank = 1 + ((size - 1) as f64 * rank_frac) as usize;
        let law = projection_exact_law(&frame(size, rank, seed, weighted)).unwrap();
        prop_assert!((law.total() - 1.0).abs() < 1e-10);
        prop_assert!(law.iter().all(|(c, _)| c.len() == rank));
    }

    #[test]
    fn samples_have_rank_points(size in 2usize..9, seed: u64) {
        let rank = 1 + (seed as usize) % (size - 1);
        let f = frame(size, rank, seed, true);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xABCD);
        for _ in 0..20 {
            prop_assert_eq!(sample_projection(&f, &mut rng).unwrap().len(), rank);
        }
    }

    #[test]
    fn kernel_inclusions_match_law(size in 2usize..7, seed: u64) {
        let rank = 1 + (seed as usize) % size;
        let f = frame(size, rank, seed, seed % 2 == 0);
        let law = projection_exact_law(&f).unwrap();
        let k = f.kernel();
        for a in subsets(size).filter(|a| a.len() <= rank) {
            let c = Configuration::new(a.clone()).unwrap();
            let from_law = inclusion_probability(law.probabilities(), &c);
            let from_kernel = mixed_probability(&k, &a, &[]).unwrap();
            prop_assert!((from_law - from_kernel).abs() < 1e-10, "{a:?}: {from_law} vs {from_kernel}");
        }
    }
}

#[test]
fn mixed_probabilities_partition_three_points() {
    for seed in 0..10 {
        let f = frame(3, 1 + seed as usize % 3, seed, seed % 2 == 1);
        let law = projection_exact_law(&f).unwrap();
        let k = f.kernel();
        let mut total = 0.0;
        for inside in subsets(3) {
            let outside: Vec<usize> = (0..3).filter(|i| !inside.contains(i)).collect();
            let p = mixed_probability(&k, &inside, &outside).unwrap();
            let exact = law.probability(&Configuration::new(inside.clone()).unwrap());
            assert!((p - exact).abs() < 1e-12, "{inside:?}: {p} vs {exact}");
            total += p;
        }
        assert!((total - 1.0).abs() < 1e-12);
    }
}

#[test]
fn correlations_do_not_determine_the_law() {
    let cfg = |v: &[usize]| Configuration::new(v.to_vec()).unwrap();
    let mut independent = BTreeMap::new();
    for a in subsets(3) {
        independent.insert(cfg(&a), 0.125);
    }
    let mut dependent = BTreeMap::new();
    for (two, p2) in [(false, 0.75), (true, 0.25)] {
        for (three, p3) in [(false, 0.5), (true, 0.5)] {
            let mut a = vec![0];
            if two {
                a.push(1);
            }
            if three {
                a.push(2);
            }
            dependent.insert(cfg(&a), p2 * p3);
        }
    }
    let top = cfg(&[0, 1, 2]);
    assert_eq!(inclusion_probability(&independent, &top), 0.125);
    assert_eq!(inclusion_probability(&dependent, &top), 0.125);
    for pair in [[0, 1], [0, 2], [1, 2]] {
        assert_eq!(inclusion_probability(&independent, &cfg(&pair)), 0.25);
    }
    assert_eq!(inclusion_probability(&dependent, &cfg(&[0, 2])), 0.5);
    assert_eq!(inclusion_probability(&dependent, &cfg(&[0, 1])), 0.25);
    assert_eq!(inclusion_probability(&dependent, &cfg(&[1, 2])), 0.125);
}
