use dpplab_core::ust::{
    degree_factorial_moment_exact, distance_pmf_exact, enumerate_trees, kirchhoff_count, leaf_statistics_exact,
    subset_probability, Graph, SpanningTree,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn edge_index(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect()
}

fn tree_mask(t: &SpanningTree, edges: &[(usize, usize)]) -> u32 {
    edges.iter().enumerate().filter(|(_, &(u, v))| t.contains_edge(u, v)).map(|(i, _)| 1u32 << i).sum()
}

fn falling(d: usize, k: usize) -> usize {
    (0..k).map(|i| d.saturating_sub(i)).product()
}

#[test]
fn statistics_match_enumeration() {
    for n in 3..=7 {
        let trees: Vec<SpanningTree> = enumerate_trees(n).unwrap().collect();
        let total = trees.len();
        assert_eq!(total, n.pow(n as u32 - 2));

        let mut dist = vec![0usize; n];
        for t in &trees {
            dist[t.distance(1, 2)] += 1;
        }
        let pmf = distance_pmf_exact(n).unwrap();
        for k in 1..n {
            assert_eq!(pmf[k - 1], ratio(dist[k], total), "n={n} k={k}");
        }

        for k in 1..=3 {
            let sum: usize = trees.iter().map(|t| falling(t.degree(1), k)).sum();
            assert_eq!(degree_factorial_moment_exact(n, k).unwrap(), ratio(sum, total), "n={n} k={k}");
        }

        let leaf1 = trees.iter().filter(|t| t.degree(1) == 1).count();
        let both = trees.iter().filter(|t| t.degree(1) == 1 && t.degree(2) == 1).count();
        let leaves: Vec<usize> = trees.iter().map(|t| t.leaf_count()).collect();
        let mean_l = ratio(leaves.iter().sum(), total);
        let mean_l2 = ratio(leaves.iter().map(|l| l * l).sum(), total);
        let nn = ratio(n, 1);
        let stats = leaf_statistics_exact(n).unwrap();
        assert_eq!(stats.p_leaf, ratio(leaf1, total));
        assert_eq!(stats.expected_fraction, &mean_l / &nn);
        assert_eq!(stats.cov_pair, ratio(both, total) - ratio(leaf1, total) * ratio(leaf1, total));
        assert_eq!(stats.var_fraction, (mean_l2 - &mean_l * &mean_l) / (&nn * &nn));
    }
}

#[test]
fn edge_sets_match_enumeration() {
    for n in 3..=7 {
        let edges = edge_index(n);
        let masks: Vec<u32> = enumerate_trees(n).unwrap().map(|t| tree_mask(&t, &edges)).collect();
        let total = masks.len();
        let m = edges.len();
        for a in 0..m {
            for b in a..m {
                for c in b..m {
                    let mut set = vec![a];
                    if b > a {
                        set.push(b);
                    }
                    if c > b {
                        set.push(c);
                    }
                    // every split of the set into required and forbidden edges
                    for split in 0u32..1 << set.len() {
                        let (mut need, mut avoid) = (0u32, 0u32);
                        let (mut ins, mut outs) = (Vec::new(), Vec::new());
                        for (k, &e) in set.iter().enumerate() {
                            if split >> k & 1 == 1 {
                                need |= 1 << e;
                                ins.push(edges[e]);
                            } else {
                                avoid |= 1 << e;
                                outs.push(edges[e]);
                            }
                        }
                        let count = masks.iter().filter(|&&t| t & need == need && t & avoid == 0).count();
                        let p = subset_probability(n, &ins, &outs).unwrap();
                        assert_eq!(p, ratio(count, total), "n={n} in={ins:?} out={outs:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn cycles_have_probability_zero() {
    for n in 3..=9 {
        let p = subset_probability(n, &[(1, 2), (2, 3), (1, 3)], &[]).unwrap();
        assert!(p.is_zero());
    }
    assert!(subset_probability(5, &[(1, 2), (2, 3), (3, 4), (4, 1)], &[]).unwrap().is_zero());
}

#[test]
fn empty_constraints_have_probability_one() {
    for n in 2..=6 {
        assert!(subset_probability(n, &[], &[]).unwrap().is_one());
    }
}

#[test]
fn kirchhoff_counts() {
    for n in 2..=8 {
        assert_eq!(kirchhoff_count(&Graph::complete(n)).unwrap(), BigInt::from(n.pow(n as u32 - 2)));
    }
    assert_eq!(kirchhoff_count(&Graph::path(6)).unwrap(), BigInt::from(1));
    assert_eq!(kirchhoff_count(&Graph::cycle(7)).unwrap(), BigInt::from(7));
}
