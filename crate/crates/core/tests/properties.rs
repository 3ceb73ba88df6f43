use proptest::prelude::*;

use reversal_core::expander::{check_doubling, BipartiteGraph, CheckMode, DoublingConfig, Outcome};
use reversal_core::format;
use reversal_core::linext::{distance, le_graph_neighbors, led_exact, led_local_search, random_extension};
use reversal_core::poset::{brute_force_width, count_linear_extensions, enumerate_linear_extensions, width_and_antichain};
use reversal_core::seed::rng;
use reversal_core::{LinearExtension, LocalSearchParams, Poset};

/// Random DAG on `n` vertices: edges only go from lower to higher index,
/// then the vertex labels are permuted so index order is not an extension.
fn poset_strategy(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(0u8..100, pairs), proptest::collection::vec(any::<u32>(), n), 5u8..60)
        })
        .prop_map(|(n, coins, keys, density)| {
            let mut labels: Vec<usize> = (0..n).collect();
            labels.sort_by_key(|&i| (keys[i], i));
            let mut rel = Vec::new();
            let mut c = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if coins[c] < density {
                        rel.push((labels[i], labels[j]));
                    }
                    c += 1;
                }
            }
            Poset::from_relations(n, rel).unwrap()
        })
}

fn brute_count(p: &Poset) -> usize {
    fn go(p: &Poset, placed: &mut Vec<bool>, depth: usize) -> usize {
        if depth == p.len() {
            return 1;
        }
        let ready: Vec<usize> =
            (0..p.len()).filter(|&x| !placed[x] && (0..p.len()).all(|y| !p.lt(y, x) || placed[y])).collect();
        let mut total = 0;
        for x in ready {
            placed[x] = true;
            total += go(p, placed, depth + 1);
            placed[x] = false;
        }
        total
    }
    go(p, &mut vec![false; p.len()], 0)
}

fn direct_distance(p: &Poset, a: &LinearExtension, b: &LinearExtension) -> usize {
    let mut d = 0;
    for x in 0..p.len() {
        for y in x + 1..p.len() {
            if p.incomparable(x, y) && a.before(x, y) != b.before(x, y) {
                d += 1;
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closure_is_transitive_and_idempotent(p in poset_strategy(14)) {
        let n = p.len();
        for x in 0..n {
            prop_assert!(!p.lt(x, x));
            for y in 0..n {
                prop_assert!(!(p.lt(x, y) && p.lt(y, x)));
                for z in 0..n {
                    if p.lt(x, y) && p.lt(y, z) {
                        prop_assert!(p.lt(x, z));
                    }
                }
            }
        }
        let again = Poset::from_relations(n, p.relations().collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(&again, &p);
    }

    #[test]
    fn covers_reproduce_the_closure(p in poset_strategy(14)) {
        let from_covers = Poset::from_relations(p.len(), p.covers().to_vec()).unwrap();
        prop_assert_eq!(&from_covers, &p);
        // a cover has nothing strictly between its ends
        for &(u, v) in p.covers() {
            prop_assert!((0..p.len()).all(|w| !(p.lt(u, w) && p.lt(w, v))));
        }
        prop_assert_eq!(format::parse_poset(&format::serialize_poset(&p, &[])).unwrap(), p);
    }

    #[test]
    fn pairs_split_into_comparable_and_incomparable(p in poset_strategy(16)) {
        let n = p.len();
        prop_assert_eq!(p.inc_count() + p.comparable_pairs(), n * (n - 1) / 2);
        let pairs: Vec<_> = p.inc_index().pairs().collect();
        prop_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(pairs.iter().all(|&(x, y)| x < y && p.incomparable(x, y)));
    }

    #[test]
    fn width_matches_brute_force(p in poset_strategy(12)) {
        let (w, antichain) = width_and_antichain(&p);
        prop_assert_eq!(w, brute_force_width(&p));
        prop_assert_eq!(antichain.len(), w);
        prop_assert_eq!(p.is_antichain(&antichain).unwrap(), None);
    }

    #[test]
    fn enumeration_matches_brute_force(p in poset_strategy(7)) {
        let all = enumerate_linear_extensions(&p, 10_000).unwrap();
        prop_assert_eq!(all.len(), brute_count(&p));
        prop_assert_eq!(count_linear_extensions(&p, 10_000).unwrap(), all.len());
        let mut orders: Vec<_> = all.iter().map(|l| l.order().to_vec()).collect();
        orders.dedup();
        prop_assert_eq!(orders.len(), all.len());
    }

    #[test]
    fn distance_is_a_metric(p in poset_strategy(14), seed in any::<u64>()) {
        let mut g = rng(seed);
        let (a, b, c) = (random_extension(&p, &mut g), random_extension(&p, &mut g), random_extension(&p, &mut g));
        let ab = distance(&p, &a, &b).unwrap();
        prop_assert_eq!(ab, direct_distance(&p, &a, &b));
        prop_assert_eq!(ab, distance(&p, &b, &a).unwrap());
        prop_assert_eq!(distance(&p, &a, &a).unwrap(), 0);
        prop_assert!(ab <= distance(&p, &a, &c).unwrap() + distance(&p, &c, &b).unwrap());
        prop_assert!(ab <= p.inc_count());
    }

    #[test]
    fn extension_graph_is_symmetric(p in poset_strategy(10), seed in any::<u64>()) {
        let l = random_extension(&p, &mut rng(seed));
        for nb in le_graph_neighbors(&p, &l).unwrap() {
            prop_assert_eq!(distance(&p, &l, &nb).unwrap(), 1);
            prop_assert!(le_graph_neighbors(&p, &nb).unwrap().contains(&l));
        }
    }

    #[test]
    fn local_search_never_beats_exact(p in poset_strategy(7)) {
        let exact = led_exact(&p, 50_000).unwrap();
        prop_assert_eq!(exact.recheck(&p).unwrap(), exact.value);
        let params = LocalSearchParams { restarts: 4, max_steps: 500, seed: 3 };
        let heuristic = led_local_search(&p, &params).unwrap();
        prop_assert_eq!(heuristic.recheck(&p).unwrap(), heuristic.value);
        prop_assert!(heuristic.value <= exact.value);
        prop_assert!(exact.value <= p.inc_count());
        // the width antichain alone forces C(w, 2) reversals
        let w = width_and_antichain(&p).0;
        prop_assert!(heuristic.value >= w * (w - 1) / 2);
    }

    #[test]
    fn adding_edges_preserves_doubling(
        k in 3usize..10,
        edges in proptest::collection::vec((0usize..10, 0usize..10), 0..60),
        extra in proptest::collection::vec((0usize..10, 0usize..10), 1..10),
    ) {
        let base: Vec<_> = edges.into_iter().filter(|&(a, b)| a < k && b < k).collect();
        let mut more = base.clone();
        more.extend(extra.into_iter().filter(|&(a, b)| a < k && b < k));
        let g = BipartiteGraph::from_edges(k, k, base).unwrap();
        let h = BipartiteGraph::from_edges(k, k, more).unwrap();
        let config = DoublingConfig::default();
        let vg = check_doubling(&g, CheckMode::Exact, &config).unwrap();
        let vh = check_doubling(&h, CheckMode::Exact, &config).unwrap();
        if vg.holds() {
            prop_assert!(vh.holds());
        }
        if let Outcome::Violated(w) = &vh.outcome {
            prop_assert!(w.reverify_bipartite(&h, k / 3));
        }
    }
}
