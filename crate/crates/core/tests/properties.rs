mod common;

use common::{all_roots_form, arb_tree, arb_tree_and_perm};
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use steiner_kit::corpus::{
    canonical_code, decode_edges, graph6_decode, graph6_encode, tree_from_graph6, tree_to_graph6,
};
use steiner_kit::graph::{dw_steiner, random_connected_graph, Graph};
use steiner_kit::params::{ecc_kk, ecc_kk_exhaustive, sd_k, sd_k_exhaustive, sr_k, sr_kk_brute};
use steiner_kit::{Tree, VertexSet};

fn arb_tree_with_set(max_n: usize) -> impl Strategy<Value = (Tree, VertexSet)> {
    arb_tree(max_n).prop_flat_map(|t| {
        let n = t.order();
        (Just(t), subsequence((0..n).collect::<Vec<_>>(), 1..=n.min(6)).prop_map(VertexSet::new))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pruning_matches_dreyfus_wagner((tree, set) in arb_tree_with_set(12)) {
        let w = tree.steiner_distance(&set).unwrap();
        prop_assert_eq!(w.value, dw_steiner(&Graph::from(&tree), &set).unwrap());
        prop_assert_eq!(w.edges.len(), w.value);
    }

    #[test]
    fn greedy_diameter_is_optimal(tree in arb_tree(10), k in 2usize..7) {
        prop_assume!(k <= tree.order());
        let (greedy, witness) = sd_k(&tree, k).unwrap();
        prop_assert_eq!(greedy, sd_k_exhaustive(&tree, k).0);
        prop_assert_eq!(witness.len(), k);
        prop_assert_eq!(tree.steiner_distance(&witness).unwrap().value, greedy);
    }

    #[test]
    fn greedy_eccentricity_is_optimal((tree, base) in arb_tree_with_set(9), extra in 0usize..4) {
        let k = (base.len() + extra).min(tree.order());
        let (greedy, witness) = ecc_kk(&tree, &base, k).unwrap();
        prop_assert_eq!(greedy, ecc_kk_exhaustive(&tree, &base, k).0);
        prop_assert!(base.is_subset(&witness));
        prop_assert_eq!(witness.len(), k);
    }

    #[test]
    fn diameter_bounds_and_growth(tree in arb_tree(14)) {
        let n = tree.order();
        let d = tree.center_profile().diameter;
        let mut prev = 0;
        for k in 2..=n.min(8) {
            let sd = sd_k(&tree, k).unwrap().0;
            prop_assert!(k - 1 <= sd && sd < n);
            prop_assert!(sd <= d + (k - 2) * (d / 2));
            prop_assert!(sd >= prev);
            prev = sd;
        }
    }

    #[test]
    fn radius_chain_descends(tree in arb_tree(8), k in 2usize..6) {
        prop_assume!(k <= tree.order());
        let values: Vec<usize> = (1..=k).map(|kp| sr_kk_brute(&tree, k, kp).unwrap().0).collect();
        prop_assert!(values.windows(2).all(|w| w[0] >= w[1]), "{:?}", values);
        prop_assert_eq!(values[0], sr_k(&tree, k).unwrap().0);
        prop_assert_eq!(values[k - 1], k - 1);
    }

    #[test]
    fn parameters_ignore_labels((tree, perm) in arb_tree_and_perm(10)) {
        let moved = tree.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_code(&tree), canonical_code(&moved));
        for k in 2..=tree.order().min(5) {
            prop_assert_eq!(sd_k(&tree, k).unwrap().0, sd_k(&moved, k).unwrap().0);
            prop_assert_eq!(sr_kk_brute(&tree, k, 2.min(k)).unwrap().0, sr_kk_brute(&moved, k, 2.min(k)).unwrap().0);
        }
    }

    #[test]
    fn canonical_code_separates_classes(a in arb_tree(9), b in arb_tree(9)) {
        let same_code = canonical_code(&a) == canonical_code(&b);
        let same_class = a.order() == b.order()
            && all_roots_form(a.order(), &a.edges()) == all_roots_form(b.order(), &b.edges());
        prop_assert_eq!(same_code, same_class);
    }

    #[test]
    fn graph6_round_trips_trees(tree in arb_tree(70)) {
        let line = tree_to_graph6(&tree);
        let back = tree_from_graph6(&line).unwrap();
        prop_assert_eq!(&back, &tree);
        prop_assert_eq!(tree_to_graph6(&back), line);
    }

    #[test]
    fn graph6_round_trips_graphs(seed in any::<u64>(), n in 1usize..16, p in 0.0f64..1.0) {
        let g = random_connected_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
        let line = graph6_encode(&g);
        prop_assert_eq!(graph6_decode(&line).unwrap(), g);
    }

    #[test]
    fn graph6_decoder_never_panics(bytes in proptest::collection::vec(any::<u8>(), 0..12)) {
        let line = String::from_utf8_lossy(&bytes);
        let _ = decode_edges(&line);
    }
}
