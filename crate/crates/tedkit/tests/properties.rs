//! Randomized structural properties, driven by proptest.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tedkit::corpus;
use tedkit::cost::{CostModel, Rational};
use tedkit::engines::zs::ted_zhang_shasha;
use tedkit::enumerate::{enum_prefix_suffix, PsLens};
use tedkit::instrument::check_halving;
use tedkit::subforest::ForestIndex;
use tedkit::tree::{StructuralIndex, Tree};

fn arb_tree(max: usize) -> impl Strategy<Value = Tree> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        corpus::random_tree(n, &["a", "b", "c", "{d}", "e\\f"], &mut rng)
    })
}

proptest! {
    #[test]
    fn parse_serialize_round_trip(tree in arb_tree(60)) {
        let text = tree.serialize();
        let back = Tree::parse(&text).unwrap();
        prop_assert_eq!(back.serialize(), text);
        prop_assert_eq!(back.len(), tree.len());
    }

    #[test]
    fn postorders_are_permutations_with_root_last(tree in arb_tree(60)) {
        let n = tree.len() as u32;
        let mut lr: Vec<u32> = tree.nodes().map(|(_, nd)| nd.lr_post).collect();
        let mut rl: Vec<u32> = tree.nodes().map(|(_, nd)| nd.rl_post).collect();
        lr.sort_unstable();
        rl.sort_unstable();
        prop_assert_eq!(lr, (1..=n).collect::<Vec<_>>());
        prop_assert_eq!(rl, (1..=n).collect::<Vec<_>>());
        prop_assert_eq!(tree.node(tree.root()).lr_post, n);
        prop_assert_eq!(tree.node(tree.root()).rl_post, n);
    }

    #[test]
    fn leftmost_leaf_starts_the_lr_span(tree in arb_tree(60)) {
        for (_, nd) in tree.nodes() {
            let ll = tree.node(nd.leftmost_leaf);
            prop_assert_eq!(ll.lr_post, nd.lr_post - nd.subtree_size + 1);
            let rl = tree.node(nd.rightmost_leaf);
            prop_assert_eq!(rl.rl_post, nd.rl_post - nd.subtree_size + 1);
        }
    }

    #[test]
    fn keyroot_counts_are_bounded_by_leaves(tree in arb_tree(60)) {
        let idx = StructuralIndex::build(&tree);
        let leaves = tree.leaf_count();
        prop_assert_eq!(idx.lr_keyroots.len(), leaves);
        prop_assert_eq!(idx.rl_keyroots.len(), leaves);
        prop_assert!(idx.h_keyroots.len() <= leaves);
    }

    #[test]
    fn canon_is_idempotent_and_keeps_boundaries(tree in arb_tree(40)) {
        let fi = ForestIndex::build(&tree);
        let n = tree.len() as u32;
        for x in 0..=n {
            for y in 0..=n {
                let f = fi.canon(x, y);
                if f.is_empty() {
                    continue;
                }
                prop_assert_eq!(fi.canon(f.rm_lr(), f.lm_rl()), f);
                // both boundary nodes lie inside the forest's lr span
                let (lo, hi) = fi.lr_range(f);
                let lm = tree.node(tree.by_rl(f.lm_rl())).lr_post;
                prop_assert!(lo <= lm && lm <= hi);
                prop_assert!(lo <= f.rm_lr() && f.rm_lr() <= hi);
            }
        }
    }

    #[test]
    fn prefix_suffix_counts_match_closed_form(tree in arb_tree(60)) {
        let fi = ForestIndex::build(&tree);
        let seq = enum_prefix_suffix(&tree, &fi);
        let lens = PsLens::build(&tree);
        prop_assert_eq!(seq.items.len() as u64, lens.subtree_len(&tree, tree.root()));
        // every relevant subforest exactly once
        let mut keys: Vec<u32> = seq.items.iter().map(|&(f, _)| f.key()).collect();
        keys.sort_unstable();
        keys.dedup();
        prop_assert_eq!(keys.len(), seq.items.len());
    }

    #[test]
    fn halving_holds_on_random_trees(tree in arb_tree(128)) {
        for c in check_halving(&tree) {
            prop_assert!(c.pass, "{}", c);
        }
    }

    #[test]
    fn distance_is_mirror_and_transpose_invariant(
        t1 in arb_tree(24),
        t2 in arb_tree(24),
        costs in (1i64..=5, 1i64..=5, 1i64..=5),
    ) {
        let cost = CostModel::from_rationals(
            Rational::new(costs.0, 2),
            Rational::new(costs.1, 3),
            Rational::new(costs.2, 2),
            vec![],
            vec![],
            vec![],
        );
        let d = ted_zhang_shasha(&t1, &t2, &cost).distance;
        prop_assert_eq!(ted_zhang_shasha(&t1.mirror(), &t2.mirror(), &cost).distance, d);
        prop_assert_eq!(ted_zhang_shasha(&t2, &t1, &cost.transpose()).distance, d);
    }
}
