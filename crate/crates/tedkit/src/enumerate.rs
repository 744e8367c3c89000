//! The six relevant-subforest enumeration schemes that drive the
//! dynamic-programming engines.
//!
//! Each item carries the direction its consumers delete roots from, so
//! an engine can replay a sequence and find every predecessor it needs
//! already computed. The governing rule is scheme-aware prefix-closure:
//! for every emitted forest, the forests reached by the one-root and
//! one-subtree deletions its recursion direction uses appear earlier.

use crate::subforest::{Dir, ForestIndex, Subforest};
use crate::tree::{StructuralIndex, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Lr,
    Rl,
    PrefixSuffix,
    SuffixPrefix,
    LrKeyroot,
    HKeyroot,
}

impl Scheme {
    /// Recursion direction of the engines consuming this scheme; items of
    /// the H-keyroot scheme override it per forest.
    pub fn dir(&self) -> Dir {
        match self {
            Scheme::Lr | Scheme::PrefixSuffix | Scheme::LrKeyroot | Scheme::HKeyroot => Dir::Right,
            Scheme::Rl | Scheme::SuffixPrefix => Dir::Left,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationSequence {
    pub scheme: Scheme,
    pub items: Vec<(Subforest, Dir)>,
}

impl EnumerationSequence {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// LR-postorder prefixes of the subtree rooted at the node with lr_post
/// `top_lr`, shortest first.
fn lr_prefixes(fi: &ForestIndex, tree: &Tree, top_lr: u32, out: &mut Vec<(Subforest, Dir)>) {
    let top = tree.by_lr(top_lr);
    let y = tree.node(top).rl_post;
    let lo = top_lr - tree.node(top).subtree_size + 1;
    for x in lo..=top_lr {
        out.push((fi.canon(x, y), Dir::Right));
    }
}

/// RL-postorder prefixes of the subtree rooted at the node with rl_post
/// `top_rl`, shortest first.
fn rl_prefixes(fi: &ForestIndex, tree: &Tree, top_rl: u32, out: &mut Vec<(Subforest, Dir)>) {
    let top = tree.by_rl(top_rl);
    let x = tree.node(top).lr_post;
    let lo = top_rl - tree.node(top).subtree_size + 1;
    for y in lo..=top_rl {
        out.push((fi.canon(x, y), Dir::Left));
    }
}

/// Per-subtree LR prefixes, concatenated over all subtrees in LR order.
pub fn enum_lr(tree: &Tree, fi: &ForestIndex) -> EnumerationSequence {
    let mut items = Vec::new();
    for lr in 1..=tree.len() as u32 {
        lr_prefixes(fi, tree, lr, &mut items);
    }
    EnumerationSequence {
        scheme: Scheme::Lr,
        items,
    }
}

/// Mirror of [`enum_lr`]: per-subtree RL prefixes in RL order.
pub fn enum_rl(tree: &Tree, fi: &ForestIndex) -> EnumerationSequence {
    let mut items = Vec::new();
    for rl in 1..=tree.len() as u32 {
        rl_prefixes(fi, tree, rl, &mut items);
    }
    EnumerationSequence {
        scheme: Scheme::Rl,
        items,
    }
}

/// For each node j in LR order, all forests whose rightmost root is j,
/// smallest first (the subtree of j, then one leftward root-undeletion
/// at a time). Taken together this is every relevant subforest of the
/// tree, each exactly once.
pub fn enum_prefix_suffix(tree: &Tree, fi: &ForestIndex) -> EnumerationSequence {
    enum_prefix_suffix_subtree(tree, fi, tree.root())
}

/// [`enum_prefix_suffix`] restricted to the subtree rooted at `top`:
/// every relevant subforest of that subtree, grouped by rightmost root
/// in LR order, smallest first within each group.
pub fn enum_prefix_suffix_subtree(
    tree: &Tree,
    fi: &ForestIndex,
    top: crate::tree::NodeId,
) -> EnumerationSequence {
    let top_node = tree.node(top);
    let hi = top_node.lr_post;
    let lo = hi - top_node.subtree_size + 1;
    let y_cap = top_node.rl_post;
    let mut items = Vec::new();
    for lr in lo..=hi {
        let start = items.len();
        // Largest forest inside the subtree with rightmost root at lr,
        // then shrink by leftmost-root deletion; emit in reverse.
        let mut f = fi.canon(lr, y_cap);
        debug_assert_eq!(f.rm_lr(), lr);
        loop {
            items.push((f, Dir::Right));
            if f == fi.subtree(lr) {
                break;
            }
            f = fi.delete_lm(f);
        }
        items[start..].reverse();
    }
    EnumerationSequence {
        scheme: Scheme::PrefixSuffix,
        items,
    }
}

/// Closed-form prefix-suffix sequence lengths: the group of forests with
/// rightmost root j has `lr_local(j) - size(j) + 1` members, so subtree
/// totals are two prefix-sum lookups.
#[derive(Debug, Clone)]
pub struct PsLens {
    pref: Vec<u64>,
}

impl PsLens {
    pub fn build(tree: &Tree) -> PsLens {
        let mut pref = vec![0u64; tree.len() + 1];
        for lr in 1..=tree.len() as u32 {
            let node = tree.node(tree.by_lr(lr));
            pref[lr as usize] = pref[lr as usize - 1] + (lr - node.subtree_size + 1) as u64;
        }
        PsLens { pref }
    }

    /// Length of [`enum_prefix_suffix_subtree`] for the subtree at `id`.
    pub fn subtree_len(&self, tree: &Tree, id: crate::tree::NodeId) -> u64 {
        let node = tree.node(id);
        let hi = node.lr_post as usize;
        let lo = (node.lr_post - node.subtree_size) as usize;
        self.pref[hi] - self.pref[lo] - node.subtree_size as u64 * lo as u64
    }
}

/// Mirror of [`enum_prefix_suffix`]: per leftmost root in RL order,
/// growing rightward.
pub fn enum_suffix_prefix(tree: &Tree, fi: &ForestIndex) -> EnumerationSequence {
    let mut items = Vec::new();
    for rl in 1..=tree.len() as u32 {
        let start = items.len();
        let lr = tree.node(tree.by_rl(rl)).lr_post;
        let mut f = fi.canon(tree.len() as u32, rl);
        debug_assert_eq!(f.lm_rl(), rl);
        loop {
            items.push((f, Dir::Left));
            if f == fi.subtree(lr) {
                break;
            }
            f = fi.delete_rm(f);
        }
        items[start..].reverse();
    }
    EnumerationSequence {
        scheme: Scheme::SuffixPrefix,
        items,
    }
}

/// Per-keyroot LR prefixes, concatenated over LR-keyroots in ascending
/// lr_post.
pub fn enum_lr_keyroot(
    tree: &Tree,
    fi: &ForestIndex,
    idx: &StructuralIndex,
) -> EnumerationSequence {
    let mut items = Vec::new();
    for &k in &idx.lr_keyroots {
        lr_prefixes(fi, tree, tree.node(k).lr_post, &mut items);
    }
    EnumerationSequence {
        scheme: Scheme::LrKeyroot,
        items,
    }
}

/// The heavy-path walk over the subtree rooted at `top`: climb from the
/// heavy-path leaf, at each path node taking the node itself, then its
/// right-sibling subtrees node by node in LR postorder, then its
/// left-sibling subtrees in RL postorder nearest-first. One forest per
/// node of the subtree; the direction tag marks which boundary grew.
pub fn enum_h_postorder(
    tree: &Tree,
    fi: &ForestIndex,
    idx: &StructuralIndex,
    top: crate::tree::NodeId,
) -> EnumerationSequence {
    let mut items = Vec::new();
    let path = idx.heavy_path(top);
    let (mut x, mut y);
    for (i, &w) in path.iter().enumerate().rev() {
        x = tree.node(w).lr_post;
        y = tree.node(w).rl_post;
        items.push((fi.canon(x, y), Dir::Right));
        if i == 0 {
            break;
        }
        let parent = path[i - 1];
        let siblings = &tree.node(parent).children;
        let pos = siblings.iter().position(|&c| c == w).unwrap();
        for &s in &siblings[pos + 1..] {
            for u in tree.subtree_nodes(s) {
                x = tree.node(u).lr_post;
                items.push((fi.canon(x, y), Dir::Right));
            }
        }
        for &s in siblings[..pos].iter().rev() {
            let mut ids: Vec<_> = tree.subtree_nodes(s).collect();
            ids.sort_by_key(|&u| tree.node(u).rl_post);
            for u in ids {
                y = tree.node(u).rl_post;
                items.push((fi.canon(x, y), Dir::Left));
            }
        }
    }
    EnumerationSequence {
        scheme: Scheme::HKeyroot,
        items,
    }
}

/// Heavy-path walks of every H-keyroot subtree, concatenated in
/// ascending H-postorder of the keyroots.
pub fn enum_h_keyroot(
    tree: &Tree,
    fi: &ForestIndex,
    idx: &StructuralIndex,
) -> EnumerationSequence {
    let mut items = Vec::new();
    for &k in &idx.h_keyroots {
        items.extend(enum_h_postorder(tree, fi, idx, k).items);
    }
    EnumerationSequence {
        scheme: Scheme::HKeyroot,
        items,
    }
}

/// Convenience dispatcher.
pub fn enumerate(tree: &Tree, fi: &ForestIndex, idx: &StructuralIndex, scheme: Scheme) -> EnumerationSequence {
    match scheme {
        Scheme::Lr => enum_lr(tree, fi),
        Scheme::Rl => enum_rl(tree, fi),
        Scheme::PrefixSuffix => enum_prefix_suffix(tree, fi),
        Scheme::SuffixPrefix => enum_suffix_prefix(tree, fi),
        Scheme::LrKeyroot => enum_lr_keyroot(tree, fi, idx),
        Scheme::HKeyroot => enum_h_keyroot(tree, fi, idx),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prep(s: &str) -> (Tree, ForestIndex, StructuralIndex) {
        let t = Tree::parse(s).unwrap();
        let fi = ForestIndex::build(&t);
        let idx = StructuralIndex::build(&t);
        (t, fi, idx)
    }

    fn labels(t: &Tree, f: Subforest) -> String {
        if f.is_empty() {
            return String::new();
        }
        (1..=t.len() as u32)
            .filter(|&lr| {
                lr <= f.rm_lr() && t.node(t.by_lr(lr)).rl_post <= f.lm_rl()
            })
            .map(|lr| t.label(t.by_lr(lr)).to_string())
            .collect::<Vec<_>>()
            .join("")
    }

    fn rendered(t: &Tree, seq: &EnumerationSequence) -> Vec<String> {
        seq.items.iter().map(|&(f, _)| labels(t, f)).collect()
    }

    #[test]
    fn lr_small_examples() {
        let (t, fi, _) = prep("{a}");
        assert_eq!(rendered(&t, &enum_lr(&t, &fi)), ["a"]);

        let (t, fi, _) = prep("{c{a}{b}}");
        assert_eq!(
            rendered(&t, &enum_lr(&t, &fi)),
            ["a", "b", "a", "ab", "abc"]
        );
    }

    #[test]
    fn lr_path_length_is_sum_of_depths() {
        let (t, fi, _) = prep("{d{c{b{a}}}}");
        assert_eq!(enum_lr(&t, &fi).len(), 4 * 5 / 2);
    }

    #[test]
    fn rl_mirrors_lr() {
        let (t, fi, _) = prep("{c{a}{b}}");
        assert_eq!(
            rendered(&t, &enum_rl(&t, &fi)),
            ["b", "a", "b", "ab", "abc"]
        );
    }

    #[test]
    fn prefix_suffix_examples() {
        let (t, fi, _) = prep("{a}");
        assert_eq!(rendered(&t, &enum_prefix_suffix(&t, &fi)), ["a"]);

        let (t, fi, _) = prep("{g{d}{e}{f}}");
        assert_eq!(
            rendered(&t, &enum_prefix_suffix(&t, &fi)),
            ["d", "e", "de", "f", "ef", "def", "defg"]
        );
    }

    #[test]
    fn prefix_suffix_covers_nested_subtrees() {
        let (t, fi, _) = prep("{r{p{a}{b}}{q}}");
        assert_eq!(
            rendered(&t, &enum_prefix_suffix(&t, &fi)),
            ["a", "b", "ab", "abp", "q", "bq", "abq", "abpq", "abpqr"]
        );
    }

    #[test]
    fn suffix_prefix_mirrors() {
        let (t, fi, _) = prep("{g{d}{e}{f}}");
        assert_eq!(
            rendered(&t, &enum_suffix_prefix(&t, &fi)),
            ["f", "e", "ef", "d", "de", "def", "defg"]
        );
    }

    #[test]
    fn lr_keyroot_examples() {
        let (t, fi, idx) = prep("{c{a}{b}}");
        assert_eq!(
            rendered(&t, &enum_lr_keyroot(&t, &fi, &idx)),
            ["b", "a", "ab", "abc"]
        );

        let (t, fi, idx) = prep("{g{d}{e}{f}}");
        assert_eq!(
            rendered(&t, &enum_lr_keyroot(&t, &fi, &idx)),
            ["e", "f", "d", "de", "def", "defg"]
        );

        let (t, fi, idx) = prep("{c{b{a}}}");
        assert_eq!(
            rendered(&t, &enum_lr_keyroot(&t, &fi, &idx)),
            ["a", "ab", "abc"]
        );
    }

    #[test]
    fn h_postorder_walk_examples() {
        let (t, fi, idx) = prep("{g{d}{e}{f}}");
        let seq = enum_h_postorder(&t, &fi, &idx, t.root());
        assert_eq!(rendered(&t, &seq), ["d", "de", "def", "defg"]);

        let (t, fi, idx) = prep("{r{a}{b{x}}{c}}");
        let seq = enum_h_postorder(&t, &fi, &idx, t.root());
        assert_eq!(rendered(&t, &seq), ["x", "xb", "xbc", "axbc", "axbcr"]);
        let dirs: Vec<Dir> = seq.items.iter().map(|&(_, d)| d).collect();
        assert_eq!(
            dirs,
            [Dir::Right, Dir::Right, Dir::Right, Dir::Left, Dir::Right]
        );
    }

    #[test]
    fn h_keyroot_examples() {
        let (t, fi, idx) = prep("{g{d}{e}{f}}");
        assert_eq!(
            rendered(&t, &enum_h_keyroot(&t, &fi, &idx)),
            ["e", "f", "d", "de", "def", "defg"]
        );

        let (t, fi, idx) = prep("{c{b{a}}}");
        assert_eq!(
            rendered(&t, &enum_h_keyroot(&t, &fi, &idx)),
            ["a", "ab", "abc"]
        );
    }

    #[test]
    fn prefix_suffix_subtree_and_lengths() {
        let (t, fi, _) = prep("{r{p{a}{b}}{q}}");
        let p = t.by_lr(3);
        let seq = enum_prefix_suffix_subtree(&t, &fi, p);
        assert_eq!(rendered(&t, &seq), ["a", "b", "ab", "abp"]);
        let lens = PsLens::build(&t);
        assert_eq!(lens.subtree_len(&t, p), 4);
        assert_eq!(lens.subtree_len(&t, t.root()), 9);
        assert_eq!(
            lens.subtree_len(&t, t.root()) as usize,
            enum_prefix_suffix(&t, &fi).len()
        );
    }

    #[test]
    fn keyroot_lengths_are_subtree_size_sums() {
        let (t, fi, idx) = prep("{r{p{a}{b}}{q{x}}{s}}");
        let lr_total: usize = idx
            .lr_keyroots
            .iter()
            .map(|&k| t.node(k).subtree_size as usize)
            .sum();
        assert_eq!(enum_lr_keyroot(&t, &fi, &idx).len(), lr_total);
        let h_total: usize = idx
            .h_keyroots
            .iter()
            .map(|&k| t.node(k).subtree_size as usize)
            .sum();
        assert_eq!(enum_h_keyroot(&t, &fi, &idx).len(), h_total);
    }
}
