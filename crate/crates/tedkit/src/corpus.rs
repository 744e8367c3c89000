//! Tree families used by the bound checks and the randomized tests:
//! paths, stars, combs, full binaries, and seeded random trees.

use rand::Rng;

use crate::tree::{Node, NodeId, Tree};

/// Builds a tree from a parent vector (`parents[0]` must be None, parents
/// must precede children) and per-node labels.
pub fn build(labels: &[&str], parents: &[Option<NodeId>]) -> Tree {
    assert_eq!(labels.len(), parents.len());
    assert!(!labels.is_empty());
    let mut nodes: Vec<Node> = labels
        .iter()
        .zip(parents)
        .map(|(&l, &p)| Node::bare(l.to_string(), p))
        .collect();
    let mut root = None;
    for id in 0..parents.len() {
        match parents[id] {
            Some(p) => {
                assert!(p < id, "parents must precede children");
                nodes[p].children.push(id);
            }
            None => {
                assert!(root.is_none(), "multiple roots");
                root = Some(id);
            }
        }
    }
    Tree::from_arena(nodes, root.expect("no root"))
}

const ALPHABET: [&str; 4] = ["a", "b", "c", "d"];

fn cyclic_labels(n: usize) -> Vec<&'static str> {
    (0..n).map(|i| ALPHABET[i % ALPHABET.len()]).collect()
}

/// Single chain of n nodes.
pub fn path(n: usize) -> Tree {
    let parents: Vec<Option<NodeId>> = (0..n).map(|i| i.checked_sub(1)).collect();
    build(&cyclic_labels(n), &parents)
}

/// Root with n-1 leaf children.
pub fn star(n: usize) -> Tree {
    let parents: Vec<Option<NodeId>> = (0..n).map(|i| if i == 0 { None } else { Some(0) }).collect();
    build(&cyclic_labels(n), &parents)
}

/// Comb with the spine as each node's first child: node 2k has children
/// (spine 2k+2, leaf 2k+1).
pub fn left_comb(n: usize) -> Tree {
    comb(n, true)
}

/// Comb with the spine as each node's last child.
pub fn right_comb(n: usize) -> Tree {
    comb(n, false)
}

fn comb(n: usize, spine_first: bool) -> Tree {
    assert!(n >= 1);
    let labels = cyclic_labels(n);
    let mut nodes: Vec<Node> = labels
        .iter()
        .map(|&l| Node::bare(l.to_string(), None))
        .collect();
    let mut spine = 0;
    let mut next = 1;
    while next < n {
        let leaf = next;
        nodes[leaf].parent = Some(spine);
        next += 1;
        if next < n {
            let child = next;
            nodes[child].parent = Some(spine);
            if spine_first {
                nodes[spine].children = vec![child, leaf];
            } else {
                nodes[spine].children = vec![leaf, child];
            }
            spine = child;
            next += 1;
        } else {
            nodes[spine].children = vec![leaf];
        }
    }
    Tree::from_arena(nodes, 0)
}

/// Full binary tree with the given number of levels (2^levels - 1 nodes).
pub fn full_binary(levels: u32) -> Tree {
    assert!(levels >= 1);
    let n = (1usize << levels) - 1;
    // heap layout: children of i are 2i+1 and 2i+2
    let parents: Vec<Option<NodeId>> = (0..n)
        .map(|i| if i == 0 { None } else { Some((i - 1) / 2) })
        .collect();
    build(&cyclic_labels(n), &parents)
}

/// Random recursive tree: each node's parent is uniform over the earlier
/// nodes, labels uniform over the alphabet.
pub fn random_tree(n: usize, alphabet: &[&str], rng: &mut impl Rng) -> Tree {
    assert!(n >= 1 && !alphabet.is_empty());
    let labels: Vec<&str> = (0..n)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
        .collect();
    let parents: Vec<Option<NodeId>> = (0..n)
        .map(|i| if i == 0 { None } else { Some(rng.gen_range(0..i)) })
        .collect();
    build(&labels, &parents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shapes_have_expected_structure() {
        let p = path(5);
        assert_eq!(p.len(), 5);
        assert_eq!(p.depth_of_tree(), 5);
        assert_eq!(p.leaf_count(), 1);

        let s = star(5);
        assert_eq!(s.depth_of_tree(), 2);
        assert_eq!(s.leaf_count(), 4);

        let fb = full_binary(4);
        assert_eq!(fb.len(), 15);
        assert_eq!(fb.depth_of_tree(), 4);
        assert_eq!(fb.leaf_count(), 8);

        let lc = left_comb(7);
        assert_eq!(lc.len(), 7);
        assert_eq!(lc.depth_of_tree(), 4);
        assert_eq!(lc.leaf_count(), 4);
        let rc = right_comb(7);
        assert_eq!(rc.serialize(), lc.mirror().serialize());
    }

    #[test]
    fn odd_sized_comb_ends_in_single_leaf() {
        let c = left_comb(4);
        assert_eq!(c.len(), 4);
        assert_eq!(c.leaf_count(), 2);
    }

    #[test]
    fn random_trees_are_seeded_and_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t1 = random_tree(40, &["a", "b", "c"], &mut rng);
        assert_eq!(t1.len(), 40);
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        let t2 = random_tree(40, &["a", "b", "c"], &mut rng2);
        assert_eq!(t1.serialize(), t2.serialize());
        // round trip through the parser
        assert_eq!(Tree::parse(&t1.serialize()).unwrap().serialize(), t1.serialize());
    }
}
