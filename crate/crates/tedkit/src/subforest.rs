//! Canonical identifiers for relevant subforests.
//!
//! Every forest reachable from a subtree by repeatedly deleting the
//! leftmost or rightmost root is the intersection of an LR-postorder
//! prefix and an RL-postorder prefix: the node set
//! `{ n : lr_post(n) <= x && rl_post(n) <= y }`. A [`Subforest`] stores
//! the canonical `(x, y)` pair, where `x` is the lr_post of the
//! rightmost root and `y` the rl_post of the leftmost root; both bounds
//! are attained by members. This makes every relevant subforest O(1) to
//! identify, hash and shrink.

use crate::tree::Tree;

/// Which end of a forest the recurrence deletes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Left,
    Right,
}

/// Packed canonical subforest: `x << 16 | y`, empty forest is 0.
/// Trees are limited to 65535 nodes by this encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subforest(u32);

impl Subforest {
    pub const EMPTY: Subforest = Subforest(0);

    fn new(x: u32, y: u32) -> Subforest {
        debug_assert!(x > 0 && y > 0 && x < (1 << 16) && y < (1 << 16));
        Subforest(x << 16 | y)
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// lr_post of the rightmost root; panics on the empty forest.
    pub fn rm_lr(&self) -> u32 {
        debug_assert!(!self.is_empty());
        self.0 >> 16
    }

    /// rl_post of the leftmost root; panics on the empty forest.
    pub fn lm_rl(&self) -> u32 {
        debug_assert!(!self.is_empty());
        self.0 & 0xffff
    }

    /// Stable compact key for memo tables.
    pub fn key(&self) -> u32 {
        self.0
    }
}

/// Per-tree lookup arrays mapping between the two postorders; all
/// subforest arithmetic goes through this.
#[derive(Debug, Clone)]
pub struct ForestIndex {
    /// rl_of_lr[x] = rl_post of the node whose lr_post is x (index 0 unused).
    rl_of_lr: Vec<u32>,
    /// lr_of_rl[y] = lr_post of the node whose rl_post is y.
    lr_of_rl: Vec<u32>,
    /// size_of_lr[x] = subtree size of the node whose lr_post is x.
    size_of_lr: Vec<u32>,
    size_of_rl: Vec<u32>,
    n: u32,
}

impl ForestIndex {
    pub fn build(tree: &Tree) -> ForestIndex {
        let n = tree.len() as u32;
        assert!(n < (1 << 16), "trees above 65535 nodes are unsupported");
        let mut rl_of_lr = vec![0u32; (n + 1) as usize];
        let mut lr_of_rl = vec![0u32; (n + 1) as usize];
        let mut size_of_lr = vec![0u32; (n + 1) as usize];
        let mut size_of_rl = vec![0u32; (n + 1) as usize];
        for (_, node) in tree.nodes() {
            rl_of_lr[node.lr_post as usize] = node.rl_post;
            lr_of_rl[node.rl_post as usize] = node.lr_post;
            size_of_lr[node.lr_post as usize] = node.subtree_size;
            size_of_rl[node.rl_post as usize] = node.subtree_size;
        }
        ForestIndex {
            rl_of_lr,
            lr_of_rl,
            size_of_lr,
            size_of_rl,
            n,
        }
    }

    pub fn node_count(&self) -> u32 {
        self.n
    }

    /// Canonicalizes the bounds: shrinks `x` and `y` until both boundary
    /// nodes are members of `{ lr <= x && rl <= y }`, or the set is empty.
    pub fn canon(&self, mut x: u32, mut y: u32) -> Subforest {
        loop {
            if x == 0 || y == 0 {
                return Subforest::EMPTY;
            }
            if self.rl_of_lr[x as usize] > y {
                x -= 1;
            } else if self.lr_of_rl[y as usize] > x {
                y -= 1;
            } else {
                return Subforest::new(x, y);
            }
        }
    }

    /// The whole tree as a forest.
    pub fn whole(&self) -> Subforest {
        Subforest::new(self.n, self.n)
    }

    /// The subtree rooted at the node with the given postorder numbers.
    pub fn subtree(&self, lr: u32) -> Subforest {
        Subforest::new(lr, self.rl_of_lr[lr as usize])
    }

    /// True when the forest consists of a single subtree.
    pub fn is_single(&self, f: Subforest) -> bool {
        !f.is_empty() && self.rl_of_lr[f.rm_lr() as usize] == f.lm_rl()
    }

    /// Deletes the rightmost root (one node).
    pub fn delete_rm(&self, f: Subforest) -> Subforest {
        self.canon(f.rm_lr() - 1, f.lm_rl())
    }

    /// Deletes the leftmost root (one node).
    pub fn delete_lm(&self, f: Subforest) -> Subforest {
        self.canon(f.rm_lr(), f.lm_rl() - 1)
    }

    /// Deletes the whole subtree of the rightmost root.
    pub fn delete_rm_subtree(&self, f: Subforest) -> Subforest {
        let x = f.rm_lr();
        self.canon(x - self.size_of_lr[x as usize], f.lm_rl())
    }

    /// Deletes the whole subtree of the leftmost root.
    pub fn delete_lm_subtree(&self, f: Subforest) -> Subforest {
        let y = f.lm_rl();
        self.canon(f.rm_lr(), y - self.size_of_rl[y as usize])
    }

    pub fn delete_root(&self, f: Subforest, dir: Dir) -> Subforest {
        match dir {
            Dir::Left => self.delete_lm(f),
            Dir::Right => self.delete_rm(f),
        }
    }

    pub fn delete_root_subtree(&self, f: Subforest, dir: Dir) -> Subforest {
        match dir {
            Dir::Left => self.delete_lm_subtree(f),
            Dir::Right => self.delete_rm_subtree(f),
        }
    }

    /// lr_post of the boundary root on the given side.
    pub fn root_lr(&self, f: Subforest, dir: Dir) -> u32 {
        match dir {
            Dir::Right => f.rm_lr(),
            Dir::Left => self.lr_of_rl[f.lm_rl() as usize],
        }
    }

    /// The forest's nodes occupy a contiguous lr_post range; returns it
    /// as inclusive bounds `(lo, hi)`.
    pub fn lr_range(&self, f: Subforest) -> (u32, u32) {
        let y = f.lm_rl() as usize;
        let lo = self.lr_of_rl[y] - self.size_of_rl[y] + 1;
        (lo, f.rm_lr())
    }

    pub fn size(&self, f: Subforest) -> u32 {
        if f.is_empty() {
            0
        } else {
            let (lo, hi) = self.lr_range(f);
            hi - lo + 1
        }
    }
}
