//! Executable bound checks: structural depth bounds, the heavy-keyroot
//! halving property, and per-engine relaxation-count ceilings.
//!
//! The ceiling constants are empirical caps fixed here once (4 for the
//! leftmost-path engine, 4 for the single-heavy engine, 8 for the
//! heavy-both engine); tightening them later is fine, loosening one
//! means something regressed.

use crate::engines::demaine::demaine_planned_steps;
use crate::engines::klein::klein_planned_steps;
use crate::strategy::pure_leftmost_steps;
use crate::tree::{NodeId, StructuralIndex, Tree};

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub name: String,
    pub observed: u64,
    pub bound: f64,
    pub pass: bool,
}

impl BoundCheck {
    pub fn new(name: impl Into<String>, observed: u64, bound: f64) -> BoundCheck {
        BoundCheck {
            name: name.into(),
            observed,
            bound,
            pass: observed as f64 <= bound,
        }
    }
}

impl std::fmt::Display for BoundCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: observed {} <= bound {:.3} .. {}",
            self.name,
            self.observed,
            self.bound,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

/// Collapsed-depth ceilings: the LR-collapsed depth is at most
/// min(depth, #leaves), the H-collapsed depth at most log2(n).
pub fn check_collapsed_depths(tree: &Tree) -> Vec<BoundCheck> {
    let idx = StructuralIndex::build(tree);
    let lr_bound = tree.depth_of_tree().min(tree.leaf_count() as u32);
    vec![
        BoundCheck::new(
            "lr-collapsed-depth",
            idx.lr_collapsed_depth_of_tree() as u64,
            lr_bound as f64,
        ),
        BoundCheck::new(
            "h-collapsed-depth",
            idx.h_collapsed_depth_of_tree() as u64,
            (tree.len() as f64).log2(),
        ),
    ]
}

/// Heavy-keyroot halving along every root-to-leaf path: each next
/// H-keyroot's subtree is at most half the previous one, so the sizes
/// along a path sum to at most twice the first. Observed values are
/// violation counts against a zero bound.
pub fn check_halving(tree: &Tree) -> Vec<BoundCheck> {
    let idx = StructuralIndex::build(tree);
    let is_keyroot = {
        let mut set = vec![false; tree.len()];
        for &k in &idx.h_keyroots {
            set[k] = true;
        }
        set
    };

    let mut halving_violations = 0u64;
    let mut sum_violations = 0u64;
    for (leaf, node) in tree.nodes() {
        if !node.children.is_empty() {
            continue;
        }
        // keyroots on the root-to-leaf path, leaf upward
        let mut keyroots: Vec<NodeId> = Vec::new();
        let mut cur = Some(leaf);
        while let Some(id) = cur {
            if is_keyroot[id] {
                keyroots.push(id);
            }
            cur = tree.node(id).parent;
        }
        keyroots.reverse();
        let sizes: Vec<u64> = keyroots
            .iter()
            .map(|&k| tree.node(k).subtree_size as u64)
            .collect();
        for w in sizes.windows(2) {
            if 2 * w[1] > w[0] {
                halving_violations += 1;
            }
        }
        if let Some(&first) = sizes.first() {
            if sizes.iter().sum::<u64>() > 2 * first {
                sum_violations += 1;
            }
        }
    }
    vec![
        BoundCheck::new("heavy-keyroot-halving", halving_violations, 0.0),
        BoundCheck::new("heavy-keyroot-geometric-sum", sum_violations, 0.0),
    ]
}

pub fn zs_step_bound(t1: &Tree, t2: &Tree) -> f64 {
    let factor = |t: &Tree| t.depth_of_tree().min(t.leaf_count() as u32) as f64;
    4.0 * (t1.len() as f64) * (t2.len() as f64) * factor(t1) * factor(t2)
}

pub fn klein_step_bound(t1: &Tree, t2: &Tree) -> f64 {
    let m = t1.len().min(t2.len()) as f64;
    let n = t1.len().max(t2.len()) as f64;
    4.0 * m * m * n * (1.0 + n.log2())
}

pub fn demaine_step_bound(t1: &Tree, t2: &Tree) -> f64 {
    let m = t1.len().min(t2.len()) as f64;
    let n = t1.len().max(t2.len()) as f64;
    8.0 * m * m * n * (1.0 + (n / m).log2())
}

/// Relaxation-count ceilings for the three instrumented engines. The
/// observed values come from the schedule-based counters, which are
/// tested bit-exact against the engines' own instrumented runs, so the
/// checks stay cheap at sizes where a full distance run would not be.
pub fn check_engine_steps(t1: &Tree, t2: &Tree) -> Vec<BoundCheck> {
    vec![
        BoundCheck::new(
            "zhang-shasha-steps",
            pure_leftmost_steps(t1, t2),
            zs_step_bound(t1, t2),
        ),
        BoundCheck::new(
            "klein-steps",
            klein_planned_steps(t1, t2),
            klein_step_bound(t1, t2),
        ),
        BoundCheck::new(
            "demaine-steps",
            demaine_planned_steps(t1, t2),
            demaine_step_bound(t1, t2),
        ),
    ]
}
