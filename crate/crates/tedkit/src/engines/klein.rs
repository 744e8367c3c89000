//! The Klein engine: exhaustive prefix-suffix enumeration on the smaller
//! tree against the heavy-path (H-keyroot) enumeration on the larger.

use crate::cost::CostModel;
use crate::enumerate::{enum_h_keyroot, enum_prefix_suffix};
use crate::subforest::ForestIndex;
use crate::tree::{StructuralIndex, Tree};

use super::{EngineRun, StepCounter, SubtreeTable, Sweep};

/// Accepts trees in either size order; when the first tree is larger the
/// engine runs with the roles swapped and a transposed cost model,
/// writing into the shared table through the swapped accessors.
pub fn ted_klein(t1: &Tree, t2: &Tree, cost: &CostModel) -> EngineRun {
    let transposed;
    let (ta, tb, model, swapped) = if t1.len() <= t2.len() {
        (t1, t2, cost.clone(), false)
    } else {
        transposed = cost.transpose();
        (t2, t1, transposed, true)
    };

    let fa = ForestIndex::build(ta);
    let fb = ForestIndex::build(tb);
    let idx_b = StructuralIndex::build(tb);
    let l1 = enum_prefix_suffix(ta, &fa);
    let l2 = enum_h_keyroot(tb, &fb, &idx_b);

    let mut dt = SubtreeTable::new(t1.len(), t2.len());
    let mut steps = StepCounter::default();
    let mut sweep = Sweep::new(ta, &fa, tb, &fb, &model, swapped);
    for &(f, _) in &l1.items {
        for &(g, dir) in &l2.items {
            sweep.relax(&mut dt, &mut steps, f, g, dir);
        }
    }

    assert!(dt.is_complete(), "heavy-path sweeps left subtree pairs unfilled");
    EngineRun {
        distance: dt.distance(),
        subtree: dt,
        steps,
        forest_memo: None,
    }
}

/// Relaxation count the engine will perform, without running it:
/// `|L1| * |L2|` with the same swap rule.
pub fn klein_planned_steps(t1: &Tree, t2: &Tree) -> u64 {
    let (ta, tb) = if t1.len() <= t2.len() { (t1, t2) } else { (t2, t1) };
    let ps_len: u64 = ta
        .nodes()
        .map(|(_, n)| (n.lr_post - n.subtree_size + 1) as u64)
        .sum();
    let idx_b = StructuralIndex::build(tb);
    let hk_len: u64 = idx_b
        .h_keyroots
        .iter()
        .map(|&k| tb.node(k).subtree_size as u64)
        .sum();
    ps_len * hk_len
}
