//! The Zhang-Shasha engine: one forest sweep per LR-keyroot pair, over
//! the LR-postorder prefixes of the two keyroot subtrees.
//!
//! Sweeps use a dense working array instead of the memo map: the
//! prefixes of a keyroot pair form a rectangle indexed by postorder
//! offsets, and this engine is the one that runs at the largest sizes.

use crate::cost::{Cost, CostModel};
use crate::tree::{StructuralIndex, Tree};

use super::{EngineRun, StepCounter, SubtreeTable};

pub fn ted_zhang_shasha(t1: &Tree, t2: &Tree, cost: &CostModel) -> EngineRun {
    let idx1 = StructuralIndex::build(t1);
    let idx2 = StructuralIndex::build(t2);
    let mut dt = SubtreeTable::new(t1.len(), t2.len());
    let mut steps = StepCounter::default();

    // Reused working table, sized for the largest keyroot pair.
    let mut fd = vec![0 as Cost; (t1.len() + 1) * (t2.len() + 1)];

    for &k1 in &idx1.lr_keyroots {
        for &k2 in &idx2.lr_keyroots {
            keyroot_sweep(t1, t2, cost, k1, k2, &mut fd, &mut dt, &mut steps);
        }
    }

    assert!(dt.is_complete(), "keyroot sweeps left subtree pairs unfilled");
    EngineRun {
        distance: dt.distance(),
        subtree: dt,
        steps,
        forest_memo: None,
    }
}

/// One keyroot-pair forest sweep over LR-postorder prefixes. Fills the
/// subtree table for every pair on the two leftmost paths; split lookups
/// for other pairs must already be present.
#[allow(clippy::too_many_arguments)]
pub(crate) fn keyroot_sweep(
    t1: &Tree,
    t2: &Tree,
    cost: &CostModel,
    k1: crate::tree::NodeId,
    k2: crate::tree::NodeId,
    fd: &mut [Cost],
    dt: &mut SubtreeTable,
    steps: &mut StepCounter,
) {
    let s1 = t1.node(k1).subtree_size as usize;
    let s2 = t2.node(k2).subtree_size as usize;
    // lr_post of the first node of each span.
    let l1 = t1.node(k1).lr_post - s1 as u32 + 1;
    let l2 = t2.node(k2).lr_post - s2 as u32 + 1;
    let w = s2 + 1;

    fd[0] = 0;
    for di in 1..=s1 {
        let v = t1.by_lr(l1 + di as u32 - 1);
        fd[di * w] = fd[(di - 1) * w] + cost.del(t1.label(v));
    }
    for dj in 1..=s2 {
        let wn = t2.by_lr(l2 + dj as u32 - 1);
        fd[dj] = fd[dj - 1] + cost.ins(t2.label(wn));
    }
    steps.base_inits += (s1 + s2 + 1) as u64;

    for di in 1..=s1 {
        let v_lr = l1 + di as u32 - 1;
        let v = t1.by_lr(v_lr);
        let v_leftmost = t1.node(t1.node(v).leftmost_leaf).lr_post == l1;
        let v_label = t1.label(v);
        let del_v = cost.del(v_label);
        let iv = (t1.node(t1.node(v).leftmost_leaf).lr_post - l1) as usize;
        for dj in 1..=s2 {
            let w_lr = l2 + dj as u32 - 1;
            let wn = t2.by_lr(w_lr);
            let w_label = t2.label(wn);
            let del = fd[(di - 1) * w + dj] + del_v;
            let ins = fd[di * w + dj - 1] + cost.ins(w_label);
            let w_leftmost = t2.node(t2.node(wn).leftmost_leaf).lr_post == l2;
            let val = if v_leftmost && w_leftmost {
                // Both prefixes are whole subtrees: root substitution.
                let sub = fd[(di - 1) * w + dj - 1] + cost.sub(v_label, w_label);
                let val = del.min(ins).min(sub);
                dt.set(v_lr, w_lr, val);
                val
            } else {
                let jw = (t2.node(t2.node(wn).leftmost_leaf).lr_post - l2) as usize;
                let split = fd[iv * w + jw] + dt.require(v_lr, w_lr);
                del.min(ins).min(split)
            };
            fd[di * w + dj] = val;
            steps.relaxations += 1;
        }
    }
}

/// Mirror sweep over RL-postorder prefixes (the rightmost-path
/// decomposition). Fills the subtree table for pairs on the two
/// rightmost paths.
#[allow(clippy::too_many_arguments)]
pub(crate) fn keyroot_sweep_rl(
    t1: &Tree,
    t2: &Tree,
    cost: &CostModel,
    k1: crate::tree::NodeId,
    k2: crate::tree::NodeId,
    fd: &mut [Cost],
    dt: &mut SubtreeTable,
    steps: &mut StepCounter,
) {
    let s1 = t1.node(k1).subtree_size as usize;
    let s2 = t2.node(k2).subtree_size as usize;
    // rl_post of the first node of each span.
    let r1 = t1.node(k1).rl_post - s1 as u32 + 1;
    let r2 = t2.node(k2).rl_post - s2 as u32 + 1;
    let w = s2 + 1;

    fd[0] = 0;
    for di in 1..=s1 {
        let v = t1.by_rl(r1 + di as u32 - 1);
        fd[di * w] = fd[(di - 1) * w] + cost.del(t1.label(v));
    }
    for dj in 1..=s2 {
        let wn = t2.by_rl(r2 + dj as u32 - 1);
        fd[dj] = fd[dj - 1] + cost.ins(t2.label(wn));
    }
    steps.base_inits += (s1 + s2 + 1) as u64;

    for di in 1..=s1 {
        let v = t1.by_rl(r1 + di as u32 - 1);
        let v_rightmost = t1.node(t1.node(v).rightmost_leaf).rl_post == r1;
        let v_label = t1.label(v);
        let del_v = cost.del(v_label);
        let iv = (t1.node(t1.node(v).rightmost_leaf).rl_post - r1) as usize;
        for dj in 1..=s2 {
            let wn = t2.by_rl(r2 + dj as u32 - 1);
            let w_label = t2.label(wn);
            let del = fd[(di - 1) * w + dj] + del_v;
            let ins = fd[di * w + dj - 1] + cost.ins(w_label);
            let w_rightmost = t2.node(t2.node(wn).rightmost_leaf).rl_post == r2;
            let val = if v_rightmost && w_rightmost {
                let sub = fd[(di - 1) * w + dj - 1] + cost.sub(v_label, w_label);
                let val = del.min(ins).min(sub);
                dt.set(t1.node(v).lr_post, t2.node(wn).lr_post, val);
                val
            } else {
                let jw = (t2.node(t2.node(wn).rightmost_leaf).rl_post - r2) as usize;
                let split =
                    fd[iv * w + jw] + dt.require(t1.node(v).lr_post, t2.node(wn).lr_post);
                del.min(ins).min(split)
            };
            fd[di * w + dj] = val;
            steps.relaxations += 1;
        }
    }
}
