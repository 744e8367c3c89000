//! The Demaine et al. engine: recursive heavy-path decomposition of both
//! trees. At each level the larger tree is decomposed along its heavy
//! path; the smaller tree stays whole and is enumerated exhaustively.
//!
//! The recursion is run twice: first without distances to record the
//! schedule of sweeps (each sweep is a subtree pair plus its role
//! orientation), then the sweeps are executed in recorded order so every
//! table a sweep reads has already been written.

use std::collections::HashSet;
use std::hash::BuildHasherDefault;

use crate::cost::CostModel;
use crate::enumerate::{enum_h_postorder, enum_prefix_suffix_subtree, PsLens};
use crate::subforest::ForestIndex;
use crate::tree::{NodeId, StructuralIndex, Tree};

use super::{EngineRun, KeyHasher, StepCounter, SubtreeTable, Sweep};

/// One scheduled sweep: the subtree of `keep_lr` is kept whole and
/// enumerated prefix-suffix; the subtree of `decomp_lr` is decomposed
/// along its heavy path. `swapped` says the kept tree is `t2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSpec {
    pub keep_lr: u32,
    pub decomp_lr: u32,
    pub swapped: bool,
}

/// Records the sweep order, children before the sweep that reads their
/// results. Duplicate subtree pairs reached through different branches
/// are scheduled once.
pub fn schedule(t1: &Tree, t2: &Tree, idx1: &StructuralIndex, idx2: &StructuralIndex) -> Vec<SweepSpec> {
    let mut out = Vec::new();
    visit_schedule(t1, idx1, t2, idx2, &mut |spec| out.push(spec));
    out
}

/// Walks the sweep schedule without materializing it. Star-against-star
/// shapes reach millions of sweeps, so the visitor keeps planned-count
/// queries cheap where collecting a vector would not be.
pub fn visit_schedule(
    t1: &Tree,
    idx1: &StructuralIndex,
    t2: &Tree,
    idx2: &StructuralIndex,
    visit: &mut impl FnMut(SweepSpec),
) {
    let mut seen: HashSet<u64, BuildHasherDefault<KeyHasher>> = HashSet::default();
    rec(
        t1,
        idx1,
        t2,
        idx2,
        t1.root(),
        t2.root(),
        false,
        &mut seen,
        visit,
    );
}

#[allow(clippy::too_many_arguments)]
fn rec(
    ta: &Tree,
    idxa: &StructuralIndex,
    tb: &Tree,
    idxb: &StructuralIndex,
    a: NodeId,
    b: NodeId,
    swapped: bool,
    seen: &mut HashSet<u64, BuildHasherDefault<KeyHasher>>,
    visit: &mut impl FnMut(SweepSpec),
) {
    if ta.node(a).subtree_size > tb.node(b).subtree_size {
        rec(tb, idxb, ta, idxa, b, a, !swapped, seen, visit);
        return;
    }
    let keep_lr = ta.node(a).lr_post;
    let decomp_lr = tb.node(b).lr_post;
    let key = (keep_lr as u64) << 33 | (decomp_lr as u64) << 1 | swapped as u64;
    if !seen.insert(key) {
        return;
    }
    let mut p = Some(b);
    while let Some(node) = p {
        for &c in &tb.node(node).children {
            if idxb.heavy_child[node] != Some(c) {
                rec(ta, idxa, tb, idxb, a, c, swapped, seen, visit);
            }
        }
        p = idxb.heavy_child[node];
    }
    visit(SweepSpec {
        keep_lr,
        decomp_lr,
        swapped,
    });
}

pub fn ted_demaine(t1: &Tree, t2: &Tree, cost: &CostModel) -> EngineRun {
    let fi1 = ForestIndex::build(t1);
    let fi2 = ForestIndex::build(t2);
    let idx1 = StructuralIndex::build(t1);
    let idx2 = StructuralIndex::build(t2);
    let cost_t = cost.transpose();

    let mut dt = SubtreeTable::new(t1.len(), t2.len());
    let mut steps = StepCounter::default();

    for spec in schedule(t1, t2, &idx1, &idx2) {
        let (ta, fa, tb, fb, idxb, model): (&Tree, _, &Tree, _, _, &CostModel) = if spec.swapped {
            (t2, &fi2, t1, &fi1, &idx1, &cost_t)
        } else {
            (t1, &fi1, t2, &fi2, &idx2, cost)
        };
        let keep = ta.by_lr(spec.keep_lr);
        let decomp = tb.by_lr(spec.decomp_lr);
        heavy_sweep(
            ta,
            fa,
            tb,
            fb,
            idxb,
            model,
            spec.swapped,
            keep,
            decomp,
            &mut dt,
            &mut steps,
        );
    }

    assert!(
        dt.get(t1.len() as u32, t2.len() as u32).is_some(),
        "schedule never reached the root pair"
    );
    EngineRun {
        distance: dt.distance(),
        subtree: dt,
        steps,
        forest_memo: None,
    }
}

/// One heavy-path sweep: the subtree of `keep` (in `ta`) is enumerated
/// prefix-suffix against the heavy-path walk of `decomp` (in `tb`).
/// Requires the subtree tables for `keep` against every subtree hanging
/// off `decomp`'s heavy path to be filled already. `swapped` says `ta`
/// is the second input tree, so `dt` writes are transposed.
#[allow(clippy::too_many_arguments)]
pub(crate) fn heavy_sweep(
    ta: &Tree,
    fa: &ForestIndex,
    tb: &Tree,
    fb: &ForestIndex,
    idxb: &StructuralIndex,
    model: &CostModel,
    swapped: bool,
    keep: NodeId,
    decomp: NodeId,
    dt: &mut SubtreeTable,
    steps: &mut StepCounter,
) {
    let l1 = enum_prefix_suffix_subtree(ta, fa, keep);
    let l2 = enum_h_postorder(tb, fb, idxb, decomp);
    let mut sweep = Sweep::new(ta, fa, tb, fb, model, swapped);
    for &(f, _) in &l1.items {
        for &(g, dir) in &l2.items {
            sweep.relax(dt, steps, f, g, dir);
        }
    }
}

/// Relaxation count [`ted_demaine`] will perform, computed from the
/// schedule alone.
pub fn demaine_planned_steps(t1: &Tree, t2: &Tree) -> u64 {
    let idx1 = StructuralIndex::build(t1);
    let idx2 = StructuralIndex::build(t2);
    let lens1 = PsLens::build(t1);
    let lens2 = PsLens::build(t2);
    demaine_planned_steps_with(t1, t2, &idx1, &idx2, &lens1, &lens2)
}

pub(crate) fn demaine_planned_steps_with(
    t1: &Tree,
    t2: &Tree,
    idx1: &StructuralIndex,
    idx2: &StructuralIndex,
    lens1: &PsLens,
    lens2: &PsLens,
) -> u64 {
    let mut total = 0u64;
    visit_schedule(t1, idx1, t2, idx2, &mut |spec| {
        let (ta, tb, lens) = if spec.swapped {
            (t2, t1, &lens2)
        } else {
            (t1, t2, &lens1)
        };
        let keep = ta.by_lr(spec.keep_lr);
        let decomp = tb.by_lr(spec.decomp_lr);
        total += lens.subtree_len(ta, keep) * tb.node(decomp).subtree_size as u64;
    });
    total
}
