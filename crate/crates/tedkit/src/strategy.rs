//! The combined strategy: pick, per reachable subtree pair, the path
//! decomposition (leftmost, rightmost, or heavy) that minimizes the
//! relaxation count, record the decisions, then drive the distance
//! computation along the recorded plan.
//!
//! The planner memoizes per subtree pair. The recursive minimization
//! counts a shared subproblem once per parent, so its decisions are a
//! heuristic; the plan's real cost is re-counted over the reachable set
//! and, if any single pure strategy beats it, the plan falls back to
//! that pure strategy. This keeps the dominance invariant unconditional:
//! planned_steps never exceeds any pure strategy's count.

use std::collections::HashMap;

use crate::cost::CostModel;
use crate::engines::demaine::{demaine_planned_steps, heavy_sweep, visit_schedule};
use crate::engines::zs::{keyroot_sweep, keyroot_sweep_rl};
use crate::engines::{EngineRun, StepCounter, SubtreeTable};
use crate::enumerate::PsLens;
use crate::subforest::ForestIndex;
use crate::tree::{NodeId, StructuralIndex, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathKind {
    Leftmost,
    Rightmost,
    Heavy,
}

impl PathKind {
    pub fn name(&self) -> &'static str {
        match self {
            PathKind::Leftmost => "leftmost",
            PathKind::Rightmost => "rightmost",
            PathKind::Heavy => "heavy",
        }
    }
}

/// Strategy selector for step counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    PureLeftmost,
    PureRightmost,
    PureHeavy,
    Combined,
}

/// One planned sweep: the subtree pair (lr_post in each tree), the path
/// kind, which tree is decomposed (only meaningful for Heavy; Leftmost
/// and Rightmost decompose both trees at once), and the relaxations the
/// sweep performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanEntry {
    pub lr1: u32,
    pub lr2: u32,
    pub kind: PathKind,
    pub decompose_first: bool,
    pub local_steps: u64,
}

/// The decision table, in execution order (every sweep a later sweep
/// reads from comes first).
#[derive(Debug, Clone)]
pub struct StrategyPlan {
    pub entries: Vec<PlanEntry>,
    pub planned_steps: u64,
}

/// Relaxation counts split by the size category of the subtree pair
/// each sweep works on. With m the smaller and n the larger input tree,
/// a sweep on subtree sizes (p, q) counts as large_vs_larger when
/// max(p,q) > m, as large_small when max(p,q) ≤ m and 2·min(p,q) ≤
/// max(p,q), and as small_small otherwise. Base-row initializations are
/// not included; they are reported by the engines' own counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepReport {
    pub total: u64,
    pub large_vs_larger: u64,
    pub large_small: u64,
    pub small_small: u64,
}

impl StepReport {
    fn add(&mut self, p: u64, q: u64, m: u64, steps: u64) {
        self.total += steps;
        let (lo, hi) = (p.min(q), p.max(q));
        if hi > m {
            self.large_vs_larger += steps;
        } else if 2 * lo <= hi {
            self.large_small += steps;
        } else {
            self.small_small += steps;
        }
    }
}

struct Planner<'a> {
    t1: &'a Tree,
    t2: &'a Tree,
    idx1: &'a StructuralIndex,
    idx2: &'a StructuralIndex,
    lens1: PsLens,
    lens2: PsLens,
    // (lr1, lr2) -> (decision, recursive step estimate)
    memo: HashMap<(u32, u32), (PathKind, bool, u64)>,
}

/// Subtrees hanging off the given path, i.e. the roots of the recursive
/// subproblems that remain after sweeping along it.
fn off_path(tree: &Tree, path: &[NodeId], on_path: impl Fn(NodeId, NodeId) -> bool) -> Vec<NodeId> {
    let mut out = Vec::new();
    for &p in path {
        for &c in &tree.node(p).children {
            if !on_path(p, c) {
                out.push(c);
            }
        }
    }
    out
}

impl<'a> Planner<'a> {
    fn left_adjacent(tree: &Tree, top: NodeId) -> Vec<NodeId> {
        let path = StructuralIndex::leftmost_path(tree, top);
        off_path(tree, &path, |p, c| tree.node(p).children[0] == c)
    }

    fn right_adjacent(tree: &Tree, top: NodeId) -> Vec<NodeId> {
        let path = StructuralIndex::rightmost_path(tree, top);
        off_path(tree, &path, |p, c| *tree.node(p).children.last().unwrap() == c)
    }

    fn heavy_adjacent(idx: &StructuralIndex, tree: &Tree, top: NodeId) -> Vec<NodeId> {
        let path = idx.heavy_path(top);
        off_path(tree, &path, |p, c| idx.heavy_child[p] == Some(c))
    }

    fn size1(&self, a: NodeId) -> u64 {
        self.t1.node(a).subtree_size as u64
    }

    fn size2(&self, b: NodeId) -> u64 {
        self.t2.node(b).subtree_size as u64
    }

    fn children_of(&self, a: NodeId, b: NodeId, kind: PathKind, decompose_first: bool) -> Vec<(NodeId, NodeId)> {
        match kind {
            PathKind::Leftmost => {
                let mut out: Vec<_> = Self::left_adjacent(self.t1, a).into_iter().map(|k| (k, b)).collect();
                out.extend(Self::left_adjacent(self.t2, b).into_iter().map(|k| (a, k)));
                out
            }
            PathKind::Rightmost => {
                let mut out: Vec<_> = Self::right_adjacent(self.t1, a).into_iter().map(|k| (k, b)).collect();
                out.extend(Self::right_adjacent(self.t2, b).into_iter().map(|k| (a, k)));
                out
            }
            PathKind::Heavy => {
                if decompose_first {
                    Self::heavy_adjacent(self.idx1, self.t1, a).into_iter().map(|k| (k, b)).collect()
                } else {
                    Self::heavy_adjacent(self.idx2, self.t2, b).into_iter().map(|k| (a, k)).collect()
                }
            }
        }
    }

    fn local_steps(&self, a: NodeId, b: NodeId, kind: PathKind, decompose_first: bool) -> u64 {
        match kind {
            PathKind::Leftmost | PathKind::Rightmost => self.size1(a) * self.size2(b),
            PathKind::Heavy => {
                if decompose_first {
                    self.lens2.subtree_len(self.t2, b) * self.size1(a)
                } else {
                    self.lens1.subtree_len(self.t1, a) * self.size2(b)
                }
            }
        }
    }

    /// Heavy decomposes the larger subtree; ties decompose the second.
    fn heavy_role(&self, a: NodeId, b: NodeId) -> bool {
        self.size1(a) > self.size2(b)
    }

    fn decide(&mut self, a: NodeId, b: NodeId) -> (PathKind, bool, u64) {
        let key = (self.t1.node(a).lr_post, self.t2.node(b).lr_post);
        if let Some(&d) = self.memo.get(&key) {
            return d;
        }
        let heavy_first = self.heavy_role(a, b);
        let mut best: Option<(PathKind, bool, u64)> = None;
        for (kind, df) in [
            (PathKind::Leftmost, false),
            (PathKind::Rightmost, false),
            (PathKind::Heavy, heavy_first),
        ] {
            let mut total = self.local_steps(a, b, kind, df);
            for (ca, cb) in self.children_of(a, b, kind, df) {
                total += self.decide(ca, cb).2;
            }
            if best.map_or(true, |(_, _, t)| total < t) {
                best = Some((kind, df, total));
            }
        }
        let d = best.unwrap();
        self.memo.insert(key, d);
        d
    }

    /// Collect the reachable decision set, children before parents, and
    /// sum the local counts once per distinct subtree pair.
    fn collect(
        &mut self,
        a: NodeId,
        b: NodeId,
        forced: Option<PathKind>,
        seen: &mut HashMap<(u32, u32), ()>,
        out: &mut Vec<PlanEntry>,
    ) {
        let key = (self.t1.node(a).lr_post, self.t2.node(b).lr_post);
        if seen.insert(key, ()).is_some() {
            return;
        }
        let (kind, df) = match forced {
            Some(PathKind::Heavy) => (PathKind::Heavy, self.heavy_role(a, b)),
            Some(k) => (k, false),
            None => {
                let (k, df, _) = self.decide(a, b);
                (k, df)
            }
        };
        for (ca, cb) in self.children_of(a, b, kind, df) {
            self.collect(ca, cb, forced, seen, out);
        }
        out.push(PlanEntry {
            lr1: key.0,
            lr2: key.1,
            kind,
            decompose_first: df,
            local_steps: self.local_steps(a, b, kind, df),
        });
    }

    fn build_plan(&mut self, forced: Option<PathKind>) -> StrategyPlan {
        let mut seen = HashMap::new();
        let mut entries = Vec::new();
        self.collect(self.t1.root(), self.t2.root(), forced, &mut seen, &mut entries);
        let planned_steps = entries.iter().map(|e| e.local_steps).sum();
        StrategyPlan {
            entries,
            planned_steps,
        }
    }
}

fn keyroot_weight(tree: &Tree, keyroots: &[NodeId]) -> u64 {
    keyroots
        .iter()
        .map(|&k| tree.node(k).subtree_size as u64)
        .sum()
}

/// Relaxation count of running only leftmost-path sweeps: the product of
/// the two trees' summed LR-keyroot subtree sizes.
pub fn pure_leftmost_steps(t1: &Tree, t2: &Tree) -> u64 {
    keyroot_weight(t1, &StructuralIndex::build(t1).lr_keyroots)
        * keyroot_weight(t2, &StructuralIndex::build(t2).lr_keyroots)
}

pub fn pure_rightmost_steps(t1: &Tree, t2: &Tree) -> u64 {
    keyroot_weight(t1, &StructuralIndex::build(t1).rl_keyroots)
        * keyroot_weight(t2, &StructuralIndex::build(t2).rl_keyroots)
}

/// Relaxation count of the heavy-both engine. Taken from its sweep
/// schedule rather than a closed form: the schedule may visit an
/// equal-size subtree pair in both role orientations, which a
/// plain pair-set count would miss.
pub fn pure_heavy_steps(t1: &Tree, t2: &Tree) -> u64 {
    demaine_planned_steps(t1, t2)
}

/// Decision table for the pair of whole trees. Falls back to the best
/// pure strategy when the per-pair minimization does not beat it.
pub fn plan(t1: &Tree, t2: &Tree) -> StrategyPlan {
    let idx1 = StructuralIndex::build(t1);
    let idx2 = StructuralIndex::build(t2);
    let lens1 = PsLens::build(t1);
    let lens2 = PsLens::build(t2);
    let pures = [
        (
            PathKind::Leftmost,
            keyroot_weight(t1, &idx1.lr_keyroots) * keyroot_weight(t2, &idx2.lr_keyroots),
        ),
        (
            PathKind::Rightmost,
            keyroot_weight(t1, &idx1.rl_keyroots) * keyroot_weight(t2, &idx2.rl_keyroots),
        ),
        (
            PathKind::Heavy,
            crate::engines::demaine::demaine_planned_steps_with(
                t1, t2, &idx1, &idx2, &lens1, &lens2,
            ),
        ),
    ];
    let mut p = Planner {
        t1,
        t2,
        idx1: &idx1,
        idx2: &idx2,
        lens1,
        lens2,
        memo: HashMap::new(),
    };
    let mut best = p.build_plan(None);
    for (kind, pure) in pures {
        if pure < best.planned_steps {
            let forced = p.build_plan(Some(kind));
            if forced.planned_steps < best.planned_steps {
                best = forced;
            }
        }
    }
    best
}

/// Exact relaxation count the selected strategy performs on this input,
/// split into the size categories documented on [`StepReport`].
pub fn count_steps(t1: &Tree, t2: &Tree, strategy: Strategy) -> StepReport {
    let m = t1.len().min(t2.len()) as u64;
    let mut report = StepReport::default();
    match strategy {
        Strategy::PureLeftmost | Strategy::PureRightmost => {
            let idx1 = StructuralIndex::build(t1);
            let idx2 = StructuralIndex::build(t2);
            let (k1, k2) = if strategy == Strategy::PureLeftmost {
                (&idx1.lr_keyroots, &idx2.lr_keyroots)
            } else {
                (&idx1.rl_keyroots, &idx2.rl_keyroots)
            };
            for &a in k1 {
                for &b in k2 {
                    let p = t1.node(a).subtree_size as u64;
                    let q = t2.node(b).subtree_size as u64;
                    report.add(p, q, m, p * q);
                }
            }
        }
        Strategy::PureHeavy => {
            let idx1 = StructuralIndex::build(t1);
            let idx2 = StructuralIndex::build(t2);
            let lens1 = PsLens::build(t1);
            let lens2 = PsLens::build(t2);
            visit_schedule(t1, &idx1, t2, &idx2, &mut |spec| {
                let (ta, tb, lens) = if spec.swapped {
                    (t2, t1, &lens2)
                } else {
                    (t1, t2, &lens1)
                };
                let keep = ta.by_lr(spec.keep_lr);
                let decomp = tb.by_lr(spec.decomp_lr);
                let p = ta.node(keep).subtree_size as u64;
                let q = tb.node(decomp).subtree_size as u64;
                report.add(p, q, m, lens.subtree_len(ta, keep) * q);
            });
        }
        Strategy::Combined => {
            for e in plan(t1, t2).entries {
                let p = t1.node(t1.by_lr(e.lr1)).subtree_size as u64;
                let q = t2.node(t2.by_lr(e.lr2)).subtree_size as u64;
                report.add(p, q, m, e.local_steps);
            }
        }
    }
    report
}

/// Distance computation guided by the recorded plan. The instrumented
/// relaxation count equals the plan's planned_steps exactly.
pub fn ted_combined(t1: &Tree, t2: &Tree, cost: &CostModel) -> (EngineRun, StrategyPlan) {
    let plan = plan(t1, t2);
    let fi1 = ForestIndex::build(t1);
    let fi2 = ForestIndex::build(t2);
    let idx1 = StructuralIndex::build(t1);
    let idx2 = StructuralIndex::build(t2);
    let cost_t = cost.transpose();

    let mut dt = SubtreeTable::new(t1.len(), t2.len());
    let mut steps = StepCounter::default();
    let mut fd = vec![0; (t1.len() + 1) * (t2.len() + 1)];

    for e in &plan.entries {
        let a = t1.by_lr(e.lr1);
        let b = t2.by_lr(e.lr2);
        match e.kind {
            PathKind::Leftmost => {
                keyroot_sweep(t1, t2, cost, a, b, &mut fd, &mut dt, &mut steps);
            }
            PathKind::Rightmost => {
                keyroot_sweep_rl(t1, t2, cost, a, b, &mut fd, &mut dt, &mut steps);
            }
            PathKind::Heavy => {
                if e.decompose_first {
                    heavy_sweep(
                        t2, &fi2, t1, &fi1, &idx1, &cost_t, true, b, a, &mut dt, &mut steps,
                    );
                } else {
                    heavy_sweep(
                        t1, &fi1, t2, &fi2, &idx2, cost, false, a, b, &mut dt, &mut steps,
                    );
                }
            }
        }
    }

    let run = EngineRun {
        distance: dt.distance(),
        subtree: dt,
        steps,
        forest_memo: None,
    };
    (run, plan)
}
