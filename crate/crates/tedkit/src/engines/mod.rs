//! The distance engines and their shared dynamic-programming plumbing.
//!
//! All engines fill the same [`SubtreeTable`] and count work in the same
//! unit: one relaxation = one evaluation of the three-way minimum of the
//! forest-distance recurrence. Base-table initializations (rows against
//! the empty forest) are counted separately.

pub mod demaine;
pub mod klein;
pub mod mapping;
pub mod naive;
pub mod zs;

use std::collections::{HashMap, HashSet};
use std::hash::{BuildHasherDefault, Hasher};

use crate::cost::{Cost, CostModel};
use crate::enumerate::Scheme;
use crate::subforest::{Dir, ForestIndex, Subforest};
use crate::tree::Tree;

pub use mapping::{recover_mapping, validate_mapping, EditMapping, ForestDist};

/// Multiply-shift hasher for the compact u64 forest-pair keys; the
/// default SipHash dominates profile time on the memo-driven engines.
#[derive(Default)]
pub struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ b as u64).wrapping_mul(0x9e3779b97f4a7c15);
        }
    }

    fn write_u64(&mut self, k: u64) {
        self.0 = k.wrapping_mul(0x9e3779b97f4a7c15);
    }

    fn write_u32(&mut self, k: u32) {
        self.write_u64(k as u64);
    }

    fn finish(&self) -> u64 {
        self.0 ^ (self.0 >> 31)
    }
}

pub type Memo = HashMap<u64, Cost, BuildHasherDefault<KeyHasher>>;
pub(crate) type KeySet = HashSet<u32, BuildHasherDefault<KeyHasher>>;

pub(crate) fn pair_key(f: Subforest, g: Subforest) -> u64 {
    (f.key() as u64) << 32 | g.key() as u64
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepCounter {
    /// Three-way-minimum evaluations.
    pub relaxations: u64,
    /// Entries against an empty forest, including the empty-empty cell.
    pub base_inits: u64,
}

/// Permanent table of subtree-pair distances, indexed by lr_post.
#[derive(Debug, Clone)]
pub struct SubtreeTable {
    n1: usize,
    n2: usize,
    vals: Vec<Option<Cost>>,
}

impl SubtreeTable {
    pub fn new(n1: usize, n2: usize) -> SubtreeTable {
        SubtreeTable {
            n1,
            n2,
            vals: vec![None; n1 * n2],
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    /// Distance of the subtree pair with the given lr_post numbers.
    pub fn get(&self, lr1: u32, lr2: u32) -> Option<Cost> {
        self.vals[(lr1 as usize - 1) * self.n2 + lr2 as usize - 1]
    }

    pub fn require(&self, lr1: u32, lr2: u32) -> Cost {
        self.get(lr1, lr2).unwrap_or_else(|| {
            panic!("internal sequencing error: subtree pair ({lr1},{lr2}) not yet computed")
        })
    }

    pub fn set(&mut self, lr1: u32, lr2: u32, v: Cost) {
        self.vals[(lr1 as usize - 1) * self.n2 + lr2 as usize - 1] = Some(v);
    }

    pub fn is_complete(&self) -> bool {
        self.vals.iter().all(|v| v.is_some())
    }

    /// Root-pair distance; panics if an engine left it unfilled.
    pub fn distance(&self) -> Cost {
        self.require(self.n1 as u32, self.n2 as u32)
    }
}

/// Result of one engine invocation.
#[derive(Debug, Clone)]
pub struct EngineRun {
    pub distance: Cost,
    pub subtree: SubtreeTable,
    pub steps: StepCounter,
    /// The naive engine retains its complete forest memo so worked
    /// distance tables can be reproduced cell by cell.
    pub forest_memo: Option<Memo>,
}

/// Engine selector used by mapping recovery and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Naive(Scheme),
    ZhangShasha,
    Klein,
    Demaine,
    Combined,
}

pub fn run_engine(engine: Engine, t1: &Tree, t2: &Tree, cost: &CostModel) -> EngineRun {
    match engine {
        Engine::Naive(scheme) => naive::ted_naive(t1, t2, cost, scheme),
        Engine::ZhangShasha => zs::ted_zhang_shasha(t1, t2, cost),
        Engine::Klein => klein::ted_klein(t1, t2, cost),
        Engine::Demaine => demaine::ted_demaine(t1, t2, cost),
        Engine::Combined => crate::strategy::ted_combined(t1, t2, cost).0,
    }
}

/// Prefix sums of per-node deletion (or insertion) costs in lr order, so
/// any forest's base distance against the empty forest is two lookups.
pub(crate) fn cost_prefix(tree: &Tree, per_node: impl Fn(&str) -> Cost) -> Vec<Cost> {
    let mut pref = vec![0; tree.len() + 1];
    for lr in 1..=tree.len() as u32 {
        pref[lr as usize] = pref[lr as usize - 1] + per_node(tree.label(tree.by_lr(lr)));
    }
    pref
}

/// One memo-driven forest sweep: a pair of trees in sweep orientation
/// (`ta` is enumerated on the left of each pair), the forest memo, and
/// the base-cost machinery. The permanent subtree table stays outside so
/// several sweeps can share it; `swapped` says whether `ta` is the
/// second tree of that shared table.
pub(crate) struct Sweep<'a> {
    pub ta: &'a Tree,
    pub fa: &'a ForestIndex,
    pub tb: &'a Tree,
    pub fb: &'a ForestIndex,
    pub cost: &'a CostModel,
    pub swapped: bool,
    pub memo: Memo,
    del_pref: Vec<Cost>,
    ins_pref: Vec<Cost>,
    del_seen: KeySet,
    ins_seen: KeySet,
    empty_counted: bool,
}

impl<'a> Sweep<'a> {
    pub fn new(
        ta: &'a Tree,
        fa: &'a ForestIndex,
        tb: &'a Tree,
        fb: &'a ForestIndex,
        cost: &'a CostModel,
        swapped: bool,
    ) -> Sweep<'a> {
        Sweep {
            ta,
            fa,
            tb,
            fb,
            cost,
            swapped,
            memo: Memo::default(),
            del_pref: cost_prefix(ta, |l| cost.del(l)),
            ins_pref: cost_prefix(tb, |l| cost.ins(l)),
            del_seen: KeySet::default(),
            ins_seen: KeySet::default(),
            empty_counted: false,
        }
    }

    fn del_sum(&self, f: Subforest) -> Cost {
        let (lo, hi) = self.fa.lr_range(f);
        self.del_pref[hi as usize] - self.del_pref[lo as usize - 1]
    }

    fn ins_sum(&self, g: Subforest) -> Cost {
        let (lo, hi) = self.fb.lr_range(g);
        self.ins_pref[hi as usize] - self.ins_pref[lo as usize - 1]
    }

    /// Forest-pair distance from the memo or the base rows; panics on a
    /// missing nonempty predecessor, which would mean the enumeration
    /// order violated prefix-closure.
    pub fn get(&mut self, steps: &mut StepCounter, f: Subforest, g: Subforest) -> Cost {
        match (f.is_empty(), g.is_empty()) {
            (true, true) => {
                if !self.empty_counted {
                    self.empty_counted = true;
                    steps.base_inits += 1;
                }
                0
            }
            (false, true) => {
                if self.del_seen.insert(f.key()) {
                    steps.base_inits += 1;
                }
                self.del_sum(f)
            }
            (true, false) => {
                if self.ins_seen.insert(g.key()) {
                    steps.base_inits += 1;
                }
                self.ins_sum(g)
            }
            (false, false) => *self.memo.get(&pair_key(f, g)).unwrap_or_else(|| {
                panic!("internal sequencing error: missing forest predecessor")
            }),
        }
    }

    /// One relaxation: the three-way minimum over root deletion, root
    /// insertion and the boundary-subtree split (or root substitution
    /// when both forests are single trees). Stores the value in the memo
    /// and, for single-tree pairs, in the permanent subtree table.
    pub fn relax(
        &mut self,
        dt: &mut SubtreeTable,
        steps: &mut StepCounter,
        f: Subforest,
        g: Subforest,
        dir: Dir,
    ) -> Cost {
        let v_lr = self.fa.root_lr(f, dir);
        let w_lr = self.fb.root_lr(g, dir);
        let v = self.ta.label(self.ta.by_lr(v_lr));
        let w = self.tb.label(self.tb.by_lr(w_lr));

        let f_less = self.fa.delete_root(f, dir);
        let g_less = self.fb.delete_root(g, dir);
        let del = self.get(steps, f_less, g) + self.cost.del(v);
        let ins = self.get(steps, f, g_less) + self.cost.ins(w);
        let single = self.fa.is_single(f) && self.fb.is_single(g);
        let split = if single {
            self.get(steps, f_less, g_less) + self.cost.sub(v, w)
        } else {
            let fs = self.fa.delete_root_subtree(f, dir);
            let gs = self.fb.delete_root_subtree(g, dir);
            self.get(steps, fs, gs) + self.dt_get(dt, v_lr, w_lr)
        };

        let val = del.min(ins).min(split);
        steps.relaxations += 1;
        self.memo.insert(pair_key(f, g), val);
        if single {
            self.dt_set(dt, v_lr, w_lr, val);
        }
        val
    }

    fn dt_get(&self, dt: &SubtreeTable, a_lr: u32, b_lr: u32) -> Cost {
        if self.swapped {
            dt.require(b_lr, a_lr)
        } else {
            dt.require(a_lr, b_lr)
        }
    }

    fn dt_set(&self, dt: &mut SubtreeTable, a_lr: u32, b_lr: u32, v: Cost) {
        if self.swapped {
            dt.set(b_lr, a_lr, v);
        } else {
            dt.set(a_lr, b_lr, v);
        }
    }
}
