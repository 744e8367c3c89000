//! Edit mappings: validation against the structural-order conditions,
//! and traceback recovery from a completed subtree table.

use crate::cost::{Cost, CostModel};
use crate::subforest::{Dir, ForestIndex, Subforest};
use crate::tree::{NodeId, NodeRelation, Tree};

use super::{pair_key, run_engine, Engine, Memo, SubtreeTable};

/// The substitution pairs of an edit script plus the unmapped nodes of
/// each tree. Node identity is the arena id; lr_post is used for
/// rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditMapping {
    pub pairs: Vec<(NodeId, NodeId)>,
    pub deleted: Vec<NodeId>,
    pub inserted: Vec<NodeId>,
}

impl EditMapping {
    /// Builds the mapping from its substitution pairs; every unmapped
    /// node of `t1` is deleted and of `t2` inserted.
    pub fn from_pairs(pairs: Vec<(NodeId, NodeId)>, t1: &Tree, t2: &Tree) -> EditMapping {
        let mut in1 = vec![false; t1.len()];
        let mut in2 = vec![false; t2.len()];
        for &(v, w) in &pairs {
            in1[v] = true;
            in2[w] = true;
        }
        let deleted = (0..t1.len()).filter(|&v| !in1[v]).collect();
        let inserted = (0..t2.len()).filter(|&w| !in2[w]).collect();
        EditMapping {
            pairs,
            deleted,
            inserted,
        }
    }

    pub fn cost(&self, t1: &Tree, t2: &Tree, cost: &CostModel) -> Cost {
        let subs: Cost = self
            .pairs
            .iter()
            .map(|&(v, w)| cost.sub(t1.label(v), t2.label(w)))
            .sum();
        let dels: Cost = self.deleted.iter().map(|&v| cost.del(t1.label(v))).sum();
        let inss: Cost = self.inserted.iter().map(|&w| cost.ins(t2.label(w))).sum();
        subs + dels + inss
    }
}

/// Checks the three mapping conditions pairwise; returns the first
/// violation found.
pub fn validate_mapping(m: &EditMapping, t1: &Tree, t2: &Tree) -> Result<(), String> {
    let mut seen1 = vec![false; t1.len()];
    let mut seen2 = vec![false; t2.len()];
    for &(v, w) in &m.pairs {
        if seen1[v] {
            return Err(format!("node {} of the first tree mapped twice", v));
        }
        if seen2[w] {
            return Err(format!("node {} of the second tree mapped twice", w));
        }
        seen1[v] = true;
        seen2[w] = true;
    }
    for (i, &(v1, w1)) in m.pairs.iter().enumerate() {
        for &(v2, w2) in &m.pairs[i + 1..] {
            let r1 = t1.relation(v1, v2);
            let r2 = t2.relation(w1, w2);
            if r1 != r2 {
                let kind = match (r1, r2) {
                    (NodeRelation::Ancestor, _)
                    | (NodeRelation::Descendant, _)
                    | (_, NodeRelation::Ancestor)
                    | (_, NodeRelation::Descendant) => "ancestor-order",
                    _ => "sibling-order",
                };
                return Err(format!(
                    "{kind} violation between pairs ({v1},{w1}) and ({v2},{w2}): {r1:?} vs {r2:?}"
                ));
            }
        }
    }
    Ok(())
}

/// Forest-distance evaluator over a completed subtree table: recomputes
/// any forest pair top-down (memoized), in either recursion direction.
/// This is what traceback uses when an engine has overwritten or never
/// kept its working tables.
pub struct ForestDist<'a> {
    t1: &'a Tree,
    pub fi1: ForestIndex,
    t2: &'a Tree,
    pub fi2: ForestIndex,
    cost: &'a CostModel,
    dt: SubtreeTable,
    memo: [Memo; 2],
    del_pref: Vec<Cost>,
    ins_pref: Vec<Cost>,
}

impl<'a> ForestDist<'a> {
    /// Builds the subtree table with the given engine, then serves
    /// forest distances on top of it.
    pub fn new(t1: &'a Tree, t2: &'a Tree, cost: &'a CostModel, engine: Engine) -> ForestDist<'a> {
        let run = run_engine(engine, t1, t2, cost);
        ForestDist::over(t1, t2, cost, run.subtree)
    }

    pub fn over(t1: &'a Tree, t2: &'a Tree, cost: &'a CostModel, dt: SubtreeTable) -> ForestDist<'a> {
        ForestDist {
            t1,
            fi1: ForestIndex::build(t1),
            t2,
            fi2: ForestIndex::build(t2),
            cost,
            dt,
            memo: [Memo::default(), Memo::default()],
            del_pref: super::cost_prefix(t1, |l| cost.del(l)),
            ins_pref: super::cost_prefix(t2, |l| cost.ins(l)),
        }
    }

    pub fn tree_distance(&self) -> Cost {
        self.dt.distance()
    }

    pub fn subtree_table(&self) -> &SubtreeTable {
        &self.dt
    }

    /// Distance between two forests, deleting roots from the `dir` side.
    pub fn distance(&mut self, f: Subforest, g: Subforest, dir: Dir) -> Cost {
        match (f.is_empty(), g.is_empty()) {
            (true, true) => 0,
            (false, true) => {
                let (lo, hi) = self.fi1.lr_range(f);
                self.del_pref[hi as usize] - self.del_pref[lo as usize - 1]
            }
            (true, false) => {
                let (lo, hi) = self.fi2.lr_range(g);
                self.ins_pref[hi as usize] - self.ins_pref[lo as usize - 1]
            }
            (false, false) => {
                let slot = dir as usize;
                if let Some(&v) = self.memo[slot].get(&pair_key(f, g)) {
                    return v;
                }
                let (del, ins, split) = self.branches(f, g, dir);
                let val = del.min(ins).min(split);
                self.memo[slot].insert(pair_key(f, g), val);
                val
            }
        }
    }

    /// The three branch values for a nonempty pair: root deletion, root
    /// insertion, and substitution (single trees) or boundary-subtree
    /// split.
    fn branches(&mut self, f: Subforest, g: Subforest, dir: Dir) -> (Cost, Cost, Cost) {
        let v_lr = self.fi1.root_lr(f, dir);
        let w_lr = self.fi2.root_lr(g, dir);
        let v = self.t1.label(self.t1.by_lr(v_lr));
        let w = self.t2.label(self.t2.by_lr(w_lr));
        let f_less = self.fi1.delete_root(f, dir);
        let g_less = self.fi2.delete_root(g, dir);
        let del = self.distance(f_less, g, dir) + self.cost.del(v);
        let ins = self.distance(f, g_less, dir) + self.cost.ins(w);
        let split = if self.fi1.is_single(f) && self.fi2.is_single(g) {
            self.distance(f_less, g_less, dir) + self.cost.sub(v, w)
        } else {
            let fs = self.fi1.delete_root_subtree(f, dir);
            let gs = self.fi2.delete_root_subtree(g, dir);
            self.distance(fs, gs, dir) + self.dt.require(v_lr, w_lr)
        };
        (del, ins, split)
    }
}

/// Recovers an optimal edit mapping by computing the subtree table with
/// the requested engine and tracing the recurrence back from the root
/// pair. Ties prefer the substitution/split branch, then deletion, then
/// insertion, so scripts are deterministic.
pub fn recover_mapping(
    t1: &Tree,
    t2: &Tree,
    cost: &CostModel,
    engine: Engine,
) -> (EditMapping, Cost) {
    let mut fdist = ForestDist::new(t1, t2, cost, engine);
    let distance = fdist.tree_distance();
    let mut pairs = Vec::new();
    let mut stack = vec![(fdist.fi1.whole(), fdist.fi2.whole())];
    while let Some((f, g)) = stack.pop() {
        if f.is_empty() || g.is_empty() {
            continue; // unmapped nodes become deletions/insertions
        }
        let dir = Dir::Right;
        let val = fdist.distance(f, g, dir);
        let (del, ins, split) = fdist.branches(f, g, dir);
        let v_lr = fdist.fi1.root_lr(f, dir);
        let w_lr = fdist.fi2.root_lr(g, dir);
        let f_less = fdist.fi1.delete_root(f, dir);
        let g_less = fdist.fi2.delete_root(g, dir);
        if split == val {
            if fdist.fi1.is_single(f) && fdist.fi2.is_single(g) {
                pairs.push((t1.by_lr(v_lr), t2.by_lr(w_lr)));
                stack.push((f_less, g_less));
            } else {
                let fs = fdist.fi1.delete_root_subtree(f, dir);
                let gs = fdist.fi2.delete_root_subtree(g, dir);
                stack.push((fs, gs));
                stack.push((fdist.fi1.subtree(v_lr), fdist.fi2.subtree(w_lr)));
            }
        } else if del == val {
            stack.push((f_less, g));
        } else {
            debug_assert_eq!(ins, val);
            stack.push((f, g_less));
        }
    }
    let mapping = EditMapping::from_pairs(pairs, t1, t2);
    debug_assert_eq!(mapping.cost(t1, t2, cost), distance);
    (mapping, distance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::Scheme;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn identity_mapping_on_identical_trees() {
        let a = t("{r{p{a}{b}}{q}}");
        let cost = CostModel::builtin_unit();
        let (m, d) = recover_mapping(&a, &a, &cost, Engine::ZhangShasha);
        assert_eq!(d, 0);
        assert_eq!(m.pairs.len(), a.len());
        assert!(m.deleted.is_empty() && m.inserted.is_empty());
        assert!(m.pairs.iter().all(|&(v, w)| v == w));
        assert!(validate_mapping(&m, &a, &a).is_ok());
    }

    #[test]
    fn golden_pair_mapping() {
        let t1 = t("{c{a}{b}}");
        let t2 = t("{g{d}{e}{f}}");
        let cost = CostModel::builtin_paper();
        for engine in [
            Engine::Naive(Scheme::Lr),
            Engine::ZhangShasha,
            Engine::Klein,
            Engine::Demaine,
        ] {
            let (m, d) = recover_mapping(&t1, &t2, &cost, engine);
            assert_eq!(d, 5);
            assert!(validate_mapping(&m, &t1, &t2).is_ok());
            assert_eq!(m.cost(&t1, &t2, &cost), 5);
        }
    }

    #[test]
    fn two_node_insertion_case() {
        let t1 = t("{a}");
        let t2 = t("{b{a}}");
        let cost = CostModel::builtin_unit();
        let (m, d) = recover_mapping(&t1, &t2, &cost, Engine::ZhangShasha);
        assert_eq!(d, 1);
        assert_eq!(m.pairs.len(), 1);
        let (v, w) = m.pairs[0];
        assert_eq!(t1.label(v), "a");
        assert_eq!(t2.label(w), "a");
        assert_eq!(m.inserted.len(), 1);
        assert_eq!(t2.label(m.inserted[0]), "b");
    }

    #[test]
    fn validator_rejects_crossings_and_flips() {
        let t1 = t("{r{a}{b}}");
        let t2 = t("{r{d}{e}}");
        // a left-of b mapped to e, d: sibling-order violation.
        let m = EditMapping::from_pairs(vec![(1, 2), (2, 1)], &t1, &t2);
        assert!(validate_mapping(&m, &t1, &t2).unwrap_err().contains("sibling-order"));

        let p = t("{p{c}}");
        let q = t("{q{d}}");
        // parent -> leaf and child -> root: ancestor-order violation.
        let m = EditMapping::from_pairs(vec![(1, 0), (0, 1)], &p, &q);
        assert!(validate_mapping(&m, &p, &q).unwrap_err().contains("ancestor-order"));
    }

    #[test]
    fn forest_distance_examples() {
        let t1 = t("{c{a}{b}}");
        let t2 = t("{g{d}{e}{f}}");
        let cost = CostModel::builtin_paper();
        let mut fd = ForestDist::new(&t1, &t2, &cost, Engine::ZhangShasha);
        let whole2 = fd.fi2.whole();
        assert_eq!(fd.distance(Subforest::EMPTY, whole2, Dir::Right), 8);
        let whole1 = fd.fi1.whole();
        let g_minus_root = fd.fi2.delete_rm(whole2);
        assert_eq!(fd.distance(whole1, g_minus_root, Dir::Right), 6);
        assert_eq!(fd.distance(whole1, g_minus_root, Dir::Left), 6);
        assert_eq!(
            fd.distance(Subforest::EMPTY, Subforest::EMPTY, Dir::Right),
            0
        );
    }
}
