//! Ground-truth implementations for testing: exhaustive search over all
//! valid edit mappings, and the classic string edit distance.

use thiserror::Error;

use crate::cost::{Cost, CostModel};
use crate::engines::EditMapping;
use crate::tree::{NodeId, Tree};

/// Default node-count ceiling for the exhaustive search.
pub const DEFAULT_SIZE_GUARD: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("input of {size} nodes exceeds the exhaustive-search guard of {guard}")]
    TooLarge { size: usize, guard: usize },
}

/// Minimum mapping cost by branch-and-bound over every mapping that
/// satisfies the one-to-one, sibling-order and ancestor-order
/// conditions. Mappings are grown one first-tree node at a time in LR
/// order, checking the conditions incrementally against each already
/// chosen pair.
pub fn brute_force_distance(
    t1: &Tree,
    t2: &Tree,
    cost: &CostModel,
    guard: usize,
) -> Result<Cost, OracleError> {
    Ok(search(t1, t2, cost, guard)?.1)
}

/// Like [`brute_force_distance`] but also returns one optimal mapping.
pub fn brute_force_mapping(
    t1: &Tree,
    t2: &Tree,
    cost: &CostModel,
    guard: usize,
) -> Result<(EditMapping, Cost), OracleError> {
    let (pairs, d) = search(t1, t2, cost, guard)?;
    Ok((EditMapping::from_pairs(pairs, t1, t2), d))
}

fn search(
    t1: &Tree,
    t2: &Tree,
    cost: &CostModel,
    guard: usize,
) -> Result<(Vec<(NodeId, NodeId)>, Cost), OracleError> {
    for t in [t1, t2] {
        if t.len() > guard {
            return Err(OracleError::TooLarge {
                size: t.len(),
                guard,
            });
        }
    }
    let order1: Vec<NodeId> = (1..=t1.len() as u32).map(|lr| t1.by_lr(lr)).collect();
    let all_ins: Cost = (0..t2.len()).map(|w| cost.ins(t2.label(w))).sum();
    let mut state = SearchState {
        t1,
        t2,
        cost,
        order1,
        chosen: Vec::new(),
        used2: vec![false; t2.len()],
        best: (Vec::new(), (0..t1.len()).map(|v| cost.del(t1.label(v))).sum::<Cost>() + all_ins),
    };
    state.extend(0, 0);
    Ok(state.best)
}

struct SearchState<'a> {
    t1: &'a Tree,
    t2: &'a Tree,
    cost: &'a CostModel,
    order1: Vec<NodeId>,
    chosen: Vec<(NodeId, NodeId)>,
    used2: Vec<bool>,
    best: (Vec<(NodeId, NodeId)>, Cost),
}

impl SearchState<'_> {
    /// `acc` holds substitution and deletion costs of the first `i`
    /// nodes; insertion costs of unmatched second-tree nodes are added
    /// when the mapping is complete.
    fn extend(&mut self, i: usize, acc: Cost) {
        if acc >= self.best.1 {
            return; // every remaining choice adds a nonnegative cost
        }
        if i == self.order1.len() {
            let ins: Cost = (0..self.t2.len())
                .filter(|&w| !self.used2[w])
                .map(|w| self.cost.ins(self.t2.label(w)))
                .sum();
            let total = acc + ins;
            if total < self.best.1 {
                self.best = (self.chosen.clone(), total);
            }
            return;
        }
        let v = self.order1[i];
        for w in 0..self.t2.len() {
            if self.used2[w] || !self.compatible(v, w) {
                continue;
            }
            self.used2[w] = true;
            self.chosen.push((v, w));
            let sub = self.cost.sub(self.t1.label(v), self.t2.label(w));
            self.extend(i + 1, acc + sub);
            self.chosen.pop();
            self.used2[w] = false;
        }
        // v unmapped: deletion.
        self.extend(i + 1, acc + self.cost.del(self.t1.label(v)));
    }

    fn compatible(&self, v: NodeId, w: NodeId) -> bool {
        self.chosen
            .iter()
            .all(|&(v2, w2)| self.t1.relation(v, v2) == self.t2.relation(w, w2))
    }
}

/// Classic edit-distance DP over label sequences, using the same cost
/// model as the tree engines.
pub fn string_edit_distance<S: AsRef<str>>(s1: &[S], s2: &[S], cost: &CostModel) -> Cost {
    let n = s2.len();
    let mut prev: Vec<Cost> = vec![0; n + 1];
    for j in 1..=n {
        prev[j] = prev[j - 1] + cost.ins(s2[j - 1].as_ref());
    }
    let mut cur = vec![0; n + 1];
    for a in s1 {
        let a = a.as_ref();
        cur[0] = prev[0] + cost.del(a);
        for j in 1..=n {
            let b = s2[j - 1].as_ref();
            cur[j] = (prev[j] + cost.del(a))
                .min(cur[j - 1] + cost.ins(b))
                .min(prev[j - 1] + cost.sub(a, b));
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::validate_mapping;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn trivial_distances() {
        let unit = CostModel::builtin_unit();
        assert_eq!(
            brute_force_distance(&t("{a}"), &t("{a}"), &unit, 10).unwrap(),
            0
        );
        assert_eq!(
            brute_force_distance(&t("{a}"), &t("{b}"), &unit, 10).unwrap(),
            1
        );
    }

    #[test]
    fn golden_pair() {
        let d = brute_force_distance(
            &t("{c{a}{b}}"),
            &t("{g{d}{e}{f}}"),
            &CostModel::builtin_paper(),
            10,
        )
        .unwrap();
        assert_eq!(d, 5);
    }

    #[test]
    fn guard_refuses_large_inputs() {
        let big = t("{r{a}{b}{c}{d}{e}{f}{g}{h}{i}{j}}");
        assert_eq!(
            brute_force_distance(&big, &t("{a}"), &CostModel::builtin_unit(), 10),
            Err(OracleError::TooLarge {
                size: 11,
                guard: 10
            })
        );
    }

    #[test]
    fn mapping_is_valid_and_optimal() {
        let t1 = t("{c{a}{b}}");
        let t2 = t("{g{d}{e}{f}}");
        let cost = CostModel::builtin_paper();
        let (m, d) = brute_force_mapping(&t1, &t2, &cost, 10).unwrap();
        assert_eq!(d, 5);
        assert!(validate_mapping(&m, &t1, &t2).is_ok());
        assert_eq!(m.cost(&t1, &t2, &cost), 5);
    }

    #[test]
    fn path_trees_match_string_distance() {
        let t1 = t("{a{b{c}}}");
        let t2 = t("{a{d{c}}}");
        let unit = CostModel::builtin_unit();
        let d = brute_force_distance(&t1, &t2, &unit, 10).unwrap();
        assert_eq!(d, string_edit_distance(&["a", "b", "c"], &["a", "d", "c"], &unit));
        assert_eq!(d, 1);
    }

    #[test]
    fn string_edit_examples() {
        let unit = CostModel::builtin_unit();
        assert_eq!(string_edit_distance::<&str>(&[], &["a", "b", "c"], &unit), 3);
        assert_eq!(
            string_edit_distance(&["a", "b", "c"], &["a", "b", "c"], &unit),
            0
        );
    }
}
