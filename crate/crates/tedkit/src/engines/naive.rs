//! The quartic-time engine: relax every pair of forests from a chosen
//! enumeration scheme on each tree.

use crate::cost::{Cost, CostModel};
use crate::enumerate::{enumerate, Scheme};
use crate::subforest::ForestIndex;
use crate::tree::{StructuralIndex, Tree};

use super::{cost_prefix, pair_key, EngineRun, StepCounter, SubtreeTable, Sweep};

/// Runs the double loop over the two enumeration sequences of `scheme`
/// (one of the four exhaustive schemes). The inner-loop iteration count
/// is exactly `|L1| * |L2|`; repeated forests are relaxed again rather
/// than skipped so the counter matches that product.
pub fn ted_naive(t1: &Tree, t2: &Tree, cost: &CostModel, scheme: Scheme) -> EngineRun {
    assert!(
        matches!(
            scheme,
            Scheme::Lr | Scheme::Rl | Scheme::PrefixSuffix | Scheme::SuffixPrefix
        ),
        "naive engine takes one of the four exhaustive schemes"
    );
    let fi1 = ForestIndex::build(t1);
    let fi2 = ForestIndex::build(t2);
    let idx1 = StructuralIndex::build(t1);
    let idx2 = StructuralIndex::build(t2);
    let l1 = enumerate(t1, &fi1, &idx1, scheme);
    let l2 = enumerate(t2, &fi2, &idx2, scheme);
    let dir = scheme.dir();

    let mut dt = SubtreeTable::new(t1.len(), t2.len());
    let mut steps = StepCounter::default();
    let mut sweep = Sweep::new(t1, &fi1, t2, &fi2, cost, false);
    for &(f, _) in &l1.items {
        for &(g, _) in &l2.items {
            sweep.relax(&mut dt, &mut steps, f, g, dir);
        }
    }

    assert!(dt.is_complete(), "naive engine left subtree pairs unfilled");
    EngineRun {
        distance: dt.distance(),
        subtree: dt,
        steps,
        forest_memo: Some(sweep.memo),
    }
}

/// Reads the forest-distance grid of root-prefix pairs out of a retained
/// naive run: cell (i, j) is the distance between the first i nodes of
/// `t1` and the first j nodes of `t2` in LR postorder (the layout of the
/// worked distance tables). Cells against the empty forest are the
/// cumulative delete/insert sums.
pub fn root_prefix_table(
    run: &EngineRun,
    t1: &Tree,
    t2: &Tree,
    cost: &CostModel,
) -> Vec<Vec<Cost>> {
    let memo = run
        .forest_memo
        .as_ref()
        .expect("root_prefix_table needs a run with a retained forest memo");
    let fi1 = ForestIndex::build(t1);
    let fi2 = ForestIndex::build(t2);
    let del_pref = cost_prefix(t1, |l| cost.del(l));
    let ins_pref = cost_prefix(t2, |l| cost.ins(l));
    let n1 = t1.len() as u32;
    let n2 = t2.len() as u32;

    let mut grid = vec![vec![0; t2.len() + 1]; t1.len() + 1];
    for i in 0..=n1 {
        for j in 0..=n2 {
            grid[i as usize][j as usize] = if i == 0 {
                ins_pref[j as usize]
            } else if j == 0 {
                del_pref[i as usize]
            } else {
                let f = fi1.canon(i, n1);
                let g = fi2.canon(j, n2);
                *memo
                    .get(&pair_key(f, g))
                    .unwrap_or_else(|| panic!("prefix pair ({i},{j}) missing from naive memo"))
            };
        }
    }
    grid
}
