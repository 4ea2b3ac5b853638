use fixedbitset::FixedBitSet;

use super::{Modulator, ModulatorKind};
use crate::graph::Graph;

/// The first induced P3 `(a, b, c)` (centre `b`, `a < c`, `a` and `c`
/// non-adjacent) among kept vertices, scanning centres in ascending order.
pub(crate) fn first_induced_p3(g: &Graph, removed: &FixedBitSet) -> Option<[usize; 3]> {
    for b in 0..g.n() {
        if removed.contains(b) {
            continue;
        }
        let nbrs: Vec<usize> = g
            .neighbors(b)
            .iter()
            .copied()
            .filter(|&w| !removed.contains(w))
            .collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                if !g.has_edge(a, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// A modulator to a cluster graph with at most `budget` vertices, if any.
///
/// Bounded search tree: every induced P3 loses at least one of its three
/// vertices, so branch on each of them.
pub fn find_cluster_modulator(g: &Graph, budget: usize) -> Option<Modulator> {
    let mut removed = FixedBitSet::with_capacity(g.n());
    let mut chosen = Vec::new();
    if branch(g, &mut removed, &mut chosen, budget) {
        Some(Modulator {
            kind: ModulatorKind::Cluster,
            vertices: {
                chosen.sort_unstable();
                chosen
            },
        })
    } else {
        None
    }
}

fn branch(g: &Graph, removed: &mut FixedBitSet, chosen: &mut Vec<usize>, budget: usize) -> bool {
    let Some(p3) = first_induced_p3(g, removed) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for v in p3 {
        removed.insert(v);
        chosen.push(v);
        if branch(g, removed, chosen, budget - 1) {
            return true;
        }
        chosen.pop();
        removed.set(v, false);
    }
    false
}

/// Smallest cluster modulator, trying budgets `0, 1, …, cap`.
pub fn min_cluster_modulator(g: &Graph, cap: usize) -> Option<Modulator> {
    (0..=cap.min(g.n())).find_map(|p| find_cluster_modulator(g, p))
}
