use fixedbitset::FixedBitSet;

use super::{Modulator, ModulatorKind};
use crate::graph::Graph;

pub(crate) fn residual_degree(g: &Graph, removed: &FixedBitSet, v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&w| !removed.contains(w)).count()
}

/// Smallest vertex of every kept component that is a cycle.
///
/// Only meaningful once every kept vertex has at most two kept neighbours:
/// then a component is a cycle iff all its vertices have degree two.
pub(crate) fn residual_cycles(g: &Graph, removed: &FixedBitSet) -> Vec<usize> {
    let n = g.n();
    let mut seen = removed.clone();
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen.contains(s) {
            continue;
        }
        seen.insert(s);
        stack.push(s);
        let mut all_two = true;
        while let Some(v) = stack.pop() {
            let mut d = 0;
            for &w in g.neighbors(v) {
                if removed.contains(w) {
                    continue;
                }
                d += 1;
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
            all_two &= d == 2;
        }
        if all_two {
            reps.push(s);
        }
    }
    reps
}

/// A modulator to a disjoint union of paths with at most `budget` vertices.
///
/// While some kept vertex `u` has three or more kept neighbours, either `u`
/// is deleted or all but two of its neighbours are. Once the maximum degree
/// is two, one vertex per remaining cycle is deleted.
pub fn find_disjoint_paths_modulator(g: &Graph, budget: usize) -> Option<Modulator> {
    let mut removed = FixedBitSet::with_capacity(g.n());
    let mut chosen = Vec::new();
    if branch(g, &mut removed, &mut chosen, budget) {
        chosen.sort_unstable();
        Some(Modulator { kind: ModulatorKind::DisjointPaths, vertices: chosen })
    } else {
        None
    }
}

fn branch(g: &Graph, removed: &mut FixedBitSet, chosen: &mut Vec<usize>, budget: usize) -> bool {
    // Highest residual degree, smallest id on ties.
    let mut pick: Option<(usize, usize)> = None;
    for v in 0..g.n() {
        if removed.contains(v) {
            continue;
        }
        let d = residual_degree(g, removed, v);
        if d >= 3 && pick.map_or(true, |(_, best)| d > best) {
            pick = Some((v, d));
        }
    }

    let Some((u, deg)) = pick else {
        let cycles = residual_cycles(g, removed);
        if cycles.len() > budget {
            return false;
        }
        chosen.extend(cycles);
        return true;
    };
    if budget == 0 {
        return false;
    }

    removed.insert(u);
    chosen.push(u);
    if branch(g, removed, chosen, budget - 1) {
        return true;
    }
    chosen.pop();
    removed.set(u, false);

    let take = deg - 2;
    if take > budget {
        return false;
    }
    let nbrs: Vec<usize> = g
        .neighbors(u)
        .iter()
        .copied()
        .filter(|&w| !removed.contains(w))
        .collect();
    // Choosing `deg - 2` neighbours means leaving out a pair.
    for i in 0..nbrs.len() {
        for j in i + 1..nbrs.len() {
            let subset: Vec<usize> = nbrs
                .iter()
                .enumerate()
                .filter(|&(x, _)| x != i && x != j)
                .map(|(_, &w)| w)
                .collect();
            for &w in &subset {
                removed.insert(w);
            }
            let mark = chosen.len();
            chosen.extend_from_slice(&subset);
            if branch(g, removed, chosen, budget - take) {
                return true;
            }
            chosen.truncate(mark);
            for &w in &subset {
                removed.set(w, false);
            }
        }
    }
    false
}

/// Smallest disjoint-paths modulator, trying budgets `0, 1, …, cap`.
pub fn min_disjoint_paths_modulator(g: &Graph, cap: usize) -> Option<Modulator> {
    (0..=cap.min(g.n())).find_map(|c| find_disjoint_paths_modulator(g, c))
}
