use std::ops::ControlFlow;
use std::time::Instant;

use super::{within, Counters, MespAnswer, MespQuery};
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::modulators::{MdNode, MdTree};
use crate::paths::enumerate_shortest_paths;

/// Solver driven by the top of the modular decomposition.
///
/// * Leaf root: the single vertex.
/// * Join root: the graph itself if it is a path, otherwise one edge between
///   two join sides, which dominates everything.
/// * Prime root: a good path needs at most one vertex per child module and
///   any representative will do, so it suffices to try every shortest path
///   of the pattern with each module replaced by its smallest vertex.
///
/// `tree` must be the decomposition of `q.graph`.
pub fn solve_modular_width(q: &MespQuery<'_>, tree: &MdTree) -> Result<MespAnswer> {
    let start = Instant::now();
    let counters = Counters::default();
    let witness = match tree.root() {
        MdNode::Leaf(v) => Some(vec![*v]),
        MdNode::Union(_) => return Err(Error::Disconnected),
        MdNode::Join(children) => {
            if let Some(order) = q.graph.path_order() {
                Some(order)
            } else if q.k >= 1 {
                let (a, b) = (children[0].min_vertex(), children[1].min_vertex());
                Some(vec![a.min(b), a.max(b)])
            } else {
                None
            }
        }
        MdNode::Prime { pattern, children } => {
            let reps: Vec<usize> = children.iter().map(MdNode::min_vertex).collect();
            let pattern_dist = DistanceMatrix::new(pattern);
            let mut lifted = Vec::with_capacity(reps.len());
            let mut tried = 0;
            let hit = enumerate_shortest_paths(pattern, &pattern_dist, true, |pi| {
                tried += 1;
                lifted.clear();
                lifted.extend(pi.iter().map(|&i| reps[i]));
                if q.dist.is_shortest_path(&lifted) && within(q.dist, &lifted, q.k) {
                    ControlFlow::Break(lifted.clone())
                } else {
                    ControlFlow::Continue(())
                }
            });
            counters.paths(tried);
            hit
        }
    };
    Ok(counters.finish(q, witness, start))
}
