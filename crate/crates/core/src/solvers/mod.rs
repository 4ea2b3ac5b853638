//! MESP decision procedures.
//!
//! Every solver takes a [`MespQuery`] and returns a [`MespAnswer`]. A yes
//! answer always carries a witness that has been checked against the
//! distance matrix before it is returned.

mod auto;
mod brute;
mod cluster;
mod disjoint_paths;
mod modular_width;

pub use auto::{minimize_k, solve_auto, solve_auto_with, solve_with, AutoChoice, Caps, SolverKind};
pub use brute::solve_bruteforce;
pub use cluster::solve_distance_to_cluster;
pub use disjoint_paths::solve_distance_to_disjoint_paths;
pub use modular_width::solve_modular_width;

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::distance::DistanceMatrix;
use crate::graph::Graph;
use crate::paths::PathWitness;

/// A graph, its distances, and the eccentricity bound `k`.
#[derive(Clone, Copy, Debug)]
pub struct MespQuery<'a> {
    pub graph: &'a Graph,
    pub dist: &'a DistanceMatrix,
    pub k: u32,
    /// Only honoured by the exhaustive solver, which can otherwise run for a
    /// very long time.
    pub deadline: Option<Instant>,
}

impl<'a> MespQuery<'a> {
    pub fn new(graph: &'a Graph, dist: &'a DistanceMatrix, k: u32) -> Self {
        MespQuery { graph, dist, k, deadline: None }
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }
}

/// Work counters. Under parallel evaluation the counts depend on scheduling;
/// the decision and witness do not.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub guesses: u64,
    pub csc_calls: u64,
    pub paths_checked: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct MespAnswer {
    pub decision: bool,
    pub witness: Option<PathWitness>,
    pub stats: SolveStats,
}

#[derive(Default)]
pub(crate) struct Counters {
    pub guesses: AtomicU64,
    pub csc_calls: AtomicU64,
    pub paths_checked: AtomicU64,
}

impl Counters {
    pub fn guess(&self) {
        self.guesses.fetch_add(1, Ordering::Relaxed);
    }

    pub fn csc(&self) {
        self.csc_calls.fetch_add(1, Ordering::Relaxed);
    }

    pub fn paths(&self, n: u64) {
        self.paths_checked.fetch_add(n, Ordering::Relaxed);
    }

    /// Packages the result, asserting witness validity on a yes.
    pub fn finish(self, q: &MespQuery<'_>, witness: Option<Vec<usize>>, start: Instant) -> MespAnswer {
        let witness = witness.map(PathWitness::new);
        if let Some(w) = &witness {
            assert!(
                w.is_valid_for(q.dist, q.k),
                "solver produced an invalid witness {w} for k = {}",
                q.k
            );
        }
        MespAnswer {
            decision: witness.is_some(),
            witness,
            stats: SolveStats {
                guesses: self.guesses.into_inner(),
                csc_calls: self.csc_calls.into_inner(),
                paths_checked: self.paths_checked.into_inner(),
                elapsed: start.elapsed(),
            },
        }
    }
}

/// `ecc(path) <= k`, given that `path` is already known to be shortest.
pub(crate) fn within(dist: &DistanceMatrix, path: &[usize], k: u32) -> bool {
    (0..dist.n()).all(|v| path.iter().any(|&p| dist.get(v, p) <= k))
}

/// The ecc-0 answer: a shortest path through every vertex exists only when
/// the graph is itself a path.
pub(crate) fn k_zero(g: &Graph) -> Option<Vec<usize>> {
    g.path_order()
}
