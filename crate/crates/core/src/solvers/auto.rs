use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use super::{
    solve_bruteforce, solve_distance_to_cluster, solve_distance_to_disjoint_paths, solve_modular_width,
    MespAnswer, MespQuery, SolveStats,
};
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::modulators::{
    min_cluster_modulator, min_disjoint_paths_modulator, modular_decomposition, MdTree, Modulator,
};
use crate::paths::count_shortest_paths;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolverKind {
    Auto,
    Brute,
    ModularWidth,
    Cluster,
    DisjointPaths,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Auto => "auto",
            SolverKind::Brute => "brute",
            SolverKind::ModularWidth => "mw",
            SolverKind::Cluster => "cluster",
            SolverKind::DisjointPaths => "paths",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            SolverKind::Auto,
            SolverKind::Brute,
            SolverKind::ModularWidth,
            SolverKind::Cluster,
            SolverKind::DisjointPaths,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| format!("unknown solver `{s}` (expected auto, brute, mw, cluster or paths)"))
    }
}

/// Limits on the structural parameters the solvers are allowed to face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest modular width handed to the modular-width solver.
    pub mw: usize,
    /// Largest cluster modulator searched for.
    pub p: usize,
    /// Largest disjoint-paths modulator searched for.
    pub c: usize,
    /// Largest shortest-path count the exhaustive solver may face.
    pub brute_paths: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { mw: 20, p: 6, c: 5, brute_paths: 1 << 32 }
    }
}

/// Which solver ran and the parameters that were found on the way.
/// `None` means the parameter was not computed or exceeded its cap.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AutoChoice {
    pub kind: Option<SolverKind>,
    pub modular_width: Option<usize>,
    pub cluster_distance: Option<usize>,
    pub paths_distance: Option<usize>,
    pub shortest_paths: Option<u128>,
    /// Time spent computing the decomposition or modulators.
    pub planning: Duration,
}

enum Plan {
    Brute,
    ModularWidth(MdTree),
    Cluster(Modulator),
    DisjointPaths(Modulator),
}

/// Solves with the cheapest structural solver whose parameter is within its
/// cap, falling back to exhaustive search.
pub fn solve_auto(q: &MespQuery<'_>) -> Result<MespAnswer> {
    solve_auto_with(q, &Caps::default()).map(|(a, _)| a)
}

pub fn solve_auto_with(q: &MespQuery<'_>, caps: &Caps) -> Result<(MespAnswer, AutoChoice)> {
    solve_with(q, SolverKind::Auto, caps)
}

/// Runs the requested solver, computing whatever structure it needs.
pub fn solve_with(q: &MespQuery<'_>, kind: SolverKind, caps: &Caps) -> Result<(MespAnswer, AutoChoice)> {
    let (plan, choice) = plan(q.graph, q.dist, q.k, kind, caps)?;
    Ok((run(q, &plan)?, choice))
}

/// Smallest `k` admitting a witness, by binary search between 0 and the
/// eccentricity of vertex 0 (a one-vertex path already achieves the latter).
///
/// The returned answer is the yes answer at `k*`; its stats add up every
/// probe of the search.
pub fn minimize_k(
    g: &Graph,
    dist: &DistanceMatrix,
    kind: SolverKind,
    caps: &Caps,
) -> Result<(u32, MespAnswer, AutoChoice)> {
    let (mut lo, mut hi) = (0, dist.eccentricity(0));
    // The paths solver's cost grows with k, so plan for the worst case.
    let (plan, choice) = plan(g, dist, hi, kind, caps)?;
    let mut best: Option<MespAnswer> = None;
    let mut total = SolveStats::default();
    let mut probe = |k: u32| -> Result<MespAnswer> {
        let ans = run(&MespQuery::new(g, dist, k), &plan)?;
        total.guesses += ans.stats.guesses;
        total.csc_calls += ans.stats.csc_calls;
        total.paths_checked += ans.stats.paths_checked;
        total.elapsed += ans.stats.elapsed;
        Ok(ans)
    };
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let ans = probe(mid)?;
        if ans.decision {
            hi = mid;
            best = Some(ans);
        } else {
            lo = mid + 1;
        }
    }
    let mut answer = match best {
        Some(a) if a.witness.as_ref().is_some_and(|w| w.is_valid_for(dist, lo)) => a,
        _ => probe(lo)?,
    };
    assert!(answer.decision, "a single vertex meets its own eccentricity");
    answer.stats = total;
    Ok((lo, answer, choice))
}

fn run(q: &MespQuery<'_>, plan: &Plan) -> Result<MespAnswer> {
    match plan {
        Plan::Brute => solve_bruteforce(q),
        Plan::ModularWidth(t) => solve_modular_width(q, t),
        Plan::Cluster(m) => solve_distance_to_cluster(q, m),
        Plan::DisjointPaths(m) => solve_distance_to_disjoint_paths(q, m),
    }
}

fn plan(g: &Graph, dist: &DistanceMatrix, k: u32, kind: SolverKind, caps: &Caps) -> Result<(Plan, AutoChoice)> {
    let start = Instant::now();
    let (plan, mut choice) = plan_inner(g, dist, k, kind, caps)?;
    choice.planning = start.elapsed();
    Ok((plan, choice))
}

fn plan_inner(g: &Graph, dist: &DistanceMatrix, k: u32, kind: SolverKind, caps: &Caps) -> Result<(Plan, AutoChoice)> {
    let mut choice = AutoChoice::default();
    let over = |what, value: usize, cap: usize| Error::Capacity { what, value: value as u64, cap: cap as u64 };
    let plan = match kind {
        SolverKind::Brute => Plan::Brute,
        SolverKind::ModularWidth => {
            let t = modular_decomposition(g);
            let w = t.modular_width();
            choice.modular_width = Some(w);
            if w > caps.mw {
                return Err(over("modular width", w, caps.mw));
            }
            Plan::ModularWidth(t)
        }
        SolverKind::Cluster => {
            let m = min_cluster_modulator(g, caps.p)
                .ok_or_else(|| over("distance to cluster", caps.p + 1, caps.p))?;
            choice.cluster_distance = Some(m.size());
            Plan::Cluster(m)
        }
        SolverKind::DisjointPaths => {
            let m = min_disjoint_paths_modulator(g, caps.c)
                .ok_or_else(|| over("distance to disjoint paths", caps.c + 1, caps.c))?;
            choice.paths_distance = Some(m.size());
            Plan::DisjointPaths(m)
        }
        SolverKind::Auto => return plan_auto(g, dist, k, caps),
    };
    choice.kind = Some(kind);
    Ok((plan, choice))
}

/// Cost estimates are the running-time bounds of the three structural
/// algorithms; exhaustive search is used only when none applies.
fn plan_auto(g: &Graph, dist: &DistanceMatrix, k: u32, caps: &Caps) -> Result<(Plan, AutoChoice)> {
    let n = g.n() as f64;
    let mut choice = AutoChoice::default();
    let mut best: Option<(f64, Plan)> = None;
    let mut offer = |cost: f64, plan: Plan| {
        if best.as_ref().map_or(true, |(c, _)| cost < *c) {
            best = Some((cost, plan));
        }
    };

    let t = modular_decomposition(g);
    let w = t.modular_width();
    choice.modular_width = (w <= caps.mw).then_some(w);
    if w <= caps.mw {
        offer(2f64.powi(w as i32) * n.powi(3), Plan::ModularWidth(t));
    }
    if let Some(m) = min_cluster_modulator(g, caps.p) {
        let p = m.size();
        choice.cluster_distance = Some(p);
        offer(2f64.powi(4 * p as i32) * p.max(1) as f64 * n.powi(6), Plan::Cluster(m));
    }
    if let Some(m) = min_disjoint_paths_modulator(g, caps.c) {
        let c = m.size() as i32;
        choice.paths_distance = Some(m.size());
        let kk = k.max(1) as f64;
        offer(2f64.powi(5 * c) * kk.powi(c) * c.max(1) as f64 * n.powi(4), Plan::DisjointPaths(m));
    }

    let plan = match best {
        Some((_, plan)) => plan,
        None => {
            let count = count_shortest_paths(g, dist);
            choice.shortest_paths = Some(count);
            if count > caps.brute_paths {
                return Err(Error::Capacity {
                    what: "shortest path count",
                    value: u64::try_from(count).unwrap_or(u64::MAX),
                    cap: u64::try_from(caps.brute_paths).unwrap_or(u64::MAX),
                });
            }
            Plan::Brute
        }
    };
    choice.kind = Some(match plan {
        Plan::Brute => SolverKind::Brute,
        Plan::ModularWidth(_) => SolverKind::ModularWidth,
        Plan::Cluster(_) => SolverKind::Cluster,
        Plan::DisjointPaths(_) => SolverKind::DisjointPaths,
    });
    Ok((plan, choice))
}
