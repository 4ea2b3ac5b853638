use std::time::Instant;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::{k_zero, Counters, MespAnswer, MespQuery};
use crate::csc::{Candidate, CscInstance, CscTable, ReqSet};
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::modulators::{vertex_mask, Modulator, ModulatorKind};

/// A middle path and the vertices still farther than `k` from it.
type Middle = (Vec<usize>, FixedBitSet);

/// Where a modulator vertex off the path sits relative to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ring {
    One,
    Two,
    Far,
}

#[derive(Clone, Debug)]
struct Guess {
    on_path: Vec<usize>,
    start: usize,
    ring1: Vec<usize>,
    ring2: Vec<usize>,
}

/// Solver parameterised by the distance to a cluster graph.
///
/// Guesses which modulator vertices lie on the path (`L`), which of them
/// comes first, and which of the others are at distance one or two from it.
/// Between consecutive guessed vertices the path runs through at most two
/// clique vertices, chosen jointly by a constrained set cover so that the
/// distance-one and distance-two guesses hold. Up to two clique vertices may
/// precede the first and follow the last guessed vertex.
pub fn solve_distance_to_cluster(q: &MespQuery<'_>, modulator: &Modulator) -> Result<MespAnswer> {
    let start = Instant::now();
    if modulator.kind() != ModulatorKind::Cluster || !modulator.is_valid(q.graph) {
        return Err(Error::InvalidModulator(
            "expected a cluster modulator of this graph".into(),
        ));
    }
    let counters = Counters::default();
    let g = q.graph;

    if q.k == 0 {
        return Ok(counters.finish(q, k_zero(g), start));
    }
    let u_set = modulator.vertices();
    if u_set.is_empty() {
        // A connected cluster graph is one clique; any vertex dominates it.
        let w = if g.n() <= 2 { (0..g.n()).collect() } else { vec![0] };
        return Ok(counters.finish(q, Some(w), start));
    }

    let ctx = Context::new(q, u_set);
    let guesses = ctx.guesses();
    let witness = guesses.par_iter().find_map_first(|guess| {
        counters.guess();
        ctx.try_guess(guess, &counters)
    });
    Ok(counters.finish(q, witness, start))
}

struct Context<'q> {
    g: &'q Graph,
    dist: &'q DistanceMatrix,
    k: u32,
    u_set: &'q [usize],
    in_u: FixedBitSet,
    clique: Vec<usize>,
}

/// A run of clique vertices placed before the first or after the last
/// guessed vertex, stored in path order.
struct Extension {
    vertices: Vec<usize>,
    satisfies: ReqSet,
    covers: FixedBitSet,
}

impl<'q> Context<'q> {
    fn new(q: &MespQuery<'q>, u_set: &'q [usize]) -> Self {
        let g = q.graph;
        let in_u = vertex_mask(g.n(), u_set);
        let mut clique = vec![usize::MAX; g.n()];
        let mut next_id = 0;
        for s in 0..g.n() {
            if in_u.contains(s) || clique[s] != usize::MAX {
                continue;
            }
            // The residual is a disjoint union of cliques, so a clique is a
            // closed neighbourhood restricted to the residual.
            clique[s] = next_id;
            for &w in g.neighbors(s) {
                if !in_u.contains(w) {
                    clique[w] = next_id;
                }
            }
            next_id += 1;
        }
        Context { g, dist: q.dist, k: q.k, u_set, in_u, clique }
    }

    fn in_v(&self, v: usize) -> bool {
        !self.in_u.contains(v)
    }

    /// Canonical guess order: `L` by size then lexicographically, start
    /// ascending, then ring assignments lexicographically.
    fn guesses(&self) -> Vec<Guess> {
        let p = self.u_set.len();
        let allowed: &[Ring] = match self.k {
            0 | 1 => &[Ring::One],
            2 => &[Ring::One, Ring::Two],
            _ => &[Ring::One, Ring::Two, Ring::Far],
        };
        let mut out = Vec::new();
        for size in 1..=p {
            for combo in combinations(p, size) {
                let on_path: Vec<usize> = combo.iter().map(|&i| self.u_set[i]).collect();
                let rest: Vec<usize> = self
                    .u_set
                    .iter()
                    .copied()
                    .filter(|v| !on_path.contains(v))
                    .collect();
                // Rings a vertex can take given its distance to L alone.
                let options: Vec<Vec<Ring>> = rest
                    .iter()
                    .map(|&r| {
                        let d = self.dist.to_set(r, &on_path);
                        allowed
                            .iter()
                            .copied()
                            .filter(|ring| match ring {
                                Ring::One => true,
                                Ring::Two => d >= 2,
                                Ring::Far => d >= 3,
                            })
                            .collect()
                    })
                    .collect();
                for &s in &on_path {
                    for_each_assignment(&options, |rings| {
                        let mut guess = Guess {
                            on_path: on_path.clone(),
                            start: s,
                            ring1: Vec::new(),
                            ring2: Vec::new(),
                        };
                        for (&r, ring) in rest.iter().zip(rings) {
                            match ring {
                                Ring::One => guess.ring1.push(r),
                                Ring::Two => guess.ring2.push(r),
                                Ring::Far => {}
                            }
                        }
                        out.push(guess);
                    });
                }
            }
        }
        out
    }

    fn try_guess(&self, guess: &Guess, counters: &Counters) -> Option<Vec<usize>> {
        let (g, dist, k) = (self.g, self.dist, self.k);
        let order = dist.unique_order(guess.start, &guess.on_path)?;
        debug_assert_eq!(order[0], guess.start);

        // Requirements left open by L itself.
        let mut reqs: Vec<(usize, u32)> = Vec::new();
        for &r in &guess.ring1 {
            if dist.to_set(r, &order) > 1 {
                reqs.push((r, 1));
            }
        }
        for &r in &guess.ring2 {
            if dist.to_set(r, &order) > 2 {
                reqs.push((r, 2));
            }
        }
        let satisfied_by = |vs: &[usize]| -> ReqSet {
            let mut mask = 0;
            for (j, &(r, bound)) in reqs.iter().enumerate() {
                if dist.to_set(r, vs) <= bound {
                    mask |= 1 << j;
                }
            }
            mask
        };

        // Clique vertices between consecutive guessed vertices.
        let mut groups: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut slots: Vec<usize> = Vec::new();
        for (i, pair) in order.windows(2).enumerate() {
            let (x, y) = (pair[0], pair[1]);
            let cands: Vec<Vec<usize>> = match dist.get(x, y) {
                1 => continue,
                2 => g
                    .neighbors(x)
                    .iter()
                    .copied()
                    .filter(|&u| self.in_v(u) && g.has_edge(u, y))
                    .map(|u| vec![u])
                    .collect(),
                3 => {
                    let mut c = Vec::new();
                    for &u in g.neighbors(x).iter().filter(|&&u| self.in_v(u)) {
                        for &v in g.neighbors(y).iter().filter(|&&v| self.in_v(v)) {
                            if g.has_edge(u, v) {
                                c.push(vec![u, v]);
                            }
                        }
                    }
                    c
                }
                _ => return None,
            };
            groups.push(cands);
            slots.push(i);
        }

        if k == 1 {
            // A clique vertex not adjacent to L can only be dominated from
            // inside its own clique, and a clique meets the candidates of at
            // most one pair.
            for z in (0..g.n()).filter(|&z| self.in_v(z)) {
                if dist.to_set(z, &order) < 2 {
                    continue;
                }
                let kz = self.clique[z];
                for group in &mut groups {
                    if group.iter().any(|c| c.iter().any(|&u| self.clique[u] == kz)) {
                        group.retain(|c| c.iter().any(|&u| self.clique[u] == kz));
                    }
                }
            }
        }
        if groups.iter().any(Vec::is_empty) {
            return None;
        }

        let mut inst = CscInstance::new(reqs.len());
        for group in &groups {
            inst.push_group(
                group
                    .iter()
                    .enumerate()
                    .map(|(ci, c)| Candidate::new(ci, satisfied_by(c)))
                    .collect(),
            );
        }
        counters.csc();
        let table = CscTable::build(&inst).ok()?;

        let first = order[0];
        let last = *order.last().expect("L is nonempty");
        let span = dist.get(first, last) as usize;
        let extension = |vertices: Vec<usize>| {
            let mut covers = FixedBitSet::with_capacity(g.n());
            for v in 0..g.n() {
                if dist.to_set(v, &vertices) <= k {
                    covers.insert(v);
                }
            }
            Extension { satisfies: satisfied_by(&vertices), covers, vertices }
        };
        let in_v_nbrs = |x: usize| g.neighbors(x).iter().copied().filter(|&w| self.in_v(w));

        // Prefixes end next to the first guessed vertex, suffixes start next
        // to the last one; each must keep the path shortest on its own.
        let mut prefixes = vec![extension(Vec::new())];
        let mut suffixes = vec![extension(Vec::new())];
        for b in in_v_nbrs(first) {
            if dist.get(b, last) as usize == span + 1 {
                prefixes.push(extension(vec![b]));
                for a in in_v_nbrs(b) {
                    if dist.get(a, last) as usize == span + 2 {
                        prefixes.push(extension(vec![a, b]));
                    }
                }
            }
        }
        for b in in_v_nbrs(last) {
            if dist.get(first, b) as usize == span + 1 {
                suffixes.push(extension(vec![b]));
                for a in in_v_nbrs(b) {
                    if dist.get(first, a) as usize == span + 2 {
                        suffixes.push(extension(vec![b, a]));
                    }
                }
            }
        }

        // Middle path and its uncovered vertices, per CSC target. The outer
        // option is "not computed yet", the inner one "no cover exists".
        let mut middles: Vec<Option<Option<Middle>>> = vec![None; 1usize << reqs.len()];
        let full = inst.full_set();
        for pre in &prefixes {
            for suf in &suffixes {
                let head = pre.vertices.first().copied().unwrap_or(first);
                let tail = suf.vertices.last().copied().unwrap_or(last);
                if dist.get(head, tail) as usize != pre.vertices.len() + span + suf.vertices.len() {
                    continue;
                }
                let target = full & !(pre.satisfies | suf.satisfies);
                let slot = middles[target as usize].get_or_insert_with(|| {
                    let sol = table.solve_for(target)?;
                    let mut path = vec![first];
                    let mut group = 0;
                    for (i, &x) in order.iter().enumerate().skip(1) {
                        if slots.get(group) == Some(&(i - 1)) {
                            path.extend_from_slice(&groups[group][sol.selection[group]]);
                            group += 1;
                        }
                        path.push(x);
                    }
                    let mut open = FixedBitSet::with_capacity(g.n());
                    for v in 0..g.n() {
                        if dist.to_set(v, &path) > k {
                            open.insert(v);
                        }
                    }
                    Some((path, open))
                });
                let Some((middle, open)) = slot else {
                    continue;
                };
                let covered = open
                    .as_slice()
                    .iter()
                    .zip(pre.covers.as_slice())
                    .zip(suf.covers.as_slice())
                    .all(|((&o, &p), &s)| o & !(p | s) == 0);
                if covered {
                    let mut path = pre.vertices.clone();
                    path.extend_from_slice(middle);
                    path.extend_from_slice(&suf.vertices);
                    return Some(path);
                }
            }
        }
        None
    }
}

/// `size`-subsets of `0..p` in lexicographic order.
fn combinations(p: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..size).collect();
    if size > p {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..size).rev().find(|&i| cur[i] < p - size + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Calls `f` with every choice of one option per slot, first slot slowest.
fn for_each_assignment<T: Copy>(options: &[Vec<T>], mut f: impl FnMut(&[T])) {
    if options.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0; options.len()];
    let mut cur: Vec<T> = options.iter().map(|o| o[0]).collect();
    loop {
        f(&cur);
        let Some(i) = (0..options.len()).rev().find(|&i| idx[i] + 1 < options[i].len()) else {
            return;
        };
        idx[i] += 1;
        cur[i] = options[i][idx[i]];
        for j in i + 1..options.len() {
            idx[j] = 0;
            cur[j] = options[j][0];
        }
    }
}
