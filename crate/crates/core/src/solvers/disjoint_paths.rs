use std::time::Instant;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::{within, Counters, MespAnswer, MespQuery};
use crate::csc::{Candidate, CscInstance, CscTable, ReqSet};
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::modulators::{vertex_mask, Modulator, ModulatorKind};

/// Solver parameterised by the distance to disjoint paths together with `k`.
///
/// Guesses the endpoints, the set `L` of modulator vertices on the path, and
/// for every other modulator vertex its exact distance `δ` to the path.
/// Consecutive vertices of `L` are joined by segments through the residual
/// paths; `δ` bounds the distance of every vertex to the final path, which
/// pins down most segments outright, and a constrained set cover picks the
/// rest.
pub fn solve_distance_to_disjoint_paths(q: &MespQuery<'_>, modulator: &Modulator) -> Result<MespAnswer> {
    let start = Instant::now();
    if modulator.kind() != ModulatorKind::DisjointPaths || !modulator.is_valid(q.graph) {
        return Err(Error::InvalidModulator(
            "expected a disjoint-paths modulator of this graph".into(),
        ));
    }
    let counters = Counters::default();
    let n = q.graph.n();
    let ends: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let found = ends
        .par_iter()
        .map(|&(a, b)| endpoints_guess(q, modulator.vertices(), a, b, &counters))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    let witness = match found {
        Some(Err(e)) => return Err(e),
        Some(Ok(w)) => w,
        None => None,
    };
    Ok(counters.finish(q, witness, start))
}

/// Candidate segments of one consecutive pair of `L`.
struct Pair {
    segments: Vec<Vec<usize>>,
    /// `seg_dist[j][v]`: distance from `v` to segment `j`.
    seg_dist: Vec<Vec<u32>>,
}

fn endpoints_guess(
    q: &MespQuery<'_>,
    modulator: &[usize],
    p1: usize,
    p2: usize,
    counters: &Counters,
) -> Result<Option<Vec<usize>>> {
    let (g, dist) = (q.graph, q.dist);
    let mut hat: Vec<usize> = modulator.to_vec();
    hat.extend([p1, p2]);
    hat.sort_unstable();
    hat.dedup();
    let in_hat = vertex_mask(g.n(), &hat);
    let span = dist.get(p1, p2);
    let inner: Vec<usize> = hat
        .iter()
        .copied()
        .filter(|&v| v != p1 && v != p2 && dist.get(p1, v) + dist.get(v, p2) == span)
        .collect();

    for mask in 0u64..1 << inner.len() {
        let mut on_path = vec![p1, p2];
        on_path.extend((0..inner.len()).filter(|&i| mask >> i & 1 == 1).map(|i| inner[i]));
        let Some(order) = dist.unique_order(p1, &on_path) else {
            continue;
        };
        if order.last() != Some(&p2) {
            continue;
        }
        let mut pairs = Vec::with_capacity(order.len().saturating_sub(1));
        for w in order.windows(2) {
            let segments = segments_between(g, dist, &in_hat, w[0], w[1]);
            if segments.is_empty() {
                break;
            }
            let seg_dist = segments
                .iter()
                .map(|s| (0..g.n()).map(|v| dist.to_set(v, s)).collect())
                .collect();
            pairs.push(Pair { segments, seg_dist });
        }
        if pairs.len() + 1 != order.len() {
            continue;
        }
        let off: Vec<usize> = hat.iter().copied().filter(|v| !order.contains(v)).collect();
        let guess = Guess { q, order: &order, off: &off, in_hat: &in_hat, pairs: &pairs };
        if let Some(path) = guess.search_delta(counters)? {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

/// Interiors of shortest `x`–`y` paths that avoid the augmented modulator.
/// Adjacent vertices get the single empty interior.
fn segments_between(g: &Graph, dist: &DistanceMatrix, in_hat: &FixedBitSet, x: usize, y: usize) -> Vec<Vec<usize>> {
    let d = dist.get(x, y) as usize;
    if d == 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(seg) = stack.pop() {
        let tail = seg.last().copied().unwrap_or(x);
        if seg.len() == d - 1 {
            out.push(seg);
            continue;
        }
        let t = seg.len() + 1;
        for &w in g.neighbors(tail).iter().rev() {
            if !in_hat.contains(w) && dist.get(x, w) as usize == t && dist.get(w, y) as usize == d - t {
                let mut next = seg.clone();
                next.push(w);
                stack.push(next);
            }
        }
    }
    out
}

struct Guess<'a, 'q> {
    q: &'a MespQuery<'q>,
    order: &'a [usize],
    /// Augmented modulator vertices off the path.
    off: &'a [usize],
    in_hat: &'a FixedBitSet,
    pairs: &'a [Pair],
}

impl Guess<'_, '_> {
    /// Enumerates `δ` on the off-path modulator vertices.
    fn search_delta(&self, counters: &Counters) -> Result<Option<Vec<usize>>> {
        let (dist, k) = (self.q.dist, self.q.k);
        // Bounds on d(v, P) that hold whichever segments are chosen.
        let mut ranges = Vec::with_capacity(self.off.len());
        for &v in self.off {
            let to_l = dist.to_set(v, self.order);
            let mut lo = to_l;
            let mut hi = to_l;
            for pair in self.pairs {
                let row = pair.seg_dist.iter().map(|r| r[v]);
                lo = lo.min(row.clone().min().unwrap_or(u32::MAX));
                hi = hi.min(row.max().unwrap_or(u32::MAX));
            }
            let (lo, hi) = (lo.max(1), hi.min(k));
            if lo > hi {
                return Ok(None);
            }
            ranges.push((lo, hi));
        }

        let m = self.off.len();
        let mut delta = vec![0u32; m];
        // Depth-first over δ with the 1-Lipschitz condition checked as values
        // are fixed.
        let mut depth = 0;
        let mut started = vec![false; m];
        loop {
            if depth == m {
                counters.guess();
                if let Some(path) = self.evaluate(&delta, counters)? {
                    return Ok(Some(path));
                }
                if m == 0 {
                    return Ok(None);
                }
                depth -= 1;
            }
            let (lo, hi) = ranges[depth];
            let next = if started[depth] { delta[depth] + 1 } else { lo };
            started[depth] = true;
            let v = self.off[depth];
            let value = (next..=hi).find(|&val| {
                (0..depth).all(|j| val.abs_diff(delta[j]) <= dist.get(v, self.off[j]))
            });
            match value {
                Some(val) => {
                    delta[depth] = val;
                    depth += 1;
                    if depth < m {
                        started[depth] = false;
                    }
                }
                None => {
                    started[depth] = false;
                    if depth == 0 {
                        return Ok(None);
                    }
                    depth -= 1;
                }
            }
        }
    }

    fn evaluate(&self, delta: &[u32], counters: &Counters) -> Result<Option<Vec<usize>>> {
        let (g, dist, k) = (self.q.graph, self.q.dist, self.q.k);
        let n = g.n();
        let est: Vec<u32> = (0..n)
            .map(|v| {
                let via_l = dist.to_set(v, self.order);
                self.off
                    .iter()
                    .zip(delta)
                    .map(|(&s, &d)| dist.get(v, s) + d)
                    .fold(via_l, u32::min)
            })
            .collect();

        let mut alive: Vec<Vec<usize>> = self.pairs.iter().map(|p| (0..p.segments.len()).collect()).collect();
        let mut shared: Vec<usize> = Vec::new();
        let mut unclaimed = 0usize;
        for v in (0..n).filter(|&v| !self.in_hat.contains(v) && est[v] > k) {
            if est[v] > k + 1 {
                // Too far from every modulator vertex: v is itself on the path.
                let hosts: Vec<usize> = (0..self.pairs.len())
                    .filter(|&i| self.pairs[i].segments.iter().any(|s| s.contains(&v)))
                    .collect();
                match hosts.as_slice() {
                    [] => return Ok(None),
                    &[i] => alive[i].retain(|&j| self.pairs[i].segments[j].contains(&v)),
                    _ => shared.push(v),
                }
                continue;
            }
            if !self.pairs.iter().any(|p| p.segments.iter().any(|s| s.contains(&v))) {
                unclaimed += 1;
            }
            let hosts: Vec<usize> = (0..self.pairs.len())
                .filter(|&i| self.pairs[i].seg_dist.iter().any(|r| r[v] <= k))
                .collect();
            match hosts.as_slice() {
                [] => return Ok(None),
                &[i] => alive[i].retain(|&j| self.pairs[i].seg_dist[j][v] <= k),
                _ => shared.push(v),
            }
        }
        if unclaimed > 2 * (self.order.len() - 1) || alive.iter().any(Vec::is_empty) {
            return Ok(None);
        }

        // Pairs left with one segment are fixed; the rest go to set cover.
        let mut fixed: Vec<usize> = self.order.to_vec();
        for (pair, live) in self.pairs.iter().zip(&alive) {
            if live.len() == 1 {
                fixed.extend_from_slice(&pair.segments[live[0]]);
            }
        }
        let mut reqs: Vec<(usize, u32)> = Vec::new();
        for (&u, &d) in self.off.iter().zip(delta) {
            if dist.to_set(u, &fixed) > d {
                reqs.push((u, d));
            }
        }
        for &v in &shared {
            if dist.to_set(v, &fixed) > k {
                reqs.push((v, k));
            }
        }

        let open: Vec<usize> = (0..self.pairs.len()).filter(|&i| alive[i].len() > 1).collect();
        let mut inst = CscInstance::new(reqs.len());
        for &i in &open {
            inst.push_group(
                alive[i]
                    .iter()
                    .map(|&j| {
                        let row = &self.pairs[i].seg_dist[j];
                        let mut sat: ReqSet = 0;
                        for (b, &(v, bound)) in reqs.iter().enumerate() {
                            if row[v] <= bound {
                                sat |= 1 << b;
                            }
                        }
                        Candidate::new(j, sat)
                    })
                    .collect(),
            );
        }
        counters.csc();
        let table = CscTable::build(&inst)?;
        let Some(sol) = table.solve_for(inst.full_set()) else {
            return Ok(None);
        };

        let mut choice: Vec<usize> = alive.iter().map(|l| l[0]).collect();
        for (slot, &i) in open.iter().enumerate() {
            choice[i] = inst.groups()[slot][sol.selection[slot]].payload;
        }
        let mut path = vec![self.order[0]];
        for (i, &x) in self.order.iter().enumerate().skip(1) {
            path.extend_from_slice(&self.pairs[i - 1].segments[choice[i - 1]]);
            path.push(x);
        }
        Ok(within(dist, &path, k).then_some(path))
    }
}
