use std::time::Instant;

use rayon::prelude::*;

use super::{Counters, MespAnswer, MespQuery};
use crate::error::{Error, Result};

const DEADLINE_POLL: u64 = 4096;

/// Checks every shortest path.
///
/// The witness is the first path with eccentricity at most `k` in the
/// canonical order of [`crate::enumerate_shortest_paths`] with deduplication.
/// Start vertices are searched in parallel; the lowest one with a hit wins.
/// Bounded by the number of shortest paths, which is small on graphs with
/// few leaves in their spanning trees.
///
/// Returns [`Error::Timeout`] if the query deadline passes first.
pub fn solve_bruteforce(q: &MespQuery<'_>) -> Result<MespAnswer> {
    let start = Instant::now();
    let counters = Counters::default();
    let found = (0..q.graph.n())
        .into_par_iter()
        .map(|s| search_from(q, s, &counters))
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

fn search_from(q: &MespQuery<'_>, s: usize, counters: &Counters) -> Result<Option<Vec<usize>>> {
    let (g, dist, k) = (q.graph, q.dist, q.k);
    let n = g.n();
    let row = dist.row(s);
    // nearest[d * n + v]: distance from v to the first d + 1 path vertices.
    let mut nearest: Vec<u32> = row.to_vec();
    let mut path = vec![s];
    let mut cursor = vec![0usize];
    let mut checked: u64 = 1;

    let result = 'search: {
        if dist.eccentricity(s) <= k {
            break 'search Ok(Some(path.clone()));
        }
        while let Some(top) = cursor.last_mut() {
            let last = *path.last().expect("path tracks cursor");
            let depth = path.len();
            let nbrs = g.neighbors(last);
            let mut next = None;
            while *top < nbrs.len() {
                let w = nbrs[*top];
                *top += 1;
                if row[w] as usize == depth {
                    next = Some(w);
                    break;
                }
            }
            let Some(w) = next else {
                path.pop();
                cursor.pop();
                nearest.truncate(path.len() * n);
                continue;
            };
            path.push(w);
            cursor.push(0);
            let base = (depth - 1) * n;
            let wrow = dist.row(w);
            let mut ecc = 0;
            for v in 0..n {
                let d = nearest[base + v].min(wrow[v]);
                nearest.push(d);
                ecc = ecc.max(d);
            }
            checked += 1;
            if checked % DEADLINE_POLL == 0 {
                if let Some(deadline) = q.deadline {
                    if Instant::now() >= deadline {
                        break 'search Err(Error::Timeout);
                    }
                }
            }
            if s < w && ecc <= k {
                break 'search Ok(Some(path.clone()));
            }
        }
        Ok(None)
    };
    counters.paths(checked);
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DistanceMatrix, Graph};

    fn run(g: &Graph, k: u32) -> Option<Vec<usize>> {
        let d = DistanceMatrix::new(g);
        solve_bruteforce(&MespQuery::new(g, &d, k))
            .unwrap()
            .witness
            .map(|w| w.into_vec())
    }

    #[test]
    fn path_graph_is_its_own_witness() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(run(&g, 0), Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn c6() {
        let e: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = Graph::new(6, &e).unwrap();
        assert_eq!(run(&g, 0), None);
        assert_eq!(run(&g, 1), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn star() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(run(&g, 0), None);
        // The centre alone already has eccentricity 1.
        assert_eq!(run(&g, 1), Some(vec![0]));
    }

    #[test]
    fn expired_deadline_times_out() {
        // Grid graphs have many shortest paths.
        let side = 9;
        let mut e = Vec::new();
        for r in 0..side {
            for c in 0..side {
                let v = r * side + c;
                if c + 1 < side {
                    e.push((v, v + 1));
                }
                if r + 1 < side {
                    e.push((v, v + side));
                }
            }
        }
        let g = Graph::new(side * side, &e).unwrap();
        let d = DistanceMatrix::new(&g);
        let q = MespQuery::new(&g, &d, 0).with_deadline(Instant::now());
        assert!(matches!(solve_bruteforce(&q), Err(Error::Timeout)));
    }
}
