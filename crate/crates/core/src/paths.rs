//! Shortest-path witnesses and exhaustive enumeration of shortest paths.

use std::fmt;
use std::ops::ControlFlow;

use crate::distance::DistanceMatrix;
use crate::graph::Graph;

/// A vertex sequence offered as a shortest path between its endpoints.
///
/// Construction does not validate; use [`PathWitness::is_shortest`] and
/// [`PathWitness::eccentricity`] against a distance matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWitness(Vec<usize>);

impl PathWitness {
    pub fn new(vertices: Vec<usize>) -> Self {
        PathWitness(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Number of vertices (one more than the path length).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_shortest(&self, dist: &DistanceMatrix) -> bool {
        dist.is_shortest_path(&self.0)
    }

    pub fn eccentricity(&self, dist: &DistanceMatrix) -> Option<u32> {
        dist.eccentricity_of_set(&self.0).ok()
    }

    /// Shortest between its endpoints and every vertex within `k` hops.
    pub fn is_valid_for(&self, dist: &DistanceMatrix, k: u32) -> bool {
        self.is_shortest(dist) && self.eccentricity(dist).is_some_and(|e| e <= k)
    }
}

impl fmt::Display for PathWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Calls `visitor` on every shortest path of `g`, single vertices included.
///
/// One depth-first traversal per start vertex, in ascending order; a
/// neighbor `w` extends the prefix `(p_1, …, p_t)` only when
/// `d(p_1, w) = t`, so every prefix stays shortest. With `dedup` each path is
/// reported once, in the direction whose first vertex is smaller.
///
/// Returns the first `Break` value produced by the visitor.
pub fn enumerate_shortest_paths<B>(
    g: &Graph,
    dist: &DistanceMatrix,
    dedup: bool,
    mut visitor: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    for s in 0..g.n() {
        if let ControlFlow::Break(b) = walk_from(g, dist, s, dedup, &mut visitor) {
            return Some(b);
        }
    }
    None
}

/// The traversal rooted at a single start vertex.
pub(crate) fn walk_from<B>(
    g: &Graph,
    dist: &DistanceMatrix,
    s: usize,
    dedup: bool,
    visitor: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let row = dist.row(s);
    let mut path = vec![s];
    // Next neighbor index to try at each depth.
    let mut cursor = vec![0usize];
    visitor(&path)?;
    while let Some(top) = cursor.last_mut() {
        let last = *path.last().expect("path tracks cursor");
        let depth = path.len() as u32;
        let nbrs = g.neighbors(last);
        let mut next = None;
        while *top < nbrs.len() {
            let w = nbrs[*top];
            *top += 1;
            if row[w] == depth {
                next = Some(w);
                break;
            }
        }
        match next {
            Some(w) => {
                path.push(w);
                cursor.push(0);
                if !dedup || s < w {
                    visitor(&path)?;
                }
            }
            None => {
                path.pop();
                cursor.pop();
            }
        }
    }
    ControlFlow::Continue(())
}

/// Exact number of shortest paths with at least two vertices, counted once
/// per unordered endpoint pair and route. Saturates instead of overflowing.
pub fn count_shortest_paths(g: &Graph, dist: &DistanceMatrix) -> u128 {
    let n = g.n();
    let mut total: u128 = 0;
    let mut sigma = vec![0u128; n];
    let mut order: Vec<usize> = (0..n).collect();
    for s in 0..n {
        let row = dist.row(s);
        order.sort_unstable_by_key(|&v| row[v]);
        sigma.iter_mut().for_each(|x| *x = 0);
        sigma[s] = 1;
        for &v in &order[1..] {
            let mut acc: u128 = 0;
            for &w in g.neighbors(v) {
                if row[w] + 1 == row[v] {
                    acc = acc.saturating_add(sigma[w]);
                }
            }
            sigma[v] = acc;
            if s < v {
                total = total.saturating_add(acc);
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(g: &Graph, dedup: bool) -> Vec<Vec<usize>> {
        let d = DistanceMatrix::new(g);
        let mut out = Vec::new();
        enumerate_shortest_paths::<()>(g, &d, dedup, |p| {
            out.push(p.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    #[test]
    fn k2_paths() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(collect(&g, false), vec![vec![0], vec![0, 1], vec![1], vec![1, 0]]);
        assert_eq!(collect(&g, true), vec![vec![0], vec![0, 1], vec![1]]);
    }

    #[test]
    fn p3_contains_full_path() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(collect(&g, true).contains(&vec![0, 1, 2]));
    }

    #[test]
    fn c4_has_four_length_two_paths() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let two: Vec<_> = collect(&g, true).into_iter().filter(|p| p.len() == 3).collect();
        assert_eq!(two, vec![vec![0, 1, 2], vec![0, 3, 2], vec![1, 0, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn visitor_can_stop_early() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let d = DistanceMatrix::new(&g);
        let hit = enumerate_shortest_paths(&g, &d, true, |p| {
            if p.len() == 3 {
                ControlFlow::Break(p.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(hit, Some(vec![0, 1, 2]));
    }

    #[test]
    fn count_matches_enumeration_on_c6() {
        let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = Graph::new(6, &edges).unwrap();
        let d = DistanceMatrix::new(&g);
        let listed = collect(&g, true).into_iter().filter(|p| p.len() > 1).count();
        assert_eq!(count_shortest_paths(&g, &d), listed as u128);
    }

    #[test]
    fn witness_display_and_checks() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let d = DistanceMatrix::new(&g);
        let w = PathWitness::new(vec![0, 1, 2]);
        assert_eq!(w.to_string(), "0 1 2");
        assert!(w.is_valid_for(&d, 0));
        assert!(!PathWitness::new(vec![1]).is_valid_for(&d, 0));
        assert!(PathWitness::new(vec![1]).is_valid_for(&d, 1));
    }
}
