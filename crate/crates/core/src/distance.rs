//! All-pairs hop distances and the set/path measures built on them.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense `n × n` table of hop counts, filled by one BFS per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut dist = vec![u32::MAX; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for &w in g.neighbors(u) {
                    if row[w] == u32::MAX {
                        row[w] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        DistanceMatrix { n, dist }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// `min_{s ∈ set} d(v, s)`; `u32::MAX` for an empty set.
    pub fn to_set(&self, v: usize, set: &[usize]) -> u32 {
        set.iter().map(|&s| self.get(v, s)).min().unwrap_or(u32::MAX)
    }

    /// Largest distance from any vertex to its nearest member of `set`.
    pub fn eccentricity_of_set(&self, set: &[usize]) -> Result<u32> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut nearest = self.row(set[0]).to_vec();
        for &s in &set[1..] {
            for (slot, &d) in nearest.iter_mut().zip(self.row(s)) {
                *slot = (*slot).min(d);
            }
        }
        Ok(nearest.into_iter().max().unwrap_or(0))
    }

    /// Vertices within `k` hops of `v`, ascending.
    pub fn closed_neighborhood(&self, v: usize, k: u32) -> Vec<usize> {
        (0..self.n).filter(|&u| self.get(v, u) <= k).collect()
    }

    pub fn eccentricity(&self, v: usize) -> u32 {
        self.row(v).iter().copied().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// The only order in which a shortest path starting at `s` can visit
    /// every vertex of `set`, if such a path exists.
    ///
    /// Candidates are sorted by distance from `s`; the order is realisable
    /// exactly when the hop distances along it telescope to `d(s, last)`.
    pub fn unique_order(&self, s: usize, set: &[usize]) -> Option<Vec<usize>> {
        let mut order = set.to_vec();
        order.sort_unstable_by_key(|&v| (self.get(s, v), v));
        order.dedup();
        let Some(&last) = order.last() else {
            return Some(order);
        };
        let mut total = self.get(s, order[0]);
        for pair in order.windows(2) {
            total += self.get(pair[0], pair[1]);
        }
        (total == self.get(s, last)).then_some(order)
    }

    /// A vertex sequence is a shortest path when consecutive vertices are
    /// adjacent and its length equals the distance between its endpoints.
    pub fn is_shortest_path(&self, path: &[usize]) -> bool {
        let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
            return false;
        };
        if path.iter().any(|&v| v >= self.n) {
            return false;
        }
        path.windows(2).all(|p| self.get(p[0], p[1]) == 1)
            && self.get(first, last) as usize == path.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn distances_on_small_graphs() {
        let p4 = DistanceMatrix::new(&path(4));
        assert_eq!(p4.get(0, 3), 3);
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let d = DistanceMatrix::new(&k4);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(d.get(u, v), u32::from(u != v));
            }
        }
        let c6 = DistanceMatrix::new(&cycle(6));
        assert_eq!(c6.get(0, 3), 3);
        assert_eq!(c6.get(0, 4), 2);
    }

    #[test]
    fn set_eccentricity() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(DistanceMatrix::new(&star).eccentricity_of_set(&[0]).unwrap(), 1);
        assert_eq!(DistanceMatrix::new(&path(5)).eccentricity_of_set(&[2]).unwrap(), 2);
        let c6 = DistanceMatrix::new(&cycle(6));
        // Vertex 4 and 5 are each one hop from {0, 1, 2, 3}.
        assert_eq!(c6.eccentricity_of_set(&[0, 1, 2, 3]).unwrap(), 1);
        assert!(matches!(c6.eccentricity_of_set(&[]), Err(Error::EmptySet)));
    }

    #[test]
    fn unique_order_examples() {
        let p5 = DistanceMatrix::new(&path(5));
        assert_eq!(p5.unique_order(0, &[4, 2]), Some(vec![2, 4]));
        let c6 = DistanceMatrix::new(&cycle(6));
        assert_eq!(c6.unique_order(0, &[2, 3]), Some(vec![2, 3]));
        // In C4 both orders of {1, 3} from 0 sum to 3 > d(0, 3) = 1.
        let c4 = DistanceMatrix::new(&cycle(4));
        assert_eq!(c4.unique_order(0, &[1, 3]), None);
        assert_eq!(c4.unique_order(0, &[]), Some(vec![]));
    }

    #[test]
    fn closed_neighborhoods() {
        let p5 = DistanceMatrix::new(&path(5));
        assert_eq!(p5.closed_neighborhood(3, 0), vec![3]);
        assert_eq!(p5.closed_neighborhood(2, 1), vec![1, 2, 3]);
        let c6 = DistanceMatrix::new(&cycle(6));
        assert_eq!(c6.closed_neighborhood(0, 2), vec![0, 1, 2, 4, 5]);
    }

    #[test]
    fn shortest_path_check() {
        let c6 = DistanceMatrix::new(&cycle(6));
        assert!(c6.is_shortest_path(&[0, 1, 2, 3]));
        assert!(!c6.is_shortest_path(&[0, 1, 2, 3, 4]));
        assert!(c6.is_shortest_path(&[5]));
        assert!(!c6.is_shortest_path(&[]));
        assert!(!c6.is_shortest_path(&[0, 2]));
    }
}
