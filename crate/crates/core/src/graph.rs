//! Simple connected undirected graphs over dense vertex ids `0..n`.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A simple, connected, undirected graph.
///
/// Vertices are `0..n`. Neighbor lists are kept sorted, and an adjacency
/// bitset per vertex gives constant-time edge queries.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Vec<FixedBitSet>,
    m: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list.
    ///
    /// Self-loops and repeated edges (in either orientation) are rejected, as
    /// are disconnected graphs and the empty graph.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let g = Self::build(n, edges)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Same checks as [`Graph::new`] except connectivity. Used for pattern
    /// graphs and residual graphs inside the crate.
    pub(crate) fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if rows[u].contains(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            rows[u].insert(v);
            rows[v].insert(u);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            rows,
            m: edges.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Adjacency row of `v` as a bitset over all vertices.
    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut queue = VecDeque::from([0]);
        seen.insert(0);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen.put(w) {
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// True when the graph itself is a path (every degree at most 2, no cycle).
    pub fn is_path_graph(&self) -> bool {
        self.m + 1 == self.n() && self.adj.iter().all(|l| l.len() <= 2)
    }

    /// The vertices of a path graph in order, starting from the smaller end.
    pub(crate) fn path_order(&self) -> Option<Vec<usize>> {
        if !self.is_path_graph() {
            return None;
        }
        if self.n() == 1 {
            return Some(vec![0]);
        }
        let start = (0..self.n()).find(|&v| self.degree(v) == 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = self.adj[cur].iter().find(|&&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(order)
    }
}
