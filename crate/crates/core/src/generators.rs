//! Instance families with known structure, and an exhaustive catalog of
//! small connected graphs.
//!
//! Every generator returns a connected graph together with the structural
//! witness it was built around, so tests and benchmarks can check solvers
//! against a parameter value they did not have to compute.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::modulators::{modular_decomposition, MdNode};

/// A graph with a vertex set claimed to be a modulator of some kind.
#[derive(Clone, Debug)]
pub struct Modulated {
    pub graph: Graph,
    pub modulator: Vec<usize>,
}

/// A graph built by substituting modules into a prime pattern.
#[derive(Clone, Debug)]
pub struct Substituted {
    pub graph: Graph,
    pub pattern: Graph,
    /// `modules[i]` replaces pattern vertex `i`.
    pub modules: Vec<Vec<usize>>,
}

/// A subdivided core graph and an upper bound on its maximum leaf number.
#[derive(Clone, Debug)]
pub struct Subdivided {
    pub graph: Graph,
    pub core: Graph,
    pub leaf_bound: usize,
}

/// Random connected graph: a random spanning tree plus every other pair
/// independently with probability `density`.
pub fn random_connected(n: usize, density: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = random_tree(n, rng);
    let mut present: HashSet<(usize, usize)> = edges.iter().copied().collect();
    for u in 0..n {
        for v in u + 1..n {
            if !present.contains(&(u, v)) && rng.gen_bool(density) {
                present.insert((u, v));
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("a spanning tree keeps it connected")
}

/// Uniform random labelled tree edges `(min, max)` via a random attachment
/// order.
fn random_tree(n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| {
            let parent = order[rng.gen_range(0..i)];
            let child = order[i];
            (parent.min(child), parent.max(child))
        })
        .collect()
}

/// Cliques joined through `p` modulator vertices.
///
/// The `n - p` residual vertices are split into cliques of random size at
/// most `max_clique`; each modulator vertex sees each residual vertex with
/// probability `density` and each other modulator vertex with probability
/// one half. Vertex labels are shuffled.
pub fn cluster_plus_p(n: usize, p: usize, max_clique: usize, density: f64, rng: &mut impl Rng) -> Modulated {
    assert!(p >= 1 && p < n && max_clique >= 1);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let residual: Vec<usize> = label[..n - p].to_vec();
    let modulator: Vec<usize> = label[n - p..].to_vec();

    let mut edges = Vec::new();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut rest = residual.as_slice();
    while !rest.is_empty() {
        let size = rng.gen_range(1..=max_clique.min(rest.len()));
        let (clique, tail) = rest.split_at(size);
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                edges.push((a, b));
            }
        }
        cliques.push(clique.to_vec());
        rest = tail;
    }
    for (i, &u) in modulator.iter().enumerate() {
        for &v in &modulator[i + 1..] {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    for clique in &cliques {
        let mut touched = false;
        for &v in clique {
            for &u in &modulator {
                if rng.gen_bool(density) {
                    edges.push((u, v));
                    touched = true;
                }
            }
        }
        if !touched {
            let u = *modulator.choose(rng).expect("p >= 1");
            let v = *clique.choose(rng).expect("cliques are nonempty");
            edges.push((u, v));
        }
    }
    let graph = connect_through(n, edges, &modulator, rng);
    Modulated { graph, modulator: sorted(modulator) }
}

/// Disjoint paths joined through `c` modulator vertices.
///
/// The `n - c` residual vertices form paths of random length at most
/// `max_path`; each modulator vertex sees each residual vertex with
/// probability `density` and each other modulator vertex with probability
/// one half. With `c = 0` the result is a single path.
pub fn disjoint_paths_plus_c(n: usize, c: usize, max_path: usize, density: f64, rng: &mut impl Rng) -> Modulated {
    assert!(c < n && max_path >= 1);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    if c == 0 {
        let edges: Vec<_> = label.windows(2).map(|w| (w[0], w[1])).collect();
        return Modulated {
            graph: Graph::new(n, &edges).expect("a path is connected"),
            modulator: Vec::new(),
        };
    }
    let residual: Vec<usize> = label[..n - c].to_vec();
    let modulator: Vec<usize> = label[n - c..].to_vec();

    let mut edges = Vec::new();
    let mut rest = residual.as_slice();
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    while !rest.is_empty() {
        let len = rng.gen_range(1..=max_path.min(rest.len()));
        let (piece, tail) = rest.split_at(len);
        edges.extend(piece.windows(2).map(|w| (w[0], w[1])));
        pieces.push(piece.to_vec());
        rest = tail;
    }
    for (i, &u) in modulator.iter().enumerate() {
        for &v in &modulator[i + 1..] {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    for piece in &pieces {
        let mut touched = false;
        for &v in piece {
            for &u in &modulator {
                if rng.gen_bool(density) {
                    edges.push((u, v));
                    touched = true;
                }
            }
        }
        if !touched {
            let u = *modulator.choose(rng).expect("c >= 1");
            let v = *piece.choose(rng).expect("pieces are nonempty");
            edges.push((u, v));
        }
    }
    let graph = connect_through(n, edges, &modulator, rng);
    Modulated { graph, modulator: sorted(modulator) }
}

/// Adds edges from modulator vertices until the graph is connected. Every
/// component is assumed to contain a modulator vertex, so the residual is
/// left untouched.
fn connect_through(n: usize, mut edges: Vec<(usize, usize)>, modulator: &[usize], rng: &mut impl Rng) -> Graph {
    loop {
        let g = Graph::build(n, &edges).expect("generated edges are simple");
        let comp = component_ids(&g);
        let count = comp.iter().max().map_or(0, |&c| c + 1);
        if count <= 1 {
            return g;
        }
        let u = *modulator
            .iter()
            .filter(|&&u| comp[u] == 0)
            .collect::<Vec<_>>()
            .choose(rng)
            .expect("each component holds a modulator vertex");
        let others: Vec<usize> = (0..n).filter(|&v| comp[v] != 0).collect();
        let v = *others.choose(rng).expect("more than one component");
        edges.push((*u, v));
    }
}

fn component_ids(g: &Graph) -> Vec<usize> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut next = 0;
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// A random connected core on `core_n` vertices with `extra` edges beyond a
/// spanning tree, each edge subdivided so the total is `n` vertices.
///
/// A spanning tree of the result drops one edge per independent cycle, and
/// each dropped edge creates at most two leaves besides the core vertices,
/// which bounds the maximum leaf number by `core_n + 2 · cycles`.
pub fn subdivided_core(core_n: usize, extra: usize, n: usize, rng: &mut impl Rng) -> Subdivided {
    assert!(core_n >= 2);
    let mut core_edges = random_tree(core_n, rng);
    let mut present: HashSet<(usize, usize)> = core_edges.iter().copied().collect();
    let mut slots: Vec<(usize, usize)> = (0..core_n)
        .flat_map(|u| (u + 1..core_n).map(move |v| (u, v)))
        .filter(|e| !present.contains(e))
        .collect();
    slots.shuffle(rng);
    for e in slots.into_iter().take(extra) {
        present.insert(e);
        core_edges.push(e);
    }
    core_edges.sort_unstable();
    let core = Graph::new(core_n, &core_edges).expect("core contains a spanning tree");
    assert!(n >= core_n, "n must be at least the core size");

    // Spread the subdivision vertices over the core edges.
    let mut inner = vec![0usize; core_edges.len()];
    for _ in 0..n - core_n {
        inner[rng.gen_range(0..core_edges.len())] += 1;
    }
    let mut edges = Vec::new();
    let mut next = core_n;
    for (&(u, v), &count) in core_edges.iter().zip(&inner) {
        let mut prev = u;
        for _ in 0..count {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    let graph = Graph::new(n, &edges).expect("subdivision preserves connectivity");
    let cycles = core_edges.len() + 1 - core_n;
    Subdivided { graph, core, leaf_bound: core_n + 2 * cycles }
}

/// A random prime graph on `size` vertices (`size >= 4`), found by
/// rejection sampling.
pub fn random_prime_pattern(size: usize, rng: &mut impl Rng) -> Graph {
    assert!(size >= 4, "no prime graph has fewer than four vertices");
    loop {
        let g = random_connected(size, 0.4, rng);
        if matches!(modular_decomposition(&g).root(), MdNode::Prime { children, .. } if children.len() == size) {
            return g;
        }
    }
}

/// Substitutes a random cograph of size `1..=max_module` for each vertex of
/// `pattern`. Modules are cographs, so the modular width is exactly the
/// pattern size when the pattern is prime.
pub fn substitution(pattern: &Graph, max_module: usize, rng: &mut impl Rng) -> Substituted {
    let sizes: Vec<usize> = (0..pattern.n()).map(|_| rng.gen_range(1..=max_module)).collect();
    substitution_with_sizes(pattern, &sizes, rng)
}

/// As [`substitution`] with explicit module sizes.
pub fn substitution_with_sizes(pattern: &Graph, sizes: &[usize], rng: &mut impl Rng) -> Substituted {
    assert_eq!(sizes.len(), pattern.n());
    let n: usize = sizes.iter().sum();
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut modules = Vec::with_capacity(sizes.len());
    let mut at = 0;
    for &s in sizes {
        let mut m = label[at..at + s].to_vec();
        m.sort_unstable();
        modules.push(m);
        at += s;
    }
    let mut edges = Vec::new();
    for m in &modules {
        random_cograph(m, rng, &mut edges);
    }
    for (a, b) in pattern.edges() {
        for &u in &modules[a] {
            for &v in &modules[b] {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(n, &edges).expect("substitution into a connected pattern is connected");
    Substituted { graph, pattern: pattern.clone(), modules }
}

/// Random cograph on `vertices`: split in two, recurse, then union or join.
fn random_cograph(vertices: &[usize], rng: &mut impl Rng, edges: &mut Vec<(usize, usize)>) {
    if vertices.len() < 2 {
        return;
    }
    let cut = rng.gen_range(1..vertices.len());
    let (a, b) = vertices.split_at(cut);
    random_cograph(a, rng, edges);
    random_cograph(b, rng, edges);
    if rng.gen_bool(0.5) {
        for &u in a {
            for &v in b {
                edges.push((u, v));
            }
        }
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// All connected graphs on `n` vertices up to isomorphism (`1 <= n <= 8`),
/// in a fixed order.
///
/// Grown vertex by vertex: every connected graph has a vertex whose removal
/// leaves it connected, so extending each smaller graph by one vertex with
/// every nonempty neighbourhood reaches all of them. Duplicates are removed
/// by a canonical adjacency code.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n), "catalog covers 1..=8 vertices");
    let mut level: Vec<Code> = vec![Code { n: 1, bits: 0 }];
    for size in 2..=n {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for nbrs in 1u64..1 << (size - 1) {
                let mut adj = g.adjacency();
                adj.push(Vec::new());
                for v in 0..size - 1 {
                    if nbrs >> v & 1 == 1 {
                        adj[v].push(size - 1);
                        adj[size - 1].push(v);
                    }
                }
                let code = canonical_code(&adj);
                if seen.insert(code) {
                    next.push(Code { n: size, bits: code });
                }
            }
        }
        next.sort_unstable_by_key(|c| c.bits);
        level = next;
    }
    level.iter().map(Code::graph).collect()
}

/// Upper-triangle adjacency bits of a labelled graph on at most 8 vertices;
/// bit index follows [`pair_index`].
#[derive(Clone, Copy)]
struct Code {
    n: usize,
    bits: u64,
}

impl Code {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.bits >> pair_index(u, v) & 1 == 1 {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        adj
    }

    fn graph(&self) -> Graph {
        let adj = self.adjacency();
        let edges: Vec<_> = (0..self.n)
            .flat_map(|u| adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        Graph::new(self.n, &edges).expect("catalog graphs are connected")
    }
}

fn pair_index(u: usize, v: usize) -> usize {
    // Column-major over v, so codes of graphs grown by one vertex keep their
    // low bits.
    v * (v - 1) / 2 + u
}

/// The smallest code over all relabellings that respect the colour
/// refinement order. Vertices in different refined classes can never be
/// swapped by an isomorphism, so only permutations within classes are tried.
fn canonical_code(adj: &[Vec<usize>]) -> u64 {
    let n = adj.len();
    let colour = refine(adj);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_colour: Vec<(usize, usize)> = (0..n).map(|v| (colour[v], v)).collect();
    by_colour.sort_unstable();
    for (c, v) in by_colour {
        match cells.last_mut() {
            Some(cell) if colour[cell[0]] == c => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut matrix = vec![[false; 8]; n];
    for (u, list) in adj.iter().enumerate() {
        for &v in list {
            matrix[u][v] = true;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut best = u64::MAX;
    permute_cells(&cells, 0, &mut order, &matrix, &mut best);
    best
}

fn permute_cells(cells: &[Vec<usize>], ci: usize, order: &mut Vec<usize>, matrix: &[[bool; 8]], best: &mut u64) {
    let Some(cell) = cells.get(ci) else {
        let mut code = 0u64;
        for j in 0..order.len() {
            for i in 0..j {
                if matrix[order[i]][order[j]] {
                    code |= 1 << pair_index(i, j);
                }
            }
        }
        *best = (*best).min(code);
        return;
    };
    let mut cell = cell.clone();
    let len = cell.len();
    heap_permutations(&mut cell, len, &mut |perm| {
        let mark = order.len();
        order.extend_from_slice(perm);
        permute_cells(cells, ci + 1, order, matrix, best);
        order.truncate(mark);
    });
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        f(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, f);
        let j = if k % 2 == 0 { i } else { 0 };
        items.swap(j, k - 1);
    }
}

/// Stable colour refinement; colours are ranks of signatures, so they do not
/// depend on the input labelling.
fn refine(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut colour: Vec<usize> = adj.iter().map(Vec::len).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = adj[v].iter().map(|&w| colour[w]).collect();
                s.sort_unstable();
                (colour[v], s)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let rank: HashMap<&(usize, Vec<usize>), usize> =
            distinct.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let next: Vec<usize> = sigs.iter().map(|s| rank[s]).collect();
        let classes_before = {
            let mut c = colour.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        if distinct.len() == classes_before {
            return next;
        }
        colour = next;
    }
}
