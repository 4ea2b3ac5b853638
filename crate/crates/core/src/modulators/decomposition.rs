use std::fmt;

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

/// A node of the modular decomposition tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MdNode {
    Leaf(usize),
    /// Disjoint union: no edges between children.
    Union(Vec<MdNode>),
    /// Join: every edge between children.
    Join(Vec<MdNode>),
    /// Substitution of the children into a prime pattern; child `i` replaces
    /// pattern vertex `i`.
    Prime { pattern: Graph, children: Vec<MdNode> },
}

impl MdNode {
    pub fn children(&self) -> &[MdNode] {
        match self {
            MdNode::Leaf(_) => &[],
            MdNode::Union(c) | MdNode::Join(c) => c,
            MdNode::Prime { children, .. } => children,
        }
    }

    /// Vertices below this node, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out.sort_unstable();
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            MdNode::Leaf(v) => out.push(*v),
            _ => self.children().iter().for_each(|c| c.collect(out)),
        }
    }

    pub fn min_vertex(&self) -> usize {
        match self {
            MdNode::Leaf(v) => *v,
            // Children are sorted by their smallest vertex.
            _ => self.children()[0].min_vertex(),
        }
    }

    fn width(&self) -> usize {
        let own = match self {
            MdNode::Prime { children, .. } => children.len(),
            _ => 0,
        };
        self.children().iter().map(MdNode::width).fold(own, usize::max)
    }

    fn expand(&self, edges: &mut Vec<(usize, usize)>) -> Vec<usize> {
        let parts: Vec<Vec<usize>> = match self {
            MdNode::Leaf(v) => return vec![*v],
            _ => self.children().iter().map(|c| c.expand(edges)).collect(),
        };
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let linked = match self {
                    MdNode::Union(_) => false,
                    MdNode::Join(_) => true,
                    MdNode::Prime { pattern, .. } => pattern.has_edge(i, j),
                    MdNode::Leaf(_) => unreachable!(),
                };
                if linked {
                    for &u in &parts[i] {
                        for &v in &parts[j] {
                            edges.push((u.min(v), u.max(v)));
                        }
                    }
                }
            }
        }
        parts.concat()
    }
}

impl fmt::Display for MdNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, children) = match self {
            MdNode::Leaf(v) => return write!(f, "(leaf {v})"),
            MdNode::Union(c) => ("union", c),
            MdNode::Join(c) => ("join", c),
            MdNode::Prime { children, .. } => ("prime", children),
        };
        write!(f, "({tag}")?;
        if let MdNode::Prime { pattern, .. } = self {
            write!(f, " (pattern")?;
            for (u, v) in pattern.edges() {
                write!(f, " {u}-{v}")?;
            }
            write!(f, ")")?;
        }
        for c in children {
            write!(f, " {c}")?;
        }
        write!(f, ")")
    }
}

/// Modular decomposition tree of a graph.
///
/// `Display` gives the s-expression form, e.g.
/// `(join (leaf 0) (union (leaf 1) (leaf 2)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdTree {
    root: MdNode,
}

impl MdTree {
    pub fn root(&self) -> &MdNode {
        &self.root
    }

    pub fn modular_width(&self) -> usize {
        self.root.width()
    }

    /// Evaluates the tree as a graph expression; returns edges `(u, v)` with
    /// `u < v` in lexicographic order.
    pub fn expand_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        self.root.expand(&mut edges);
        edges.sort_unstable();
        edges
    }

    /// Checks the tree against `g`: leaves biject with the vertices, every
    /// child is a module, union/join/prime children are linked as claimed,
    /// prime patterns are genuinely prime-shaped, and re-expansion gives
    /// back exactly the edges of `g`.
    pub fn is_sound_for(&self, g: &Graph) -> bool {
        let leaves = self.root.vertices();
        if leaves != (0..g.n()).collect::<Vec<_>>() {
            return false;
        }
        if !node_is_sound(g, &self.root) {
            return false;
        }
        self.expand_edges() == g.edges().collect::<Vec<_>>()
    }
}

impl fmt::Display for MdTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

fn node_is_sound(g: &Graph, node: &MdNode) -> bool {
    let children = node.children();
    if let MdNode::Leaf(_) = node {
        return true;
    }
    if children.len() < 2 {
        return false;
    }
    let sets: Vec<Vec<usize>> = children.iter().map(MdNode::vertices).collect();
    if !sets.iter().all(|s| is_module(g, s)) {
        return false;
    }
    if let MdNode::Prime { pattern, .. } = node {
        let k = pattern.n();
        if k < 3 || pattern.m() == 0 || pattern.m() == k * (k - 1) / 2 {
            return false;
        }
    }
    children.iter().all(|c| node_is_sound(g, c))
}

/// Whether every vertex outside `set` sees all of it or none of it.
pub fn is_module(g: &Graph, set: &[usize]) -> bool {
    let Some(&first) = set.first() else {
        return true;
    };
    let inside = super::vertex_mask(g.n(), set);
    (0..g.n()).filter(|&z| !inside.contains(z)).all(|z| {
        let a = g.has_edge(z, first);
        set.iter().all(|&y| g.has_edge(z, y) == a)
    })
}

/// Modular decomposition of `g`.
///
/// Recursive partitioning: a disconnected part splits into its components
/// (union), a part with disconnected complement into its co-components
/// (join), and otherwise into its maximal strong modules (prime).
pub fn modular_decomposition(g: &Graph) -> MdTree {
    let all: Vec<usize> = (0..g.n()).collect();
    MdTree { root: decompose(g, &all) }
}

/// Shorthand for `modular_decomposition(g).modular_width()`.
pub fn modular_width(g: &Graph) -> usize {
    modular_decomposition(g).modular_width()
}

fn decompose(g: &Graph, set: &[usize]) -> MdNode {
    if set.len() == 1 {
        return MdNode::Leaf(set[0]);
    }
    let comps = components(g, set, false);
    if comps.len() > 1 {
        return MdNode::Union(comps.iter().map(|c| decompose(g, c)).collect());
    }
    let cocomps = components(g, set, true);
    if cocomps.len() > 1 {
        return MdNode::Join(cocomps.iter().map(|c| decompose(g, c)).collect());
    }

    let modules = maximal_modules(g, set);
    let reps: Vec<usize> = modules.iter().map(|m| m[0]).collect();
    let mut edges = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if g.has_edge(reps[i], reps[j]) {
                edges.push((i, j));
            }
        }
    }
    let pattern = Graph::build(reps.len(), &edges).expect("quotient edges are in range");
    MdNode::Prime {
        pattern,
        children: modules.iter().map(|m| decompose(g, m)).collect(),
    }
}

/// Components of `g[set]` (or of its complement), each sorted, ordered by
/// smallest vertex.
fn components(g: &Graph, set: &[usize], complement: bool) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut unvisited = super::vertex_mask(n, set);
    let mut out = Vec::new();
    for &s in set {
        if !unvisited.contains(s) {
            continue;
        }
        unvisited.set(s, false);
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let mut next = unvisited.clone();
            if complement {
                next.difference_with(g.neighbor_set(v));
            } else {
                next.intersect_with(g.neighbor_set(v));
            }
            for w in next.ones() {
                unvisited.set(w, false);
                comp.push(w);
                stack.push(w);
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Maximal proper modules of `g[set]` when both it and its complement are
/// connected. They partition `set`; returned sorted by smallest vertex.
fn maximal_modules(g: &Graph, set: &[usize]) -> Vec<Vec<usize>> {
    let n = g.n();
    let within = super::vertex_mask(n, set);
    let mut assigned = FixedBitSet::with_capacity(n);
    let mut out = Vec::new();
    for &v in set {
        if assigned.contains(v) {
            continue;
        }
        // Every proper module holding v lies inside a single maximal one, so
        // that module is the union of the proper closures of {v, w}.
        let mut module = FixedBitSet::with_capacity(n);
        module.insert(v);
        for &w in set {
            if module.contains(w) || assigned.contains(w) {
                continue;
            }
            if let Some(closure) = pair_closure(g, &within, set.len(), v, w) {
                module.union_with(&closure);
            }
        }
        assigned.union_with(&module);
        out.push(module.ones().collect::<Vec<_>>());
    }
    out.sort_unstable_by_key(|m| m[0]);
    out
}

/// Smallest module of `g[within]` containing `v` and `w`, or `None` when
/// that is all of `within`.
fn pair_closure(g: &Graph, within: &FixedBitSet, size: usize, v: usize, w: usize) -> Option<FixedBitSet> {
    let n = g.n();
    let mut module = FixedBitSet::with_capacity(n);
    module.insert(v);
    let mut count = 1;
    let mut pending = vec![w];
    module.insert(w);
    count += 1;
    while let Some(y) = pending.pop() {
        // z splits the module iff it sees y and v differently.
        let mut split = g.neighbor_set(y).clone();
        split.symmetric_difference_with(g.neighbor_set(v));
        split.intersect_with(within);
        split.difference_with(&module);
        for z in split.ones() {
            module.insert(z);
            pending.push(z);
            count += 1;
        }
        if count == size {
            return None;
        }
    }
    Some(module)
}
