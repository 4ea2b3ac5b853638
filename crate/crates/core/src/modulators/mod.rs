//! Structural parameters and their witnesses.
//!
//! * [`find_cluster_modulator`]: vertices whose removal leaves disjoint cliques.
//! * [`find_disjoint_paths_modulator`]: vertices whose removal leaves disjoint
//!   paths.
//! * [`modular_decomposition`]: the modular decomposition tree, from which the
//!   modular width is read off.

mod cluster;
mod decomposition;
mod disjoint_paths;

pub use cluster::{find_cluster_modulator, min_cluster_modulator};
pub use decomposition::{is_module, modular_decomposition, modular_width, MdNode, MdTree};
pub use disjoint_paths::{find_disjoint_paths_modulator, min_disjoint_paths_modulator};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModulatorKind {
    Cluster,
    DisjointPaths,
}

/// A vertex set whose removal leaves a graph of the given kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulator {
    kind: ModulatorKind,
    vertices: Vec<usize>,
}

impl Modulator {
    /// Wraps a vertex set after checking it against `g`.
    pub fn new(g: &Graph, kind: ModulatorKind, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        let m = Modulator { kind, vertices };
        if !m.is_valid(g) {
            return Err(Error::InvalidModulator(format!(
                "{:?} residual check failed for {:?}",
                kind, m.vertices
            )));
        }
        Ok(m)
    }

    pub fn kind(&self) -> ModulatorKind {
        self.kind
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// Direct inspection of the residual graph `g − X`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let removed = vertex_mask(g.n(), &self.vertices);
        match self.kind {
            ModulatorKind::Cluster => is_cluster_residual(g, &removed),
            ModulatorKind::DisjointPaths => is_paths_residual(g, &removed),
        }
    }
}

pub(crate) fn vertex_mask(n: usize, vertices: &[usize]) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(n);
    for &v in vertices {
        mask.insert(v);
    }
    mask
}

/// No induced P3 among the kept vertices.
pub(crate) fn is_cluster_residual(g: &Graph, removed: &FixedBitSet) -> bool {
    cluster::first_induced_p3(g, removed).is_none()
}

/// Every kept vertex has at most two kept neighbors, and no kept cycle.
pub(crate) fn is_paths_residual(g: &Graph, removed: &FixedBitSet) -> bool {
    let degree_ok = (0..g.n())
        .filter(|&v| !removed.contains(v))
        .all(|v| disjoint_paths::residual_degree(g, removed, v) <= 2);
    degree_ok && disjoint_paths::residual_cycles(g, removed).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validity_predicates() {
        let c5: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let g = Graph::new(5, &c5).unwrap();
        assert!(Modulator::new(&g, ModulatorKind::DisjointPaths, vec![0]).is_ok());
        assert!(Modulator::new(&g, ModulatorKind::DisjointPaths, vec![]).is_err());
        // C5 minus one vertex is P4, which still has an induced P3.
        assert!(Modulator::new(&g, ModulatorKind::Cluster, vec![0]).is_err());
        assert!(Modulator::new(&g, ModulatorKind::Cluster, vec![0, 2]).is_ok());
        assert!(matches!(
            Modulator::new(&g, ModulatorKind::Cluster, vec![7]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }
}
