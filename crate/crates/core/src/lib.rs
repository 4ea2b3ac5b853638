//! Minimum eccentricity shortest paths.
//!
//! Given a connected graph and a bound `k`, decide whether some shortest path
//! has every vertex within `k` hops of it, and produce such a path. The crate
//! provides exhaustive enumeration plus three structural solvers that are
//! exponential only in a graph parameter:
//!
//! * modular width ([`solvers::solve_modular_width`]),
//! * distance to a cluster graph ([`solvers::solve_distance_to_cluster`]),
//! * distance to disjoint paths, combined with `k`
//!   ([`solvers::solve_distance_to_disjoint_paths`]).
//!
//! The two modulator-based solvers reduce each structural guess to a
//! [Constrained Set Cover](csc) instance.
//!
//! ```
//! use mesp::{DistanceMatrix, Graph, solvers::{self, MespQuery}};
//!
//! let c6 = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])?;
//! let dist = DistanceMatrix::new(&c6);
//! let answer = solvers::solve_bruteforce(&MespQuery::new(&c6, &dist, 1))?;
//! assert!(answer.decision);
//! assert_eq!(answer.witness.unwrap().vertices(), &[0, 1, 2, 3]);
//! # Ok::<(), mesp::Error>(())
//! ```

pub mod csc;
pub mod distance;
mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod modulators;
pub mod paths;
pub mod solvers;

pub use distance::DistanceMatrix;
pub use error::{Error, Result};
pub use graph::Graph;
pub use paths::{enumerate_shortest_paths, PathWitness};

// The guide's code listings run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/csc.md")]
    mod csc {}
    #[doc = include_str!("../../../book/src/structure.md")]
    mod structure {}
    #[doc = include_str!("../../../book/src/solvers.md")]
    mod solvers {}
}
