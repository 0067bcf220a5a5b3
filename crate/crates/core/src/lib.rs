//! Recursive generation of connected multigraphs with exact rational
//! weights.
//!
//! The library builds formal sums of graphs in which every isomorphism
//! class carries the coefficient `1/|Aut|`, the inverse of its
//! automorphism group order. Five families are supported: all connected
//! multigraphs, the biconnected ones, the simple ones, and loopless ones
//! via two independent recursions. Each sum is produced level by level
//! from smaller sums through elementary graph surgery: vertex splitting,
//! loop and edge attachment, and their inverses.
//!
//! All arithmetic is exact. Every result can be cross-checked against the
//! [`oracle`] module, which recomputes class sets and automorphism counts
//! by brute force without touching the recursion.
//!
//! ```
//! use graphgen::engine::{Engine, Family, GenRequest};
//!
//! let mut engine = Engine::new();
//! let cycles = engine
//!     .generate(&GenRequest::new(Family::Biconnected, 5, 1, 0))
//!     .unwrap();
//! let (_, _, coefficient) = cycles.terms().next().unwrap();
//! assert_eq!(coefficient.to_string(), "1/10");
//! ```

pub mod canonical;
pub mod engine;
pub mod graph;
pub mod oracle;
pub mod rational;
pub mod sum;
pub mod transforms;

pub use canonical::{canonicalize, is_isomorphic, CanonicalKey};
pub use engine::{leg_extension, Engine, EngineConfig, EngineError, Family, GenRequest};
pub use graph::{Graph, GraphError, LegLabel, MAX_VERTICES};
pub use oracle::{
    enumerate_classes, halfedge_automorphism_count, labeled_count, verify, ClassReport, EnumSpec,
    FamilyPredicate, LabeledFamily, OracleConfig, OracleError,
};
pub use rational::{Rational, RationalError};
pub use sum::{GraphSum, SumError};
pub use transforms::{
    add_edge, add_edge_adjacent, add_edge_nonadjacent, add_loop, attach_legs, contract_edge,
    distribute_legs, end_slots, erase_edge, erase_loop, q_map, q_map_connected,
    q_map_disconnected, q_map_min_degree, split_connected, split_disconnected,
    split_min_degree, split_vertex, EndSlot, TransformError,
};
