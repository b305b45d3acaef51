//! Perfect matchings in 3-uniform hypergraphs under minimum vertex degree
//! conditions: exact solvers, threshold experiments, a tripartite-cover
//! engine with absorption, and a matcher for near-extremal instances.

pub mod constructions;
pub mod cover;
pub mod error;
pub mod exact;
pub mod extremal;
pub mod format;
pub mod hypergraph;
pub mod matching;
pub mod pipeline;
pub mod rational;
pub mod threshold;
pub mod vertex_set;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph3, HypergraphBuilder, Triple};
pub use matching::{verify_matching, Matching, Rejection};
pub use rational::Rational;
pub use vertex_set::VertexSet;
