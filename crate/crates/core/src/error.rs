use thiserror::Error;

use crate::hypergraph::Triple;

/// Errors raised by the basic hypergraph operations and the exact solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("triple ({0}, {1}, {2}) is not strictly increasing")]
    InvalidTriple(usize, usize, usize),
    #[error("vertex {vertex} is out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("subset has {size} vertices, at least {needed} required")]
    SubsetTooSmall { size: usize, needed: usize },
    #[error("vertex sets are not pairwise disjoint")]
    SetsNotDisjoint,
    #[error("vertex set universe {found} does not match hypergraph order {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("invalid order {n}: {reason}")]
    InvalidOrder { n: usize, reason: &'static str },
    #[error("order {n} exceeds the limit {limit} of this routine")]
    OrderTooLarge { n: usize, limit: usize },
    #[error("hypergraph has no edges")]
    EmptyGraph,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edge {0:?} repeats a vertex")]
    DegenerateEdge(Triple),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
