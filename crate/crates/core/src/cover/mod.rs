//! Covers by disjoint complete balanced 3-partite subgraphs, the moves that
//! grow them, and the absorbing step that turns an almost-perfect matching
//! into a perfect one.

mod absorb;
mod engine;
mod graph;
mod blocks;
mod link;
mod moves;
mod tripartite;

use thiserror::Error;

use crate::hypergraph::Triple;
use crate::rational::Rational;

pub use absorb::{absorb_leftover, absorbs, build_absorbing_matching, AbsorberParams, AbsorbingMatching, CANDIDATE_LIMIT};
pub use engine::{
    almost_perfect_matching, greedy_tripartite_cover, step, CoverOutcome, EngineParams, EngineRun,
    StallDiagnostics, TraceRow,
};
pub use graph::{greedy_graph_matching, min_degree_subgraph, SimpleGraph};
pub use blocks::{
    find_k3t, find_pairs_sized, find_product_sized, pigeonhole_complete_bipartite,
    tripartite_from_pairs, tripartite_from_product, Bipartite, PIGEONHOLE_LIMIT, SEARCH_BUDGET,
};
pub use link::{
    classify_link, k_sidedness, link_graph_of_pair, link_trichotomy_counts, B320Embedding,
    LinkClass, LinkGraph,
};
pub use moves::{
    all_links, improve_by_links, improve_or_report_extremal, improve_two_sided, rebuild,
    sidedness_profile, MoveKind, MoveResult,
};
pub use tripartite::{CoverViolation, Tripartite, TripartiteCover};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("density {density} is below the required {required}")]
    DensityTooLow { density: Rational, required: Rational },
    #[error("no complete tripartite subgraph found")]
    NotFound,
    #[error("side of size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("vertex sets are not pairwise disjoint")]
    SetsNotDisjoint,
    #[error("hypergraph has no edges")]
    EmptyGraph,
    #[error("no available absorber for {0:?}")]
    AbsorptionFailed(Triple),
    #[error(transparent)]
    Core(#[from] crate::error::Error),
}
