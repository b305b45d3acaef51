//! Perfect matchings in instances close to the extremal example: cover the
//! vertices with atypical degrees first, then match every remaining `A`
//! vertex to a distinct good pair of `B`.

mod eliminate;
mod pairs;
mod partition;

use thiserror::Error;

use crate::hypergraph::Hypergraph3;
use crate::matching::{verify_matching, Matching};
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

pub use eliminate::{
    eliminate_exceptional, eliminate_strongly_exceptional, inductive_matching, remainder_exceptional, Remainder,
    StrongElimination,
};
pub use pairs::{build_good_pairs, hall_finish, is_good_pair, meets_good_threshold, p1_target, GoodPairSystem};
pub use partition::{
    b_pairs_sparse, cross_degree, exceptional_sets, exchange_reduce, pair_degree_into, prepare_extremal_partition,
    ExceptionalBounds, ExtremalPartition,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("order {0} is not a positive multiple of 3")]
    InvalidOrder(usize),
    #[error("set of size {size} (density {density:?}) is not an extremal certificate")]
    NotExtremal { size: usize, density: Option<Rational> },
    #[error("after rebalancing d3(B) = {density} is not below 6 alpha")]
    DensityTooHigh { density: Rational },
    #[error("exchanges stopped with |S_A| = {s_a}, |S_B| = {s_b}")]
    ExchangeIncomplete { s_a: usize, s_b: usize },
    #[error("{stage} stage found no edge for vertex {vertex}")]
    GreedyFailed { stage: &'static str, vertex: usize },
    #[error("remainder has |A| = {a}, |B| = {b}")]
    RatioBroken { a: usize, b: usize },
    #[error("good-pair graph matches only {matched} of {order} vertices")]
    GoodPairGraphTooSparse { matched: usize, order: usize },
    #[error("sampled pairs failed their degree properties twice")]
    SampleRejected,
    #[error("Hall condition fails: {} pairs see only {} vertices", pairs.len(), neighbourhood.len())]
    HallViolated {
        pairs: Vec<(usize, usize)>,
        neighbourhood: Vec<usize>,
    },
    #[error("assembled matching was rejected: {0}")]
    Rejected(String),
    #[error(transparent)]
    Core(#[from] crate::error::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Prepare,
    Exchange,
    Strong,
    Exceptional,
    GoodPairs,
    Hall,
    Verify,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Prepare => "prepare",
            Stage::Exchange => "exchange",
            Stage::Strong => "strong",
            Stage::Exceptional => "exceptional",
            Stage::GoodPairs => "good_pairs",
            Stage::Hall => "hall",
            Stage::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRow {
    pub stage: Stage,
    pub s_a: usize,
    pub s_b: usize,
    pub x_a: usize,
    pub x_b: usize,
    pub edges_committed: usize,
    pub a_rem: usize,
    pub b_rem: usize,
}

impl StageRow {
    pub const CSV_HEADER: &'static str = "stage,s_a,s_b,x_a,x_b,edges_committed,a_rem,b_rem";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.stage.as_str(),
            self.s_a,
            self.s_b,
            self.x_a,
            self.x_b,
            self.edges_committed,
            self.a_rem,
            self.b_rem
        )
    }
}

pub fn trace_csv(rows: &[StageRow]) -> String {
    let mut out = String::from(StageRow::CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalRun {
    pub matching: Matching,
    pub partition: ExtremalPartition,
    pub bounds: ExceptionalBounds,
    pub swaps: usize,
    pub greedy_fallback: bool,
    pub dirac_holds: bool,
    pub trace: Vec<StageRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StageFailure {
    pub stage: Stage,
    pub error: ExtremalError,
    pub trace: Vec<StageRow>,
}

impl std::fmt::Display for StageFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} stage: {}", self.stage.as_str(), self.error)
    }
}

impl std::error::Error for StageFailure {}

/// prepare → exchange → strongly exceptional → exceptional → good pairs →
/// Hall finish. The union of the partial matchings is verified as perfect
/// before it is returned.
pub fn extremal_perfect_matching(
    h: &Hypergraph3,
    b0: &VertexSet,
    alpha: Rational,
    seed: u64,
) -> Result<ExtremalRun, StageFailure> {
    let mut trace = Vec::new();
    let fail = |stage, error, trace: &Vec<StageRow>| StageFailure {
        stage,
        error,
        trace: trace.clone(),
    };
    let row = |stage, p: &ExtremalPartition, committed: usize, a_rem: usize, b_rem: usize| StageRow {
        stage,
        s_a: p.s_a.len(),
        s_b: p.s_b.len(),
        x_a: p.x_a.len(),
        x_b: p.x_b.len(),
        edges_committed: committed,
        a_rem,
        b_rem,
    };

    let mut p = prepare_extremal_partition(h, b0, alpha).map_err(|e| fail(Stage::Prepare, e, &trace))?;
    let bounds = p.bounds();
    trace.push(row(Stage::Prepare, &p, 0, p.a.len(), p.b.len()));

    let swaps = exchange_reduce(&mut p, h);
    debug_assert!(p.is_consistent(h));
    trace.push(row(Stage::Exchange, &p, 0, p.a.len(), p.b.len()));

    let strong = eliminate_strongly_exceptional(h, &p).map_err(|e| fail(Stage::Strong, e, &trace))?;
    let mut total = strong.matching.clone();
    trace.push(row(Stage::Strong, &p, total.len(), strong.remainder.a.len(), strong.remainder.b.len()));

    let (x_a, x_b) = remainder_exceptional(h, &strong.remainder, alpha);
    let (mx, rem) =
        eliminate_exceptional(h, &strong.remainder, &x_a, &x_b).map_err(|e| fail(Stage::Exceptional, e, &trace))?;
    total.extend_from(&mx).expect("stages use disjoint vertices");
    trace.push(StageRow {
        x_a: x_a.len(),
        x_b: x_b.len(),
        ..row(Stage::Exceptional, &p, total.len(), rem.a.len(), rem.b.len())
    });

    let gps = build_good_pairs(h, &rem, alpha, seed).map_err(|e| fail(Stage::GoodPairs, e, &trace))?;
    trace.push(row(Stage::GoodPairs, &p, total.len(), rem.a.len(), rem.b.len()));

    let finish = hall_finish(h, &rem, &gps).map_err(|e| fail(Stage::Hall, e, &trace))?;
    total.extend_from(&finish).expect("finish uses only the remainder");
    trace.push(row(Stage::Hall, &p, total.len(), 0, 0));

    verify_matching(h, &total, true).map_err(|e| fail(Stage::Verify, ExtremalError::Rejected(e.to_string()), &trace))?;
    Ok(ExtremalRun {
        matching: total,
        partition: p,
        bounds,
        swaps,
        greedy_fallback: strong.greedy_fallback,
        dirac_holds: gps.dirac_holds,
        trace,
    })
}

#[cfg(test)]
mod tests;
