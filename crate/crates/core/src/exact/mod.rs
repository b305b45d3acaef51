//! Exact matching solvers: a subset DP for small orders and a budgeted
//! branch and bound beyond it.

mod branch;
mod dp;

pub use branch::{max_matching_branch, BranchResult, DEFAULT_NODE_BUDGET};
pub use dp::{has_pm_n6, max_matching_dp, perfect_matching_dp, DP_LIMIT};
pub(crate) use dp::perfect_from_pairs as dp_perfect_from_pairs;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::matching::{verify_matching, Matching};

/// Outcome of a perfect-matching decision.
#[derive(Clone, Debug)]
pub enum PmVerdict {
    Perfect(Matching),
    /// No perfect matching exists. `max_size` is filled when known.
    NoPerfect { max_size: Option<usize> },
    /// The search ran out of budget. Never to be read as "no".
    Undecided { best: Matching },
}

impl PmVerdict {
    pub fn is_perfect(&self) -> bool {
        matches!(self, PmVerdict::Perfect(_))
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, PmVerdict::Undecided { .. })
    }
}

pub fn has_perfect_matching(h: &Hypergraph3) -> Result<PmVerdict> {
    has_perfect_matching_with_budget(h, DEFAULT_NODE_BUDGET)
}

pub fn has_perfect_matching_with_budget(h: &Hypergraph3, budget: u64) -> Result<PmVerdict> {
    let n = h.n();
    if !n.is_multiple_of(3) {
        return Err(Error::InvalidOrder {
            n,
            reason: "perfect matchings need a multiple of 3",
        });
    }
    if n <= DP_LIMIT {
        return Ok(match perfect_matching_dp(h)? {
            Some(m) => {
                debug_assert!(verify_matching(h, &m, true).is_ok());
                PmVerdict::Perfect(m)
            }
            None => PmVerdict::NoPerfect { max_size: None },
        });
    }
    let r = branch::search(h, budget, n / 3);
    Ok(if r.size == n / 3 {
        debug_assert!(verify_matching(h, &r.witness, true).is_ok());
        PmVerdict::Perfect(r.witness)
    } else if r.exact {
        PmVerdict::NoPerfect {
            max_size: Some(r.size),
        }
    } else {
        PmVerdict::Undecided { best: r.witness }
    })
}

/// Maximum matching size by whichever exact method fits `n`; `None` when the
/// branch search exhausts its budget.
pub fn max_matching_size(h: &Hypergraph3, budget: u64) -> Option<(usize, Matching)> {
    if h.n() <= DP_LIMIT {
        return max_matching_dp(h).ok();
    }
    let r = max_matching_branch(h, budget);
    r.exact.then_some((r.size, r.witness))
}
