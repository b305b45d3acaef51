//! The cover iteration: greedy initial cover, then the first applicable move
//! each round until the leftover is small, a sparse set is certified, or no
//! move applies.

use num_traits::Zero;

use super::blocks::find_k3t;
use super::moves::{all_links, improve_by_links, improve_or_report_extremal, improve_two_sided, MoveKind, MoveResult};
use super::tripartite::{Tripartite, TripartiteCover};
use crate::error::{Error, Result};
use crate::hypergraph::{degree_accounting, subset_density, Hypergraph3};
use crate::matching::Matching;
use crate::rational::{from_int, Rational};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq)]
pub struct EngineParams {
    pub eta: Rational,
    pub alpha: Rational,
    pub t: usize,
    pub seed: u64,
    pub max_iterations: usize,
    pub min_gain: usize,
}

impl Default for EngineParams {
    fn default() -> Self {
        EngineParams {
            eta: Rational::new(1, 20),
            alpha: Rational::new(3, 10),
            t: 1,
            seed: 0,
            max_iterations: 500,
            min_gain: 1,
        }
    }
}

impl EngineParams {
    pub fn validate(&self) -> Result<()> {
        let one = Rational::from_integer(1);
        if !(Rational::zero() < self.eta && self.eta < self.alpha && self.alpha < one) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < eta < alpha < 1, got eta = {}, alpha = {}",
                self.eta, self.alpha
            )));
        }
        if self.t == 0 {
            return Err(Error::InvalidParameter("class size t must be at least 1".into()));
        }
        if self.min_gain == 0 {
            return Err(Error::InvalidParameter("min_gain must be at least 1".into()));
        }
        Ok(())
    }
}

/// Uncovered-vertex bound `η²n` under which a cover counts as optimal.
fn small_leftover(n: usize, eta: Rational, leftover: usize) -> bool {
    from_int(leftover as u64) < eta * eta * from_int(n as u64)
}

/// Repeatedly takes a complete tripartite of class size `t` inside the
/// still-free part of `allowed`, stopping when none exists or fewer than
/// `η²n` free vertices remain. For `t = 1` this is a greedy maximal matching
/// over the edges of `allowed` ordered by degree sum, then lexicographically.
pub fn greedy_tripartite_cover(h: &Hypergraph3, allowed: &VertexSet, t: usize, eta: Rational) -> TripartiteCover {
    assert!(t >= 1);
    let mut region = allowed.clone();
    let mut members = Vec::new();
    if t == 1 {
        let deg: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
        let mut edges: Vec<_> = h.edges().filter(|e| e.iter().all(|&v| allowed.contains(v))).collect();
        edges.sort_by_key(|e| (deg[e[0]] + deg[e[1]] + deg[e[2]], e[0], e[1], e[2]));
        for e in edges {
            if small_leftover(h.n(), eta, region.len()) {
                break;
            }
            if e.iter().all(|&v| region.contains(v)) {
                for v in e {
                    region.remove(v);
                }
                members.push(Tripartite::from_edge(e));
            }
        }
        return TripartiteCover::from_members(h.n(), t, members).expect("greedy members are disjoint");
    }
    while !small_leftover(h.n(), eta, region.len()) {
        let Some(m) = find_k3t(h, &region, t) else { break };
        for v in m.vertices() {
            region.remove(v);
        }
        members.push(m);
    }
    TripartiteCover::from_members(h.n(), t, members).expect("greedy members are disjoint")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub iter: usize,
    pub cover_vertices: usize,
    pub t: usize,
    pub leftover: usize,
    pub mv: Option<MoveKind>,
    pub gain: usize,
}

impl TraceRow {
    pub const CSV_HEADER: &'static str = "iter,cover_vertices,t,leftover,move,gain";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.iter,
            self.cover_vertices,
            self.t,
            self.leftover,
            self.mv.map_or("none", MoveKind::as_str),
            self.gain
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StallDiagnostics {
    pub iterations: usize,
    pub reason: &'static str,
    pub leftover: usize,
    pub history: Vec<usize>,
    /// Best cover reached, flattened.
    pub best: Matching,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CoverOutcome {
    AlmostPerfect(Matching),
    Extremal { b: VertexSet, density: Rational },
    Stalled(StallDiagnostics),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EngineRun {
    pub outcome: CoverOutcome,
    pub cover: TripartiteCover,
    pub trace: Vec<TraceRow>,
}

impl EngineRun {
    pub fn trace_csv(&self) -> String {
        let mut out = String::from(TraceRow::CSV_HEADER);
        out.push('\n');
        for r in &self.trace {
            out.push_str(&r.to_csv());
            out.push('\n');
        }
        out
    }
}

/// One round: the first of the three moves that applies.
pub fn step(h: &Hypergraph3, cover: &TripartiteCover, params: &EngineParams) -> (Option<MoveKind>, MoveResult) {
    let r = improve_two_sided(h, cover, params);
    if r != MoveResult::NotApplicable {
        return (Some(MoveKind::TwoSided), r);
    }
    let links = all_links(h, cover, params.eta);
    let r = improve_by_links(h, cover, &links, params);
    if r != MoveResult::NotApplicable {
        return (Some(MoveKind::Links), r);
    }
    let r = improve_or_report_extremal(h, cover, &links, params);
    if r != MoveResult::NotApplicable {
        return (Some(MoveKind::B311), r);
    }
    (None, MoveResult::NotApplicable)
}

fn accounting_holds(h: &Hypergraph3, s: &VertexSet) -> bool {
    let acc = degree_accounting(h, s).expect("same universe");
    let direct: u64 = s.iter().map(|v| h.degree(v) as u64).sum();
    acc.degree_sum() == direct
}

/// Runs the cover iteration from the greedy cover of class size `params.t`.
pub fn almost_perfect_matching(h: &Hypergraph3, params: &EngineParams) -> Result<EngineRun> {
    params.validate()?;
    let n = h.n();
    let mut cover = greedy_tripartite_cover(h, &VertexSet::full(n), params.t, params.eta);
    let mut trace = vec![TraceRow {
        iter: 0,
        cover_vertices: cover.covered_count(),
        t: cover.t(),
        leftover: cover.leftover().len(),
        mv: None,
        gain: 0,
    }];
    let mut history = vec![cover.covered_count()];
    for iter in 1..=params.max_iterations {
        debug_assert!(accounting_holds(h, cover.leftover()));
        if small_leftover(n, params.eta, cover.leftover().len()) {
            let m = cover.to_matching();
            return Ok(EngineRun {
                outcome: CoverOutcome::AlmostPerfect(m),
                cover,
                trace,
            });
        }
        let (kind, result) = step(h, &cover, params);
        match result {
            MoveResult::Grown { cover: next, gain } => {
                cover = next;
                history.push(cover.covered_count());
                trace.push(TraceRow {
                    iter,
                    cover_vertices: cover.covered_count(),
                    t: cover.t(),
                    leftover: cover.leftover().len(),
                    mv: kind,
                    gain,
                });
            }
            MoveResult::Extremal { b, density } => {
                debug_assert_eq!(subset_density(h, &b).ok(), Some(density));
                trace.push(TraceRow {
                    iter,
                    cover_vertices: cover.covered_count(),
                    t: cover.t(),
                    leftover: cover.leftover().len(),
                    mv: kind,
                    gain: 0,
                });
                return Ok(EngineRun {
                    outcome: CoverOutcome::Extremal { b, density },
                    cover,
                    trace,
                });
            }
            MoveResult::NotApplicable => {
                trace.push(TraceRow {
                    iter,
                    cover_vertices: cover.covered_count(),
                    t: cover.t(),
                    leftover: cover.leftover().len(),
                    mv: None,
                    gain: 0,
                });
                return Ok(stalled(cover, trace, history, iter, "no move applies"));
            }
        }
    }
    if small_leftover(n, params.eta, cover.leftover().len()) {
        let m = cover.to_matching();
        return Ok(EngineRun {
            outcome: CoverOutcome::AlmostPerfect(m),
            cover,
            trace,
        });
    }
    let iters = params.max_iterations;
    Ok(stalled(cover, trace, history, iters, "iteration limit reached"))
}

fn stalled(
    cover: TripartiteCover,
    trace: Vec<TraceRow>,
    history: Vec<usize>,
    iterations: usize,
    reason: &'static str,
) -> EngineRun {
    let diag = StallDiagnostics {
        iterations,
        reason,
        leftover: cover.leftover().len(),
        history,
        best: cover.to_matching(),
    };
    EngineRun {
        outcome: CoverOutcome::Stalled(diag),
        cover,
        trace,
    }
}
