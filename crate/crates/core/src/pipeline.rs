//! End-to-end perfect-matching driver: absorbing matching, cover engine on
//! the rest, absorption of the leftover; the extremal matcher when the cover
//! engine reports a sparse set; the exact solver as an optional last word.

use std::fmt;

use num_traits::Zero;

use crate::cover::{
    absorb_leftover, almost_perfect_matching, build_absorbing_matching, AbsorberParams, CoverOutcome, EngineParams,
    TraceRow,
};
use crate::error::{Error, Result};
use crate::exact::{has_perfect_matching_with_budget, PmVerdict, DEFAULT_NODE_BUDGET};
use crate::extremal::{extremal_perfect_matching, pair_degree_into, StageRow};
use crate::hypergraph::{subset_density, Hypergraph3};
use crate::matching::{verify_matching, Matching};
use crate::rational::{approx_pow, floor_usize, from_int, Rational};
use crate::vertex_set::VertexSet;

/// Orders up to this use the exact fallback unless told otherwise.
pub const FALLBACK_ORDER: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub alpha: Rational,
    pub eta: Rational,
    pub seed: u64,
    /// `None` means "on for `n ≤ 24`".
    pub fallback_exact: Option<bool>,
    pub max_iterations: usize,
    pub exact_budget: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig::with_alpha(Rational::new(3, 10))
    }
}

impl PipelineConfig {
    /// `η` defaults to `α^{3/2}`, rounded down to six decimals.
    pub fn with_alpha(alpha: Rational) -> Self {
        PipelineConfig {
            alpha,
            eta: approx_pow(alpha, 3, 2),
            seed: 0,
            fallback_exact: None,
            max_iterations: 500,
            exact_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let one = Rational::from_integer(1);
        if !(Rational::zero() < self.eta && self.eta <= self.alpha && self.alpha < one) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < eta <= alpha < 1, got eta = {}, alpha = {}",
                self.eta, self.alpha
            )));
        }
        Ok(())
    }

    pub fn fallback_for(&self, n: usize) -> bool {
        self.fallback_exact.unwrap_or(n <= FALLBACK_ORDER)
    }

    /// Absorber size cap `max(1, ⌊ηn⌋)`.
    pub fn absorber_cap(&self, n: usize) -> usize {
        floor_usize(self.eta * from_int(n as u64)).max(1)
    }

    fn engine(&self) -> EngineParams {
        EngineParams {
            eta: self.eta,
            alpha: self.alpha,
            seed: self.seed,
            max_iterations: self.max_iterations,
            ..EngineParams::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PipelineStage {
    Absorber,
    Cover,
    Absorb,
    Extremal,
    Verify,
}

impl PipelineStage {
    pub fn as_str(self) -> &'static str {
        match self {
            PipelineStage::Absorber => "absorber",
            PipelineStage::Cover => "cover",
            PipelineStage::Absorb => "absorb",
            PipelineStage::Extremal => "extremal",
            PipelineStage::Verify => "verify",
        }
    }
}

/// Which route produced the matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Path {
    NonExtremal,
    Extremal,
    ExactFallback,
}

impl Path {
    pub fn as_str(self) -> &'static str {
        match self {
            Path::NonExtremal => "non-extremal",
            Path::Extremal => "extremal",
            Path::ExactFallback => "exact-fallback",
        }
    }
}

/// What the exact solver said after a staged failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactStatus {
    NoPerfect { max_size: Option<usize> },
    Undecided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructuredFailure {
    pub stage: PipelineStage,
    pub detail: String,
    /// Filled when the fallback ran.
    pub exact: Option<ExactStatus>,
    pub cover_trace: Vec<TraceRow>,
    pub extremal_trace: Vec<StageRow>,
}

impl fmt::Display for StructuredFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} stage failed: {}", self.stage.as_str(), self.detail)?;
        match self.exact {
            Some(ExactStatus::NoPerfect { max_size: Some(k) }) => write!(f, "; exact: no perfect matching (maximum {k})"),
            Some(ExactStatus::NoPerfect { max_size: None }) => write!(f, "; exact: no perfect matching"),
            Some(ExactStatus::Undecided) => write!(f, "; exact: undecided"),
            None => Ok(()),
        }
    }
}

impl std::error::Error for StructuredFailure {}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineRun {
    pub matching: Matching,
    pub path: Path,
    pub absorber_edges: usize,
    pub cover_trace: Vec<TraceRow>,
    pub extremal_trace: Vec<StageRow>,
    /// The stage failure that sent the run to the exact solver.
    pub fallback_reason: Option<String>,
}

impl PipelineRun {
    pub fn cover_trace_csv(&self) -> String {
        let mut out = format!("{}\n", TraceRow::CSV_HEADER);
        for r in &self.cover_trace {
            out.push_str(&r.to_csv());
            out.push('\n');
        }
        out
    }
}

/// Grows a lifted sparse set by absorber vertices, lowest degree into the
/// set first, while its density stays below `alpha`.
fn widen_certificate(h: &Hypergraph3, b: &VertexSet, extra: &VertexSet, alpha: Rational) -> VertexSet {
    let mut b = b.clone();
    let mut order: Vec<usize> = extra.to_vec();
    order.sort_by_key(|&v| (pair_degree_into(h, v, &b), v));
    for v in order {
        let mut wider = b.clone();
        wider.insert(v);
        if subset_density(h, &wider).is_ok_and(|d| d < alpha) {
            b = wider;
        }
    }
    b
}

/// Absorbing matching, cover engine on `H − V(M)`, absorption of the
/// leftover; an extremal report switches to the extremal matcher on `H`.
/// Every returned matching has passed `verify_matching(h, _, true)`.
pub fn perfect_matching(h: &Hypergraph3, cfg: &PipelineConfig) -> Result<std::result::Result<PipelineRun, StructuredFailure>> {
    let n = h.n();
    if !n.is_multiple_of(3) {
        return Err(Error::InvalidOrder {
            n,
            reason: "perfect matchings need a multiple of 3",
        });
    }
    cfg.validate()?;
    let staged = structured_attempt(h, cfg);
    let failure = match staged {
        Ok(run) => return Ok(Ok(run)),
        Err(f) => f,
    };
    if !cfg.fallback_for(n) {
        return Ok(Err(failure));
    }
    let exact = match has_perfect_matching_with_budget(h, cfg.exact_budget)? {
        PmVerdict::Perfect(m) => {
            verify_matching(h, &m, true).expect("exact solver output verifies");
            return Ok(Ok(PipelineRun {
                matching: m,
                path: Path::ExactFallback,
                absorber_edges: 0,
                cover_trace: failure.cover_trace,
                extremal_trace: failure.extremal_trace,
                fallback_reason: Some(format!("{}: {}", failure.stage.as_str(), failure.detail)),
            }));
        }
        PmVerdict::NoPerfect { max_size } => ExactStatus::NoPerfect { max_size },
        PmVerdict::Undecided { .. } => ExactStatus::Undecided,
    };
    Ok(Err(StructuredFailure {
        exact: Some(exact),
        ..failure
    }))
}

fn structured_attempt(h: &Hypergraph3, cfg: &PipelineConfig) -> std::result::Result<PipelineRun, StructuredFailure> {
    let n = h.n();
    let fail = |stage, detail: String, cover_trace: Vec<TraceRow>, extremal_trace: Vec<StageRow>| StructuredFailure {
        stage,
        detail,
        exact: None,
        cover_trace,
        extremal_trace,
    };
    if n == 0 {
        return Ok(PipelineRun {
            matching: Matching::new(0),
            path: Path::NonExtremal,
            absorber_edges: 0,
            cover_trace: Vec::new(),
            extremal_trace: Vec::new(),
            fallback_reason: None,
        });
    }
    let absorber = build_absorbing_matching(
        h,
        &AbsorberParams {
            eta: cfg.eta,
            cap: Some(cfg.absorber_cap(n)),
            seed: cfg.seed,
            ..AbsorberParams::default()
        },
    )
    .map_err(|e| fail(PipelineStage::Absorber, e.to_string(), Vec::new(), Vec::new()))?;
    let rest = absorber.matching.covered().complement();
    let (h_rest, map) = h.induced(&rest);
    let run = almost_perfect_matching(&h_rest, &cfg.engine())
        .map_err(|e| fail(PipelineStage::Cover, e.to_string(), Vec::new(), Vec::new()))?;
    let cover_trace = run.trace.clone();
    let partial = match run.outcome {
        CoverOutcome::AlmostPerfect(m) => m,
        CoverOutcome::Stalled(d) => d.best,
        CoverOutcome::Extremal { b, .. } => {
            let lifted = VertexSet::from_iter(n, b.iter().map(|v| map[v]));
            let b0 = widen_certificate(h, &lifted, absorber.matching.covered(), cfg.alpha);
            return match extremal_perfect_matching(h, &b0, cfg.alpha, cfg.seed) {
                Ok(er) => Ok(PipelineRun {
                    matching: er.matching,
                    path: Path::Extremal,
                    absorber_edges: absorber.matching.len(),
                    cover_trace,
                    extremal_trace: er.trace,
                    fallback_reason: None,
                }),
                Err(sf) => Err(fail(PipelineStage::Extremal, sf.to_string(), cover_trace, sf.trace)),
            };
        }
    };
    let partial = partial.lift(&map, n);
    let mut leftover = rest.difference(partial.covered());
    // The cover never leaves a non-multiple of 3, but a stalled best cover
    // is checked anyway before absorption.
    if leftover.len() % 3 != 0 {
        leftover = VertexSet::new(n);
    }
    let m = absorb_leftover(h, &absorber, &leftover, &partial).map_err(|e| {
        fail(
            PipelineStage::Absorb,
            format!("{} leftover vertices: {e}", leftover.len()),
            cover_trace.clone(),
            Vec::new(),
        )
    })?;
    verify_matching(h, &m, true).map_err(|e| fail(PipelineStage::Verify, e.to_string(), cover_trace.clone(), Vec::new()))?;
    Ok(PipelineRun {
        matching: m,
        path: Path::NonExtremal,
        absorber_edges: absorber.matching.len(),
        cover_trace,
        extremal_trace: Vec::new(),
        fallback_reason: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{extremal_construction, extremal_plus, random_3graph};

    #[test]
    fn default_parameters() {
        let c = PipelineConfig::default();
        assert_eq!(c.eta, Rational::new(164_316, 1_000_000));
        assert!(c.validate().is_ok());
        assert!(c.fallback_for(24) && !c.fallback_for(27));
        assert_eq!(c.absorber_cap(60), 9);
    }

    #[test]
    fn rejects_bad_order() {
        let h = Hypergraph3::complete(7);
        assert!(matches!(
            perfect_matching(&h, &PipelineConfig::default()),
            Err(Error::InvalidOrder { .. })
        ));
    }

    #[test]
    fn random_dense_non_extremal_path() {
        let h = random_3graph(60, 0.8, 1).unwrap();
        let run = perfect_matching(&h, &PipelineConfig::default()).unwrap().unwrap();
        assert_eq!(run.path, Path::NonExtremal);
        assert_eq!(verify_matching(&h, &run.matching, true), Ok(()));
    }

    #[test]
    fn extremal_plus_takes_extremal_path() {
        let h = extremal_plus(60).unwrap();
        let run = perfect_matching(&h, &PipelineConfig::default()).unwrap().unwrap();
        assert_eq!(run.path, Path::Extremal);
        assert_eq!(verify_matching(&h, &run.matching, true), Ok(()));
    }

    #[test]
    fn below_threshold_reports_exact_status() {
        let p = extremal_construction(60).unwrap();
        let cfg = PipelineConfig {
            fallback_exact: Some(true),
            ..PipelineConfig::default()
        };
        let f = perfect_matching(&p.h, &cfg).unwrap().unwrap_err();
        assert_eq!(f.exact, Some(ExactStatus::NoPerfect { max_size: Some(19) }));
    }
}
