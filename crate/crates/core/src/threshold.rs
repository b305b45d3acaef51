//! The minimum-degree threshold and its verification at small orders.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use crate::constructions::random_min_degree;
use crate::error::{Error, Result};
use crate::exact::{has_perfect_matching, PmVerdict};
use crate::hypergraph::{binom2, triple_unrank, Hypergraph3};

/// `C(n−1,2) − C(2n/3,2) + 1`.
pub fn threshold(n: usize) -> Result<u64> {
    if n < 3 || !n.is_multiple_of(3) {
        return Err(Error::InvalidOrder {
            n,
            reason: "expected a positive multiple of 3",
        });
    }
    let n = n as u64;
    Ok(binom2(n - 1) - binom2(2 * n / 3) + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled => "sampled",
        }
    }
}

/// Counts over the instances with `δ₁ ≥ tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdRow {
    pub tau: usize,
    pub examined: u64,
    pub pm_count: u64,
    pub counterexamples: u64,
}

#[derive(Clone, Debug)]
pub struct ThresholdReport {
    pub n: usize,
    pub formula: u64,
    pub mode: Mode,
    pub rows: Vec<ThresholdRow>,
    /// Largest δ₁ seen on an instance without a perfect matching.
    pub verified_floor: Option<usize>,
    pub floor_witness: Option<Hypergraph3>,
    /// Smallest τ such that every examined instance with δ₁ ≥ τ had one.
    pub verified_ceiling: Option<usize>,
    /// Instances with δ₁ ≥ the tested τ and no perfect matching.
    pub counterexamples: Vec<Hypergraph3>,
    pub undecided: u64,
    pub runtime_ms: u128,
}

impl ThresholdReport {
    pub fn csv_header() -> &'static str {
        "n,tau,mode,examined,pm_count,counterexamples,runtime_ms"
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(Self::csv_header());
        s.push('\n');
        for r in &self.rows {
            writeln!(
                s,
                "{},{},{},{},{},{},{}",
                self.n,
                r.tau,
                self.mode.as_str(),
                r.examined,
                r.pm_count,
                r.counterexamples,
                self.runtime_ms
            )
            .unwrap();
        }
        s
    }

    /// For exhaustive reports this is `m₁(3,n)`.
    pub fn exact_threshold(&self) -> Option<usize> {
        match self.mode {
            Mode::Exhaustive => self.verified_ceiling,
            Mode::Sampled => None,
        }
    }
}

const N6_TRIPLES: usize = 20;
const N6_MAX_DEGREE: usize = 10;

#[derive(Clone)]
struct N6Tally {
    total: [u64; N6_MAX_DEGREE + 1],
    no_pm: [u64; N6_MAX_DEGREE + 1],
    first_no_pm: [Option<u32>; N6_MAX_DEGREE + 1],
}

impl N6Tally {
    fn new() -> Self {
        N6Tally {
            total: [0; N6_MAX_DEGREE + 1],
            no_pm: [0; N6_MAX_DEGREE + 1],
            first_no_pm: [None; N6_MAX_DEGREE + 1],
        }
    }

    fn merge(mut self, other: N6Tally) -> N6Tally {
        for d in 0..=N6_MAX_DEGREE {
            self.total[d] += other.total[d];
            self.no_pm[d] += other.no_pm[d];
            self.first_no_pm[d] = match (self.first_no_pm[d], other.first_no_pm[d]) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        self
    }
}

fn n6_tables() -> ([u32; 6], [(usize, u32); N6_TRIPLES]) {
    let mut incidence = [0u32; 6];
    let mut pair_of = [(0usize, 0u32); N6_TRIPLES];
    for (r, slot) in pair_of.iter_mut().enumerate() {
        let [a, b, c] = triple_unrank(r as u64);
        for v in [a, b, c] {
            incidence[v] |= 1 << r;
        }
        *slot = (a, (1 << b) | (1 << c));
    }
    (incidence, pair_of)
}

fn tally_range(lo: u32, hi: u32) -> N6Tally {
    let (incidence, pair_of) = n6_tables();
    let mut t = N6Tally::new();
    let mut pairs: Vec<Vec<u32>> = vec![Vec::new(); 6];
    for mask in lo..hi {
        let delta = incidence
            .iter()
            .map(|&inc| (mask & inc).count_ones() as usize)
            .min()
            .unwrap();
        for p in pairs.iter_mut() {
            p.clear();
        }
        let mut bits = mask;
        while bits != 0 {
            let r = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (v, pm) = pair_of[r];
            pairs[v].push(pm);
        }
        t.total[delta] += 1;
        if crate::exact::dp_perfect_from_pairs(6, &pairs).is_none() {
            t.no_pm[delta] += 1;
            t.first_no_pm[delta].get_or_insert(mask);
        }
    }
    t
}

fn mask_to_graph(mask: u32) -> Hypergraph3 {
    Hypergraph3::from_fn(6, |[a, b, c]| {
        let r = crate::hypergraph::triple_rank(a, b, c).unwrap();
        mask >> r & 1 == 1
    })
}

fn in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Every 3-graph on 6 vertices, decided by the subset DP.
pub fn exhaustive_verify_n6() -> ThresholdReport {
    exhaustive_verify_n6_with_workers(None)
}

pub fn exhaustive_verify_n6_with_workers(workers: Option<usize>) -> ThresholdReport {
    const CHUNK: u32 = 1 << 14;
    let start = Instant::now();
    let total: u32 = 1 << N6_TRIPLES;
    let tally = in_pool(workers, || {
        (0..total / CHUNK)
            .into_par_iter()
            .map(|i| tally_range(i * CHUNK, (i + 1) * CHUNK))
            .reduce(N6Tally::new, N6Tally::merge)
    });

    let mut rows = Vec::new();
    for tau in 0..=N6_MAX_DEGREE {
        let examined: u64 = tally.total[tau..].iter().sum();
        let bad: u64 = tally.no_pm[tau..].iter().sum();
        rows.push(ThresholdRow {
            tau,
            examined,
            pm_count: examined - bad,
            counterexamples: bad,
        });
    }
    let floor = (0..=N6_MAX_DEGREE).rev().find(|&d| tally.no_pm[d] > 0);
    let ceiling = rows
        .iter()
        .find(|r| r.counterexamples == 0)
        .map(|r| r.tau);
    ThresholdReport {
        n: 6,
        formula: threshold(6).unwrap(),
        mode: Mode::Exhaustive,
        rows,
        verified_floor: floor,
        floor_witness: floor.and_then(|d| tally.first_no_pm[d]).map(mask_to_graph),
        verified_ceiling: ceiling,
        counterexamples: Vec::new(),
        undecided: 0,
        runtime_ms: start.elapsed().as_millis(),
    }
}

/// Instances from `random_min_degree(n, tau, seed + i)` for `i < samples`.
/// Evidence only: nothing is claimed about unexamined graphs.
pub fn sampled_verify(n: usize, tau: usize, samples: u64, seed: u64) -> Result<ThresholdReport> {
    sampled_verify_with_workers(n, tau, samples, seed, None)
}

pub fn sampled_verify_with_workers(
    n: usize,
    tau: usize,
    samples: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<ThresholdReport> {
    let formula = threshold(n)?;
    let start = Instant::now();
    let outcomes: Vec<Result<(Hypergraph3, PmVerdict)>> = in_pool(workers, || {
        (0..samples)
            .into_par_iter()
            .map(|i| {
                let h = random_min_degree(n, tau, seed.wrapping_add(i))?;
                let v = has_perfect_matching(&h)?;
                Ok((h, v))
            })
            .collect()
    });
    let mut pm_count = 0;
    let mut undecided = 0;
    let mut counterexamples = Vec::new();
    for o in outcomes {
        let (h, v) = o?;
        match v {
            PmVerdict::Perfect(_) => pm_count += 1,
            PmVerdict::NoPerfect { .. } => counterexamples.push(h),
            PmVerdict::Undecided { .. } => undecided += 1,
        }
    }
    let floor = counterexamples
        .iter()
        .map(|h| h.degree_profile().min_degree)
        .max();
    let floor_witness = floor.and_then(|d| {
        counterexamples
            .iter()
            .find(|h| h.degree_profile().min_degree == d)
            .cloned()
    });
    let ceiling = (counterexamples.is_empty() && undecided == 0).then_some(tau);
    Ok(ThresholdReport {
        n,
        formula,
        mode: Mode::Sampled,
        rows: vec![ThresholdRow {
            tau,
            examined: samples,
            pm_count,
            counterexamples: counterexamples.len() as u64,
        }],
        verified_floor: floor,
        floor_witness,
        verified_ceiling: ceiling,
        counterexamples,
        undecided,
        runtime_ms: start.elapsed().as_millis(),
    })
}
