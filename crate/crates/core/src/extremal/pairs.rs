//! Good pairs of `B″` and the bipartite finish matching each `a ∈ A″` to a
//! distinct good pair.

use std::cmp::Ordering;
use std::collections::VecDeque;

use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::eliminate::Remainder;
use super::ExtremalError;
use crate::hypergraph::{Hypergraph3, Triple};
use crate::matching::Matching;
use crate::rational::{pow_cmp, ratio, Rational};

/// `frac ≥ max(1 − 40α^{1/4}, 1/2)`, exactly.
pub fn meets_good_threshold(frac: Rational, alpha: Rational) -> bool {
    if frac < Rational::new(1, 2) {
        return false;
    }
    let gap = (Rational::from_integer(1) - frac) / 40;
    gap <= Rational::from_integer(0) || pow_cmp(gap, 4, alpha) != Ordering::Greater
}

/// Number of `a ∈ A″` with `{a, x, y}` an edge.
fn pair_support(h: &Hypergraph3, x: usize, y: usize, a: &[usize]) -> usize {
    a.iter().filter(|&&v| h.has_edge(v, x, y)).count()
}

pub fn is_good_pair(h: &Hypergraph3, x: usize, y: usize, a: &[usize], alpha: Rational) -> bool {
    !a.is_empty() && meets_good_threshold(ratio(pair_support(h, x, y, a) as u64, a.len() as u64), alpha)
}

/// `min(⌈100α^{1/4}·m⌉, ⌊m/2⌋)`.
pub fn p1_target(alpha: Rational, m: usize) -> usize {
    (0..=m / 2)
        .find(|&k| m == 0 || pow_cmp(ratio(k as u64, 100 * m as u64), 4, alpha) != Ordering::Less)
        .unwrap_or(m / 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPairSystem {
    pub p1: Vec<(usize, usize)>,
    pub p2: Vec<(usize, usize)>,
    /// Whether the good-pair graph on `B″ ∖ V(P₁)` has minimum degree at
    /// least half its order.
    pub dirac_holds: bool,
    /// Seed of the accepted `P₁` draw.
    pub seed: u64,
}

impl GoodPairSystem {
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.p1.iter().chain(&self.p2).copied()
    }
}

fn p1_property(h: &Hypergraph3, p1: &[(usize, usize)], a: &[usize]) -> bool {
    if p1.is_empty() {
        return true;
    }
    let per_a = a
        .iter()
        .all(|&v| 4 * p1.iter().filter(|&&(x, y)| h.has_edge(v, x, y)).count() >= 3 * p1.len());
    let per_pair = p1.iter().all(|&(x, y)| 4 * pair_support(h, x, y, a) >= 3 * a.len());
    per_a && per_pair
}

/// Pairs up `B″` into good pairs: a maximum matching of the good-pair graph
/// must be perfect; `P₁` is a seeded random subset of it of the target
/// size, redrawn once with `seed + 1` if its two sampling properties fail.
pub fn build_good_pairs(h: &Hypergraph3, rem: &Remainder, alpha: Rational, seed: u64) -> Result<GoodPairSystem, ExtremalError> {
    if !rem.ratio_holds() {
        return Err(ExtremalError::RatioBroken {
            a: rem.a.len(),
            b: rem.b.len(),
        });
    }
    let a = rem.a.to_vec();
    let b = rem.b.to_vec();
    let m = b.len();
    let mut g: UnGraph<usize, ()> = UnGraph::with_capacity(m, 0);
    let nodes: Vec<NodeIndex> = b.iter().map(|&v| g.add_node(v)).collect();
    for i in 0..m {
        for j in i + 1..m {
            if is_good_pair(h, b[i], b[j], &a, alpha) {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mm = maximum_matching(&g);
    let mut pairs: Vec<(usize, usize)> = mm.edges().map(|(x, y)| (g[x].min(g[y]), g[x].max(g[y]))).collect();
    if 2 * pairs.len() != m {
        return Err(ExtremalError::GoodPairGraphTooSparse {
            matched: 2 * pairs.len(),
            order: m,
        });
    }
    pairs.sort_unstable();
    let target = p1_target(alpha, m);
    for attempt in 0..2 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed + attempt);
        let mut shuffled = pairs.clone();
        shuffled.shuffle(&mut rng);
        let p2 = shuffled.split_off(target);
        let p1 = shuffled;
        if !p1_property(h, &p1, &a) {
            continue;
        }
        let rest: Vec<NodeIndex> = (0..m)
            .filter(|&i| p2.iter().any(|&(x, y)| x == b[i] || y == b[i]))
            .map(|i| nodes[i])
            .collect();
        let dirac_holds = rest.iter().all(|&u| {
            2 * g.neighbors(u).filter(|w| rest.contains(w)).count() >= rest.len()
        });
        return Ok(GoodPairSystem {
            p1,
            p2,
            dirac_holds,
            seed: seed + attempt,
        });
    }
    Err(ExtremalError::SampleRejected)
}

/// Matches `A″` to the pairs of `P₁ ∪ P₂` in the bipartite graph where `a`
/// sees `(x, y)` iff `{a, x, y}` is an edge. A non-saturating outcome
/// returns the alternating-reachable pairs `Q` with `|N(Q)| < |Q|`.
pub fn hall_finish(h: &Hypergraph3, rem: &Remainder, gps: &GoodPairSystem) -> Result<Matching, ExtremalError> {
    let left = rem.a.to_vec();
    let right: Vec<(usize, usize)> = gps.pairs().collect();
    let mut g: UnGraph<(), ()> = UnGraph::with_capacity(left.len() + right.len(), 0);
    let ln: Vec<NodeIndex> = left.iter().map(|_| g.add_node(())).collect();
    let rn: Vec<NodeIndex> = right.iter().map(|_| g.add_node(())).collect();
    for (i, &a) in left.iter().enumerate() {
        for (j, &(x, y)) in right.iter().enumerate() {
            if h.has_edge(a, x, y) {
                g.add_edge(ln[i], rn[j], ());
            }
        }
    }
    let mm = maximum_matching(&g);
    if let Some(r0) = (0..right.len()).find(|&j| mm.mate(rn[j]).is_none()) {
        let mut seen_r = vec![false; right.len()];
        let mut seen_l = vec![false; left.len()];
        seen_r[r0] = true;
        let mut queue = VecDeque::from([r0]);
        while let Some(j) = queue.pop_front() {
            for u in g.neighbors(rn[j]) {
                let i = u.index();
                if i >= left.len() || seen_l[i] {
                    continue;
                }
                seen_l[i] = true;
                if let Some(mate) = mm.mate(u) {
                    let k = mate.index() - left.len();
                    if !seen_r[k] {
                        seen_r[k] = true;
                        queue.push_back(k);
                    }
                }
            }
        }
        return Err(ExtremalError::HallViolated {
            pairs: (0..right.len()).filter(|&j| seen_r[j]).map(|j| right[j]).collect(),
            neighbourhood: (0..left.len()).filter(|&i| seen_l[i]).map(|i| left[i]).collect(),
        });
    }
    let mut out = Matching::new(h.n());
    for (i, &a) in left.iter().enumerate() {
        if let Some(mate) = mm.mate(ln[i]) {
            let (x, y) = right[mate.index() - left.len()];
            let e: Triple = crate::hypergraph::sort3([a, x, y]);
            out.push(e).expect("pairs and A'' are disjoint");
        }
    }
    Ok(out)
}
