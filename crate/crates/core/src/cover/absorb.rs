//! Absorbing matchings: an edge `e` absorbs a 3-set `W` when the six
//! vertices of `e ∪ W` split into two edges.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::CoverError;
use crate::error::Error;
use crate::hypergraph::{sort3, Hypergraph3, Triple};
use crate::matching::{verify_matching, Matching};
use crate::rational::{ceil_usize, from_int, Rational};
use crate::vertex_set::VertexSet;

/// Cap on candidate edges scored when building an absorbing matching.
pub const CANDIDATE_LIMIT: usize = 4096;
const ASSIGN_BUDGET: u64 = 200_000;

/// The two edges covering `e ∪ w`, if some split works. Splits are tried
/// with the smallest vertex's partners in lexicographic order.
pub fn absorbs(h: &Hypergraph3, e: Triple, w: Triple) -> Option<(Triple, Triple)> {
    let mut six = [e[0], e[1], e[2], w[0], w[1], w[2]];
    six.sort_unstable();
    if six.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    for i in 1..6 {
        for j in i + 1..6 {
            let first = [six[0], six[i], six[j]];
            let rest: Vec<usize> = (1..6).filter(|&k| k != i && k != j).map(|k| six[k]).collect();
            let second = [rest[0], rest[1], rest[2]];
            if h.contains(first) && h.contains(second) {
                return Some((first, second));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbsorbingMatching {
    pub matching: Matching,
    /// Probe 3-sets disjoint from `V(M)` with the index of the first edge of
    /// `M` that absorbs them, if any.
    pub absorber_index: Vec<(Triple, Option<usize>)>,
}

impl AbsorbingMatching {
    /// Fraction of recorded probes that some edge of `M` absorbs.
    pub fn probe_success(&self) -> Option<Rational> {
        if self.absorber_index.is_empty() {
            return None;
        }
        let hit = self.absorber_index.iter().filter(|(_, a)| a.is_some()).count();
        Some(Rational::new(hit as i64, self.absorber_index.len() as i64))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbsorberParams {
    pub eta: Rational,
    /// Explicit size cap; defaults to `max(1, ⌈η³n⌉)`.
    pub cap: Option<usize>,
    pub probes: usize,
    pub seed: u64,
}

impl Default for AbsorberParams {
    fn default() -> Self {
        AbsorberParams {
            eta: Rational::new(1, 20),
            cap: None,
            probes: 256,
            seed: 0,
        }
    }
}

fn random_triples(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Triple> {
    if n < 3 {
        return Vec::new();
    }
    (0..count)
        .map(|_| {
            let v = index::sample(rng, n, 3).into_vec();
            sort3([v[0], v[1], v[2]])
        })
        .collect()
}

fn disjoint(a: Triple, b: Triple) -> bool {
    a.iter().all(|v| !b.contains(v))
}

/// Greedy absorbing matching: candidate edges are ranked by how many seeded
/// probe 3-sets they absorb, then taken disjointly up to the cap.
pub fn build_absorbing_matching(h: &Hypergraph3, params: &AbsorberParams) -> Result<AbsorbingMatching, CoverError> {
    let n = h.n();
    if h.edge_count() == 0 {
        return Err(CoverError::EmptyGraph);
    }
    let eta3 = params.eta * params.eta * params.eta;
    let cap = params.cap.unwrap_or_else(|| ceil_usize(eta3 * from_int(n as u64)).max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let probes = random_triples(n, params.probes, &mut rng);
    let edges: Vec<Triple> = h.edges().collect();
    let candidates: Vec<Triple> = if edges.len() <= CANDIDATE_LIMIT {
        edges
    } else {
        let mut picked = index::sample(&mut rng, edges.len(), CANDIDATE_LIMIT).into_vec();
        picked.sort_unstable();
        picked.into_iter().map(|i| edges[i]).collect()
    };
    let mut scored: Vec<(usize, usize, Triple)> = candidates
        .par_iter()
        .enumerate()
        .map(|(i, &e)| {
            let score = probes
                .iter()
                .filter(|&&w| disjoint(e, w) && absorbs(h, e, w).is_some())
                .count();
            (score, i, e)
        })
        .collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut m = Matching::new(n);
    for (_, _, e) in scored {
        if m.len() >= cap {
            break;
        }
        let _ = m.push(e);
    }
    let absorber_index = probes
        .into_iter()
        .filter(|w| w.iter().all(|&v| !m.covered().contains(v)))
        .map(|w| {
            let hit = m.edges().iter().position(|&e| absorbs(h, e, w).is_some());
            (w, hit)
        })
        .collect();
    Ok(AbsorbingMatching {
        matching: m,
        absorber_index,
    })
}

struct Assign<'a> {
    h: &'a Hypergraph3,
    absorbers: &'a [Triple],
    used: Vec<bool>,
    plan: Vec<(Triple, usize)>,
    budget: u64,
}

impl Assign<'_> {
    fn rec(&mut self, rest: &mut Vec<usize>) -> bool {
        if rest.is_empty() {
            return true;
        }
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let u = rest.remove(0);
        for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                let w = [u, rest[i], rest[j]];
                for k in 0..self.absorbers.len() {
                    if self.used[k] || absorbs(self.h, self.absorbers[k], w).is_none() {
                        continue;
                    }
                    let (x, y) = (rest[i], rest[j]);
                    rest.retain(|&v| v != x && v != y);
                    self.used[k] = true;
                    self.plan.push((w, k));
                    if self.rec(rest) {
                        return true;
                    }
                    self.plan.pop();
                    self.used[k] = false;
                    rest.insert(i, x);
                    rest.insert(j, y);
                    if self.budget == 0 {
                        rest.insert(0, u);
                        return false;
                    }
                }
            }
        }
        rest.insert(0, u);
        false
    }
}

/// Splits `W` into 3-sets, each swallowed by its own edge of `M`. The result
/// covers `covered(partial) ∪ V(M) ∪ W` and is verified before returning.
pub fn absorb_leftover(
    h: &Hypergraph3,
    am: &AbsorbingMatching,
    w: &VertexSet,
    partial: &Matching,
) -> Result<Matching, CoverError> {
    let n = h.n();
    if !w.len().is_multiple_of(3) {
        return Err(Error::InvalidParameter(format!("leftover of size {} is not a multiple of 3", w.len())).into());
    }
    if !w.is_disjoint(partial.covered()) || !w.is_disjoint(am.matching.covered()) {
        return Err(CoverError::SetsNotDisjoint);
    }
    if !partial.covered().is_disjoint(am.matching.covered()) {
        return Err(CoverError::SetsNotDisjoint);
    }
    let absorbers = am.matching.edges();
    let mut search = Assign {
        h,
        absorbers,
        used: vec![false; absorbers.len()],
        plan: Vec::new(),
        budget: ASSIGN_BUDGET,
    };
    let mut rest = w.to_vec();
    if !search.rec(&mut rest) {
        let v = w.to_vec();
        return Err(CoverError::AbsorptionFailed([v[0], v[1], v[2]]));
    }
    let mut out = partial.clone();
    for (k, &e) in absorbers.iter().enumerate() {
        if !search.used[k] {
            out.push(e).expect("absorber disjoint from partial");
        }
    }
    for &(wt, k) in &search.plan {
        let (a, b) = absorbs(h, absorbers[k], wt).expect("checked during search");
        out.push(a).expect("split is disjoint");
        out.push(b).expect("split is disjoint");
    }
    if verify_matching(h, &out, false).is_err() || out.covered().len() != partial.covered().len() + am.matching.covered().len() + w.len() {
        return Err(CoverError::AbsorptionFailed(absorbers.first().copied().unwrap_or([0, 1, 2])));
    }
    debug_assert_eq!(out.order(), n);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{extremal_construction, random_3graph};

    #[test]
    fn complete_graph_absorbs_everything() {
        let h = Hypergraph3::complete(12);
        let am = build_absorbing_matching(&h, &AbsorberParams { cap: Some(1), ..Default::default() }).unwrap();
        assert_eq!(am.matching.len(), 1);
        assert!(am.absorber_index.iter().all(|(_, a)| a.is_some()));
        let e = am.matching.edges()[0];
        let w: Vec<usize> = (0..12).filter(|v| !e.contains(v)).take(3).collect();
        let ws = VertexSet::from_iter(12, w.iter().copied());
        let out = absorb_leftover(&h, &am, &ws, &Matching::new(12)).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out.covered().len(), 6);
    }

    #[test]
    fn absorption_needs_two_vertices_outside_b() {
        let p = extremal_construction(9).unwrap();
        // A = {0, 1}. With a single A vertex among the six, one half of any
        // split lies inside B.
        for e in [[0, 2, 3], [1, 7, 8]] {
            for w in [[4, 5, 6], [2, 5, 6], [3, 4, 5]] {
                if w.iter().all(|v| !e.contains(v)) {
                    assert!(absorbs(&p.h, e, w).is_none());
                }
            }
        }
        // both A vertices in e: each half can take one of them
        assert_eq!(absorbs(&p.h, [0, 1, 2], [3, 4, 5]), Some(([0, 2, 3], [1, 4, 5])));
    }

    #[test]
    fn empty_w_and_empty_graph() {
        let h = Hypergraph3::complete(9);
        let am = build_absorbing_matching(&h, &AbsorberParams::default()).unwrap();
        let out = absorb_leftover(&h, &am, &VertexSet::new(9), &Matching::new(9)).unwrap();
        assert_eq!(out, am.matching);
        assert!(matches!(
            build_absorbing_matching(&Hypergraph3::empty(9), &AbsorberParams::default()),
            Err(CoverError::EmptyGraph)
        ));
    }

    #[test]
    fn dense_random_probe_rate() {
        let h = random_3graph(60, 0.8, 9).unwrap();
        let params = AbsorberParams { cap: Some(3), probes: 100, ..Default::default() };
        let am = build_absorbing_matching(&h, &params).unwrap();
        assert_eq!(am.matching.len(), 3);
        assert!(am.probe_success().unwrap() >= Rational::new(95, 100));
    }
}
