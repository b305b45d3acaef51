//! Extraction of complete bipartite and tripartite pieces from dense
//! configurations, plus the sized searches the cover moves rely on.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::graph::SimpleGraph;
use super::tripartite::Tripartite;
use super::CoverError;
use crate::hypergraph::{binom2, transversal_count, Hypergraph3};
use crate::rational::{log2_floor, ratio, size_rule, Rational};
use crate::vertex_set::VertexSet;

/// Node budget for the backtracking searches below. Exhaustion reads as
/// "not found"; the searches are deterministic either way.
pub const SEARCH_BUDGET: u64 = 200_000;

/// Bipartite graph with a small side `A` (at most 64 vertices) and a large
/// side `B`; `nbrs[b]` is the neighbourhood of `b` as a bit mask over `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartite {
    pub a_len: usize,
    pub nbrs: Vec<u64>,
}

impl Bipartite {
    pub fn new(a_len: usize, nbrs: Vec<u64>) -> Self {
        Bipartite { a_len, nbrs }
    }

    pub fn edge_count(&self) -> u64 {
        self.nbrs.iter().map(|m| m.count_ones() as u64).sum()
    }

    pub fn density(&self) -> Rational {
        let den = (self.a_len * self.nbrs.len()) as u64;
        if den == 0 {
            Rational::zero()
        } else {
            ratio(self.edge_count(), den)
        }
    }
}

pub const PIGEONHOLE_LIMIT: usize = 64;

/// Keeps the vertices `b` with `deg(b) ≥ η|A|/2`, buckets them by exact
/// neighbourhood and returns the largest bucket `B′` with its common
/// neighbourhood `A′`. Ties go to the larger neighbourhood, then to the
/// smaller mask.
pub fn pigeonhole_complete_bipartite(
    g: &Bipartite,
    eta: Rational,
) -> Result<(Vec<usize>, Vec<usize>), CoverError> {
    if g.a_len > PIGEONHOLE_LIMIT {
        return Err(CoverError::TooLarge {
            size: g.a_len,
            limit: PIGEONHOLE_LIMIT,
        });
    }
    let density = g.density();
    if g.a_len == 0 || g.nbrs.is_empty() || density < eta {
        return Err(CoverError::DensityTooLow {
            density,
            required: eta,
        });
    }
    let floor = eta * Rational::from_integer(g.a_len as i64);
    let mut buckets: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (b, &mask) in g.nbrs.iter().enumerate() {
        if Rational::from_integer(2 * mask.count_ones() as i64) >= floor {
            buckets.entry(mask).or_default().push(b);
        }
    }
    let (mask, bucket) = buckets
        .into_iter()
        .max_by(|(ma, ba), (mb, bb)| {
            (ba.len(), ma.count_ones())
                .cmp(&(bb.len(), mb.count_ones()))
                .then(mb.cmp(ma))
        })
        .expect("a dense graph has a vertex of at least half the density");
    let a_side = (0..g.a_len).filter(|&i| mask >> i & 1 == 1).collect();
    Ok((a_side, bucket))
}

fn combinations(k: usize, len: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    // calls `f` on index subsets in lexicographic order until it returns true
    if k > len {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < len - k + i {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `K_{s,s}` in `g` with disjoint sides, smaller labels on the first side.
fn find_biclique(g: &SimpleGraph, s: usize, budget: &mut u64) -> Option<(Vec<usize>, Vec<usize>)> {
    fn rec(
        g: &SimpleGraph,
        s: usize,
        side: &mut Vec<usize>,
        cands: Vec<usize>,
        start: usize,
        budget: &mut u64,
    ) -> Option<Vec<usize>> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        if side.len() == s {
            return (cands.len() >= s).then(|| cands[..s].to_vec());
        }
        for v in start..g.n() {
            if g.degree(v) < s {
                continue;
            }
            let next: Vec<usize> = if side.is_empty() {
                g.neighbors(v).iter().copied().filter(|&u| u > v).collect()
            } else {
                cands
                    .iter()
                    .copied()
                    .filter(|&u| u != v && g.has_edge(u, v))
                    .collect()
            };
            if next.len() < s {
                continue;
            }
            side.push(v);
            if let Some(other) = rec(g, s, side, next, v + 1, budget) {
                return Some(other);
            }
            side.pop();
            if *budget == 0 {
                return None;
            }
        }
        None
    }
    let mut side = Vec::new();
    let other = rec(g, s, &mut side, Vec::new(), 0, budget)?;
    Some((side, other))
}

/// Sized search for `(X′, Y′, Z′)` with `X′ ⊆ x`, `Y′ ⊆ y`, `Z′ ⊆ z`, all of
/// size `s`, every transversal triple an edge.
pub fn find_product_sized(
    h: &Hypergraph3,
    x: &[usize],
    y: &[usize],
    z: &[usize],
    s: usize,
) -> Option<Tripartite> {
    let mut budget = SEARCH_BUDGET;
    let mut found = None;
    combinations(s, x.len(), |xi| {
        let xs: Vec<usize> = xi.iter().map(|&i| x[i]).collect();
        let mut ys = Vec::new();
        if let Some(zs) = grow_y(h, &xs, y, s, 0, &mut ys, z.to_vec(), &mut budget) {
            found = Some(Tripartite::new(xs, ys, zs).expect("disjoint inputs"));
            return true;
        }
        budget == 0
    });
    found
}

#[allow(clippy::too_many_arguments)]
fn grow_y(
    h: &Hypergraph3,
    xs: &[usize],
    y: &[usize],
    s: usize,
    start: usize,
    ys: &mut Vec<usize>,
    zc: Vec<usize>,
    budget: &mut u64,
) -> Option<Vec<usize>> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    if ys.len() == s {
        return Some(zc[..s].to_vec());
    }
    for j in start..y.len() {
        let v = y[j];
        let next: Vec<usize> = zc
            .iter()
            .copied()
            .filter(|&w| xs.iter().all(|&u| h.has_edge(u, v, w)))
            .collect();
        if next.len() < s {
            continue;
        }
        ys.push(v);
        if let Some(zs) = grow_y(h, xs, y, s, j + 1, ys, next, budget) {
            return Some(zs);
        }
        ys.pop();
        if *budget == 0 {
            return None;
        }
    }
    None
}

/// Sized search for `(A′, B′, B″)` with `A′ ⊆ a` and disjoint `B′, B″ ⊆ b`,
/// all of size `s`.
pub fn find_pairs_sized(h: &Hypergraph3, a: &[usize], b: &[usize], s: usize) -> Option<Tripartite> {
    let mut budget = SEARCH_BUDGET;
    let mut found = None;
    combinations(s, a.len(), |ai| {
        let xs: Vec<usize> = ai.iter().map(|&i| a[i]).collect();
        // pair graph on b common to every vertex of xs
        let mut g = SimpleGraph::new(b.len());
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if xs.iter().all(|&u| h.has_edge(u, b[i], b[j])) {
                    g.add_edge(i, j);
                }
            }
        }
        if let Some((p, q)) = find_biclique(&g, s, &mut budget) {
            let map = |v: Vec<usize>| v.into_iter().map(|i| b[i]).collect::<Vec<_>>();
            found = Some(Tripartite::new(xs, map(p), map(q)).expect("disjoint inputs"));
            return true;
        }
        budget == 0
    });
    found
}

fn check_disjoint(sets: &[&VertexSet]) -> Result<(), CoverError> {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if !a.is_disjoint(b) {
                return Err(CoverError::SetsNotDisjoint);
            }
        }
    }
    Ok(())
}

/// Given `d₃(Z, X×Y) ≥ η`, a complete tripartite `(X′, Y′, Z′)` of class
/// size at least `max(1, ⌊(η/4)·log₂|X|⌋)` when one exists, otherwise the
/// largest smaller size found.
pub fn tripartite_from_product(
    h: &Hypergraph3,
    x: &VertexSet,
    y: &VertexSet,
    z: &VertexSet,
    eta: Rational,
) -> Result<Tripartite, CoverError> {
    check_disjoint(&[x, y, z])?;
    let (xv, yv, zv) = (x.to_vec(), y.to_vec(), z.to_vec());
    let total = (xv.len() * yv.len() * zv.len()) as u64;
    let density = if total == 0 {
        Rational::zero()
    } else {
        ratio(transversal_count(h, &xv, &yv, &zv), total)
    };
    if total == 0 || density < eta {
        return Err(CoverError::DensityTooLow {
            density,
            required: eta,
        });
    }
    let s = size_rule(eta / 4 * log2_floor(xv.len())).min(xv.len()).min(yv.len());

    if xv.len() * yv.len() <= PIGEONHOLE_LIMIT {
        let nbrs = zv
            .iter()
            .map(|&w| {
                let mut mask = 0u64;
                for (i, &u) in xv.iter().enumerate() {
                    for (j, &v) in yv.iter().enumerate() {
                        if h.has_edge(u, v, w) {
                            mask |= 1 << (i * yv.len() + j);
                        }
                    }
                }
                mask
            })
            .collect();
        let aux = Bipartite::new(xv.len() * yv.len(), nbrs);
        if let Ok((pairs, zs)) = pigeonhole_complete_bipartite(&aux, eta) {
            // pair graph on X ∪ Y (X first), biclique with one side in each
            let mut g = SimpleGraph::new(xv.len() + yv.len());
            for p in pairs {
                g.add_edge(p / yv.len(), xv.len() + p % yv.len());
            }
            let mut budget = SEARCH_BUDGET;
            if zs.len() >= s {
                if let Some((p, q)) = find_biclique(&g, s, &mut budget) {
                    if p.iter().all(|&i| i < xv.len()) && q.iter().all(|&i| i >= xv.len()) {
                        let t = Tripartite::new(
                            p.iter().map(|&i| xv[i]).collect(),
                            q.iter().map(|&i| yv[i - xv.len()]).collect(),
                            zs[..s].iter().map(|&i| zv[i]).collect(),
                        )
                        .expect("disjoint inputs");
                        if t.is_complete(h) {
                            return Ok(t);
                        }
                    }
                }
            }
        }
    }
    (1..=s)
        .rev()
        .find_map(|k| find_product_sized(h, &xv, &yv, &zv, k))
        .ok_or(CoverError::NotFound)
}

/// Given `d₃(A, C(B,2)) ≥ η`, a complete tripartite `(A′, B′, B″)` with
/// `A′ ⊆ A` and disjoint `B′, B″ ⊆ B`, class size `max(1, ⌊η|A|/2⌋)` when
/// one exists, otherwise the largest smaller size found.
pub fn tripartite_from_pairs(
    h: &Hypergraph3,
    a: &VertexSet,
    b: &VertexSet,
    eta: Rational,
) -> Result<Tripartite, CoverError> {
    check_disjoint(&[a, b])?;
    let (av, bv) = (a.to_vec(), b.to_vec());
    let den = av.len() as u64 * binom2(bv.len() as u64);
    let mut pair_list = Vec::new();
    let mut nbrs = Vec::new();
    let mut count = 0u64;
    for i in 0..bv.len() {
        for j in i + 1..bv.len() {
            let mut mask = 0u64;
            for (k, &u) in av.iter().enumerate() {
                if h.has_edge(u, bv[i], bv[j]) {
                    count += 1;
                    if k < PIGEONHOLE_LIMIT {
                        mask |= 1 << k;
                    }
                }
            }
            pair_list.push((i, j));
            nbrs.push(mask);
        }
    }
    let density = if den == 0 { Rational::zero() } else { ratio(count, den) };
    if den == 0 || density < eta {
        return Err(CoverError::DensityTooLow {
            density,
            required: eta,
        });
    }
    let s = size_rule(eta * Rational::from_integer(av.len() as i64) / 2)
        .min(av.len())
        .min(bv.len() / 2);
    if s == 0 {
        return Err(CoverError::NotFound);
    }

    if av.len() <= PIGEONHOLE_LIMIT {
        let aux = Bipartite::new(av.len(), nbrs);
        if let Ok((a_side, bucket)) = pigeonhole_complete_bipartite(&aux, eta) {
            if a_side.len() >= s {
                let g = SimpleGraph::from_edges(bv.len(), bucket.iter().map(|&p| pair_list[p]));
                let mut budget = SEARCH_BUDGET;
                if let Some((p, q)) = find_biclique(&g, s, &mut budget) {
                    let t = Tripartite::new(
                        a_side[..s].iter().map(|&i| av[i]).collect(),
                        p.iter().map(|&i| bv[i]).collect(),
                        q.iter().map(|&i| bv[i]).collect(),
                    )
                    .expect("disjoint inputs");
                    if t.is_complete(h) {
                        return Ok(t);
                    }
                }
            }
        }
    }
    (1..=s)
        .rev()
        .find_map(|k| find_pairs_sized(h, &av, &bv, k))
        .ok_or(CoverError::NotFound)
}

/// A complete tripartite of class size `t` inside `region`, or `None`.
///
/// Classes are ordered by their smallest vertex. For `t = 1` this is the
/// first edge of `region` in lexicographic order.
pub fn find_k3t(h: &Hypergraph3, region: &VertexSet, t: usize) -> Option<Tripartite> {
    assert!(t >= 1);
    let r = region.to_vec();
    if r.len() < 3 * t {
        return None;
    }
    if t == 1 {
        for (i, &a) in r.iter().enumerate() {
            for (j, &b) in r.iter().enumerate().skip(i + 1) {
                for &c in &r[j + 1..] {
                    if h.has_edge(a, b, c) {
                        return Some(Tripartite::from_edge([a, b, c]));
                    }
                }
            }
        }
        return None;
    }
    let mut s = K3tSearch {
        h,
        r: &r,
        t,
        xs: Vec::new(),
        ys: Vec::new(),
        budget: SEARCH_BUDGET,
    };
    let zs = s.rec(None)?;
    Some(Tripartite::new(s.xs, s.ys, zs).expect("disjoint by construction"))
}

struct K3tSearch<'a> {
    h: &'a Hypergraph3,
    r: &'a [usize],
    t: usize,
    xs: Vec<usize>,
    ys: Vec<usize>,
    budget: u64,
}

impl K3tSearch<'_> {
    fn rec(&mut self, zc: Option<Vec<usize>>) -> Option<Vec<usize>> {
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        if let Some(z) = &zc {
            if z.len() < self.t {
                return None;
            }
            if self.xs.len() == self.t && self.ys.len() == self.t {
                return Some(z[..self.t].to_vec());
            }
        }
        let add_x = self.xs.len() <= self.ys.len() && self.xs.len() < self.t;
        let lo = if add_x {
            self.xs.last().map_or(0, |&v| v + 1)
        } else {
            self.ys.last().map_or(self.xs[0] + 1, |&v| v + 1)
        };
        let cands: Vec<usize> = self.r.iter().copied().filter(|&v| v >= lo).collect();
        for v in cands {
            if self.xs.contains(&v) || self.ys.contains(&v) {
                continue;
            }
            let next = match (&zc, add_x) {
                (None, true) => None,
                (None, false) => Some(
                    self.r
                        .iter()
                        .copied()
                        .filter(|&w| w > v && !self.xs.contains(&w))
                        .filter(|&w| self.xs.iter().all(|&x| self.h.has_edge(x, v, w)))
                        .collect::<Vec<_>>(),
                ),
                (Some(z), true) => Some(
                    z.iter()
                        .copied()
                        .filter(|&w| w != v && self.ys.iter().all(|&y| self.h.has_edge(v, y, w)))
                        .collect(),
                ),
                (Some(z), false) => Some(
                    z.iter()
                        .copied()
                        .filter(|&w| w != v && self.xs.iter().all(|&x| self.h.has_edge(x, v, w)))
                        .collect(),
                ),
            };
            if let Some(z) = &next {
                if z.len() < self.t {
                    continue;
                }
            }
            if add_x {
                self.xs.push(v);
            } else {
                self.ys.push(v);
            }
            if let Some(found) = self.rec(next) {
                return Some(found);
            }
            if add_x {
                self.xs.pop();
            } else {
                self.ys.pop();
            }
            if self.budget == 0 {
                return None;
            }
        }
        None
    }
}
