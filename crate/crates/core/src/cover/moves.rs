//! The three cover-growing moves. Each proposes new members, then
//! [`rebuild`] folds them into the cover: old members lose the used vertices
//! and are trimmed back to balance, everything is re-split to one class size,
//! and the leftover is greedily re-saturated.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::engine::{greedy_tripartite_cover, EngineParams};
use super::graph::{greedy_graph_matching, min_degree_subgraph, SimpleGraph};
use super::blocks::{find_k3t, find_pairs_sized, find_product_sized, tripartite_from_pairs, tripartite_from_product};
use super::link::{classify_link, k_sidedness, link_graph_of_pair, LinkClass, LinkGraph};
use super::tripartite::{Tripartite, TripartiteCover};
use crate::hypergraph::{binom2, cross_density_pairs, cross_density_product, subset_density, Hypergraph3};
use crate::rational::{from_int, ge_root, log2_floor, pow_cmp, ratio, size_rule, Rational};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    TwoSided,
    Links,
    B311,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::TwoSided => "claim1",
            MoveKind::Links => "claim2",
            MoveKind::B311 => "claim3",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MoveResult {
    Grown { cover: TripartiteCover, gain: usize },
    Extremal { b: VertexSet, density: Rational },
    NotApplicable,
}

fn set_of(n: usize, vs: &[usize]) -> VertexSet {
    VertexSet::from_iter(n, vs.iter().copied())
}

/// Folds `fresh` members into `cover`. Returns `None` if `fresh` is empty.
pub fn rebuild(h: &Hypergraph3, cover: &TripartiteCover, fresh: Vec<Tripartite>) -> Option<TripartiteCover> {
    let n = h.n();
    let s = fresh.iter().map(Tripartite::t).min()?;
    let mut used = VertexSet::new(n);
    for m in &fresh {
        used.extend(m.vertices());
    }
    let mut members = Vec::new();
    for m in cover.members() {
        if let (Some(piece), _) = m.without(&used) {
            members.extend(piece.split(s).0);
        }
    }
    for m in fresh {
        members.extend(m.split(s).0);
    }
    let mut free = VertexSet::full(n);
    for m in &members {
        for v in m.vertices() {
            free.remove(v);
        }
    }
    members.extend(greedy_tripartite_cover(h, &free, s, Rational::zero()).members().iter().cloned());
    let rebuilt = TripartiteCover::from_members(n, s, members).expect("members are disjoint and uniform");
    debug_assert_eq!(rebuilt.validate(h), Ok(()));
    Some(rebuilt)
}

fn accept(h: &Hypergraph3, cover: &TripartiteCover, fresh: Vec<Tripartite>, min_gain: usize) -> MoveResult {
    match rebuild(h, cover, fresh) {
        Some(next) if next.validate(h).is_ok() && next.covered_count() >= cover.covered_count() + min_gain => {
            let gain = next.covered_count() - cover.covered_count();
            MoveResult::Grown { cover: next, gain }
        }
        _ => MoveResult::NotApplicable,
    }
}

/// Members of at least two sided classes carrying more than `η|V(𝒯)|`
/// vertices: two pair-extractions into `ℐ` per such member.
pub fn improve_two_sided(h: &Hypergraph3, cover: &TripartiteCover, params: &EngineParams) -> MoveResult {
    let n = h.n();
    let eta = params.eta;
    let leftover = cover.leftover();
    if leftover.len() < 4 || cover.members().is_empty() {
        return MoveResult::NotApplicable;
    }
    let sided: Vec<Vec<usize>> = cover
        .members()
        .par_iter()
        .map(|m| {
            (0..3)
                .filter(|&l| {
                    cross_density_pairs(h, &set_of(n, m.class(l)), leftover).is_ok_and(|d| d >= eta * 2)
                })
                .collect()
        })
        .collect();
    let heavy: Vec<usize> = (0..sided.len()).filter(|&i| sided[i].len() >= 2).collect();
    let heavy_vertices = heavy.len() * 3 * cover.t();
    if from_int(heavy_vertices as u64) <= eta * from_int(cover.covered_count() as u64) {
        return MoveResult::NotApplicable;
    }
    let s = size_rule(eta * from_int(cover.t() as u64) / 2);
    let mut pool = leftover.clone();
    let mut fresh = Vec::new();
    for i in heavy {
        let m = &cover.members()[i];
        let (p, q) = (sided[i][0], sided[i][1]);
        let Some(first) = pairs_extraction(h, m.class(p), &pool, eta, s) else {
            continue;
        };
        let rest = pool.difference(&set_of(n, &first.vertices().collect::<Vec<_>>()));
        let Some(second) = pairs_extraction(h, m.class(q), &rest, eta, s) else {
            continue;
        };
        pool = rest.difference(&set_of(n, &second.vertices().collect::<Vec<_>>()));
        fresh.push(first);
        fresh.push(second);
    }
    if fresh.is_empty() {
        return MoveResult::NotApplicable;
    }
    accept(h, cover, fresh, params.min_gain)
}

/// Complete tripartite `(A′ ⊆ class, B′, B″ ⊆ pool)` of class size `s`,
/// provided the class still sees `η` of the pool's pairs.
fn pairs_extraction(h: &Hypergraph3, class: &[usize], pool: &VertexSet, eta: Rational, s: usize) -> Option<Tripartite> {
    let a = set_of(h.n(), class);
    if !cross_density_pairs(h, &a, pool).is_ok_and(|d| d >= eta) {
        return None;
    }
    let found = tripartite_from_pairs(h, &a, pool, eta).ok();
    match found {
        Some(t) if t.t() >= s => Some(t.split(s).0.swap_remove(0)),
        _ => find_pairs_sized(h, class, &pool.to_vec(), s),
    }
}

/// Complete tripartite `(X′ ⊆ x, Y′ ⊆ y, Z′ ⊆ pool)` of class size `s`,
/// provided `d₃(pool, x × y) ≥ η`.
fn product_extraction(
    h: &Hypergraph3,
    x: &[usize],
    y: &[usize],
    pool: &VertexSet,
    eta: Rational,
    s: usize,
) -> Option<Tripartite> {
    if x.len() < s || y.len() < s || pool.len() < s {
        return None;
    }
    let n = h.n();
    let (xs, ys) = (set_of(n, x), set_of(n, y));
    if !cross_density_product(h, pool, &xs, &ys).is_ok_and(|d| d >= eta) {
        return None;
    }
    match tripartite_from_product(h, &xs, &ys, pool, eta).ok() {
        Some(t) if t.t() >= s => Some(t.split(s).0.swap_remove(0)),
        _ => find_product_sized(h, x, y, &pool.to_vec(), s),
    }
}

/// Link graphs of all member pairs `i < j`, in lexicographic pair order.
pub fn all_links(h: &Hypergraph3, cover: &TripartiteCover, eta: Rational) -> Vec<((usize, usize), LinkGraph)> {
    let m = cover.members().len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    pairs
        .into_par_iter()
        .map(|(i, j)| {
            let l = link_graph_of_pair(h, &cover.members()[i], &cover.members()[j], cover.leftover(), eta);
            ((i, j), l)
        })
        .collect()
}

/// Disjoint member pairs from the auxiliary graph on members whose edges are
/// the pairs passing `keep`.
fn paired_members(m: usize, links: &[((usize, usize), LinkGraph)], keep: impl Fn(&LinkClass) -> bool) -> Vec<(usize, usize)> {
    let aux = SimpleGraph::from_edges(
        m,
        links.iter().filter(|(_, l)| keep(&classify_link(l))).map(|&(p, _)| p),
    );
    if aux.edge_count() == 0 {
        return Vec::new();
    }
    let core = min_degree_subgraph(&aux);
    let sub = aux.induced(&core);
    greedy_graph_matching(&sub)
        .into_iter()
        .map(|(a, b)| (core[a].min(core[b]), core[a].max(core[b])))
        .collect()
}

/// At least `η·C(|𝒯|,2)` member pairs whose link has a perfect matching or
/// contains `B₃₂₀`: extractions along the link into `ℐ`.
pub fn improve_by_links(
    h: &Hypergraph3,
    cover: &TripartiteCover,
    links: &[((usize, usize), LinkGraph)],
    params: &EngineParams,
) -> MoveResult {
    let m = cover.members().len();
    let eta = params.eta;
    if m < 2 || cover.leftover().is_empty() {
        return MoveResult::NotApplicable;
    }
    let good = |c: &LinkClass| matches!(c, LinkClass::HasPM(_) | LinkClass::ContainsB320(_));
    let count = links.iter().filter(|(_, l)| good(&classify_link(l))).count();
    if count == 0 || from_int(count as u64) < eta * from_int(binom2(m as u64)) {
        return MoveResult::NotApplicable;
    }
    let t = cover.t();
    let quota = size_rule(eta * eta * from_int(t as u64) / 2);
    let mut pool = cover.leftover().clone();
    let mut fresh = Vec::new();
    for (i, j) in paired_members(m, links, good) {
        let link = links.iter().find(|(p, _)| *p == (i, j)).expect("pair has a link").1;
        let mut ci: Vec<Vec<usize>> = cover.members()[i].classes().to_vec();
        let mut cj: Vec<Vec<usize>> = cover.members()[j].classes().to_vec();
        match classify_link(&link) {
            LinkClass::HasPM(sigma) => {
                let s = size_rule(eta / 4 * log2_floor(t));
                let mut removed = 0;
                while removed < quota {
                    let mut round = Vec::new();
                    let mut round_pool = pool.clone();
                    for p in 0..3 {
                        match product_extraction(h, &ci[p], &cj[sigma[p]], &round_pool, eta, s) {
                            Some(tp) => {
                                round_pool = round_pool.difference(&set_of(h.n(), tp.class(2)));
                                round.push(tp);
                            }
                            None => break,
                        }
                    }
                    if round.len() < 3 {
                        break;
                    }
                    for (p, tp) in round.iter().enumerate() {
                        ci[p].retain(|v| !tp.class(0).contains(v));
                        cj[sigma[p]].retain(|v| !tp.class(1).contains(v));
                    }
                    pool = round_pool;
                    removed += s;
                    fresh.extend(round);
                }
            }
            LinkClass::ContainsB320(e) => {
                let u = size_rule(eta / 8 * log2_floor(t));
                if t < 3 * u {
                    continue;
                }
                let (a, b) = if e.transposed { (&mut cj, &mut ci) } else { (&mut ci, &mut cj) };
                let [ra, rb] = e.shared;
                let plan = [(e.hub, e.lone, 2 * u), (e.second, rb, 2 * u), (e.hub, ra, u), (e.second, ra, u)];
                let mut removed = 0;
                while removed < quota {
                    let mut round = Vec::new();
                    let mut round_pool = pool.clone();
                    let (mut ta, mut tb) = (a.clone(), b.clone());
                    for &(p, q, size) in &plan {
                        match product_extraction(h, &ta[p], &tb[q], &round_pool, eta, size) {
                            Some(tp) => {
                                round_pool = round_pool.difference(&set_of(h.n(), tp.class(2)));
                                ta[p].retain(|v| !tp.class(0).contains(v));
                                tb[q].retain(|v| !tp.class(1).contains(v));
                                round.push(tp);
                            }
                            None => break,
                        }
                    }
                    if round.len() < plan.len() {
                        break;
                    }
                    *a = ta;
                    *b = tb;
                    pool = round_pool;
                    removed += 3 * u;
                    fresh.extend(round);
                }
            }
            _ => {}
        }
    }
    if fresh.is_empty() {
        return MoveResult::NotApplicable;
    }
    accept(h, cover, fresh, params.min_gain)
}

/// `frac ≥ 1 − 2√η`, exactly.
fn at_least_one_minus_two_root(frac: Rational, eta: Rational) -> bool {
    let gap = (Rational::one() - frac) / 2;
    gap <= Rational::zero() || pow_cmp(gap, 2, eta) != Ordering::Greater
}

/// Most member pairs have a `B₃₁₁` link: extract around the degree-3
/// classes, then either grow inside the non-centre classes or certify that
/// they together with `ℐ` form a sparse set.
pub fn improve_or_report_extremal(
    h: &Hypergraph3,
    cover: &TripartiteCover,
    links: &[((usize, usize), LinkGraph)],
    params: &EngineParams,
) -> MoveResult {
    let n = h.n();
    let m = cover.members().len();
    let eta = params.eta;
    let b311 = |c: &LinkClass| matches!(c, LinkClass::IsoB311 { .. });
    let count = links.iter().filter(|(_, l)| b311(&classify_link(l))).count();
    let frac = if m < 2 { Rational::one() } else { ratio(count as u64, binom2(m as u64)) };
    if !at_least_one_minus_two_root(frac, eta) {
        return MoveResult::NotApplicable;
    }
    let t = cover.t();
    let s = size_rule(eta / 4 * log2_floor(t));
    let rounds = crate::rational::floor_usize(eta * eta * eta * from_int(t as u64)) / s;
    let mut pool = cover.leftover().clone();
    let mut fresh = Vec::new();
    let mut outer = VertexSet::new(n);
    for (i, j) in paired_members(m, links, b311) {
        let link = links.iter().find(|(p, _)| *p == (i, j)).expect("pair has a link").1;
        let LinkClass::IsoB311 { left, right } = classify_link(&link) else {
            unreachable!("paired on B311 links")
        };
        let mut ci: Vec<Vec<usize>> = cover.members()[i].classes().to_vec();
        let mut cj: Vec<Vec<usize>> = cover.members()[j].classes().to_vec();
        for _ in 0..rounds {
            let others_j: Vec<usize> = (0..3).filter(|&q| q != right).collect();
            let others_i: Vec<usize> = (0..3).filter(|&p| p != left).collect();
            let mut round = Vec::new();
            let mut round_pool = pool.clone();
            let (mut ti, mut tj) = (ci.clone(), cj.clone());
            let plan = [
                (left, others_j[0], true),
                (left, others_j[1], true),
                (others_i[0], right, false),
                (others_i[1], right, false),
            ];
            for (p, q, _) in plan {
                match product_extraction(h, &ti[p], &tj[q], &round_pool, eta, s) {
                    Some(tp) => {
                        round_pool = round_pool.difference(&set_of(n, tp.class(2)));
                        ti[p].retain(|v| !tp.class(0).contains(v));
                        tj[q].retain(|v| !tp.class(1).contains(v));
                        round.push(tp);
                    }
                    None => break,
                }
            }
            if round.len() < 4 {
                break;
            }
            ci = ti;
            cj = tj;
            pool = round_pool;
            fresh.extend(round);
        }
        for p in (0..3).filter(|&p| p != left) {
            outer.extend(ci[p].iter().copied());
        }
        for q in (0..3).filter(|&q| q != right) {
            outer.extend(cj[q].iter().copied());
        }
    }

    let root_eta_dense = |d: Option<Rational>| d.is_some_and(|d| ge_root(d, eta, 2));
    let mut region = outer.clone();
    let mut growth = Vec::new();
    let inner_size = size_rule(eta * eta * eta * from_int(t as u64) / 4);
    if root_eta_dense(subset_density(h, &outer).ok()) {
        while let Some(tp) = find_k3t(h, &region, inner_size) {
            region = region.difference(&set_of(n, &tp.vertices().collect::<Vec<_>>()));
            growth.push(tp);
        }
    }
    if growth.is_empty() && !outer.is_empty() && root_eta_dense(cross_density_pairs(h, &outer, &pool).ok()) {
        let mut rest = pool.clone();
        while let Some(tp) = find_pairs_sized(h, &region.to_vec(), &rest.to_vec(), inner_size) {
            let used = set_of(n, &tp.vertices().collect::<Vec<_>>());
            region = region.difference(&used);
            rest = rest.difference(&used);
            growth.push(tp);
        }
    }
    // growth inside the outer classes breaks the members it touches, so
    // only the best-gaining prefix of the proposals is kept
    let mut best = MoveResult::NotApplicable;
    let mut best_gain = 0;
    for k in 1..=growth.len() {
        let mut proposal = fresh.clone();
        proposal.extend(growth[..k].iter().cloned());
        if let r @ MoveResult::Grown { gain, .. } = accept(h, cover, proposal, params.min_gain) {
            if gain > best_gain {
                best_gain = gain;
                best = r;
            }
        }
    }
    if best != MoveResult::NotApplicable {
        return best;
    }

    let b = outer.union(cover.leftover());
    let floor = (Rational::new(2, 3) - params.alpha) * from_int(n as u64);
    if from_int(b.len() as u64) >= floor {
        if let Ok(density) = subset_density(h, &b) {
            if density < params.alpha {
                return MoveResult::Extremal { b, density };
            }
        }
    }
    if fresh.is_empty() {
        return MoveResult::NotApplicable;
    }
    accept(h, cover, fresh, params.min_gain)
}

/// Sidedness of every member, exposed for diagnostics.
pub fn sidedness_profile(h: &Hypergraph3, cover: &TripartiteCover, eta: Rational) -> Vec<usize> {
    cover
        .members()
        .par_iter()
        .map(|m| k_sidedness(h, m, cover.leftover(), eta))
        .collect()
}
