//! Sidedness of members and the 3×3 link graphs between pairs of members.

use num_traits::Zero;

use super::tripartite::Tripartite;
use crate::hypergraph::{cross_density_pairs, cross_density_product, Hypergraph3};
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

fn class_set(n: usize, c: &[usize]) -> VertexSet {
    VertexSet::from_iter(n, c.iter().copied())
}

/// Number of classes `V_l` of `member` with `d₃(V_l, C(ℐ,2)) ≥ 2η`.
pub fn k_sidedness(h: &Hypergraph3, member: &Tripartite, leftover: &VertexSet, eta: Rational) -> usize {
    (0..3)
        .filter(|&l| {
            cross_density_pairs(h, &class_set(h.n(), member.class(l)), leftover)
                .is_ok_and(|d| d >= eta * 2)
        })
        .count()
}

/// Bipartite graph between the classes of two members; bit `3p + q` is the
/// pair (class `p` of the first, class `q` of the second).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinkGraph {
    pub bits: u16,
}

impl LinkGraph {
    pub fn from_edges(edges: &[(usize, usize)]) -> Self {
        let mut bits = 0;
        for &(p, q) in edges {
            assert!(p < 3 && q < 3);
            bits |= 1 << (3 * p + q);
        }
        LinkGraph { bits }
    }

    pub fn has(&self, p: usize, q: usize) -> bool {
        self.bits >> (3 * p + q) & 1 == 1
    }

    pub fn edge_count(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..9).filter(|b| self.bits >> b & 1 == 1).map(|b| (b / 3, b % 3)).collect()
    }

    fn transposed(&self) -> LinkGraph {
        LinkGraph::from_edges(&self.edges().into_iter().map(|(p, q)| (q, p)).collect::<Vec<_>>())
    }
}

/// Link of `(ti, tj)` with respect to `ℐ`: `(p, q)` is an edge iff
/// `d₃(ℐ, V_p^i × V_q^j) ≥ 2η`.
pub fn link_graph_of_pair(
    h: &Hypergraph3,
    ti: &Tripartite,
    tj: &Tripartite,
    leftover: &VertexSet,
    eta: Rational,
) -> LinkGraph {
    let mut bits = 0;
    if leftover.is_empty() {
        return LinkGraph { bits };
    }
    let n = h.n();
    for p in 0..3 {
        let vp = class_set(n, ti.class(p));
        for q in 0..3 {
            let vq = class_set(n, tj.class(q));
            let d = cross_density_product(h, leftover, &vp, &vq).unwrap_or_else(|_| Rational::zero());
            if d >= eta * 2 {
                bits |= 1 << (3 * p + q);
            }
        }
    }
    LinkGraph { bits }
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Where the pattern `{l₁r₁, l₁r₂, l₁r₃, l₂r₂, l₂r₃}` sits. `transposed`
/// means the degree-3 and degree-2 vertices are classes of the second member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct B320Embedding {
    pub transposed: bool,
    /// class playing `l₁` (degree 3)
    pub hub: usize,
    /// class playing `l₂` (degree 2)
    pub second: usize,
    /// the opposite class not adjacent to `l₂`
    pub lone: usize,
    /// the two opposite classes adjacent to both
    pub shared: [usize; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkClass {
    /// `σ[p]` is the partner of class `p`.
    HasPM([usize; 3]),
    ContainsB320(B320Embedding),
    /// The degree-3 classes: `(left, right)`.
    IsoB311 { left: usize, right: usize },
    Sparse(u32),
    Other,
}

fn find_b320(l: &LinkGraph) -> Option<(usize, usize, usize, [usize; 2])> {
    for sigma in PERMS {
        for pi in PERMS {
            let (l1, l2) = (sigma[0], sigma[1]);
            let (r1, r2, r3) = (pi[0], pi[1], pi[2]);
            if l.has(l1, r1) && l.has(l1, r2) && l.has(l1, r3) && l.has(l2, r2) && l.has(l2, r3) {
                return Some((l1, l2, r1, [r2.min(r3), r2.max(r3)]));
            }
        }
    }
    None
}

/// Priority: perfect matching, then `B₃₂₀` containment (either
/// orientation), then isomorphism to `B₃₁₁ = {l₁r₁, l₁r₂, l₁r₃, l₂r₁, l₃r₁}`.
/// Graphs with at most four edges and none of these are `Sparse`.
pub fn classify_link(l: &LinkGraph) -> LinkClass {
    if let Some(sigma) = PERMS.iter().find(|s| (0..3).all(|p| l.has(p, s[p]))) {
        return LinkClass::HasPM(*sigma);
    }
    if l.edge_count() <= 4 {
        return LinkClass::Sparse(l.edge_count());
    }
    if let Some((hub, second, lone, shared)) = find_b320(l) {
        return LinkClass::ContainsB320(B320Embedding {
            transposed: false,
            hub,
            second,
            lone,
            shared,
        });
    }
    if let Some((hub, second, lone, shared)) = find_b320(&l.transposed()) {
        return LinkClass::ContainsB320(B320Embedding {
            transposed: true,
            hub,
            second,
            lone,
            shared,
        });
    }
    if l.edge_count() == 5 {
        let row = (0..3).find(|&p| (0..3).all(|q| l.has(p, q)));
        let col = (0..3).find(|&q| (0..3).all(|p| l.has(p, q)));
        if let (Some(left), Some(right)) = (row, col) {
            return LinkClass::IsoB311 { left, right };
        }
    }
    LinkClass::Other
}

/// Classifies all 512 link graphs; returns `(classified, other)` over the
/// 256 graphs with at least five edges.
pub fn link_trichotomy_counts() -> (usize, usize) {
    let mut classified = 0;
    let mut other = 0;
    for bits in 0u16..512 {
        let l = LinkGraph { bits };
        if l.edge_count() < 5 {
            continue;
        }
        match classify_link(&l) {
            LinkClass::Other | LinkClass::Sparse(_) => other += 1,
            _ => classified += 1,
        }
    }
    (classified, other)
}
