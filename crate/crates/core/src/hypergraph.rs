//! Immutable 3-uniform hypergraphs.
//!
//! Edges are stored as a bitset over all `C(n,3)` vertex triples, indexed by
//! colexicographic rank: `rank(a,b,c) = C(c,3) + C(b,2) + a` for `a < b < c`.

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::vertex_set::VertexSet;

/// Vertex triple, always stored in increasing order.
pub type Triple = [usize; 3];

/// Largest order accepted by the constructors (keeps the bitset under 25 MB).
pub const MAX_ORDER: usize = 1024;

pub fn binom2(n: u64) -> u64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

pub fn binom3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

#[inline]
fn rank_unchecked(a: usize, b: usize, c: usize) -> usize {
    let (b, c) = (b as u64, c as u64);
    (binom3(c) + binom2(b)) as usize + a
}

/// Colex rank of `{a, b, c}` with `a < b < c`.
pub fn triple_rank(a: usize, b: usize, c: usize) -> Result<u64> {
    if !(a < b && b < c) {
        return Err(Error::InvalidTriple(a, b, c));
    }
    Ok(rank_unchecked(a, b, c) as u64)
}

/// Inverse of [`triple_rank`].
pub fn triple_unrank(rank: u64) -> Triple {
    let mut c = 2u64;
    while binom3(c + 1) <= rank {
        c += 1;
    }
    let rest = rank - binom3(c);
    let mut b = 1u64;
    while binom2(b + 1) <= rest {
        b += 1;
    }
    let a = rest - binom2(b);
    [a as usize, b as usize, c as usize]
}

pub fn sort3(t: Triple) -> Triple {
    let [mut a, mut b, mut c] = t;
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    if b > c {
        std::mem::swap(&mut b, &mut c);
    }
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    [a, b, c]
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph3 {
    n: usize,
    bits: Vec<u64>,
    m: usize,
}

impl std::fmt::Debug for Hypergraph3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hypergraph3(n={}, m={})", self.n, self.m)
    }
}

/// Mutable staging area for a [`Hypergraph3`].
#[derive(Clone, Debug)]
pub struct HypergraphBuilder {
    n: usize,
    bits: Vec<u64>,
    m: usize,
}

impl HypergraphBuilder {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge { n, limit: MAX_ORDER });
        }
        let slots = binom3(n as u64) as usize;
        Ok(HypergraphBuilder {
            n,
            bits: vec![0; slots.div_ceil(64)],
            m: 0,
        })
    }

    fn index(&self, t: Triple) -> Result<usize> {
        for &v in &t {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let [a, b, c] = sort3(t);
        if a == b || b == c {
            return Err(Error::DegenerateEdge(t));
        }
        Ok(rank_unchecked(a, b, c))
    }

    pub fn contains(&self, t: Triple) -> Result<bool> {
        let r = self.index(t)?;
        Ok(self.bits[r / 64] >> (r % 64) & 1 == 1)
    }

    /// Returns true if the edge was not already present.
    pub fn insert(&mut self, t: Triple) -> Result<bool> {
        let r = self.index(t)?;
        let bit = 1u64 << (r % 64);
        if self.bits[r / 64] & bit == 0 {
            self.bits[r / 64] |= bit;
            self.m += 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub fn remove(&mut self, t: Triple) -> Result<bool> {
        let r = self.index(t)?;
        let bit = 1u64 << (r % 64);
        if self.bits[r / 64] & bit != 0 {
            self.bits[r / 64] &= !bit;
            self.m -= 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub fn toggle(&mut self, t: Triple) -> Result<()> {
        if !self.remove(t)? {
            self.insert(t)?;
        }
        Ok(())
    }

    pub(crate) fn toggle_rank(&mut self, r: usize) {
        let bit = 1u64 << (r % 64);
        if self.bits[r / 64] & bit != 0 {
            self.m -= 1;
        } else {
            self.m += 1;
        }
        self.bits[r / 64] ^= bit;
    }

    pub(crate) fn set_rank(&mut self, r: usize) {
        let bit = 1u64 << (r % 64);
        if self.bits[r / 64] & bit == 0 {
            self.bits[r / 64] |= bit;
            self.m += 1;
        }
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn build(self) -> Hypergraph3 {
        Hypergraph3 {
            n: self.n,
            bits: self.bits,
            m: self.m,
        }
    }
}

impl Hypergraph3 {
    pub fn empty(n: usize) -> Self {
        HypergraphBuilder::new(n).expect("order within limit").build()
    }

    pub fn complete(n: usize) -> Self {
        let mut b = HypergraphBuilder::new(n).expect("order within limit");
        for r in 0..binom3(n as u64) as usize {
            b.set_rank(r);
        }
        b.build()
    }

    pub fn from_edges<I: IntoIterator<Item = Triple>>(n: usize, edges: I) -> Result<Self> {
        let mut b = HypergraphBuilder::new(n)?;
        for e in edges {
            b.insert(e)?;
        }
        Ok(b.build())
    }

    /// Builds from a predicate evaluated on every sorted triple.
    pub fn from_fn(n: usize, mut keep: impl FnMut(Triple) -> bool) -> Self {
        let mut b = HypergraphBuilder::new(n).expect("order within limit");
        for r in 0..binom3(n as u64) {
            if keep(triple_unrank(r)) {
                b.set_rank(r as usize);
            }
        }
        b.build()
    }

    pub fn to_builder(&self) -> HypergraphBuilder {
        HypergraphBuilder {
            n: self.n,
            bits: self.bits.clone(),
            m: self.m,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Number of vertex triples, `C(n,3)`.
    pub fn triple_count(&self) -> u64 {
        binom3(self.n as u64)
    }

    /// Edge test for three vertices in any order. Repeated or out-of-range
    /// vertices are never an edge.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize, w: usize) -> bool {
        let [a, b, c] = sort3([u, v, w]);
        if a == b || b == c || c >= self.n {
            return false;
        }
        let r = rank_unchecked(a, b, c);
        self.bits[r / 64] >> (r % 64) & 1 == 1
    }

    pub fn contains(&self, t: Triple) -> bool {
        self.has_edge(t[0], t[1], t[2])
    }

    #[inline]
    pub(crate) fn has_rank(&self, r: usize) -> bool {
        self.bits[r / 64] >> (r % 64) & 1 == 1
    }

    /// Edge ranks in increasing order.
    pub fn edge_ranks(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as u64;
                    w &= w - 1;
                    Some(i as u64 * 64 + b)
                }
            })
        })
    }

    /// Edges in colex order, vertices ascending within each edge.
    pub fn edges(&self) -> impl Iterator<Item = Triple> + '_ {
        self.edge_ranks().map(triple_unrank)
    }

    pub fn degree(&self, v: usize) -> usize {
        let mut d = 0;
        for a in 0..self.n {
            if a == v {
                continue;
            }
            for b in a + 1..self.n {
                if b != v && self.has_edge(v, a, b) {
                    d += 1;
                }
            }
        }
        d
    }

    /// Number of edges containing both `u` and `v`.
    pub fn pair_degree(&self, u: usize, v: usize) -> usize {
        (0..self.n)
            .filter(|&w| w != u && w != v && self.has_edge(u, v, w))
            .count()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        degree_profile(self)
    }

    /// New hypergraph with the listed triples toggled.
    pub fn toggled(&self, triples: &[Triple]) -> Result<Self> {
        let mut b = self.to_builder();
        for &t in triples {
            b.toggle(t)?;
        }
        Ok(b.build())
    }

    pub fn with_edges_removed(&self, triples: &[Triple]) -> Result<Self> {
        let mut b = self.to_builder();
        for &t in triples {
            b.remove(t)?;
        }
        Ok(b.build())
    }

    pub fn with_edges_added(&self, triples: &[Triple]) -> Result<Self> {
        let mut b = self.to_builder();
        for &t in triples {
            b.insert(t)?;
        }
        Ok(b.build())
    }

    /// Restriction `H|_U`, relabelled to `0..|U|` in increasing order.
    /// The returned vector maps new labels back to the original vertices.
    pub fn induced(&self, u: &VertexSet) -> (Hypergraph3, Vec<usize>) {
        let map = u.to_vec();
        let k = map.len();
        let mut b = HypergraphBuilder::new(k).expect("order within limit");
        for c in 2..k {
            for bb in 1..c {
                for a in 0..bb {
                    if self.has_edge(map[a], map[bb], map[c]) {
                        b.set_rank(rank_unchecked(a, bb, c));
                    }
                }
            }
        }
        (b.build(), map)
    }

    fn check_universe(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.n {
            return Err(Error::UniverseMismatch {
                expected: self.n,
                found: s.universe(),
            });
        }
        Ok(())
    }
}

/// Per-vertex degrees and their minimum `δ₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub min_degree: usize,
}

impl DegreeProfile {
    pub fn sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Vertices attaining the minimum degree.
    pub fn argmin(&self) -> Vec<usize> {
        (0..self.degrees.len())
            .filter(|&v| self.degrees[v] == self.min_degree)
            .collect()
    }
}

pub fn degree_profile(h: &Hypergraph3) -> DegreeProfile {
    let mut degrees = vec![0usize; h.n];
    for [a, b, c] in h.edges() {
        degrees[a] += 1;
        degrees[b] += 1;
        degrees[c] += 1;
    }
    let min_degree = degrees.iter().copied().min().unwrap_or(0);
    DegreeProfile {
        degrees,
        min_degree,
    }
}

/// Number of edges of `H|_U`.
pub fn edges_within(h: &Hypergraph3, u: &VertexSet) -> u64 {
    let vs = u.to_vec();
    let mut count = 0u64;
    for (k, &c) in vs.iter().enumerate() {
        for (j, &b) in vs[..k].iter().enumerate() {
            for &a in &vs[..j] {
                if h.has_rank(rank_unchecked(a, b, c)) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// `d₃(U) = |E(H|_U)| / C(|U|,3)`.
pub fn subset_density(h: &Hypergraph3, u: &VertexSet) -> Result<Rational> {
    h.check_universe(u)?;
    if u.len() < 3 {
        return Err(Error::SubsetTooSmall {
            size: u.len(),
            needed: 3,
        });
    }
    Ok(ratio(edges_within(h, u), binom3(u.len() as u64)))
}

/// `e₃(A, C(B,2))`: edges with one vertex in `A` and two in `B`.
pub fn cross_pairs_count(h: &Hypergraph3, a: &VertexSet, b: &VertexSet) -> u64 {
    let bs = b.to_vec();
    let mut count = 0u64;
    for x in a.iter() {
        for (j, &y) in bs.iter().enumerate() {
            for &z in &bs[j + 1..] {
                if h.has_edge(x, y, z) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// `d₃(A, C(B,2)) = e₃(A, C(B,2)) / (|A|·C(|B|,2))`.
pub fn cross_density_pairs(h: &Hypergraph3, a: &VertexSet, b: &VertexSet) -> Result<Rational> {
    h.check_universe(a)?;
    h.check_universe(b)?;
    if !a.is_disjoint(b) {
        return Err(Error::SetsNotDisjoint);
    }
    if a.is_empty() {
        return Err(Error::SubsetTooSmall { size: 0, needed: 1 });
    }
    if b.len() < 2 {
        return Err(Error::SubsetTooSmall {
            size: b.len(),
            needed: 2,
        });
    }
    let den = a.len() as u64 * binom2(b.len() as u64);
    Ok(ratio(cross_pairs_count(h, a, b), den))
}

/// Number of transversal triples of `(A1, A2, A3)` that are edges.
pub fn transversal_count(h: &Hypergraph3, a1: &[usize], a2: &[usize], a3: &[usize]) -> u64 {
    let mut count = 0u64;
    for &x in a1 {
        for &y in a2 {
            for &z in a3 {
                if h.has_edge(x, y, z) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// `d₃(A1, (A2 × A3))`: fraction of transversal triples that are edges.
pub fn cross_density_product(
    h: &Hypergraph3,
    a1: &VertexSet,
    a2: &VertexSet,
    a3: &VertexSet,
) -> Result<Rational> {
    for s in [a1, a2, a3] {
        h.check_universe(s)?;
        if s.is_empty() {
            return Err(Error::SubsetTooSmall { size: 0, needed: 1 });
        }
    }
    if !a1.is_disjoint(a2) || !a1.is_disjoint(a3) || !a2.is_disjoint(a3) {
        return Err(Error::SetsNotDisjoint);
    }
    let den = (a1.len() * a2.len() * a3.len()) as u64;
    Ok(ratio(
        transversal_count(h, &a1.to_vec(), &a2.to_vec(), &a3.to_vec()),
        den,
    ))
}

/// Edge counts by how many vertices they share with `S`:
/// `one_in_s = e₃(S, C(Sᶜ,2))`, `two_in_s = e₃(Sᶜ, C(S,2))`, `inside = e₃(H|_S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Accounting {
    pub one_in_s: u64,
    pub two_in_s: u64,
    pub inside: u64,
}

impl Accounting {
    /// `Σ_{v∈S} deg₃(v)` as reassembled from the three counts.
    pub fn degree_sum(&self) -> u64 {
        self.one_in_s + 2 * self.two_in_s + 3 * self.inside
    }
}

pub fn degree_accounting(h: &Hypergraph3, s: &VertexSet) -> Result<Accounting> {
    h.check_universe(s)?;
    let mut acc = Accounting {
        one_in_s: 0,
        two_in_s: 0,
        inside: 0,
    };
    for e in h.edges() {
        match e.iter().filter(|&&v| s.contains(v)).count() {
            1 => acc.one_in_s += 1,
            2 => acc.two_in_s += 1,
            3 => acc.inside += 1,
            _ => {}
        }
    }
    debug_assert_eq!(
        acc.degree_sum(),
        {
            let p = degree_profile(h);
            s.iter().map(|v| p.degrees[v] as u64).sum::<u64>()
        },
        "degree accounting identity"
    );
    Ok(acc)
}
