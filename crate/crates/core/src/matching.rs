use thiserror::Error;

use crate::hypergraph::{sort3, Hypergraph3, Triple};
use crate::vertex_set::VertexSet;

/// Set of pairwise-disjoint vertex triples on `n` vertices.
///
/// Disjointness is enforced on insertion; whether each triple is an edge of a
/// given host is checked by [`verify_matching`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<Triple>,
    covered: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("vertex {0} is already covered")]
    Overlap(usize),
    #[error("triple {0:?} is not three distinct vertices below the order")]
    BadTriple(Triple),
}

impl Matching {
    pub fn new(n: usize) -> Self {
        Matching {
            edges: Vec::new(),
            covered: VertexSet::new(n),
        }
    }

    pub fn from_edges<I: IntoIterator<Item = Triple>>(
        n: usize,
        edges: I,
    ) -> Result<Self, MatchingError> {
        let mut m = Matching::new(n);
        for e in edges {
            m.push(e)?;
        }
        Ok(m)
    }

    pub fn push(&mut self, e: Triple) -> Result<(), MatchingError> {
        let e = sort3(e);
        if e[0] == e[1] || e[1] == e[2] || e[2] >= self.covered.universe() {
            return Err(MatchingError::BadTriple(e));
        }
        if let Some(&v) = e.iter().find(|&&v| self.covered.contains(v)) {
            return Err(MatchingError::Overlap(v));
        }
        for v in e {
            self.covered.insert(v);
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn extend_from(&mut self, other: &Matching) -> Result<(), MatchingError> {
        for &e in &other.edges {
            self.push(e)?;
        }
        Ok(())
    }

    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn covered(&self) -> &VertexSet {
        &self.covered
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn order(&self) -> usize {
        self.covered.universe()
    }

    pub fn is_perfect(&self) -> bool {
        self.covered.len() == self.covered.universe()
    }

    /// Edges sorted in colex order, the canonical output order.
    pub fn sorted_edges(&self) -> Vec<Triple> {
        let mut es = self.edges.clone();
        es.sort_by_key(|e| (e[2], e[1], e[0]));
        es
    }

    /// Relabels through `map` (new vertex `i` becomes `map[i]`) into order `n`.
    pub fn lift(&self, map: &[usize], n: usize) -> Matching {
        Matching::from_edges(
            n,
            self.edges.iter().map(|e| [map[e[0]], map[e[1]], map[e[2]]]),
        )
        .expect("relabelling preserves disjointness")
    }
}

/// Why a candidate matching was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("triple {0:?} is malformed for this hypergraph")]
    Malformed(Triple),
    #[error("triple {0:?} is not an edge")]
    NonEdge(Triple),
    #[error("vertex {vertex} is covered twice (second time by {edge:?})")]
    Overlap { vertex: usize, edge: Triple },
    #[error("matching covers {covered} of {n} vertices")]
    Incomplete { covered: usize, n: usize },
}

/// Checks raw triples against `h`: each is an edge, they are pairwise
/// disjoint, and with `perfect` they cover every vertex.
pub fn verify_triples(h: &Hypergraph3, triples: &[Triple], perfect: bool) -> Result<(), Rejection> {
    let mut seen = VertexSet::new(h.n());
    for &t in triples {
        let s = sort3(t);
        if s[0] == s[1] || s[1] == s[2] || s[2] >= h.n() {
            return Err(Rejection::Malformed(t));
        }
        if !h.contains(s) {
            return Err(Rejection::NonEdge(s));
        }
        for v in s {
            if !seen.insert(v) {
                return Err(Rejection::Overlap { vertex: v, edge: s });
            }
        }
    }
    if perfect && seen.len() != h.n() {
        return Err(Rejection::Incomplete {
            covered: seen.len(),
            n: h.n(),
        });
    }
    Ok(())
}

pub fn verify_matching(h: &Hypergraph3, m: &Matching, perfect: bool) -> Result<(), Rejection> {
    if m.order() != h.n() {
        return Err(Rejection::Incomplete {
            covered: m.covered().len(),
            n: h.n(),
        });
    }
    verify_triples(h, m.edges(), perfect)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_six_perfect() {
        let h = Hypergraph3::complete(6);
        let m = Matching::from_edges(6, [[0, 1, 2], [3, 4, 5]]).unwrap();
        assert_eq!(verify_matching(&h, &m, true), Ok(()));
        let h2 = h.with_edges_removed(&[[3, 4, 5]]).unwrap();
        assert_eq!(
            verify_matching(&h2, &m, true),
            Err(Rejection::NonEdge([3, 4, 5]))
        );
    }

    #[test]
    fn incomplete_and_overlap() {
        let h = Hypergraph3::complete(6);
        let m = Matching::from_edges(6, [[0, 1, 2]]).unwrap();
        assert_eq!(verify_matching(&h, &m, false), Ok(()));
        assert_eq!(
            verify_matching(&h, &m, true),
            Err(Rejection::Incomplete { covered: 3, n: 6 })
        );
        assert_eq!(
            verify_triples(&h, &[[0, 1, 2], [2, 3, 4]], false),
            Err(Rejection::Overlap {
                vertex: 2,
                edge: [2, 3, 4]
            })
        );
        assert_eq!(
            Matching::from_edges(6, [[0, 1, 2], [2, 3, 4]]),
            Err(MatchingError::Overlap(2))
        );
    }
}
