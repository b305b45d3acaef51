use thiserror::Error;

use crate::hypergraph::{Hypergraph3, Triple};
use crate::matching::Matching;
use crate::vertex_set::VertexSet;

/// Complete balanced 3-partite subgraph: every transversal triple of the
/// three classes is an edge of the host.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tripartite {
    classes: [Vec<usize>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverViolation {
    #[error("vertex {0} appears twice")]
    Overlap(usize),
    #[error("member {member} has class size {found}, expected {expected}")]
    SizeMismatch {
        member: usize,
        expected: usize,
        found: usize,
    },
    #[error("member {member} misses transversal triple {triple:?}")]
    NotComplete { member: usize, triple: Triple },
    #[error("leftover set is not the complement of the covered vertices")]
    LeftoverMismatch,
    #[error("member classes are unbalanced or empty")]
    Unbalanced,
}

impl Tripartite {
    /// Classes are sorted; they must be nonempty, equal-sized and disjoint.
    pub fn new(mut x: Vec<usize>, mut y: Vec<usize>, mut z: Vec<usize>) -> Result<Self, CoverViolation> {
        if x.is_empty() || x.len() != y.len() || y.len() != z.len() {
            return Err(CoverViolation::Unbalanced);
        }
        x.sort_unstable();
        y.sort_unstable();
        z.sort_unstable();
        let mut all: Vec<usize> = x.iter().chain(&y).chain(&z).copied().collect();
        all.sort_unstable();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(CoverViolation::Overlap(w[0]));
        }
        Ok(Tripartite { classes: [x, y, z] })
    }

    pub fn from_edge(e: Triple) -> Self {
        Tripartite::new(vec![e[0]], vec![e[1]], vec![e[2]]).expect("edge has distinct vertices")
    }

    pub fn t(&self) -> usize {
        self.classes[0].len()
    }

    pub fn class(&self, l: usize) -> &[usize] {
        &self.classes[l]
    }

    pub fn classes(&self) -> &[Vec<usize>; 3] {
        &self.classes
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().flatten().copied()
    }

    pub fn first_missing(&self, h: &Hypergraph3) -> Option<Triple> {
        for &x in &self.classes[0] {
            for &y in &self.classes[1] {
                for &z in &self.classes[2] {
                    if !h.has_edge(x, y, z) {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    pub fn is_complete(&self, h: &Hypergraph3) -> bool {
        self.first_missing(h).is_none()
    }

    /// `t` disjoint transversal edges: the i-th vertex of each class.
    pub fn flatten(&self) -> Vec<Triple> {
        (0..self.t())
            .map(|i| [self.classes[0][i], self.classes[1][i], self.classes[2][i]])
            .collect()
    }

    /// Cuts into members of class size `s` by consecutive chunks; returns
    /// them with the vertices of the incomplete final chunk.
    pub fn split(&self, s: usize) -> (Vec<Tripartite>, Vec<usize>) {
        assert!(s >= 1);
        let k = self.t() / s;
        let pieces = (0..k)
            .map(|i| {
                let part = |l: usize| self.classes[l][i * s..(i + 1) * s].to_vec();
                Tripartite::new(part(0), part(1), part(2)).expect("sub-classes stay disjoint")
            })
            .collect();
        let rest = self
            .classes
            .iter()
            .flat_map(|c| c[k * s..].iter().copied())
            .collect();
        (pieces, rest)
    }

    /// Drops `used` vertices, then trims every class to the smallest
    /// remaining size (largest labels go first). Returns the balanced
    /// remainder, if nonempty, and the trimmed vertices.
    pub fn without(&self, used: &VertexSet) -> (Option<Tripartite>, Vec<usize>) {
        let kept: Vec<Vec<usize>> = self
            .classes
            .iter()
            .map(|c| c.iter().copied().filter(|&v| !used.contains(v)).collect())
            .collect();
        let size = kept.iter().map(Vec::len).min().unwrap_or(0);
        let mut trimmed = Vec::new();
        let mut parts = Vec::with_capacity(3);
        for c in kept {
            trimmed.extend_from_slice(&c[size..]);
            parts.push(c[..size].to_vec());
        }
        let piece = if size == 0 {
            None
        } else {
            let z = parts.pop().unwrap();
            let y = parts.pop().unwrap();
            let x = parts.pop().unwrap();
            Some(Tripartite::new(x, y, z).expect("subsets of disjoint classes"))
        };
        (piece, trimmed)
    }
}

/// Disjoint members of a common class size `t` plus the uncovered set `ℐ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripartiteCover {
    n: usize,
    t: usize,
    members: Vec<Tripartite>,
    leftover: VertexSet,
}

impl TripartiteCover {
    pub fn empty(n: usize, t: usize) -> Self {
        TripartiteCover {
            n,
            t,
            members: Vec::new(),
            leftover: VertexSet::full(n),
        }
    }

    /// Builds the cover and its leftover; checks disjointness and sizes but
    /// not completeness (see [`TripartiteCover::validate`]).
    pub fn from_members(n: usize, t: usize, members: Vec<Tripartite>) -> Result<Self, CoverViolation> {
        let mut covered = VertexSet::new(n);
        for (i, m) in members.iter().enumerate() {
            if m.t() != t {
                return Err(CoverViolation::SizeMismatch {
                    member: i,
                    expected: t,
                    found: m.t(),
                });
            }
            for v in m.vertices() {
                if v >= n || !covered.insert(v) {
                    return Err(CoverViolation::Overlap(v));
                }
            }
        }
        Ok(TripartiteCover {
            n,
            t,
            members,
            leftover: covered.complement(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn members(&self) -> &[Tripartite] {
        &self.members
    }

    pub fn leftover(&self) -> &VertexSet {
        &self.leftover
    }

    pub fn covered_count(&self) -> usize {
        self.members.len() * 3 * self.t
    }

    pub fn covered_set(&self) -> VertexSet {
        self.leftover.complement()
    }

    /// Re-verifies every invariant against `h`.
    pub fn validate(&self, h: &Hypergraph3) -> Result<(), CoverViolation> {
        let rebuilt = TripartiteCover::from_members(self.n, self.t, self.members.clone())?;
        if rebuilt.leftover != self.leftover || self.covered_count() + self.leftover.len() != self.n {
            return Err(CoverViolation::LeftoverMismatch);
        }
        for (i, m) in self.members.iter().enumerate() {
            if let Some(triple) = m.first_missing(h) {
                return Err(CoverViolation::NotComplete { member: i, triple });
            }
        }
        Ok(())
    }

    pub fn to_matching(&self) -> Matching {
        Matching::from_edges(self.n, self.members.iter().flat_map(Tripartite::flatten))
            .expect("members are disjoint")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_and_trim() {
        let t = Tripartite::new(vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]).unwrap();
        let (pieces, rest) = t.split(2);
        assert_eq!(pieces.len(), 1);
        assert_eq!(rest, vec![2, 5, 8]);
        let (piece, trimmed) = t.without(&VertexSet::from_iter(9, [0]));
        let piece = piece.unwrap();
        assert_eq!(piece.t(), 2);
        assert_eq!(trimmed, vec![5, 8]);
        let (none, trimmed) = Tripartite::from_edge([0, 1, 2]).without(&VertexSet::from_iter(3, [1]));
        assert!(none.is_none());
        assert_eq!(trimmed, vec![0, 2]);
    }

    #[test]
    fn validation_catches_incomplete_members() {
        let h = Hypergraph3::complete(9).with_edges_removed(&[[0, 3, 6]]).unwrap();
        let t = Tripartite::new(vec![0, 1], vec![3, 4], vec![6, 7]).unwrap();
        let c = TripartiteCover::from_members(9, 2, vec![t]).unwrap();
        assert_eq!(
            c.validate(&h),
            Err(CoverViolation::NotComplete {
                member: 0,
                triple: [0, 3, 6]
            })
        );
        assert_eq!(c.leftover().to_vec(), vec![2, 5, 8]);
        assert!(TripartiteCover::from_members(9, 1, c.members().to_vec()).is_err());
    }
}
