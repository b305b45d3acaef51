//! Covering the strongly exceptional and then the exceptional vertices by
//! a partial matching that keeps `|B′| = 2|A′|`.

use super::partition::{exceptional_sets, pair_degree_into, ExtremalPartition};
use super::ExtremalError;
use crate::hypergraph::{Hypergraph3, Triple};
use crate::matching::Matching;
use crate::vertex_set::VertexSet;

/// What is left of `A` and `B` after a stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Remainder {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Remainder {
    pub fn ratio_holds(&self) -> bool {
        self.b.len() == 2 * self.a.len()
    }

    fn take(&mut self, e: Triple) {
        for v in e {
            self.a.remove(v);
            self.b.remove(v);
        }
    }
}

/// First pair `{x, y}` (lexicographic) from `pool ∖ {v}` with `{v, x, y}` an
/// edge, restricted to `allowed` where given.
fn pair_with(h: &Hypergraph3, v: usize, pool: &VertexSet, avoid: Option<&VertexSet>) -> Option<(usize, usize)> {
    let vs: Vec<usize> = pool
        .iter()
        .filter(|&x| x != v && avoid.is_none_or(|s| !s.contains(x)))
        .collect();
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            if h.has_edge(v, x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// First `(x, y) ∈ xs × ys`, `x ≠ y`, with `{v, x, y}` an edge.
fn cross_with(h: &Hypergraph3, v: usize, xs: &VertexSet, ys: &VertexSet, avoid: Option<&VertexSet>) -> Option<(usize, usize)> {
    for x in xs.iter().filter(|&x| x != v) {
        for y in ys.iter().filter(|&y| y != v && y != x && avoid.is_none_or(|s| !s.contains(y))) {
            if h.has_edge(v, x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

fn push(m: &mut Matching, rem: &mut Remainder, e: Triple) {
    m.push(e).expect("partner vertices come from the remainder");
    rem.take(e);
}

/// A matching of size `k` in `H|_verts`: drop a maximum-degree vertex `v`,
/// recurse for `k − 1`, then add an edge through `v` (or any edge) avoiding
/// what the recursion used.
pub fn inductive_matching(h: &Hypergraph3, verts: &VertexSet, k: usize) -> Option<Vec<Triple>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let v = verts
        .iter()
        .max_by(|&x, &y| pair_degree_into(h, x, verts).cmp(&pair_degree_into(h, y, verts)).then(y.cmp(&x)))?;
    let mut rest = verts.clone();
    rest.remove(v);
    let mut m1 = inductive_matching(h, &rest, k - 1)?;
    let mut free = verts.clone();
    for e in &m1 {
        for &u in e {
            free.remove(u);
        }
    }
    if let Some((x, y)) = pair_with(h, v, &free, None) {
        m1.push(crate::hypergraph::sort3([v, x, y]));
        return Some(m1);
    }
    free.remove(v);
    let fs = free.to_vec();
    for (i, &x) in fs.iter().enumerate() {
        for (j, &y) in fs.iter().enumerate().skip(i + 1) {
            for &z in &fs[j + 1..] {
                if h.has_edge(x, y, z) {
                    m1.push([x, y, z]);
                    return Some(m1);
                }
            }
        }
    }
    None
}

/// Output of the strongly exceptional stage.
#[derive(Clone, Debug, PartialEq)]
pub struct StrongElimination {
    pub matching: Matching,
    pub remainder: Remainder,
    /// The `S_A` branch used per-vertex greedy edges because `|B| < 27|S_A|`.
    pub greedy_fallback: bool,
}

/// Covers `S_A ∪ S_B`. With `S_B ≠ ∅`: an edge inside `B` through each
/// `b ∈ S_B`, then `|S_B|` edges `{b′, a, a′}` with `b′ ∉ X_B`. With
/// `S_A ≠ ∅`: a matching of size `|S_A|` in `H|_{S_A ∪ B}`, after which the
/// unused `S_A` vertices join `B′`.
pub fn eliminate_strongly_exceptional(h: &Hypergraph3, p: &ExtremalPartition) -> Result<StrongElimination, ExtremalError> {
    let n = h.n();
    let mut m = Matching::new(n);
    let mut rem = Remainder {
        a: p.a.clone(),
        b: p.b.clone(),
    };
    if !p.s_a.is_empty() && !p.s_b.is_empty() {
        return Err(ExtremalError::ExchangeIncomplete {
            s_a: p.s_a.len(),
            s_b: p.s_b.len(),
        });
    }
    let mut greedy_fallback = false;
    if !p.s_b.is_empty() {
        for b in p.s_b.iter() {
            let (x, y) = pair_with(h, b, &rem.b, Some(&p.s_b)).ok_or(ExtremalError::GreedyFailed {
                stage: "strong",
                vertex: b,
            })?;
            push(&mut m, &mut rem, crate::hypergraph::sort3([b, x, y]));
        }
        for _ in 0..p.s_b.len() {
            let found = rem
                .b
                .iter()
                .filter(|&v| !p.x_b.contains(v))
                .find_map(|v| pair_with(h, v, &rem.a, None).map(|(x, y)| [v, x, y]));
            let e = found.ok_or(ExtremalError::GreedyFailed {
                stage: "strong",
                vertex: rem.b.first().unwrap_or(0),
            })?;
            push(&mut m, &mut rem, crate::hypergraph::sort3(e));
        }
    } else if !p.s_a.is_empty() {
        if p.b.len() >= 27 * p.s_a.len() {
            let verts = p.s_a.union(&p.b);
            let edges = inductive_matching(h, &verts, p.s_a.len()).ok_or(ExtremalError::GreedyFailed {
                stage: "strong",
                vertex: p.s_a.first().expect("nonempty"),
            })?;
            for e in edges {
                m.push(e).expect("matching edges are disjoint");
            }
            rem.a = p.a.difference(&p.s_a);
            rem.b = verts.difference(m.covered());
        } else {
            greedy_fallback = true;
            for a in p.s_a.iter() {
                let (x, y) = pair_with(h, a, &rem.b, None).ok_or(ExtremalError::GreedyFailed {
                    stage: "strong",
                    vertex: a,
                })?;
                push(&mut m, &mut rem, crate::hypergraph::sort3([a, x, y]));
            }
        }
    }
    assert!(rem.ratio_holds(), "strong elimination keeps |B'| = 2|A'|");
    Ok(StrongElimination {
        matching: m,
        remainder: rem,
        greedy_fallback,
    })
}

/// Exceptional sets of the remainder, recomputed on `(A′, B′)`.
pub fn remainder_exceptional(h: &Hypergraph3, rem: &Remainder, alpha: crate::rational::Rational) -> (VertexSet, VertexSet) {
    let (x_a, x_b, _, _) = exceptional_sets(h, &rem.a, &rem.b, alpha);
    (x_a, x_b)
}

/// Covers the exceptional vertices of the remainder: `{a, b, b′}` for
/// `a ∈ X_A`, then `{b, a, b′}` for `b ∈ X_B`. Partners are taken outside
/// `X_B` when possible.
pub fn eliminate_exceptional(
    h: &Hypergraph3,
    rem: &Remainder,
    x_a: &VertexSet,
    x_b: &VertexSet,
) -> Result<(Matching, Remainder), ExtremalError> {
    let mut m = Matching::new(h.n());
    let mut rem = rem.clone();
    for a in x_a.iter() {
        if !rem.a.contains(a) {
            continue;
        }
        let (x, y) = pair_with(h, a, &rem.b, Some(x_b))
            .or_else(|| pair_with(h, a, &rem.b, None))
            .ok_or(ExtremalError::GreedyFailed { stage: "exceptional", vertex: a })?;
        push(&mut m, &mut rem, crate::hypergraph::sort3([a, x, y]));
    }
    for b in x_b.iter() {
        if !rem.b.contains(b) {
            continue;
        }
        let (x, y) = cross_with(h, b, &rem.a, &rem.b, Some(x_b))
            .or_else(|| cross_with(h, b, &rem.a, &rem.b, None))
            .ok_or(ExtremalError::GreedyFailed { stage: "exceptional", vertex: b })?;
        push(&mut m, &mut rem, crate::hypergraph::sort3([b, x, y]));
    }
    assert!(rem.ratio_holds(), "exceptional elimination keeps |B''| = 2|A''|");
    Ok((m, rem))
}
