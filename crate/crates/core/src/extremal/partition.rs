//! The `A`/`B` split of an extremal instance and its exceptional sets.

use std::cmp::Ordering;

use super::ExtremalError;
use crate::hypergraph::{binom2, subset_density, Hypergraph3};
use crate::rational::{from_int, lt_one_minus_root, lt_root, pow_cmp, ratio, Rational};
use crate::vertex_set::VertexSet;

/// Pairs `{x, y} ⊆ set ∖ {v}` with `{v, x, y}` an edge.
pub fn pair_degree_into(h: &Hypergraph3, v: usize, set: &VertexSet) -> u64 {
    let vs: Vec<usize> = set.iter().filter(|&x| x != v).collect();
    let mut count = 0;
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            if h.has_edge(v, x, y) {
                count += 1;
            }
        }
    }
    count
}

/// Pairs `(b′, a) ∈ (b_set ∖ {b}) × a_set` with `{b, b′, a}` an edge.
pub fn cross_degree(h: &Hypergraph3, b: usize, b_set: &VertexSet, a_set: &VertexSet) -> u64 {
    let mut count = 0;
    for x in b_set.iter().filter(|&x| x != b) {
        for a in a_set.iter().filter(|&a| a != b) {
            if h.has_edge(b, x, a) {
                count += 1;
            }
        }
    }
    count
}

/// `A ⊎ B` with `|B| = 2|A|` and the four exceptional sets computed from
/// their degree definitions. `X_A ⊇ S_A` and `X_B ⊇ S_B` by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalPartition {
    pub a: VertexSet,
    pub b: VertexSet,
    pub x_a: VertexSet,
    pub x_b: VertexSet,
    pub s_a: VertexSet,
    pub s_b: VertexSet,
    pub alpha: Rational,
}

/// Which of the four size bounds hold: `|X_A| ≤ 18√α|A|`, `|X_B| ≤ 18√α|B|`,
/// `|S_B| ≤ 40α|B|`, `|S_A| ≤ 40α|A|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExceptionalBounds {
    pub x_a: bool,
    pub x_b: bool,
    pub s_b: bool,
    pub s_a: bool,
}

impl ExceptionalBounds {
    pub fn all(&self) -> bool {
        self.x_a && self.x_b && self.s_a && self.s_b
    }
}

fn root_bound(size: usize, coef: i64, part: usize, alpha: Rational) -> bool {
    // size ≤ coef·√α·part
    if size == 0 {
        return true;
    }
    if part == 0 {
        return false;
    }
    pow_cmp(ratio(size as u64, (coef as u64) * part as u64), 2, alpha) != Ordering::Greater
}

impl ExtremalPartition {
    pub fn new(h: &Hypergraph3, a: VertexSet, b: VertexSet, alpha: Rational) -> Self {
        let n = h.n();
        let mut p = ExtremalPartition {
            a,
            b,
            x_a: VertexSet::new(n),
            x_b: VertexSet::new(n),
            s_a: VertexSet::new(n),
            s_b: VertexSet::new(n),
            alpha,
        };
        p.recompute(h);
        p
    }

    /// Recomputes the exceptional sets for the current `A`, `B`.
    pub fn recompute(&mut self, h: &Hypergraph3) {
        let (x_a, x_b, s_a, s_b) = exceptional_sets(h, &self.a, &self.b, self.alpha);
        self.x_a = x_a;
        self.x_b = x_b;
        self.s_a = s_a;
        self.s_b = s_b;
    }

    pub fn is_consistent(&self, h: &Hypergraph3) -> bool {
        let (x_a, x_b, s_a, s_b) = exceptional_sets(h, &self.a, &self.b, self.alpha);
        x_a == self.x_a && x_b == self.x_b && s_a == self.s_a && s_b == self.s_b
    }

    pub fn bounds(&self) -> ExceptionalBounds {
        let forty_alpha = self.alpha * 40;
        ExceptionalBounds {
            x_a: root_bound(self.x_a.len(), 18, self.a.len(), self.alpha),
            x_b: root_bound(self.x_b.len(), 18, self.b.len(), self.alpha),
            s_b: from_int(self.s_b.len() as u64) <= forty_alpha * from_int(self.b.len() as u64),
            s_a: from_int(self.s_a.len() as u64) <= forty_alpha * from_int(self.a.len() as u64),
        }
    }
}

/// `(X_A, X_B, S_A, S_B)` for the split `(A, B)`.
pub fn exceptional_sets(
    h: &Hypergraph3,
    a: &VertexSet,
    b: &VertexSet,
    alpha: Rational,
) -> (VertexSet, VertexSet, VertexSet, VertexSet) {
    let n = h.n();
    let (mut x_a, mut x_b, mut s_a, mut s_b) =
        (VertexSet::new(n), VertexSet::new(n), VertexSet::new(n), VertexSet::new(n));
    let pairs_b = binom2(b.len() as u64);
    for v in a.iter() {
        if pairs_b == 0 {
            break;
        }
        let frac = ratio(pair_degree_into(h, v, b), pairs_b);
        if lt_root(frac, alpha, 3) {
            s_a.insert(v);
            x_a.insert(v);
        }
        if lt_one_minus_root(frac, alpha, 2) {
            x_a.insert(v);
        }
    }
    let cross = a.len() as u64 * (b.len() as u64).saturating_sub(1);
    for v in b.iter() {
        if cross == 0 {
            break;
        }
        let frac = ratio(cross_degree(h, v, b, a), cross);
        if lt_root(frac, alpha, 3) {
            s_b.insert(v);
            x_b.insert(v);
        }
        if lt_one_minus_root(frac, alpha, 2) {
            x_b.insert(v);
        }
    }
    (x_a, x_b, s_a, s_b)
}

/// Checks the certificate (`|B₀| ≥ (2/3 − α)n`, `d₃(B₀) < α`), shifts
/// vertices to reach `|A| = n/3`, `|B| = 2n/3`, checks `d₃(B) < 6α` and
/// computes the exceptional sets.
///
/// Surplus `B` vertices leave in decreasing order of their degree into
/// `C(B,2)`; missing ones are taken from `A` in increasing order of it. Ties
/// go to the smaller label.
pub fn prepare_extremal_partition(
    h: &Hypergraph3,
    b0: &VertexSet,
    alpha: Rational,
) -> Result<ExtremalPartition, ExtremalError> {
    let n = h.n();
    if !n.is_multiple_of(3) || n < 3 {
        return Err(ExtremalError::InvalidOrder(n));
    }
    if b0.universe() != n {
        return Err(ExtremalError::NotExtremal {
            size: b0.len(),
            density: None,
        });
    }
    let density = subset_density(h, b0).ok();
    let floor = (Rational::new(2, 3) - alpha) * from_int(n as u64);
    if from_int(b0.len() as u64) < floor || density.is_none_or(|d| d >= alpha) {
        return Err(ExtremalError::NotExtremal {
            size: b0.len(),
            density,
        });
    }
    let target = 2 * n / 3;
    let mut b = b0.clone();
    let mut a = b.complement();
    while b.len() > target {
        let v = b
            .iter()
            .max_by(|&x, &y| pair_degree_into(h, x, &b).cmp(&pair_degree_into(h, y, &b)).then(y.cmp(&x)))
            .expect("B is nonempty");
        b.remove(v);
        a.insert(v);
    }
    while b.len() < target {
        let v = a
            .iter()
            .min_by(|&x, &y| pair_degree_into(h, x, &b).cmp(&pair_degree_into(h, y, &b)).then(x.cmp(&y)))
            .expect("A is nonempty");
        a.remove(v);
        b.insert(v);
    }
    let d = subset_density(h, &b).map_err(ExtremalError::Core)?;
    if d >= alpha * 6 {
        return Err(ExtremalError::DensityTooHigh { density: d });
    }
    Ok(ExtremalPartition::new(h, a, b, alpha))
}

/// Swaps the smallest `a ∈ S_A` with the smallest `b ∈ S_B` while both are
/// nonempty and the swap strictly shrinks `|S_A| + |S_B|`. Returns the number
/// of swaps.
pub fn exchange_reduce(p: &mut ExtremalPartition, h: &Hypergraph3) -> usize {
    let mut swaps = 0;
    while let (Some(x), Some(y)) = (p.s_a.first(), p.s_b.first()) {
        let before = p.s_a.len() + p.s_b.len();
        let mut next = p.clone();
        next.a.remove(x);
        next.b.insert(x);
        next.b.remove(y);
        next.a.insert(y);
        next.recompute(h);
        if next.s_a.len() + next.s_b.len() >= before {
            break;
        }
        *p = next;
        swaps += 1;
    }
    swaps
}

/// `true` when every vertex of `B` is strongly exceptional towards `C(B,2)`,
/// i.e. `deg(b, C(B,2)) < α^{1/3}·C(|B|,2)`.
pub fn b_pairs_sparse(h: &Hypergraph3, p: &ExtremalPartition) -> bool {
    let pairs = binom2(p.b.len() as u64);
    pairs == 0
        || p.b
            .iter()
            .all(|v| lt_root(ratio(pair_degree_into(h, v, &p.b), pairs), p.alpha, 3))
}
