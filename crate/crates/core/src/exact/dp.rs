//! Subset dynamic programming. States are vertex masks; the lowest vertex of
//! a mask is either left unmatched or matched by an edge in which it is the
//! smallest vertex, so every state has a fixed, reproducible transition set.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::matching::Matching;

pub const DP_LIMIT: usize = 24;

/// For each vertex `v`, the two-bit masks `{a, b}` with `{v, a, b}` an edge
/// and `v < a < b`.
pub(crate) fn pair_masks(h: &Hypergraph3) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); h.n()];
    for [a, b, c] in h.edges() {
        out[a].push((1u32 << b) | (1u32 << c));
    }
    out
}

fn check(h: &Hypergraph3) -> Result<()> {
    if h.n() > DP_LIMIT {
        return Err(Error::OrderTooLarge {
            n: h.n(),
            limit: DP_LIMIT,
        });
    }
    Ok(())
}

/// Maximum matching size and a witness.
pub fn max_matching_dp(h: &Hypergraph3) -> Result<(usize, Matching)> {
    check(h)?;
    let n = h.n();
    let pairs = pair_masks(h);
    let full: u32 = if n == 0 { 0 } else { ((1u64 << n) - 1) as u32 };
    let mut f = vec![0u8; 1usize << n];
    for mask in 1..=full {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = f[rest as usize];
        for &pm in &pairs[v] {
            if pm & rest == pm {
                best = best.max(1 + f[(rest & !pm) as usize]);
            }
        }
        f[mask as usize] = best;
    }

    let mut m = Matching::new(n);
    let mut mask = full;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let here = f[mask as usize];
        if here == f[rest as usize] {
            mask = rest;
            continue;
        }
        let pm = pairs[v]
            .iter()
            .copied()
            .find(|&pm| pm & rest == pm && 1 + f[(rest & !pm) as usize] == here)
            .expect("table entry has a realizing transition");
        let a = pm.trailing_zeros() as usize;
        let b = 31 - pm.leading_zeros() as usize;
        m.push([v, a, b]).expect("disjoint by construction");
        mask = rest & !pm;
    }
    Ok((f[full as usize] as usize, m))
}

/// Perfect-matching search over the same state space, only visiting masks
/// reachable by always covering the lowest remaining vertex. Failed states
/// are remembered in a 2^n-bit table.
pub fn perfect_matching_dp(h: &Hypergraph3) -> Result<Option<Matching>> {
    check(h)?;
    let n = h.n();
    if !n.is_multiple_of(3) {
        return Ok(None);
    }
    let pairs = pair_masks(h);
    Ok(perfect_from_pairs(n, &pairs))
}

pub(crate) fn perfect_from_pairs(n: usize, pairs: &[Vec<u32>]) -> Option<Matching> {
    let full: u32 = if n == 0 { 0 } else { ((1u64 << n) - 1) as u32 };
    let mut failed = vec![0u64; (1usize << n).div_ceil(64)];
    let mut chosen = Vec::with_capacity(n / 3);
    if search(full, pairs, &mut failed, &mut chosen) {
        let mut m = Matching::new(n);
        for (v, pm) in chosen {
            let a = pm.trailing_zeros() as usize;
            let b = 31 - pm.leading_zeros() as usize;
            m.push([v, a, b]).expect("disjoint by construction");
        }
        Some(m)
    } else {
        None
    }
}

fn search(mask: u32, pairs: &[Vec<u32>], failed: &mut [u64], chosen: &mut Vec<(usize, u32)>) -> bool {
    if mask == 0 {
        return true;
    }
    let idx = mask as usize;
    if failed[idx / 64] >> (idx % 64) & 1 == 1 {
        return false;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    for &pm in &pairs[v] {
        if pm & rest == pm && search(rest & !pm, pairs, failed, chosen) {
            chosen.push((v, pm));
            return true;
        }
    }
    failed[idx / 64] |= 1 << (idx % 64);
    false
}

/// Perfect-matching decision for a graph on at most 6 vertices given as a
/// 20-bit edge mask in colex order. Used by the n=6 enumeration.
pub fn has_pm_n6(mask: u32) -> bool {
    // colex ranks of the ten partitions {e, complement} of {0..5}
    const SPLITS: [(u32, u32); 10] = [
        (0, 19),
        (1, 18),
        (2, 17),
        (3, 16),
        (4, 15),
        (5, 14),
        (6, 13),
        (7, 12),
        (8, 11),
        (9, 10),
    ];
    SPLITS
        .iter()
        .any(|&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
}
