//! Instance generators: the extremal example, its perfect-matchable variant,
//! and seeded random families.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{binom2, binom3, triple_unrank, Hypergraph3, HypergraphBuilder, Triple};
use crate::vertex_set::VertexSet;

/// The extremal example with its vertex partition.
#[derive(Clone, Debug)]
pub struct Partitioned {
    pub h: Hypergraph3,
    pub a: VertexSet,
    pub b: VertexSet,
}

fn check_order(n: usize) -> Result<()> {
    if n < 6 || !n.is_multiple_of(3) {
        return Err(Error::InvalidOrder {
            n,
            reason: "expected a multiple of 3 that is at least 6",
        });
    }
    Ok(())
}

/// All triples meeting `A = {0, .., a_len - 1}`.
fn meets_prefix(n: usize, a_len: usize) -> Partitioned {
    let h = Hypergraph3::from_fn(n, |t| t[0] < a_len);
    Partitioned {
        h,
        a: VertexSet::from_iter(n, 0..a_len),
        b: VertexSet::from_iter(n, a_len..n),
    }
}

/// `|A| = n/3 − 1`, every triple meeting `A` is an edge. Minimum degree
/// `C(n−1,2) − C(2n/3,2)`, maximum matching `n/3 − 1`.
pub fn extremal_construction(n: usize) -> Result<Partitioned> {
    check_order(n)?;
    Ok(meets_prefix(n, n / 3 - 1))
}

/// Same shape with `|A| = n/3`: meets the threshold and has a perfect matching.
pub fn extremal_plus(n: usize) -> Result<Hypergraph3> {
    check_order(n)?;
    Ok(meets_prefix(n, n / 3).h)
}

pub fn extremal_plus_partitioned(n: usize) -> Result<Partitioned> {
    check_order(n)?;
    Ok(meets_prefix(n, n / 3))
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    Ok(())
}

fn random_into(b: &mut HypergraphBuilder, n: usize, p: f64, rng: &mut ChaCha8Rng) {
    for r in 0..binom3(n as u64) as usize {
        if rng.random::<f64>() < p {
            b.set_rank(r);
        }
    }
}

/// Binomial random 3-graph: each triple independently with probability `p`.
pub fn random_3graph(n: usize, p: f64, seed: u64) -> Result<Hypergraph3> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = HypergraphBuilder::new(n)?;
    random_into(&mut b, n, p, &mut rng);
    Ok(b.build())
}

/// Random 3-graph with `δ₁ ≥ tau`: a binomial graph at density
/// `tau / C(n−1,2)`, then every deficient vertex is topped up with uniformly
/// chosen missing incident triples.
pub fn random_min_degree(n: usize, tau: usize, seed: u64) -> Result<Hypergraph3> {
    let max_deg = binom2(n.saturating_sub(1) as u64) as usize;
    if tau > max_deg {
        return Err(Error::InvalidParameter(format!(
            "degree floor {tau} exceeds C(n-1,2) = {max_deg}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = HypergraphBuilder::new(n)?;
    if max_deg > 0 {
        random_into(&mut b, n, tau as f64 / max_deg as f64, &mut rng);
    }
    let mut degrees = vec![0usize; n];
    let built = b.clone().build();
    for [x, y, z] in built.edges() {
        degrees[x] += 1;
        degrees[y] += 1;
        degrees[z] += 1;
    }
    for v in 0..n {
        if degrees[v] >= tau {
            continue;
        }
        let mut missing: Vec<Triple> = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if x != v && y != v && !b.contains([v, x, y]).expect("valid triple") {
                    missing.push([v, x, y]);
                }
            }
        }
        missing.shuffle(&mut rng);
        let need = tau - degrees[v];
        for t in missing.into_iter().take(need) {
            b.insert(t).expect("valid triple");
            for u in t {
                degrees[u] += 1;
            }
        }
    }
    Ok(b.build())
}

/// [`extremal_plus`] with `flips` distinct uniformly chosen triples toggled.
pub fn perturbed_extremal(n: usize, flips: usize, seed: u64) -> Result<Hypergraph3> {
    let base = extremal_plus(n)?;
    let total = binom3(n as u64) as usize;
    if flips > total {
        return Err(Error::InvalidParameter(format!(
            "{flips} flips exceed the {total} available triples"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = base.to_builder();
    for r in index::sample(&mut rng, total, flips).into_iter() {
        b.toggle_rank(r);
    }
    Ok(b.build())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Extremal,
    ExtremalPlus,
    Random,
    MinDegreeRandom,
    PerturbedExtremal,
}

/// Full parameter set of a generator run; `generate` is a pure function of it.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub p: f64,
    pub tau: usize,
    pub flips: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize) -> Self {
        GeneratorSpec {
            kind,
            n,
            p: 0.5,
            tau: 0,
            flips: 0,
            seed: 0,
        }
    }

    pub fn generate(&self) -> Result<Hypergraph3> {
        match self.kind {
            GeneratorKind::Extremal => extremal_construction(self.n).map(|p| p.h),
            GeneratorKind::ExtremalPlus => extremal_plus(self.n),
            GeneratorKind::Random => random_3graph(self.n, self.p, self.seed),
            GeneratorKind::MinDegreeRandom => random_min_degree(self.n, self.tau, self.seed),
            GeneratorKind::PerturbedExtremal => perturbed_extremal(self.n, self.flips, self.seed),
        }
    }
}

/// All triples of `V`, in colex order. Handy for exhaustive tests.
pub fn all_triples(n: usize) -> impl Iterator<Item = Triple> {
    (0..binom3(n as u64)).map(triple_unrank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::subset_density;
    use crate::rational::Rational;

    fn closed_form_min_degree(n: usize) -> usize {
        (binom2(n as u64 - 1) - binom2(2 * n as u64 / 3)) as usize
    }

    #[test]
    fn extremal_nine() {
        let p = extremal_construction(9).unwrap();
        assert_eq!((p.a.len(), p.b.len()), (2, 7));
        assert_eq!(p.h.edge_count(), 49);
        let prof = p.h.degree_profile();
        assert_eq!(prof.min_degree, 13);
        assert_eq!(prof.argmin(), p.b.to_vec());
        assert_eq!(subset_density(&p.h, &p.b).unwrap(), Rational::from_integer(0));
    }

    #[test]
    fn extremal_min_degree_closed_form() {
        for n in (6..=60).step_by(3) {
            let p = extremal_construction(n).unwrap();
            assert_eq!(p.h.degree_profile().min_degree, closed_form_min_degree(n), "n={n}");
        }
    }

    #[test]
    fn extremal_rejects_bad_orders() {
        assert!(matches!(extremal_construction(7), Err(Error::InvalidOrder { .. })));
        assert!(matches!(extremal_construction(3), Err(Error::InvalidOrder { .. })));
        assert!(matches!(extremal_plus(10), Err(Error::InvalidOrder { .. })));
    }

    #[test]
    fn extremal_plus_degree() {
        // C(8,2) - C(5,2) = 18
        assert_eq!(extremal_plus(9).unwrap().degree_profile().min_degree, 18);
    }

    #[test]
    fn random_extremes_and_determinism() {
        assert_eq!(random_3graph(8, 1.0, 3).unwrap(), Hypergraph3::complete(8));
        assert_eq!(random_3graph(8, 0.0, 3).unwrap(), Hypergraph3::empty(8));
        assert_eq!(
            random_3graph(12, 0.5, 7).unwrap(),
            random_3graph(12, 0.5, 7).unwrap()
        );
        assert_ne!(
            random_3graph(12, 0.5, 7).unwrap(),
            random_3graph(12, 0.5, 8).unwrap()
        );
        assert!(random_3graph(5, 1.5, 0).is_err());
    }

    #[test]
    fn min_degree_sampler() {
        let h = random_min_degree(9, 14, 3).unwrap();
        assert!(h.degree_profile().min_degree >= 14);
        assert_eq!(random_min_degree(9, 28, 0).unwrap(), Hypergraph3::complete(9));
        assert_eq!(random_min_degree(9, 14, 3).unwrap(), h);
        assert!(random_min_degree(9, 29, 0).is_err());
    }

    #[test]
    fn perturbation_semantics() {
        assert_eq!(perturbed_extremal(9, 0, 4).unwrap(), extremal_plus(9).unwrap());
        let base = extremal_plus(6).unwrap();
        let all = perturbed_extremal(6, 20, 1).unwrap();
        // every triple toggled: edges become non-edges and vice versa
        assert_eq!(all.edge_count(), 20 - base.edge_count());
        let h = perturbed_extremal(30, 50, 1).unwrap();
        let diff = all_triples(30)
            .filter(|&t| h.contains(t) != extremal_plus(30).unwrap().contains(t))
            .count();
        assert_eq!(diff, 50);
    }

    #[test]
    fn perturbed_b_density_bound() {
        let h = perturbed_extremal(30, 50, 1).unwrap();
        let b = VertexSet::from_iter(30, 10..30);
        let d = subset_density(&h, &b).unwrap();
        assert!(d <= Rational::new(50, 1140));
        assert!(d < Rational::new(6, 20));
    }
}
