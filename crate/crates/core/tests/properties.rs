use proptest::prelude::*;

use hm3::constructions::{all_triples, extremal_plus, random_3graph};
use hm3::cover::{absorb_leftover, build_absorbing_matching, AbsorberParams};
use hm3::exact::{max_matching_branch, max_matching_dp};
use hm3::extremal::{exchange_reduce, extremal_perfect_matching, prepare_extremal_partition, ExtremalPartition};
use hm3::format::{parse_hypergraph, parse_witness, write_hypergraph, write_witness, WitnessKind};
use hm3::hypergraph::{binom3, degree_accounting, triple_rank, triple_unrank};
use hm3::pipeline::{perfect_matching, PipelineConfig};
use hm3::rational::{ge_root, lt_one_minus_root, to_f64};
use hm3::threshold::threshold;
use hm3::{verify_matching, Hypergraph3, Matching, Rational, VertexSet};

/// Hypergraph on `n ∈ [lo, hi]` vertices from an arbitrary edge mask.
fn hypergraph(lo: usize, hi: usize) -> impl Strategy<Value = Hypergraph3> {
    (lo..=hi).prop_flat_map(|n| {
        let total = binom3(n as u64) as usize;
        proptest::collection::vec(any::<bool>(), total).prop_map(move |bits| {
            Hypergraph3::from_edges(n, all_triples(n).zip(bits).filter(|(_, b)| *b).map(|(t, _)| t)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_unrank_round_trip(a in 0usize..200, db in 1usize..200, dc in 1usize..200) {
        let (b, c) = (a + db, a + db + dc);
        let r = triple_rank(a, b, c).unwrap();
        prop_assert_eq!(triple_unrank(r), [a, b, c]);
    }

    #[test]
    fn writer_parser_round_trip(h in hypergraph(0, 9)) {
        let text = write_hypergraph(&h);
        let back = parse_hypergraph(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(write_hypergraph(&back), text);
    }

    #[test]
    fn parser_canonicalises_shuffled_input(h in hypergraph(3, 8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut lines: Vec<String> = h
            .edges()
            .map(|e| {
                let mut v = [e[0] + 1, e[1] + 1, e[2] + 1];
                v.shuffle(&mut rng);
                format!("e {} {} {}", v[0], v[1], v[2])
            })
            .collect();
        lines.shuffle(&mut rng);
        let text = format!("c shuffled\np hm3 {} {}\n{}\n", h.n(), lines.len(), lines.join("\nc between\n"));
        let parsed = parse_hypergraph(&text).unwrap();
        prop_assert_eq!(&parsed, &h);
        let canon = write_hypergraph(&parsed);
        prop_assert_eq!(write_hypergraph(&parse_hypergraph(&canon).unwrap()), canon);
    }

    #[test]
    fn parser_never_panics(text in "(p hm3 [0-9]{1,3} [0-9]{1,3}\n)?((e|c|p|x)( [0-9]{1,4}){0,4}\n){0,12}") {
        let _ = parse_hypergraph(&text);
        let _ = parse_witness(&text, Some(9));
    }

    #[test]
    fn witness_round_trip(h in hypergraph(6, 12)) {
        let (_, m) = max_matching_dp(&h).unwrap();
        let text = write_witness(WitnessKind::Maximum, &m);
        let w = parse_witness(&text, Some(h.n())).unwrap();
        prop_assert_eq!(w.edges, m.sorted_edges());
    }

    #[test]
    fn solvers_agree_and_witnesses_verify(h in hypergraph(3, 12)) {
        let (dp, m) = max_matching_dp(&h).unwrap();
        let br = max_matching_branch(&h, u64::MAX);
        prop_assert!(br.exact);
        prop_assert_eq!(br.size, dp);
        prop_assert!(verify_matching(&h, &m, false).is_ok());
        prop_assert!(verify_matching(&h, &br.witness, false).is_ok());
        prop_assert_eq!(m.len(), dp);
    }

    #[test]
    fn adding_an_edge_never_shrinks_the_maximum(h in hypergraph(4, 11), pick in any::<prop::sample::Index>()) {
        let missing: Vec<_> = all_triples(h.n()).filter(|&t| !h.contains(t)).collect();
        prop_assume!(!missing.is_empty());
        let t = missing[pick.index(missing.len())];
        let bigger = h.with_edges_added(&[t]).unwrap();
        prop_assert!(max_matching_dp(&bigger).unwrap().0 >= max_matching_dp(&h).unwrap().0);
    }

    #[test]
    fn degree_accounting_identity(h in hypergraph(3, 10), mask in any::<u16>()) {
        let s = VertexSet::from_iter(h.n(), (0..h.n()).filter(|v| mask >> v & 1 == 1));
        let acc = degree_accounting(&h, &s).unwrap();
        let by_degree: u64 = s.iter().map(|v| h.degree(v) as u64).sum();
        prop_assert_eq!(acc.degree_sum(), by_degree);
    }

    #[test]
    fn root_comparisons_match_floats(xn in 0i64..1000, pn in 1i64..1000) {
        let x = Rational::new(xn, 1000);
        let p = Rational::new(pn, 1000);
        for k in [2u32, 3, 4] {
            let root = to_f64(p).powf(1.0 / k as f64);
            let xf = to_f64(x);
            if (xf - root).abs() > 1e-9 {
                prop_assert_eq!(ge_root(x, p, k), xf >= root);
            }
            if (1.0 - xf - root).abs() > 1e-9 {
                prop_assert_eq!(lt_one_minus_root(x, p, k), xf < 1.0 - root);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pipeline_output_always_verifies(n in prop::sample::select(vec![12usize, 15, 18]), p in 0.3f64..0.95, seed in any::<u64>()) {
        let h = random_3graph(n, p, seed).unwrap();
        let cfg = PipelineConfig { fallback_exact: Some(false), seed, ..PipelineConfig::default() };
        if let Ok(run) = perfect_matching(&h, &cfg).unwrap() {
            prop_assert!(verify_matching(&h, &run.matching, true).is_ok());
        }
    }

    #[test]
    fn absorbed_matchings_verify(seed in any::<u64>(), w_seed in any::<u64>()) {
        use rand::SeedableRng;
        let n = 30;
        let h = random_3graph(n, 0.7, seed).unwrap();
        let am = build_absorbing_matching(&h, &AbsorberParams { cap: Some(2), seed, ..AbsorberParams::default() }).unwrap();
        let free = am.matching.covered().complement().to_vec();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(w_seed);
        let pick = rand::seq::index::sample(&mut rng, free.len(), 3);
        let w = VertexSet::from_iter(n, pick.iter().map(|i| free[i]));
        if let Ok(m) = absorb_leftover(&h, &am, &w, &Matching::new(n)) {
            prop_assert!(verify_matching(&h, &m, false).is_ok());
            prop_assert_eq!(m.covered(), &am.matching.covered().union(&w));
        }
    }

    #[test]
    fn extremal_sets_stay_consistent(flips in 0usize..120, seed in any::<u64>()) {
        let n = 30;
        let h = hm3::constructions::perturbed_extremal(n, flips, seed).unwrap();
        let b = VertexSet::from_iter(n, n / 3..n);
        let alpha = Rational::new(1, 5);
        if let Ok(mut p) = prepare_extremal_partition(&h, &b, alpha) {
            prop_assert!(p.is_consistent(&h));
            prop_assert_eq!(p.b.len(), 2 * p.a.len());
            let before = strong(&p);
            let swaps = exchange_reduce(&mut p, &h);
            prop_assert!(p.is_consistent(&h));
            prop_assert!(p.s_a.is_empty() || p.s_b.is_empty());
            prop_assert!(strong(&p) + swaps <= before);
        }
        if let Ok(run) = extremal_perfect_matching(&h, &b, alpha, seed) {
            prop_assert!(verify_matching(&h, &run.matching, true).is_ok());
        }
    }
}

fn strong(p: &ExtremalPartition) -> usize {
    p.s_a.len() + p.s_b.len()
}

#[test]
fn threshold_strictly_increasing() {
    let vals: Vec<u64> = (6..=300).step_by(3).map(|n| threshold(n).unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn extremal_plus_never_needs_fallback() {
    for n in [30, 45, 60] {
        let h = extremal_plus(n).unwrap();
        let b = VertexSet::from_iter(n, n / 3..n);
        for seed in 0..3 {
            let run = extremal_perfect_matching(&h, &b, Rational::new(1, 10), seed).unwrap();
            assert_eq!(verify_matching(&h, &run.matching, true), Ok(()));
        }
    }
}
