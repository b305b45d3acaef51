use super::*;
use crate::constructions::{extremal_construction, extremal_plus, extremal_plus_partitioned, perturbed_extremal};
use crate::hypergraph::Triple;

fn b_part(n: usize) -> VertexSet {
    VertexSet::from_iter(n, n / 3..n)
}

fn alpha(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// extremal_plus(30) where vertex 10 keeps only edges inside B
fn b_vertex_inside_only() -> Hypergraph3 {
    let base = extremal_plus(30).unwrap();
    Hypergraph3::from_fn(30, |e: Triple| {
        if e.contains(&10) {
            e.iter().all(|&v| v >= 10)
        } else {
            base.contains(e)
        }
    })
}

#[test]
fn clean_construction_has_no_exceptional_vertices() {
    let p = prepare_extremal_partition(&extremal_plus(30).unwrap(), &b_part(30), alpha(1, 20)).unwrap();
    assert!(p.x_a.is_empty() && p.x_b.is_empty() && p.s_a.is_empty() && p.s_b.is_empty());
    assert_eq!((p.a.len(), p.b.len()), (10, 20));
    assert!(p.bounds().all());
}

#[test]
fn a_vertex_without_b_pairs_is_strongly_exceptional() {
    let base = extremal_plus(30).unwrap();
    let h = Hypergraph3::from_fn(30, |e| base.contains(e) && !(e[0] == 0 && e[1] >= 10));
    let p = prepare_extremal_partition(&h, &b_part(30), alpha(1, 20)).unwrap();
    assert_eq!(p.s_a.to_vec(), vec![0]);
    assert!(p.x_a.contains(0));
}

#[test]
fn complete_graph_is_not_extremal() {
    let h = Hypergraph3::complete(30);
    assert!(matches!(
        prepare_extremal_partition(&h, &b_part(30), alpha(1, 20)),
        Err(ExtremalError::NotExtremal { .. })
    ));
}

#[test]
fn one_swap_clears_both_strong_sets() {
    // vertex 0 loses its B pairs, vertex 10 trades its A edges for B triples
    let base = extremal_plus(30).unwrap();
    let h = Hypergraph3::from_fn(30, |e: Triple| {
        let in_b = |v: usize| v >= 10;
        if e.contains(&10) {
            return e.iter().all(|&v| in_b(v)) || (e.contains(&0) && false) || (e[0] < 10 && e[0] != 0 && e[1] < 10);
        }
        if e[0] == 0 && in_b(e[1]) {
            return false;
        }
        base.contains(e)
    });
    let mut p = prepare_extremal_partition(&h, &b_part(30), alpha(1, 5)).unwrap();
    assert_eq!((p.s_a.to_vec(), p.s_b.to_vec()), (vec![0], vec![10]));
    let before = p.s_a.len() + p.s_b.len();
    assert_eq!(exchange_reduce(&mut p, &h), 1);
    assert!(p.s_a.len() + p.s_b.len() < before);
    assert!(p.s_a.is_empty() && p.s_b.is_empty());
    assert!(p.a.contains(10) && p.b.contains(0));
    assert!(p.is_consistent(&h));
}

#[test]
fn strong_b_vertex_gets_two_edges() {
    let h = b_vertex_inside_only();
    let mut p = prepare_extremal_partition(&h, &b_part(30), alpha(1, 5)).unwrap();
    assert_eq!(p.s_b.to_vec(), vec![10]);
    assert!(p.s_a.is_empty());
    assert_eq!(exchange_reduce(&mut p, &h), 0);
    let strong = eliminate_strongly_exceptional(&h, &p).unwrap();
    assert_eq!(strong.matching.len(), 2);
    assert!(strong.matching.covered().contains(10));
    assert_eq!((strong.remainder.a.len(), strong.remainder.b.len()), (8, 16));
    let run = extremal_perfect_matching(&h, &b_part(30), alpha(1, 5), 0).unwrap();
    assert_eq!(verify_matching(&h, &run.matching, true), Ok(()));
}

#[test]
fn strong_a_vertex_uses_inductive_matching() {
    // n = 90: vertex 0 has no B pairs, vertex 30 spans every triple inside B
    let base = extremal_plus(90).unwrap();
    let h = Hypergraph3::from_fn(90, |e: Triple| {
        if e[0] == 0 && e[1] >= 30 {
            return false;
        }
        base.contains(e) || (e[0] == 30)
    });
    let p = prepare_extremal_partition(&h, &b_part(90), alpha(1, 10)).unwrap();
    assert_eq!(p.s_a.to_vec(), vec![0]);
    assert!(p.s_b.is_empty());
    let strong = eliminate_strongly_exceptional(&h, &p).unwrap();
    assert!(!strong.greedy_fallback);
    assert_eq!(strong.matching.len(), 1);
    let e = strong.matching.edges()[0];
    assert!(e.iter().all(|&v| v == 0 || v >= 30));
    assert!(strong.remainder.ratio_holds());
    let run = extremal_perfect_matching(&h, &b_part(90), alpha(1, 10), 0).unwrap();
    assert_eq!(verify_matching(&h, &run.matching, true), Ok(()));
}

#[test]
fn exceptional_vertices_are_covered_in_shape() {
    let base = extremal_plus(30).unwrap();
    // vertex 0 keeps 76 of its 190 B pairs: 0.4 lies between 0.05^(1/3) and 1 - sqrt(0.05)
    let kept: Vec<Triple> = base.edges().filter(|e| e[0] == 0 && e[1] >= 10).take(76).collect();
    let h = Hypergraph3::from_fn(30, |e| {
        if e[0] == 0 && e[1] >= 10 {
            kept.contains(&e)
        } else {
            base.contains(e)
        }
    });
    let p = prepare_extremal_partition(&h, &b_part(30), alpha(1, 20)).unwrap();
    assert_eq!(p.x_a.to_vec(), vec![0]);
    assert!(p.s_a.is_empty());
    let rem = Remainder { a: p.a.clone(), b: p.b.clone() };
    let (x_a, x_b) = remainder_exceptional(&h, &rem, p.alpha);
    let (m, rem2) = eliminate_exceptional(&h, &rem, &x_a, &x_b).unwrap();
    assert_eq!(m.len(), 1);
    let e = m.edges()[0];
    assert!(e.contains(&0) && e.iter().filter(|&&v| v >= 10).count() == 2);
    assert!(rem2.ratio_holds());

    // vertex 10 keeps 76 of its 190 (B, A) pairs
    let mut cross: Vec<(usize, usize)> = Vec::new();
    for b in 11..30 {
        for a in 0..10 {
            cross.push((b, a));
        }
    }
    let dropped: Vec<(usize, usize)> = cross[76..].to_vec();
    let h = Hypergraph3::from_fn(30, |e: Triple| {
        if e.contains(&10) && e[0] < 10 && e[1] >= 10 {
            let other = if e[1] == 10 { e[2] } else { e[1] };
            return !dropped.contains(&(other, e[0]));
        }
        base.contains(e)
    });
    let p = prepare_extremal_partition(&h, &b_part(30), alpha(1, 20)).unwrap();
    assert_eq!(p.x_b.to_vec(), vec![10]);
    assert!(p.s_b.is_empty());
    let rem = Remainder { a: p.a.clone(), b: p.b.clone() };
    let (x_a, x_b) = remainder_exceptional(&h, &rem, p.alpha);
    let (m, _) = eliminate_exceptional(&h, &rem, &x_a, &x_b).unwrap();
    let e = m.edges()[0];
    assert!(e.contains(&10));
    assert_eq!(e.iter().filter(|&&v| v < 10).count(), 1);
}

#[test]
fn good_pairs_on_clean_construction() {
    let p = extremal_plus_partitioned(30).unwrap();
    let rem = Remainder { a: p.a.clone(), b: p.b.clone() };
    let gps = build_good_pairs(&p.h, &rem, alpha(1, 20), 3).unwrap();
    assert_eq!(gps.p1.len() + gps.p2.len(), 10);
    // 100 * 0.05^(1/4) * 20 far exceeds 10 pairs
    assert_eq!(p1_target(alpha(1, 20), 20), 10);
    assert_eq!(gps.p1.len(), 10);
    let a = rem.a.to_vec();
    assert!(gps.pairs().all(|(x, y)| is_good_pair(&p.h, x, y, &a, alpha(1, 20))));
    // 100 * (10^-12)^(1/4) * 20 = 2 exactly
    assert_eq!(p1_target(Rational::new(1, 1_000_000_000_000), 20), 2);
    assert_eq!(p1_target(Rational::new(1, 1_000_000_000_001), 20), 2);
    assert_eq!(p1_target(Rational::new(1, 999_999_999_999), 20), 3);
}

#[test]
fn hall_witness_for_isolated_pair() {
    let h = Hypergraph3::empty(3);
    let rem = Remainder {
        a: VertexSet::from_iter(3, [0]),
        b: VertexSet::from_iter(3, [1, 2]),
    };
    let gps = GoodPairSystem {
        p1: vec![(1, 2)],
        p2: vec![],
        dirac_holds: true,
        seed: 0,
    };
    assert_eq!(
        hall_finish(&h, &rem, &gps),
        Err(ExtremalError::HallViolated {
            pairs: vec![(1, 2)],
            neighbourhood: vec![]
        })
    );
    let full = Hypergraph3::complete(3);
    assert_eq!(hall_finish(&full, &rem, &gps).unwrap().len(), 1);
}

#[test]
fn clean_constructions_end_to_end() {
    for n in [30, 60, 90] {
        let h = extremal_plus(n).unwrap();
        let run = extremal_perfect_matching(&h, &b_part(n), alpha(1, 20), 0).unwrap();
        assert_eq!(verify_matching(&h, &run.matching, true), Ok(()), "n={n}");
        assert!(trace_csv(&run.trace).starts_with(StageRow::CSV_HEADER));
    }
}

#[test]
fn below_threshold_never_claims_a_matching() {
    let p = extremal_construction(30).unwrap();
    assert!(extremal_perfect_matching(&p.h, &p.b, alpha(1, 20), 0).is_err());
}

#[test]
fn perturbed_instance_verifies_or_reports() {
    let h = perturbed_extremal(30, 20, 5).unwrap();
    match extremal_perfect_matching(&h, &b_part(30), alpha(1, 10), 5) {
        Ok(run) => assert_eq!(verify_matching(&h, &run.matching, true), Ok(())),
        Err(f) => assert!(!f.trace.is_empty() || f.stage == Stage::Prepare),
    }
}
