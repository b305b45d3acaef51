use hm3::constructions::{extremal_construction, extremal_plus, perturbed_extremal, random_min_degree, GeneratorKind, GeneratorSpec};
use hm3::exact::{has_perfect_matching, PmVerdict};
use hm3::extremal::extremal_perfect_matching;
use hm3::format::{parse_hypergraph, parse_witness, write_hypergraph, write_witness, WitnessKind};
use hm3::matching::verify_triples;
use hm3::pipeline::{perfect_matching, ExactStatus, Path, PipelineConfig};
use hm3::threshold::threshold;
use hm3::{verify_matching, Rational, VertexSet};

#[test]
fn generated_file_solved_and_witness_checked() {
    let spec = GeneratorSpec {
        tau: 28,
        seed: 11,
        ..GeneratorSpec::new(GeneratorKind::MinDegreeRandom, 12)
    };
    let text = write_hypergraph(&spec.generate().unwrap());
    let h = parse_hypergraph(&text).unwrap();
    assert!(h.degree_profile().min_degree >= 28);
    let PmVerdict::Perfect(m) = has_perfect_matching(&h).unwrap() else {
        panic!("no perfect matching above the threshold at n = 12");
    };
    let w = parse_witness(&write_witness(WitnessKind::Perfect, &m), Some(12)).unwrap();
    assert_eq!(verify_triples(&h, &w.edges, true), Ok(()));
}

#[test]
fn below_threshold_never_claims_a_matching() {
    for n in [12, 15, 30, 60] {
        let p = extremal_construction(n).unwrap();
        let cfg = PipelineConfig {
            fallback_exact: Some(true),
            ..PipelineConfig::default()
        };
        let f = perfect_matching(&p.h, &cfg).unwrap().unwrap_err();
        assert_eq!(f.exact, Some(ExactStatus::NoPerfect { max_size: if n <= 24 { None } else { Some(n / 3 - 1) } }), "n={n}");
        assert!(extremal_perfect_matching(&p.h, &p.b, Rational::new(1, 20), 0).is_err());
    }
}

#[test]
fn small_orders_use_the_exact_fallback_when_needed() {
    // random instances at the threshold: either route must end verified
    for seed in 0..5 {
        let t = threshold(18).unwrap() as usize;
        let h = random_min_degree(18, t, seed).unwrap();
        let run = perfect_matching(&h, &PipelineConfig::default()).unwrap().unwrap();
        assert_eq!(verify_matching(&h, &run.matching, true), Ok(()));
        if run.path == Path::ExactFallback {
            assert!(run.fallback_reason.is_some());
        }
    }
}

#[test]
fn perturbed_instance_verified_or_reported() {
    let h = perturbed_extremal(30, 20, 5).unwrap();
    let delta = h.degree_profile().min_degree as u64;
    let b = VertexSet::from_iter(30, 10..30);
    match extremal_perfect_matching(&h, &b, Rational::new(3, 10), 5) {
        Ok(run) => assert_eq!(verify_matching(&h, &run.matching, true), Ok(())),
        Err(f) => {
            // a staged failure is only acceptable with a reason attached
            assert!(!f.to_string().is_empty(), "δ₁ = {delta}");
        }
    }
}

#[test]
fn extremal_path_through_the_driver() {
    for n in [30, 60, 90] {
        let h = extremal_plus(n).unwrap();
        let run = perfect_matching(&h, &PipelineConfig::default()).unwrap().unwrap();
        assert_eq!(run.path, Path::Extremal, "n={n}");
        assert_eq!(verify_matching(&h, &run.matching, true), Ok(()));
        assert!(!run.extremal_trace.is_empty());
    }
}
