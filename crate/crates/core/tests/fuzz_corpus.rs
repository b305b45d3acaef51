//! Replays the checked-in fuzz seeds through the same checks the fuzz
//! targets make, so the corpus stays meaningful on stable toolchains.

use std::fs;
use std::path::PathBuf;

use hm3::format::{parse_hypergraph, parse_witness, write_hypergraph};
use hm3::rational::parse_rational;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(PathBuf, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let text = String::from_utf8_lossy(&fs::read(&p).unwrap()).into_owned();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn hypergraph_seeds() {
    let mut accepted = 0;
    for (path, text) in seeds("parse_hypergraph") {
        if let Ok(h) = parse_hypergraph(&text) {
            let canon = write_hypergraph(&h);
            assert_eq!(parse_hypergraph(&canon).unwrap(), h, "{}", path.display());
            accepted += 1;
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn witness_seeds() {
    for (path, text) in seeds("parse_witness") {
        if let Ok(w) = parse_witness(&text, Some(12)) {
            assert!(w.edges.iter().all(|e| e[2] < 12), "{}", path.display());
        }
    }
}

#[test]
fn rational_seeds() {
    for (path, text) in seeds("parse_rational") {
        if let Ok(r) = parse_rational(&text) {
            assert_eq!(parse_rational(&r.to_string()), Ok(r), "{}", path.display());
        }
    }
}
