#![no_main]

use hm3::format::parse_witness;
use hm3::matching::verify_triples;
use hm3::Hypergraph3;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_witness(text, None);
    if let Ok(w) = parse_witness(text, Some(12)) {
        assert!(w.edges.iter().all(|e| e[0] < e[1] && e[1] < e[2] && e[2] < 12));
        let _ = verify_triples(&Hypergraph3::complete(12), &w.edges, true);
    }
});
