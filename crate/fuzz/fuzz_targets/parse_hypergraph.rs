#![no_main]

use hm3::format::{parse_hypergraph, write_hypergraph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(h) = parse_hypergraph(text) {
        // canonical output must parse back to the same graph and text
        let canon = write_hypergraph(&h);
        let again = parse_hypergraph(&canon).expect("canonical text parses");
        assert_eq!(again, h);
        assert_eq!(write_hypergraph(&again), canon);
    }
});
