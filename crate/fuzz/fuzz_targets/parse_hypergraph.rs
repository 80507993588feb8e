#![no_main]

use flatrank::formats::{parse_hypergraph, to_json, HypergraphDocument};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(h) = parse_hypergraph(text) {
        assert_eq!(parse_hypergraph(&to_json(&HypergraphDocument::from_hypergraph(&h))).unwrap(), h);
    }
});
