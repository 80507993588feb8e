#![no_main]

use flatrank::formats::{parse_set_pair_system, to_json, SetPairDocument};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(system) = parse_set_pair_system(text) {
        assert_eq!(parse_set_pair_system(&to_json(&SetPairDocument::from_system(&system))).unwrap(), system);
    }
});
