#![no_main]

use flatrank::formats::{parse_set_family, to_json, SetFamilyDocument};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(family) = parse_set_family(text) {
        assert_eq!(parse_set_family(&to_json(&SetFamilyDocument::from_family(&family))).unwrap(), family);
    }
});
