#![no_main]

use flatrank::formats::{parse_tuple_family, to_json, TupleFamilyDocument};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(family) = parse_tuple_family(text) {
        let again = parse_tuple_family(&to_json(&TupleFamilyDocument::from_family(&family))).unwrap();
        assert_eq!(again, family);
        let _ = family.oddtown_violation();
    }
});
