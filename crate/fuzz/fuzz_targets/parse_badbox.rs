#![no_main]

use flatrank::formats::{parse_badbox, to_json, BadboxDocument};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((family, _)) = parse_badbox(text) {
        let (again, k) = parse_badbox(&to_json(&BadboxDocument::from_family(&family))).unwrap();
        assert_eq!(again, family);
        assert_eq!(k, None);
    }
});
