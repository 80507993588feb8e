#![no_main]

use flatrank::formats::{parse_configuration, to_json, ConfigurationDocument};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = parse_configuration(text) {
        let again = parse_configuration(&to_json(&ConfigurationDocument::from_configuration(&cfg))).unwrap();
        assert_eq!(again, cfg);
        assert!(cfg.max_degree() <= cfg.constraints().len());
    }
});
