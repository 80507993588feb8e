#![no_main]

use flatrank::formats::{parse_tensor, parse_tensor_document, to_json, TensorDocument};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = parse_tensor_document(text) else {
        assert!(parse_tensor(text).is_err());
        return;
    };
    let tensor = parse_tensor(text).expect("document parsed");
    assert_eq!(parse_tensor_document(&to_json(&doc)).unwrap(), doc);
    // dense and sparse forms load equal
    for form in [TensorDocument::dense(&tensor, None), TensorDocument::sparse(&tensor, None)] {
        assert_eq!(parse_tensor(&to_json(&form)).unwrap(), tensor);
    }
});
