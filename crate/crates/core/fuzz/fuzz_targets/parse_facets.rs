#![no_main]

use libfuzzer_sys::fuzz_target;
use spherewright::io::{from_facets, to_facets};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = from_facets(text) {
        let again = from_facets(&to_facets(&doc)).expect("serialized output parses");
        assert_eq!(again, doc);
        let _ = doc.to_complex();
        let _ = doc.to_sphere();
    }
});
