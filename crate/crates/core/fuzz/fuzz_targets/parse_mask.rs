#![no_main]

use libfuzzer_sys::fuzz_target;
use spherewright::enumerate::TriangulationMask;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(mask) = text.parse::<TriangulationMask>() {
        assert_eq!(mask.to_string().parse::<TriangulationMask>().unwrap(), mask);
    }
});
