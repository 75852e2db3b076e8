#![no_main]

use libfuzzer_sys::fuzz_target;
use spherewright::cli::parse_sites;
use spherewright::sphere::{build_q, SiteSelection};
use spherewright::ball::Variant;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sel @ SiteSelection::Explicit(_)) = parse_sites(text) {
        // small n keeps each run cheap; bad sites must be errors, not panics
        let _ = build_q(2, Variant::Extended, &sel);
    }
});
