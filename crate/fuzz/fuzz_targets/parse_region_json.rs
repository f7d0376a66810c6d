#![no_main]

use libfuzzer_sys::fuzz_target;
use srg_core::io::{parse_region_json, region_to_json};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(region) = parse_region_json(text) {
            parse_region_json(&region_to_json(&region, None)).expect("serialized regions parse");
        }
    }
});
