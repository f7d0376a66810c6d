#![no_main]

use libfuzzer_sys::fuzz_target;
use srg_core::io::{cloud_to_csv, parse_cloud_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(points) = parse_cloud_csv(text) {
            assert_eq!(parse_cloud_csv(&cloud_to_csv(&points)).unwrap(), points);
        }
    }
});
