#![no_main]

use libfuzzer_sys::fuzz_target;
use srg_cli::render::{render_svg, RenderSpec};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = RenderSpec::parse(text) {
            let _ = render_svg(&spec, &[], None);
        }
    }
});
