#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(input) = srg_core::io::parse_matrix(text) {
            // Small accepted matrices go through the digest and the eigen solver.
            let _ = input.matrix.digest();
            if input.matrix.n() <= 16 {
                let _ = srg_core::eigenvalues(&input.matrix);
            }
        }
    }
});
