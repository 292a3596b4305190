#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = pt_spectra::parse::parse_coeff_list(s) {
            // A parsed list always has one entry per comma-separated field.
            assert_eq!(v.len(), s.split(',').count());
        }
    }
});
