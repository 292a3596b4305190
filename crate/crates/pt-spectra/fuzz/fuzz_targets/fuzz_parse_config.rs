#![no_main]

use libfuzzer_sys::fuzz_target;
use pt_spectra::parse::{parse_config, RunConfig};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let mut cfg = RunConfig::default();
        // Must never panic; errors are fine.
        let _ = parse_config(s, &mut cfg);
    }
});
