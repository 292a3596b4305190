#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(z) = pt_spectra::parse::parse_complex(s) {
            if !z.re.is_finite() || !z.im.is_finite() {
                return;
            }
            // Accepted literals must round-trip through a canonical rendering.
            let canon = format!("{:e}{:+e}i", z.re, z.im);
            let back = pt_spectra::parse::parse_complex(&canon).unwrap();
            assert_eq!(z.re.to_bits(), back.re.to_bits());
            assert_eq!(z.im.to_bits(), back.im.to_bits());
        }
    }
});
