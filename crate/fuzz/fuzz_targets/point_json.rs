#![no_main]
use libfuzzer_sys::fuzz_target;
use spectravert::spectra::json::{point_from_json_str, point_to_json};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(x) = point_from_json_str(text) {
            let back = point_from_json_str(&point_to_json(&x).to_string()).expect("round trip");
            assert_eq!(back, x);
        }
    }
});
