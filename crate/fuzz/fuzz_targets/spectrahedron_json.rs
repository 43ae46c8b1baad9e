#![no_main]
use libfuzzer_sys::fuzz_target;
use spectravert::spectra::Spectrahedron;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(c) = Spectrahedron::from_json_str(text) {
            let again = Spectrahedron::from_json_str(&c.to_json_string()).expect("round trip");
            assert_eq!(again.to_json(), c.to_json());
        }
    }
});
