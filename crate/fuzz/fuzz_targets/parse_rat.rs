#![no_main]
use libfuzzer_sys::fuzz_target;
use spectravert::exactla::{format_rat, parse_rat};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(r) = parse_rat(text) {
            assert_eq!(parse_rat(&format_rat(&r)).expect("canonical form parses"), r);
        }
    }
});
