//! Fuzzes the rational-function text parser: arbitrary input must never
//! panic, and anything it accepts must survive a render/reparse round trip
//! unchanged (parsed values are canonical).

#![no_main]

use libfuzzer_sys::fuzz_target;

use hexpoly::exactalg::parse_unirat;

fuzz_target!(|text: &str| {
    if let Ok(parsed) = parse_unirat(text) {
        let rendered = parsed.to_string();
        let reparsed = parse_unirat(&rendered)
            .unwrap_or_else(|e| panic!("rendered form {rendered:?} rejected: {e}"));
        assert_eq!(reparsed, parsed, "round trip through {rendered:?} changed value");
    }
});
