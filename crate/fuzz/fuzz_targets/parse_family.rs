//! Fuzzes the family-name parser: arbitrary input must never panic, and
//! every accepted name must render back to a string that parses to the
//! same family.

#![no_main]

use libfuzzer_sys::fuzz_target;

use hexpoly::hexgrid::FamilySpec;

fuzz_target!(|text: &str| {
    if let Ok(family) = text.parse::<FamilySpec>() {
        let rendered = family.to_string();
        let reparsed: FamilySpec = rendered
            .parse()
            .unwrap_or_else(|e| panic!("rendered form {rendered:?} rejected: {e}"));
        assert_eq!(reparsed, family, "round trip through {rendered:?} changed family");
    }
});
