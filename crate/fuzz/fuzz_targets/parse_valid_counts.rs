//! Feeds arbitrary text to the valid-count CSV parser and round-trips any
//! accepted records through the renderer.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pauliq_core::anneal::{parse_valid_counts_csv, render_valid_counts_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(records) = parse_valid_counts_csv(text) {
        let rendered = render_valid_counts_csv(&records);
        let reparsed = parse_valid_counts_csv(&rendered).expect("rendered form parses");
        assert_eq!(reparsed, records, "render/parse round trip drifted");
    }
});
