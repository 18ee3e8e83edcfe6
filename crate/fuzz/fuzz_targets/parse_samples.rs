//! Feeds arbitrary text to the sampling-run TSV parser and round-trips any
//! accepted sample set through its renderer.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pauliq_core::anneal::parse_sample_set;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = parse_sample_set(text) {
        let reparsed = parse_sample_set(&s.render_tsv()).expect("rendered form parses");
        assert_eq!(reparsed, s, "render/parse round trip drifted");
    }
});
