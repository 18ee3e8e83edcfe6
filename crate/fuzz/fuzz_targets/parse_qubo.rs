//! Feeds arbitrary text to the QUBO matrix parser and round-trips any
//! accepted matrix through its renderer.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pauliq_core::qubo::parse_qubo;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = parse_qubo(text) {
        let reparsed = parse_qubo(&q.render()).expect("rendered form parses");
        assert_eq!(reparsed, q, "render/parse round trip drifted");
    }
});
