//! Feeds arbitrary text to the conflict-graph parser and round-trips any
//! accepted graph through its renderer.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pauliq_core::commgraph::parse_graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_graph(text) {
        let reparsed = parse_graph(&g.render()).expect("rendered form parses");
        assert_eq!(reparsed, g, "render/parse round trip drifted");
    }
});
