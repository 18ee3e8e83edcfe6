//! Feeds arbitrary text to the sidecar manifest parser and round-trips any
//! accepted manifest through its JSON renderer.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pauliq_cli::manifest::parse_manifest_json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_manifest_json(text) {
        let reparsed = parse_manifest_json(&m.render_json()).expect("rendered form parses");
        assert_eq!(reparsed, m, "render/parse round trip drifted");
    }
});
