//! Feeds arbitrary text to the survey table parser and round-trips any
//! accepted records through the renderer.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pauliq_cli::survey::{parse_survey_table, render_survey_table};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(records) = parse_survey_table(text) {
        let rendered = render_survey_table(&records);
        let reparsed = parse_survey_table(&rendered).expect("rendered form parses");
        assert_eq!(reparsed, records, "render/parse round trip drifted");
    }
});
