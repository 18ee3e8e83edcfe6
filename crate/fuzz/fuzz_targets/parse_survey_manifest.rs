//! Feeds arbitrary text to the survey manifest parser. Accepted rows must
//! produce usable labels, since downstream output formats key on them.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pauliq_cli::survey::parse_survey_manifest;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rows) = parse_survey_manifest(text) {
        for (line, row) in rows {
            let label = row.label();
            assert!(!label.is_empty(), "line {line} produced an empty label");
            assert!(
                !label.contains(['\t', '\n']),
                "line {line} label breaks the table format: {label:?}"
            );
        }
    }
});
