//! Feeds arbitrary text to the Hamiltonian parser. Anything it accepts must
//! survive a render/reparse cycle unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pauliq_core::pauli::parse_hamiltonian;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(h) = parse_hamiltonian(text) {
        let reparsed = parse_hamiltonian(&h.render()).expect("rendered form parses");
        assert_eq!(reparsed, h, "render/parse round trip drifted");
    }
});
