//! The matrix parser must never panic, and anything it accepts must
//! survive an emit-and-reparse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use nilcomm::io::{matrix_to_json, parse_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_matrix(text) {
        let back = parse_matrix(&matrix_to_json(&m)).expect("emitted matrix reparses");
        assert_eq!(back, m);
    }
});
