//! The pair parser must never panic, and anything it accepts must
//! survive an emit-and-reparse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use nilcomm::io::{pair_to_json, parse_pair};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_pair(text) {
        let back = parse_pair(&pair_to_json(&p)).expect("emitted pair reparses");
        assert_eq!(back, p);
    }
});
