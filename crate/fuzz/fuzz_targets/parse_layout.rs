#![no_main]

use libfuzzer_sys::fuzz_target;
use schur_embed::io::{format_layout, parse_layout};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // never panics; anything accepted survives a round trip
    if let Ok(coords) = parse_layout(text) {
        let again = parse_layout(&format_layout(&coords, &[])).expect("formatted layout parses");
        assert_eq!(again, coords);
    }
});
