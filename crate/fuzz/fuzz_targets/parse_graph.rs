#![no_main]

use libfuzzer_sys::fuzz_target;
use schur_embed::io::{format_graph, parse_graph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // never panics; anything accepted survives a round trip
    if let Ok(file) = parse_graph(text) {
        let again = parse_graph(&format_graph(&file.graph, file.boundary.as_ref())).expect("formatted graph parses");
        assert_eq!(again, file);
    }
});
