//! Replays the checked-in fuzz seeds through the fuzz targets' properties.

use std::path::PathBuf;

use schur_embed::io::{format_graph, format_layout, parse_graph, parse_layout};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

#[test]
fn graph_seeds_round_trip() {
    let mut accepted = 0;
    for (name, text) in seeds("parse_graph") {
        if let Ok(file) = parse_graph(&text) {
            let again = parse_graph(&format_graph(&file.graph, file.boundary.as_ref())).unwrap();
            assert_eq!(again, file, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn layout_seeds_round_trip() {
    let mut accepted = 0;
    for (name, text) in seeds("parse_layout") {
        if let Ok(coords) = parse_layout(&text) {
            assert_eq!(parse_layout(&format_layout(&coords, &[])).unwrap(), coords, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted >= 2);
}
