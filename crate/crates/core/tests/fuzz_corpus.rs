//! Replays the checked-in fuzz seeds through each parser entry point.

use std::path::PathBuf;

use spectravert::exactla::parse_rat;
use spectravert::graphs::{parse_graph, GraphFormat};
use spectravert::spectra::json::point_from_json_str;
use spectravert::spectra::Spectrahedron;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn graph_seeds_parse() {
    for (p, text) in seeds("parse_edgelist") {
        parse_graph(&text, GraphFormat::EdgeList).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, text) in seeds("parse_dimacs") {
        parse_graph(&text, GraphFormat::Dimacs).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
}

#[test]
fn rat_seeds_parse() {
    for (p, text) in seeds("parse_rat") {
        parse_rat(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
}

#[test]
fn json_seeds_parse() {
    for (p, text) in seeds("spectrahedron_json") {
        let c = Spectrahedron::from_json_str(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        assert!(c.check_slater().is_ok());
    }
    for (p, text) in seeds("point_json") {
        point_from_json_str(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
}
