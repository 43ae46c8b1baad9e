#![no_main]
use libfuzzer_sys::fuzz_target;
use spectravert::graphs::{parse_graph, GraphFormat};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((g, _)) = parse_graph(text, GraphFormat::EdgeList) {
            // a parsed graph must survive its own serialization
            let (back, _) = parse_graph(&g.to_edgelist(), GraphFormat::EdgeList).expect("reparse");
            assert_eq!(back.edges().len(), g.edges().len());
        }
    }
});
