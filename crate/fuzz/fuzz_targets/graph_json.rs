//! Drives the graph file parser with arbitrary bytes. The parser must
//! never panic, and anything it accepts must survive a serialize and
//! reparse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

use dimers::graph::interchange::{graph_to_string, parse_graph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(parsed) = parse_graph(text) else {
        return;
    };
    let round = graph_to_string(&parsed.graph, &parsed.kind, &parsed.meta);
    let back = parse_graph(&round).expect("serializer output must parse");
    assert_eq!(back.graph, parsed.graph);
    assert_eq!(back.kind, parsed.kind);
    assert_eq!(back.meta, parsed.meta);
});
