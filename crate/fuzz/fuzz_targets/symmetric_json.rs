//! Drives the reflection-annotated graph parser with arbitrary bytes.
//! Accepted inputs carry a validated involution, so the round trip must
//! reproduce the graph, the involution, the axis order, and the sides.

#![no_main]

use libfuzzer_sys::fuzz_target;

use dimers::graph::interchange::{parse_symmetric, symmetric_to_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(parsed) = parse_symmetric(text) else {
        return;
    };
    let round = symmetric_to_string(&parsed.symmetric, &parsed.kind, &parsed.meta);
    let back = parse_symmetric(&round).expect("serializer output must parse");
    assert_eq!(back.symmetric.graph(), parsed.symmetric.graph());
    assert_eq!(back.symmetric.involution(), parsed.symmetric.involution());
    assert_eq!(
        back.symmetric.axis_vertices(),
        parsed.symmetric.axis_vertices()
    );
    assert_eq!(back.symmetric.sides(), parsed.symmetric.sides());
    assert_eq!(back.kind, parsed.kind);
    assert_eq!(back.meta, parsed.meta);
});
