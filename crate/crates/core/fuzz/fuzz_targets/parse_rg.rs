//! Fuzz target for the `.rg` ribbon-graph parser.
//!
//! Any input must either be rejected with an error or parse to a graph
//! whose canonical serialization is a fixed point of parse ∘ serialize.

#![no_main]

use libfuzzer_sys::fuzz_target;
use ribbon_core::{parse_rg, parse_rg_many, serialize_rg};

fuzz_target!(|data: &str| {
    if let Ok(graph) = parse_rg(data) {
        let text = serialize_rg(&graph);
        let again = parse_rg(&text).expect("canonical output parses");
        assert_eq!(serialize_rg(&again), text);
        let _ = graph.stats();
    }
    let _ = parse_rg_many(data);
});
