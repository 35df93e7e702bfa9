//! Fuzz target for the `.ap` arrow-presentation parser.
//!
//! Accepted presentations must round-trip through text and convert to a
//! ribbon graph without panicking.

#![no_main]

use libfuzzer_sys::fuzz_target;
use ribbon_core::{from_arrow_presentation, parse_ap, serialize_ap};

fuzz_target!(|data: &str| {
    if let Ok(ap) = parse_ap(data) {
        let again = parse_ap(&serialize_ap(&ap)).expect("serialized presentation parses");
        assert_eq!(again, ap);
        let _ = from_arrow_presentation(&ap);
    }
});
