//! Fuzz target for the Laurent polynomial parser.
//!
//! Accepted text must print in canonical form and parse back to the same
//! polynomial.

#![no_main]

use libfuzzer_sys::fuzz_target;
use ribbon_core::{LaurentPoly, BR_VARS};

fuzz_target!(|data: &str| {
    if let Ok(p) = LaurentPoly::parse(data, &BR_VARS) {
        let again = LaurentPoly::parse(&p.to_string(), &BR_VARS).expect("printed polynomial parses");
        assert_eq!(again, p);
    }
});
