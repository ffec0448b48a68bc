//! Fuzzes the polynomial-expression parser: arbitrary input must either
//! parse into a class that reprints and reparses to itself, or return a
//! structured error — never panic.

#![no_main]

use crepant::parse::parse_class;
use crepant::ring::{Ring, RingDescriptor};
use libfuzzer_sys::fuzz_target;
use std::sync::OnceLock;

fn ring() -> &'static Ring {
    static RING: OnceLock<Ring> = OnceLock::new();
    RING.get_or_init(|| {
        RingDescriptor::new(
            &[("H", 1), ("L", 1), ("S", 1), ("c1", 1), ("c2", 2), ("E1", 1)],
            5,
        )
        .unwrap()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(class) = parse_class(text, ring()) {
        let canonical = class.to_string();
        let reparsed = parse_class(&canonical, ring()).expect("canonical text reparses");
        assert_eq!(reparsed, class, "canonical text is a fixed point");
    }
});
