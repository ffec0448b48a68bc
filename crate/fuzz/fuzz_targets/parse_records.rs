//! Fuzzes the fixture-record reader: arbitrary file contents must parse or
//! fail with a structured error carrying a line number — never panic.

#![no_main]

use crepant::fixtures::parse_records;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_records(text, "fuzz.records");
});
