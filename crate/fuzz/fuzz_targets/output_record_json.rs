//! Fuzzes the JSON record decoder: arbitrary bytes must deserialize or
//! error, and anything that deserializes must re-serialize and round-trip
//! to an equal record.

#![no_main]

use crepant::output::OutputRecord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(record) = OutputRecord::from_json(text) {
        let again = OutputRecord::from_json(&record.to_json()).expect("round trip");
        assert_eq!(again, record);
    }
});
