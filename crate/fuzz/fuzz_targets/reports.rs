#![no_main]

use classprod::verify::{reports_from_json, reports_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(reports) = reports_from_json(text) {
        let again = reports_from_json(&reports_to_json(&reports)).expect("round trip");
        assert_eq!(again, reports);
    }
});
