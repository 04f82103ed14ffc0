#![no_main]

use classprod::catalog::parse_manifest;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(entries) = parse_manifest(text) {
        for entry in entries.iter().take(4) {
            let _ = entry.build(2000);
        }
    }
});
