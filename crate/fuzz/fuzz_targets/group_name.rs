#![no_main]

use classprod::catalog::make_named_group_capped;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(name) = std::str::from_utf8(data) else {
        return;
    };
    if name.len() <= 64 {
        let _ = make_named_group_capped(name, 2000);
    }
});
