#![no_main]

use classprod::group::GroupSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = GroupSpec::from_json(text) {
        let again = GroupSpec::from_json(&spec.to_json()).expect("round trip");
        assert_eq!(again, spec);
        let _ = spec.build(2000);
    }
});
