#![no_main]

use classprod::perm::parse_cycles;
use classprod::Permutation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cycles) = parse_cycles(text) else {
        return;
    };
    let degree = cycles
        .iter()
        .flatten()
        .copied()
        .max()
        .unwrap_or(1)
        .min(4096);
    if let Ok(p) = Permutation::from_cycles(degree, &cycles) {
        let again = Permutation::parse(degree, &p.to_string()).expect("display output parses");
        assert_eq!(again, p);
    }
});
