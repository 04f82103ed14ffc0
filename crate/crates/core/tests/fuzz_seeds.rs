//! Replays the checked-in fuzz seeds through the decoders on stable.

use std::path::PathBuf;

use classprod::catalog::{make_named_group_capped, parse_manifest};
use classprod::group::GroupSpec;
use classprod::perm::parse_cycles;
use classprod::verify::{reports_from_json, reports_to_json};
use classprod::Permutation;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| std::fs::read_to_string(entry.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn cycle_seeds() {
    let mut parsed = 0;
    for text in seeds("cycles") {
        if let Ok(cycles) = parse_cycles(&text) {
            let degree = cycles.iter().flatten().copied().max().unwrap_or(1);
            let p = Permutation::from_cycles(degree, &cycles).unwrap();
            assert_eq!(Permutation::parse(degree, &p.to_string()).unwrap(), p);
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn group_spec_seeds() {
    for text in seeds("group_spec") {
        if let Ok(spec) = GroupSpec::from_json(&text) {
            assert_eq!(GroupSpec::from_json(&spec.to_json()).unwrap(), spec);
            spec.build(2000).unwrap();
        }
    }
}

#[test]
fn manifest_seeds() {
    for text in seeds("manifest") {
        for entry in parse_manifest(&text).unwrap() {
            entry.build(20000).unwrap();
        }
    }
}

#[test]
fn report_seeds() {
    for text in seeds("reports") {
        let reports = reports_from_json(&text).unwrap();
        assert_eq!(
            reports_from_json(&reports_to_json(&reports)).unwrap(),
            reports
        );
    }
}

#[test]
fn group_name_seeds() {
    for name in seeds("group_name") {
        make_named_group_capped(&name, 2000).unwrap();
    }
}
