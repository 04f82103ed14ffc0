//! Corpus manifests: JSON lists of group entries with their expected orders.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::make_named_group_capped;
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::{generate, FiniteGroup};
use crate::perm::{Cycles, Permutation};

/// The manifest shipped with the crate.
pub const BUILTIN_MANIFEST: &str = include_str!("../../data/corpus.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Construction {
    Builtin(String),
    Product(Vec<String>),
    Generators {
        degree: usize,
        generators: Vec<Cycles>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecEntry {
    pub name: String,
    pub construction: Construction,
    pub expected_order: u64,
    /// Nonabelian simple socle with the group embedded in its automorphisms.
    #[serde(default, skip_serializing_if = "is_false")]
    pub almost_simple: bool,
    /// Simple group of Lie type; requires `characteristic`.
    #[serde(default, skip_serializing_if = "is_false")]
    pub lie_type: bool,
    /// Defining characteristic, used by the Sylow-centralizer and defect-zero checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<u64>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl GroupSpecEntry {
    pub fn builtin(name: &str, expected_order: u64) -> Self {
        GroupSpecEntry {
            name: name.to_string(),
            construction: Construction::Builtin(name.to_string()),
            expected_order,
            almost_simple: false,
            lie_type: false,
            characteristic: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::Parse("entry without a name".into()));
        }
        if self.expected_order == 0 {
            return Err(Error::Parse(format!(
                "{}: expected_order must be positive",
                self.name
            )));
        }
        if self.lie_type && self.characteristic.is_none() {
            return Err(Error::MissingCharacteristic(self.name.clone()));
        }
        if let Some(r) = self.characteristic {
            if !is_prime(r) {
                return Err(Error::NotPrime(r));
            }
            if !self.expected_order.is_multiple_of(r) {
                return Err(Error::Parse(format!(
                    "{}: characteristic {r} does not divide the order",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Builds the group and checks its order against `expected_order`.
    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        self.validate()?;
        if self.expected_order > cap as u64 {
            return Err(Error::CapExceeded {
                cap,
                partial: self.expected_order as usize,
            });
        }
        let group = match &self.construction {
            Construction::Builtin(name) => make_named_group_capped(name, cap)?,
            Construction::Product(factors) => {
                if factors.is_empty() {
                    return Err(Error::Parse(format!("{}: empty product", self.name)));
                }
                make_named_group_capped(&factors.join("x"), cap)?
            }
            Construction::Generators { degree, generators } => {
                if *degree == 0 {
                    return Err(Error::Parse(format!(
                        "{}: degree must be positive",
                        self.name
                    )));
                }
                let perms = generators
                    .iter()
                    .map(|c| Permutation::from_cycles(*degree, c))
                    .collect::<Result<Vec<_>>>()?;
                generate(*degree, &perms, cap)?
            }
        };
        if group.order() != self.expected_order {
            return Err(Error::OrderMismatch {
                name: self.name.clone(),
                expected: self.expected_order,
                actual: group.order(),
            });
        }
        Ok(group)
    }
}

pub fn parse_manifest(text: &str) -> Result<Vec<GroupSpecEntry>> {
    let entries: Vec<GroupSpecEntry> = serde_json::from_str(text)?;
    for e in &entries {
        e.validate()?;
    }
    Ok(entries)
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<Vec<GroupSpecEntry>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_manifest(&text)
}

pub fn builtin_corpus() -> Vec<GroupSpecEntry> {
    parse_manifest(BUILTIN_MANIFEST).expect("shipped manifest is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn shipped_manifest_builds_to_expected_orders() {
        let corpus = builtin_corpus();
        assert!(corpus.len() >= 60);
        for entry in &corpus {
            let g = entry
                .build(DEFAULT_CAP)
                .unwrap_or_else(|e| panic!("{}: {e}", entry.name));
            assert!(g.order() <= 10_000);
        }
    }

    #[test]
    fn entry_validation() {
        let mut e = GroupSpecEntry::builtin("PSL(2,7)", 168);
        e.lie_type = true;
        assert_eq!(
            e.validate(),
            Err(Error::MissingCharacteristic("PSL(2,7)".into()))
        );
        e.characteristic = Some(5);
        assert!(e.validate().is_err());
        e.characteristic = Some(7);
        assert!(e.validate().is_ok());
        let wrong = GroupSpecEntry::builtin("S4", 25);
        assert!(matches!(
            wrong.build(DEFAULT_CAP),
            Err(Error::OrderMismatch { .. })
        ));
        let big = GroupSpecEntry::builtin("S7", 5040);
        assert!(matches!(big.build(1000), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn manifest_round_trip() {
        let text = r#"[
            {"name": "V4", "construction": {"generators": {"degree": 4, "generators": [[[1,2]], [[3,4]]]}}, "expected_order": 4},
            {"name": "S3xC2", "construction": {"product": ["S3", "C2"]}, "expected_order": 12}
        ]"#;
        let entries = parse_manifest(text).unwrap();
        assert_eq!(entries[0].build(100).unwrap().order(), 4);
        assert_eq!(entries[1].build(100).unwrap().order(), 12);
        let again = parse_manifest(&serde_json::to_string(&entries).unwrap()).unwrap();
        assert_eq!(again, entries);
        assert!(parse_manifest(
            r#"[{"name": "x", "construction": {"builtin": "S3"}, "expected_order": 6, "extra": 1}]"#
        )
        .is_err());
    }
}
