use serde::{Deserialize, Serialize};

use crate::perm::{Cycles, Permutation};

/// One confirmation or counterexample. Elements are stored in cycle notation
/// so a record can be replayed against a freshly built group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub claim: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<Cycles>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observed: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<u64>,
}

impl Record {
    pub fn new(claim: &str) -> Self {
        Record {
            claim: claim.to_string(),
            elements: Vec::new(),
            primes: Vec::new(),
            observed: Vec::new(),
            expected: Vec::new(),
        }
    }

    pub fn element(mut self, x: &Permutation) -> Self {
        self.elements.push(x.to_cycles());
        self
    }

    pub fn primes(mut self, primes: &[u64]) -> Self {
        self.primes.extend_from_slice(primes);
        self
    }

    pub fn observed(mut self, values: impl IntoIterator<Item = u64>) -> Self {
        self.observed.extend(values);
        self
    }

    pub fn expected(mut self, values: impl IntoIterator<Item = u64>) -> Self {
        self.expected.extend(values);
        self
    }

    /// The recorded elements as permutations of the given degree.
    pub fn permutations(&self, degree: usize) -> crate::Result<Vec<Permutation>> {
        self.elements
            .iter()
            .map(|c| Permutation::from_cycles(degree, c))
            .collect()
    }
}

/// Outcome of one suite on one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    pub suite: String,
    pub group_name: String,
    pub group_order: u64,
    pub instances_checked: u64,
    pub violations: Vec<Record>,
    pub witnesses: Vec<Record>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn new(suite: &str, group_name: &str, group_order: u64) -> Self {
        CheckReport {
            suite: suite.to_string(),
            group_name: group_name.to_string(),
            group_order,
            instances_checked: 0,
            violations: Vec::new(),
            witnesses: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records `record` as a witness when `holds`, otherwise as a violation.
    pub fn outcome(&mut self, holds: bool, record: Record) {
        if holds {
            self.witnesses.push(record);
        } else {
            self.violations.push(record);
        }
    }

    /// Folds another report for the same suite and group into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        debug_assert_eq!(self.suite, other.suite);
        self.instances_checked += other.instances_checked;
        self.violations.extend(other.violations);
        self.witnesses.extend(other.witnesses);
        self.elapsed_ms += other.elapsed_ms;
    }

    /// The report with `elapsed_ms` zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> CheckReport {
        CheckReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

pub fn reports_to_json(reports: &[CheckReport]) -> String {
    let mut text = serde_json::to_string_pretty(reports).expect("reports serialise");
    text.push('\n');
    text
}

pub fn reports_from_json(text: &str) -> crate::Result<Vec<CheckReport>> {
    Ok(serde_json::from_str(text)?)
}
