//! Exhaustive checkers over concrete groups, with machine-readable reports.

mod remarks;
mod report;
mod subject;
mod suites;

use std::time::Instant;

use rayon::prelude::*;

pub use remarks::{order_eight_bundle, order_twelve_bundle, reproduce_remarks};
pub use report::{reports_from_json, reports_to_json, CheckReport, Record};
pub use subject::{Subject, SubjectFlags};
pub use suites::{
    check_almost_simple_witness, check_commutators_p, check_equal_order,
    check_glauberman_baer_suzuki, check_lemma_suite, check_two_prime_conditions,
    explore_p_singular, search_three_class_products, sylow_subgroup,
};

use crate::catalog::GroupSpecEntry;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    /// Violations are failures.
    Assertion,
    /// Data only; never affects the outcome of a run.
    Exploration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteInfo {
    pub id: &'static str,
    pub kind: SuiteKind,
    /// Runs once per prime dividing the group order.
    pub per_prime: bool,
    pub summary: &'static str,
}

pub const SUITES: &[SuiteInfo] = &[
    SuiteInfo {
        id: "commutators_p",
        kind: SuiteKind::Assertion,
        per_prime: true,
        summary: "[x,g] is a p-element for all g iff x is central modulo O_p(G)",
    },
    SuiteInfo {
        id: "glauberman_baer_suzuki",
        kind: SuiteKind::Assertion,
        per_prime: true,
        summary: "Z_p* and O_p membership criteria for p-elements",
    },
    SuiteInfo {
        id: "almost_simple_witness",
        kind: SuiteKind::Assertion,
        per_prime: true,
        summary: "almost simple groups: every x != 1 has a nontrivial p'-commutator",
    },
    SuiteInfo {
        id: "three_class_products",
        kind: SuiteKind::Assertion,
        per_prime: false,
        summary: "K^-1 K = 1 u D u D^-1 forces <K> solvable",
    },
    SuiteInfo {
        id: "two_prime",
        kind: SuiteKind::Assertion,
        per_prime: false,
        summary:
            "commutator orders divisible by rs force x into F(G), and Z(G) for prime power order",
    },
    SuiteInfo {
        id: "equal_order",
        kind: SuiteKind::Assertion,
        per_prime: false,
        summary: "a single nontrivial commutator order forces <x^G> solvable",
    },
    SuiteInfo {
        id: "lemmas",
        kind: SuiteKind::Assertion,
        per_prime: false,
        summary:
            "prime power classes, defect-zero characters, Sylow centralizers, quasisimple centres",
    },
    SuiteInfo {
        id: "explore_p_singular",
        kind: SuiteKind::Exploration,
        per_prime: true,
        summary: "elements whose nontrivial commutators are all p-singular",
    },
];

pub fn suite_info(id: &str) -> Option<&'static SuiteInfo> {
    SUITES.iter().find(|s| s.id == id)
}

/// Resolves suite ids; `all` expands to every assertion suite.
pub fn expand_suites<S: AsRef<str>>(ids: &[S]) -> Result<Vec<&'static SuiteInfo>> {
    let mut out: Vec<&'static SuiteInfo> = Vec::new();
    for id in ids {
        let id = id.as_ref();
        let selected: Vec<&'static SuiteInfo> = if id == "all" {
            SUITES
                .iter()
                .filter(|s| s.kind == SuiteKind::Assertion)
                .collect()
        } else {
            vec![suite_info(id).ok_or_else(|| Error::Parse(format!("unknown suite: {id}")))?]
        };
        for s in selected {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Whether a suite applies to a subject at all.
pub fn applies(info: &SuiteInfo, subject: &Subject) -> bool {
    match info.id {
        "almost_simple_witness" => subject.flags().almost_simple,
        _ => !subject.group().is_trivial(),
    }
}

/// Runs one suite on one subject. Per-prime suites run over `primes` when
/// given, otherwise over every prime dividing the order, and are merged into
/// one report. Returns `None` when the suite does not apply.
pub fn run_suite(
    info: &SuiteInfo,
    subject: &Subject,
    primes: Option<&[u64]>,
) -> Result<Option<CheckReport>> {
    if !applies(info, subject) {
        return Ok(None);
    }
    let start = Instant::now();
    let g = subject.group();
    let mut report = if info.per_prime {
        let primes: Vec<u64> = match primes {
            Some(ps) => {
                for &p in ps {
                    if !crate::arith::is_prime(p) {
                        return Err(Error::NotPrime(p));
                    }
                }
                ps.to_vec()
            }
            None => subject.primes().to_vec(),
        };
        let mut merged = CheckReport::new(info.id, subject.name(), g.order());
        for p in primes {
            let part = match info.id {
                "commutators_p" => check_commutators_p(subject, p),
                "glauberman_baer_suzuki" => check_glauberman_baer_suzuki(subject, p),
                "almost_simple_witness" => check_almost_simple_witness(subject, p),
                "explore_p_singular" => explore_p_singular(subject, p),
                other => unreachable!("suite {other} is not per prime"),
            };
            merged.absorb(part);
        }
        merged
    } else {
        match info.id {
            "three_class_products" => search_three_class_products(subject),
            "two_prime" => check_two_prime_conditions(subject),
            "equal_order" => check_equal_order(subject),
            "lemmas" => check_lemma_suite(subject)?,
            other => unreachable!("unknown suite {other}"),
        }
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(Some(report))
}

/// Outcome of running suites over a corpus, in manifest order then suite order.
#[derive(Debug, Clone)]
pub struct CorpusRun {
    pub reports: Vec<(SuiteKind, CheckReport)>,
}

impl CorpusRun {
    /// Violations across assertion suites only.
    pub fn assertion_violations(&self) -> usize {
        self.reports
            .iter()
            .filter(|(k, _)| *k == SuiteKind::Assertion)
            .map(|(_, r)| r.violations.len())
            .sum()
    }

    pub fn into_reports(self) -> Vec<CheckReport> {
        self.reports.into_iter().map(|(_, r)| r).collect()
    }
}

/// Builds every entry and runs the suites on it, in parallel across entries.
/// Fails on the first entry that cannot be built, naming it.
pub fn run_corpus(
    entries: &[GroupSpecEntry],
    suites: &[&'static SuiteInfo],
    primes: Option<&[u64]>,
    cap: usize,
) -> Result<CorpusRun> {
    let per_entry: Vec<Result<Vec<(SuiteKind, CheckReport)>>> = entries
        .par_iter()
        .map(|entry| {
            let group: FiniteGroup = entry.build(cap).map_err(|e| match e {
                Error::CapExceeded { cap, partial } => Error::Unsupported(format!(
                    "{}: closure exceeded the element cap of {cap} (reached {partial})",
                    entry.name
                )),
                other => other,
            })?;
            let subject = Subject::from_entry(entry, &group)?;
            let mut out = Vec::new();
            for info in suites {
                if let Some(r) = run_suite(info, &subject, primes)? {
                    out.push((info.kind, r));
                }
            }
            Ok(out)
        })
        .collect();
    let mut reports = Vec::new();
    for r in per_entry {
        reports.extend(r?);
    }
    Ok(CorpusRun { reports })
}
