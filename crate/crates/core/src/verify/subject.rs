use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::arith::prime_divisors;
use crate::catalog::GroupSpecEntry;
use crate::chartab::{character_table_with, CharacterTable};
use crate::classalg::{profile_unchecked, CommutatorProfile};
use crate::error::{Error, Result};
use crate::group::{center, ClassList, FiniteGroup};
use crate::series::{z_p_star_with, NormalData, PrimeSet, SimplicityFlags};

/// Declared properties of a corpus entry that the lemma checks rely on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SubjectFlags {
    pub almost_simple: bool,
    pub lie_type: bool,
    pub characteristic: Option<u64>,
}

/// A group under test together with lazily computed facts shared by the suites.
pub struct Subject<'g> {
    name: String,
    flags: SubjectFlags,
    group: &'g FiniteGroup,
    primes: Vec<u64>,
    normal: NormalData<'g>,
    profiles: OnceLock<Vec<CommutatorProfile>>,
    center: OnceLock<FiniteGroup>,
    fitting: OnceLock<FiniteGroup>,
    cores: OnceLock<BTreeMap<u64, (FiniteGroup, FiniteGroup)>>,
    table: OnceLock<Result<CharacterTable>>,
}

impl<'g> Subject<'g> {
    pub fn new(name: &str, group: &'g FiniteGroup) -> Self {
        Self::with_flags(name, group, SubjectFlags::default())
    }

    pub fn with_flags(name: &str, group: &'g FiniteGroup, flags: SubjectFlags) -> Self {
        Subject {
            name: name.to_string(),
            flags,
            group,
            primes: prime_divisors(group.order()),
            normal: NormalData::new(group),
            profiles: OnceLock::new(),
            center: OnceLock::new(),
            fitting: OnceLock::new(),
            cores: OnceLock::new(),
            table: OnceLock::new(),
        }
    }

    pub fn from_entry(entry: &GroupSpecEntry, group: &'g FiniteGroup) -> Result<Self> {
        if entry.lie_type && entry.characteristic.is_none() {
            return Err(Error::MissingCharacteristic(entry.name.clone()));
        }
        let flags = SubjectFlags {
            almost_simple: entry.almost_simple,
            lie_type: entry.lie_type,
            characteristic: entry.characteristic,
        };
        Ok(Self::with_flags(&entry.name, group, flags))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn flags(&self) -> SubjectFlags {
        self.flags
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    /// Primes dividing the group order.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn classes(&self) -> &ClassList {
        &self.normal.classes
    }

    /// `<x^G>` for each class representative, in class order.
    pub fn closures(&self) -> &[FiniteGroup] {
        self.normal.closures()
    }

    pub fn closure_is_solvable(&self) -> &[bool] {
        self.normal.closure_is_solvable()
    }

    /// Commutator profile of each class representative, in class order.
    pub fn profiles(&self) -> &[CommutatorProfile] {
        self.profiles.get_or_init(|| {
            self.classes()
                .classes()
                .par_iter()
                .map(|c| profile_unchecked(self.group, &c.representative))
                .collect()
        })
    }

    pub fn center(&self) -> &FiniteGroup {
        self.center.get_or_init(|| center(self.group))
    }

    pub fn fitting(&self) -> &FiniteGroup {
        self.fitting.get_or_init(|| self.normal.fitting())
    }

    fn cores(&self) -> &BTreeMap<u64, (FiniteGroup, FiniteGroup)> {
        self.cores.get_or_init(|| {
            self.primes
                .iter()
                .map(|&p| {
                    let op = self.normal.o_pi(&PrimeSet::single(p).expect("prime"));
                    (p, (op, self.normal.o_p_prime(p)))
                })
                .collect()
        })
    }

    /// `O_p(G)`; trivial for primes not dividing the order.
    pub fn o_p(&self, p: u64) -> FiniteGroup {
        self.cores()
            .get(&p)
            .map(|(op, _)| op.clone())
            .unwrap_or_else(|| FiniteGroup::trivial(self.group.degree()))
    }

    /// `O_p'(G)`; the whole group for primes not dividing the order.
    pub fn o_p_prime(&self, p: u64) -> FiniteGroup {
        self.cores()
            .get(&p)
            .map(|(_, opp)| opp.clone())
            .unwrap_or_else(|| self.group.clone())
    }

    pub fn z_p_star(&self, p: u64) -> FiniteGroup {
        z_p_star_with(self.group, &self.o_p_prime(p))
    }

    pub fn simplicity(&self) -> Result<SimplicityFlags> {
        self.normal.simplicity()
    }

    pub fn character_table(&self) -> Result<&CharacterTable> {
        self.table
            .get_or_init(|| character_table_with(self.group, self.classes().clone()))
            .as_ref()
            .map_err(Clone::clone)
    }
}
