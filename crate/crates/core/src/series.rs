//! Characteristic subgroups and arithmetic predicates.
//!
//! `O_pi`, the Fitting subgroup and the solvable radical are all computed from
//! the normal closures of class representatives: a normal subgroup is a union
//! of classes, so a class belongs to the largest normal subgroup with some
//! closure-stable property exactly when its own normal closure has it.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::{
    factorize, inv_mod, is_power_of, is_prime, p_part, pow_mod, prime_divisors, prime_power_base,
};
use crate::error::{Error, Result};
use crate::group::{
    center, conjugacy_classes, derived_subgroup, normal_closure_unchecked, raw_commutator,
    ClassList, FiniteGroup,
};
use crate::perm::Permutation;

/// A nonempty set of primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeSet(BTreeSet<u64>);

impl PrimeSet {
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        if set.is_empty() {
            return Err(Error::Parse("prime set must be nonempty".into()));
        }
        if let Some(&bad) = set.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(bad));
        }
        Ok(PrimeSet(set))
    }

    pub fn single(p: u64) -> Result<Self> {
        PrimeSet::new([p])
    }

    /// Primes dividing `n` other than `p`; `None` when there are none.
    pub fn complement_in(n: u64, p: u64) -> Option<Self> {
        let rest: BTreeSet<u64> = prime_divisors(n).into_iter().filter(|&q| q != p).collect();
        if rest.is_empty() {
            None
        } else {
            Some(PrimeSet(rest))
        }
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.contains(&p)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    /// True when every prime divisor of `n` is in the set.
    pub fn divides_only(&self, n: u64) -> bool {
        factorize(n).iter().all(|&(q, _)| self.contains(q))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementPProfile {
    pub is_p_element: bool,
    pub is_p_singular: bool,
    pub is_p_regular: bool,
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// The identity counts as a p-element for every `p`.
pub fn element_p_profile(x: &Permutation, p: u64) -> Result<ElementPProfile> {
    require_prime(p)?;
    let n = x.order();
    Ok(ElementPProfile {
        is_p_element: is_power_of(n, p),
        is_p_singular: n.is_multiple_of(p),
        is_p_regular: !n.is_multiple_of(p),
    })
}

/// `x = p_part * p_prime_part`, both factors powers of `x`, commuting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPartDecomposition {
    pub p: u64,
    pub p_part: Permutation,
    pub p_prime_part: Permutation,
}

pub fn p_part_decomposition(x: &Permutation, p: u64) -> Result<PPartDecomposition> {
    require_prime(p)?;
    let n = x.order();
    let np = p_part(n, p);
    let npp = n / np;
    // a * npp = 1 (mod np) and b * np = 1 (mod npp); then a*npp + b*np = 1 (mod n)
    let a = inv_mod(npp % np, np).expect("coprime parts");
    let b = inv_mod(np % npp, npp).expect("coprime parts");
    Ok(PPartDecomposition {
        p,
        p_part: x.pow(a * npp % n.max(1)),
        p_prime_part: x.pow(b * np % n.max(1)),
    })
}

/// Cached classes and class normal closures of a group.
pub struct NormalData<'g> {
    pub group: &'g FiniteGroup,
    pub classes: ClassList,
    closures: OnceLock<Vec<FiniteGroup>>,
    solvable: OnceLock<Vec<bool>>,
}

impl<'g> NormalData<'g> {
    pub fn new(group: &'g FiniteGroup) -> Self {
        NormalData::with_classes(group, conjugacy_classes(group))
    }

    pub fn with_classes(group: &'g FiniteGroup, classes: ClassList) -> Self {
        NormalData {
            group,
            classes,
            closures: OnceLock::new(),
            solvable: OnceLock::new(),
        }
    }

    /// `<x^G>` for each class representative `x`, in class order.
    pub fn closures(&self) -> &[FiniteGroup] {
        self.closures.get_or_init(|| {
            use rayon::prelude::*;
            self.classes
                .classes()
                .par_iter()
                .map(|c| {
                    normal_closure_unchecked(self.group, std::slice::from_ref(&c.representative))
                })
                .collect()
        })
    }

    pub fn closure_is_solvable(&self) -> &[bool] {
        self.solvable.get_or_init(|| {
            use rayon::prelude::*;
            self.closures().par_iter().map(is_solvable).collect()
        })
    }

    /// Normal closure of the union of the selected classes.
    fn closure_of_classes(&self, selected: impl Iterator<Item = usize>) -> FiniteGroup {
        let reps: Vec<Permutation> = selected
            .map(|i| self.classes[i].representative.clone())
            .filter(|r| !r.is_identity())
            .collect();
        normal_closure_unchecked(self.group, &reps)
    }

    pub fn o_pi(&self, pi: &PrimeSet) -> FiniteGroup {
        let closures = self.closures();
        self.closure_of_classes(
            (0..closures.len()).filter(|&i| pi.divides_only(closures[i].order())),
        )
    }

    /// `O_p'` for `p`; trivial when `|G|` is a power of `p`.
    pub fn o_p_prime(&self, p: u64) -> FiniteGroup {
        match PrimeSet::complement_in(self.group.order(), p) {
            Some(pi) => self.o_pi(&pi),
            None => FiniteGroup::trivial(self.group.degree()),
        }
    }

    pub fn fitting(&self) -> FiniteGroup {
        let mut seeds = Vec::new();
        for p in prime_divisors(self.group.order()) {
            let op = self.o_pi(&PrimeSet(BTreeSet::from([p])));
            seeds.extend(op.generators().iter().filter(|g| !g.is_identity()).cloned());
        }
        normal_closure_unchecked(self.group, &seeds)
    }

    pub fn solvable_radical(&self) -> FiniteGroup {
        let flags = self.closure_is_solvable();
        self.closure_of_classes((0..flags.len()).filter(|&i| flags[i]))
    }

    pub fn simplicity(&self) -> Result<SimplicityFlags> {
        let g = self.group;
        if g.is_trivial() {
            return Err(Error::TrivialGroup);
        }
        let closures = self.closures();
        let is_simple = self
            .classes
            .iter()
            .zip(closures)
            .skip(1)
            .all(|(_, n)| n.order() == g.order());
        let perfect = derived_subgroup(g).order() == g.order();
        let is_quasisimple = perfect && {
            let z = center(g);
            self.classes
                .iter()
                .zip(closures)
                .filter(|(c, _)| !z.contains(&c.representative))
                .all(|(_, n)| n.order() == g.order())
        };
        Ok(SimplicityFlags {
            is_simple,
            is_quasisimple,
        })
    }
}

pub fn o_pi(group: &FiniteGroup, pi: &PrimeSet) -> FiniteGroup {
    NormalData::new(group).o_pi(pi)
}

pub fn fitting(group: &FiniteGroup) -> FiniteGroup {
    NormalData::new(group).fitting()
}

pub fn solvable_radical(group: &FiniteGroup) -> FiniteGroup {
    NormalData::new(group).solvable_radical()
}

/// Iterates the derived series until it stabilises.
pub fn is_solvable(group: &FiniteGroup) -> bool {
    let mut current = group.clone();
    loop {
        if current.is_trivial() {
            return true;
        }
        let next = derived_subgroup(&current);
        if next.order() == current.order() {
            return false;
        }
        current = next;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFlags {
    pub is_solvable: bool,
    pub is_nilpotent: bool,
    pub is_p_group: Option<u64>,
}

pub fn structure_predicates(group: &FiniteGroup) -> StructureFlags {
    let is_p_group = prime_power_base(group.order());
    StructureFlags {
        is_solvable: is_solvable(group),
        is_nilpotent: is_p_group.is_some()
            || group.is_trivial()
            || fitting(group).order() == group.order(),
        is_p_group,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityFlags {
    pub is_simple: bool,
    pub is_quasisimple: bool,
}

pub fn simplicity_predicates(group: &FiniteGroup) -> Result<SimplicityFlags> {
    if group.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    NormalData::new(group).simplicity()
}

/// `{x : [x,g] in O_p'(G) for every generator g}`.
pub fn z_p_star(group: &FiniteGroup, p: u64) -> Result<FiniteGroup> {
    require_prime(p)?;
    Ok(z_p_star_with(group, &NormalData::new(group).o_p_prime(p)))
}

pub(crate) fn z_p_star_with(group: &FiniteGroup, o_p_prime: &FiniteGroup) -> FiniteGroup {
    let members: Vec<Permutation> = group
        .elements()
        .iter()
        .filter(|x| {
            group
                .generators()
                .iter()
                .all(|g| o_p_prime.contains(&raw_commutator(x, g)))
        })
        .cloned()
        .collect();
    FiniteGroup::from_closed_set(group.degree(), members)
}

/// True iff `[x,g]` lies in `n` for every generator `g` of the group.
pub fn is_central_modulo(group: &FiniteGroup, x: &Permutation, n: &FiniteGroup) -> Result<bool> {
    if !group.contains(x) {
        return Err(Error::NotInGroup);
    }
    if !n.is_normal_in(group) {
        return Err(Error::NotNormal);
    }
    Ok(central_modulo_unchecked(group, x, n))
}

pub(crate) fn central_modulo_unchecked(
    group: &FiniteGroup,
    x: &Permutation,
    n: &FiniteGroup,
) -> bool {
    group
        .generators()
        .iter()
        .all(|g| n.contains(&raw_commutator(x, g)))
}

/// Primes dividing `q^n - 1` but no `q^m - 1` with `1 <= m < n`.
pub fn primitive_prime_divisors(q: u64, n: u32) -> BTreeSet<u64> {
    assert!(q >= 2 && n >= 1);
    let value = (q as u128).pow(n) - 1;
    assert!(value <= u64::MAX as u128, "q^n - 1 out of range");
    factorize(value as u64)
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&p| (1..n).all(|m| pow_mod(q, m as u64, p) != 1))
        .collect()
}
