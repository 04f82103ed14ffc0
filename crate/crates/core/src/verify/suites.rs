//! Exhaustive checks of commutator-order statements on a single group.
//!
//! Every statement checked here is invariant under conjugation of `x`, so each
//! scan runs over class representatives only.

use crate::arith::{is_power_of, p_part, prime_power_base};
use crate::chartab::defect_zero_characters;
use crate::classalg::{class_product_decomposition, inverse_class};
use crate::error::{Error, Result};
use crate::group::{generate, raw_commutator, subgroup_from, FiniteGroup};
use crate::perm::Permutation;
use crate::series::central_modulo_unchecked;

use super::report::{CheckReport, Record};
use super::subject::Subject;

fn is_p_element(x: &Permutation, p: u64) -> bool {
    is_power_of(x.order(), p)
}

/// For every `x`: `[x,g]` is a p-element for all `g` iff `x` is central
/// modulo `O_p(G)`.
pub fn check_commutators_p(s: &Subject, p: u64) -> CheckReport {
    let g = s.group();
    let mut report = CheckReport::new("commutators_p", s.name(), g.order());
    let op = s.o_p(p);
    for (class, profile) in s.classes().iter().zip(s.profiles()) {
        let x = &class.representative;
        let orders = profile.nonidentity_orders();
        let all_p = orders.iter().all(|&o| is_power_of(o, p));
        let central = central_modulo_unchecked(g, x, &op);
        report.instances_checked += 1;
        let record = Record::new("p_element_commutators_iff_central_mod_o_p")
            .element(x)
            .primes(&[p])
            .observed(orders.iter().copied());
        if all_p != central {
            report.violations.push(record);
        } else if all_p && !s.center().contains(x) {
            report.witnesses.push(record);
        }
    }
    report
}

/// `<x, y>` is a p-group, decided by a closure bounded by `|G|_p`.
fn pair_is_p_group(x: &Permutation, y: &Permutation, p: u64, bound: u64) -> bool {
    if x == y {
        return true;
    }
    if !is_p_element(&x.then(y), p) {
        return false;
    }
    match generate(x.degree(), &[x.clone(), y.clone()], bound as usize) {
        Ok(h) => is_power_of(h.order(), p),
        Err(_) => false,
    }
}

/// For every p-element `x`: `x^G` meets `C_G(x)` only in `x` iff `x` lies in
/// `Z_p*(G)`; and `<x, x^g>` is a p-group for all `g` iff `x` lies in `O_p(G)`.
pub fn check_glauberman_baer_suzuki(s: &Subject, p: u64) -> CheckReport {
    let g = s.group();
    let mut report = CheckReport::new("glauberman_baer_suzuki", s.name(), g.order());
    let op = s.o_p(p);
    let zps = s.z_p_star(p);
    let bound = p_part(g.order(), p);
    for class in s.classes().iter() {
        let x = &class.representative;
        if !is_p_element(x, p) {
            continue;
        }
        report.instances_checked += 1;
        let isolated = class
            .members
            .iter()
            .all(|y| y == x || x.then(y) != y.then(x));
        let in_zps = zps.contains(x);
        let record = Record::new("class_meets_centralizer_only_in_x_iff_in_z_p_star")
            .element(x)
            .primes(&[p])
            .observed([u64::from(isolated), u64::from(in_zps)]);
        if isolated != in_zps {
            report.violations.push(record);
        } else if in_zps && !s.center().contains(x) {
            report.witnesses.push(record);
        }

        let pairs = class
            .members
            .iter()
            .all(|y| pair_is_p_group(x, y, p, bound));
        let in_op = op.contains(x);
        let record = Record::new("pairs_with_conjugates_are_p_groups_iff_in_o_p")
            .element(x)
            .primes(&[p])
            .observed([u64::from(pairs), u64::from(in_op)]);
        if pairs != in_op {
            report.violations.push(record);
        } else if in_op && !x.is_identity() {
            report.witnesses.push(record);
        }
    }
    report
}

/// For every nontrivial `x`, some `g` makes `[x,g]` a nontrivial p'-element.
/// Intended for almost simple groups.
pub fn check_almost_simple_witness(s: &Subject, p: u64) -> CheckReport {
    let g = s.group();
    let mut report = CheckReport::new("almost_simple_witness", s.name(), g.order());
    for class in s.classes().iter().skip(1) {
        let x = &class.representative;
        report.instances_checked += 1;
        let found = g.elements().iter().find_map(|h| {
            let c = raw_commutator(x, h);
            let o = c.order();
            (o != 1 && !o.is_multiple_of(p)).then_some((h, o))
        });
        match found {
            Some((h, o)) => report.witnesses.push(
                Record::new("p_regular_commutator")
                    .element(x)
                    .element(h)
                    .primes(&[p])
                    .observed([o]),
            ),
            None => report
                .violations
                .push(Record::new("p_regular_commutator").element(x).primes(&[p])),
        }
    }
    report
}

/// Finds classes `K` with `K^-1 K = 1 u D u D^-1` for a nontrivial class `D`
/// and checks that `<K>` is solvable.
pub fn search_three_class_products(s: &Subject) -> CheckReport {
    let g = s.group();
    let classes = s.classes();
    let mut report = CheckReport::new("three_class_products", s.name(), g.order());
    let solvable = s.closure_is_solvable();
    let closures = s.closures();
    for k in 1..classes.len() {
        report.instances_checked += 1;
        let kinv = inverse_class(g, classes, k).expect("valid class");
        let product = class_product_decomposition(g, classes, kinv, k).expect("valid classes");
        let support: Vec<usize> = product.support().into_iter().filter(|&c| c != 0).collect();
        let inv = |c: usize| inverse_class(g, classes, c).expect("valid class");
        let hypothesis = match support.as_slice() {
            [d] => inv(*d) == *d,
            [d, e] => inv(*d) == *e,
            _ => false,
        };
        if !hypothesis {
            continue;
        }
        let d = support[0];
        let record = Record::new("three_class_product_generates_solvable")
            .element(&classes[k].representative)
            .element(&classes[d].representative)
            .observed([classes[k].size(), classes[d].size(), closures[k].order()]);
        report.outcome(solvable[k], record);
    }
    report
}

/// For every `x` and primes `r != s` dividing `|G|`: if every nontrivial
/// `[x,g]` has order divisible by `rs`, then `x` lies in `F(G)`, and in `Z(G)`
/// when `x` has prime power order.
pub fn check_two_prime_conditions(s: &Subject) -> CheckReport {
    let g = s.group();
    let mut report = CheckReport::new("two_prime", s.name(), g.order());
    let primes = s.primes();
    for (class, profile) in s.classes().iter().zip(s.profiles()) {
        let x = &class.representative;
        let orders = profile.nonidentity_orders();
        let prime_power = x.is_identity() || prime_power_base(x.order()).is_some();
        for (i, &r) in primes.iter().enumerate() {
            for &t in &primes[i + 1..] {
                report.instances_checked += 1;
                if !orders.iter().all(|&o| o % (r * t) == 0) {
                    continue;
                }
                let in_fitting = s.fitting().contains(x);
                let central = s.center().contains(x);
                let record = Record::new("rs_divisible_commutators")
                    .element(x)
                    .primes(&[r, t])
                    .observed(orders.iter().copied());
                let holds = in_fitting && (!prime_power || central);
                if !holds || !orders.is_empty() {
                    report.outcome(holds, record);
                }
            }
        }
    }
    report
}

/// For every `x`: if all nontrivial `[x,g]` share one order, `<x^G>` is solvable.
pub fn check_equal_order(s: &Subject) -> CheckReport {
    let g = s.group();
    let mut report = CheckReport::new("equal_order", s.name(), g.order());
    let solvable = s.closure_is_solvable();
    let closures = s.closures();
    for (i, (class, profile)) in s.classes().iter().zip(s.profiles()).enumerate() {
        let orders = profile.nonidentity_orders();
        if orders.len() > 1 {
            continue;
        }
        report.instances_checked += 1;
        let record = Record::new("equal_commutator_orders_give_solvable_closure")
            .element(&class.representative)
            .observed(orders.iter().copied().chain([closures[i].order()]));
        if !solvable[i] || !orders.is_empty() {
            report.outcome(solvable[i], record);
        }
    }
    report
}

/// Grows an r-subgroup by adjoining, in stable order, r-elements that
/// normalise it, until its order reaches `|G|_r`.
pub fn sylow_subgroup(group: &FiniteGroup, r: u64) -> Result<FiniteGroup> {
    let target = p_part(group.order(), r);
    let mut current = FiniteGroup::trivial(group.degree());
    while current.order() < target {
        let next = group.elements().iter().find(|y| {
            is_p_element(y, r)
                && !current.contains(y)
                && current
                    .generators()
                    .iter()
                    .all(|h| current.contains(&h.conjugate_by(y)))
        });
        let Some(y) = next else {
            return Err(Error::Unsupported(format!(
                "Sylow {r}-subgroup growth stalled"
            )));
        };
        let mut seeds: Vec<Permutation> = current.generators().to_vec();
        seeds.push(y.clone());
        current = subgroup_from(group, &seeds)?;
    }
    Ok(current)
}

/// Kazarin-type closure solvability for prime-power classes, defect-zero
/// characters for Lie-type entries, self-centralising Sylow subgroups in the
/// defining characteristic, and primes of the centre of quasisimple groups.
pub fn check_lemma_suite(s: &Subject) -> Result<CheckReport> {
    let g = s.group();
    let mut report = CheckReport::new("lemmas", s.name(), g.order());
    let flags = s.flags();
    if flags.lie_type && flags.characteristic.is_none() {
        return Err(Error::MissingCharacteristic(s.name().to_string()));
    }

    let solvable = s.closure_is_solvable();
    for (i, class) in s.classes().iter().enumerate() {
        if class.size() != 1 && prime_power_base(class.size()).is_none() {
            continue;
        }
        report.instances_checked += 1;
        if !solvable[i] {
            report.violations.push(
                Record::new("prime_power_class_has_solvable_closure")
                    .element(&class.representative)
                    .observed([class.size()]),
            );
        }
    }

    if let (true, Some(r)) = (flags.lie_type, flags.characteristic) {
        let table = s.character_table()?;
        for &p in s.primes().iter().filter(|&&p| p != r) {
            report.instances_checked += 1;
            let found = defect_zero_characters(table, p)
                .into_iter()
                .find(|c| c.degree_coprime_to(r));
            let record =
                Record::new("defect_zero_character_prime_to_characteristic").primes(&[p, r]);
            match found {
                Some(c) => report.witnesses.push(record.observed([c.degree])),
                None => report.violations.push(record),
            }
        }
    }

    if let (true, Some(r)) = (flags.almost_simple, flags.characteristic) {
        report.instances_checked += 1;
        let sylow = sylow_subgroup(g, r)?;
        let centralizer: Vec<&Permutation> = g
            .elements()
            .iter()
            .filter(|y| sylow.generators().iter().all(|h| h.then(y) == y.then(h)))
            .collect();
        let contained = centralizer.iter().all(|y| sylow.contains(y));
        let record = Record::new("sylow_centralizer_inside_sylow")
            .primes(&[r])
            .observed([sylow.order(), centralizer.len() as u64]);
        report.outcome(contained && sylow.order() == p_part(g.order(), r), record);
    }

    let quasisimple = !g.is_trivial() && s.simplicity()?.is_quasisimple;
    if quasisimple {
        let z = s.center().order();
        for p in crate::arith::prime_divisors(z) {
            report.instances_checked += 1;
            let record = Record::new("quasisimple_centre_primes_divide_quotient")
                .primes(&[p])
                .observed([z, g.order() / z]);
            report.outcome((g.order() / z).is_multiple_of(p), record);
        }
    }
    Ok(report)
}

/// Elements whose nontrivial commutators are all p-singular, with the order
/// and solvability of their normal closure. Exploration only: never fails.
pub fn explore_p_singular(s: &Subject, p: u64) -> CheckReport {
    let g = s.group();
    let mut report = CheckReport::new("explore_p_singular", s.name(), g.order());
    let solvable = s.closure_is_solvable();
    let closures = s.closures();
    let op = s.o_p(p);
    for (i, (class, profile)) in s.classes().iter().zip(s.profiles()).enumerate() {
        report.instances_checked += 1;
        let orders = profile.nonidentity_orders();
        if !orders.iter().all(|&o| o % p == 0) {
            continue;
        }
        let x = &class.representative;
        report.witnesses.push(
            Record::new("p_singular_commutators")
                .element(x)
                .primes(&[p])
                .observed([
                    x.order(),
                    closures[i].order(),
                    u64::from(solvable[i]),
                    u64::from(op.contains(x)),
                ]),
        );
    }
    report
}
