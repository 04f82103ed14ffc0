//! The two worked examples: `GL(2,3)` with an element of order 8, and
//! `C3 : Q8` with an element of order 12.

use std::time::Instant;

use crate::catalog::make_named_group;
use crate::classalg::profile_unchecked;
use crate::error::Result;
use crate::group::{derived_subgroup, FiniteGroup};
use crate::series::central_modulo_unchecked;

use super::report::{CheckReport, Record};
use super::subject::Subject;

fn first_of_order(group: &FiniteGroup, order: u64) -> Option<crate::perm::Permutation> {
    group
        .elements()
        .iter()
        .find(|e| e.order() == order)
        .cloned()
}

fn check_value(report: &mut CheckReport, claim: &str, observed: Vec<u64>, expected: Vec<u64>) {
    let holds = observed == expected;
    report.outcome(
        holds,
        Record::new(claim).observed(observed).expected(expected),
    );
}

/// On a group expected to be `GL(2,3)`: `|O_2| = 8`, the quotient by `O_2` has
/// order 6 and is nonabelian, an order-8 element has commutator orders
/// `{1, 4, 6}`, and that element is not central modulo `O_2`.
pub fn order_eight_bundle(name: &str, group: &FiniteGroup) -> CheckReport {
    let start = Instant::now();
    let s = Subject::new(name, group);
    let mut report = CheckReport::new("remarks", name, group.order());
    let o2 = s.o_p(2);
    check_value(&mut report, "o2_order", vec![o2.order()], vec![8]);
    let quotient = group.order() / o2.order();
    check_value(&mut report, "quotient_order", vec![quotient], vec![6]);
    let abelian_quotient = derived_subgroup(group).is_subset_of(&o2);
    check_value(
        &mut report,
        "quotient_nonabelian",
        vec![u64::from(!abelian_quotient)],
        vec![1],
    );
    match first_of_order(group, 8) {
        Some(x) => {
            let profile = profile_unchecked(group, &x);
            let support = profile.support();
            report.outcome(
                support == [1, 4, 6],
                Record::new("commutator_order_support")
                    .element(&x)
                    .observed(support)
                    .expected([1, 4, 6]),
            );
            let central = central_modulo_unchecked(group, &x, &o2);
            report.outcome(
                !central,
                Record::new("not_central_mod_o2")
                    .element(&x)
                    .observed([u64::from(central)])
                    .expected([0]),
            );
        }
        None => report.violations.push(
            Record::new("element_of_order_8")
                .observed([0])
                .expected([1]),
        ),
    }
    report.instances_checked = (report.witnesses.len() + report.violations.len()) as u64;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// On a group expected to be `C3 : Q8`: `|Z| = 2`, `F` is cyclic of order 12
/// generated by an element `x` of order 12, `x` has commutator orders `{1, 6}`,
/// and `x` lies in `F` but not in `Z`.
pub fn order_twelve_bundle(name: &str, group: &FiniteGroup) -> CheckReport {
    let start = Instant::now();
    let s = Subject::new(name, group);
    let mut report = CheckReport::new("remarks", name, group.order());
    let z = s.center();
    let f = s.fitting();
    check_value(&mut report, "center_order", vec![z.order()], vec![2]);
    check_value(&mut report, "fitting_order", vec![f.order()], vec![12]);
    match first_of_order(group, 12) {
        Some(x) => {
            let generates = f.contains(&x) && x.order() == f.order();
            report.outcome(
                generates,
                Record::new("fitting_cyclic_generated_by_x")
                    .element(&x)
                    .observed([u64::from(generates)])
                    .expected([1]),
            );
            let support = profile_unchecked(group, &x).support();
            report.outcome(
                support == [1, 6],
                Record::new("commutator_order_support")
                    .element(&x)
                    .observed(support)
                    .expected([1, 6]),
            );
            let membership = [u64::from(f.contains(&x)), u64::from(z.contains(&x))];
            report.outcome(
                membership == [1, 0],
                Record::new("in_fitting_not_central")
                    .element(&x)
                    .observed(membership)
                    .expected([1, 0]),
            );
        }
        None => report.violations.push(
            Record::new("element_of_order_12")
                .observed([0])
                .expected([1]),
        ),
    }
    report.instances_checked = (report.witnesses.len() + report.violations.len()) as u64;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Both bundles on their catalog groups.
pub fn reproduce_remarks() -> Result<Vec<CheckReport>> {
    let gl = make_named_group("GL(2,3)")?;
    let dic = make_named_group("C3:Q8")?;
    Ok(vec![
        order_eight_bundle("GL(2,3)", &gl),
        order_twelve_bundle("C3:Q8", &dic),
    ])
}
