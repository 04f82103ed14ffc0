//! Class-algebra combinatorics by direct counting.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ClassList, CommutatorScratch, FiniteGroup};
use crate::perm::Permutation;

/// Index of the class `K^-1`.
pub fn inverse_class(group: &FiniteGroup, classes: &ClassList, k: usize) -> Result<usize> {
    let class = classes.get(k).ok_or(Error::IndexOutOfRange(k))?;
    Ok(classes
        .class_of(group, &class.representative.inverse())
        .expect("inverse lies in the group"))
}

/// Multiplicities `n(K, L, C)` of the class sum product `K^ L^`, one term per
/// class that actually occurs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassProductDecomposition {
    pub left: usize,
    pub right: usize,
    pub terms: Vec<(usize, u64)>,
}

impl ClassProductDecomposition {
    /// Classes occurring in the set product `KL`.
    pub fn support(&self) -> Vec<usize> {
        self.terms.iter().map(|&(c, _)| c).collect()
    }

    pub fn multiplicity(&self, class: usize) -> u64 {
        self.terms
            .iter()
            .find(|&&(c, _)| c == class)
            .map_or(0, |&(_, m)| m)
    }
}

/// For a fixed target `c`, counts `a in K` with `a^-1 c` in each class `L`.
/// Returns a vector indexed by `L`.
fn counts_into(group: &FiniteGroup, classes: &ClassList, k: usize, c: &Permutation) -> Vec<u64> {
    let mut out = vec![0u64; classes.len()];
    for a in &classes[k].members {
        let b = a.inverse().then(c);
        let idx = group.index_of(&b).expect("product stays in the group");
        out[classes.class_of_index(idx)] += 1;
    }
    out
}

fn check_class(classes: &ClassList, idx: usize) -> Result<()> {
    if idx < classes.len() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(idx))
    }
}

pub fn class_product_decomposition(
    group: &FiniteGroup,
    classes: &ClassList,
    left: usize,
    right: usize,
) -> Result<ClassProductDecomposition> {
    check_class(classes, left)?;
    check_class(classes, right)?;
    let terms = (0..classes.len())
        .filter_map(|c| {
            let n = counts_into(group, classes, left, &classes[c].representative)[right];
            (n > 0).then_some((c, n))
        })
        .collect();
    Ok(ClassProductDecomposition { left, right, terms })
}

/// `n(K, L, C)` at the canonical representative of `C`.
pub fn structure_constant_count(
    group: &FiniteGroup,
    classes: &ClassList,
    k: usize,
    l: usize,
    c: usize,
) -> Result<u64> {
    check_class(classes, c)?;
    structure_constant_count_at(group, classes, k, l, &classes[c].representative)
}

/// `n(K, L, C)` evaluated at an arbitrary element `target` of `C`.
pub fn structure_constant_count_at(
    group: &FiniteGroup,
    classes: &ClassList,
    k: usize,
    l: usize,
    target: &Permutation,
) -> Result<u64> {
    check_class(classes, k)?;
    check_class(classes, l)?;
    if !group.contains(target) {
        return Err(Error::NotInGroup);
    }
    Ok(counts_into(group, classes, k, target)[l])
}

/// All structure constants `n(K, L, C)` for a fixed `K`, as `matrix[L][C]`.
/// Multiplication by the class sum of `K` acts on central characters through this matrix.
pub fn class_matrix(group: &FiniteGroup, classes: &ClassList, k: usize) -> Vec<Vec<u64>> {
    let r = classes.len();
    let mut m = vec![vec![0u64; r]; r];
    for c in 0..r {
        let col = counts_into(group, classes, k, &classes[c].representative);
        for (l, v) in col.into_iter().enumerate() {
            m[l][c] = v;
        }
    }
    m
}

/// Orders of `[x, g]` over all `g` in the group, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorProfile {
    pub element: Permutation,
    pub order_multiset: BTreeMap<u64, u64>,
}

impl CommutatorProfile {
    /// Orders other than 1 that occur.
    pub fn nonidentity_orders(&self) -> Vec<u64> {
        self.order_multiset
            .keys()
            .copied()
            .filter(|&o| o != 1)
            .collect()
    }

    pub fn support(&self) -> Vec<u64> {
        self.order_multiset.keys().copied().collect()
    }

    pub fn total(&self) -> u64 {
        self.order_multiset.values().sum()
    }
}

pub fn commutator_profile(group: &FiniteGroup, x: &Permutation) -> Result<CommutatorProfile> {
    if !group.contains(x) {
        return Err(Error::NotInGroup);
    }
    Ok(profile_unchecked(group, x))
}

pub(crate) fn profile_unchecked(group: &FiniteGroup, x: &Permutation) -> CommutatorProfile {
    let x_inv = x.inverse();
    let degree = group.degree();
    let order_multiset = group
        .elements()
        .par_chunks(256)
        .map(|chunk| {
            let mut scratch = CommutatorScratch::new(degree);
            let mut local: BTreeMap<u64, u64> = BTreeMap::new();
            for g in chunk {
                *local.entry(scratch.order(x, &x_inv, g)).or_default() += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    CommutatorProfile {
        element: x.clone(),
        order_multiset,
    }
}

/// Indices of classes equal to their inverse class.
pub fn real_classes(group: &FiniteGroup, classes: &ClassList) -> Vec<usize> {
    (0..classes.len())
        .filter(|&k| inverse_class(group, classes, k).expect("valid index") == k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_named_group;
    use crate::group::{centralizer, conjugacy_classes};

    fn class_with(classes: &ClassList, pred: impl Fn(&Permutation) -> bool) -> usize {
        classes
            .iter()
            .position(|c| pred(&c.representative))
            .unwrap()
    }

    /// Brute force over all pairs in K x L.
    fn pair_oracle(
        group: &FiniteGroup,
        classes: &ClassList,
        k: usize,
        l: usize,
    ) -> BTreeMap<usize, u64> {
        let mut hits: BTreeMap<usize, u64> = BTreeMap::new();
        for a in &classes[k].members {
            for b in &classes[l].members {
                *hits
                    .entry(classes.class_of(group, &a.then(b)).unwrap())
                    .or_default() += 1;
            }
        }
        hits.into_iter()
            .map(|(c, total)| {
                assert_eq!(total % classes[c].size(), 0);
                (c, total / classes[c].size())
            })
            .collect()
    }

    #[test]
    fn inverse_class_examples() {
        let s3 = make_named_group("S3").unwrap();
        let cl = conjugacy_classes(&s3);
        let inv = class_with(&cl, |r| r.order() == 2);
        assert_eq!(inverse_class(&s3, &cl, inv).unwrap(), inv);
        let three = class_with(&cl, |r| r.order() == 3);
        assert_eq!(inverse_class(&s3, &cl, three).unwrap(), three);
        let psl = make_named_group("PSL(2,7)").unwrap();
        let cl = conjugacy_classes(&psl);
        let seven: Vec<usize> = (0..cl.len())
            .filter(|&i| cl[i].element_order() == 7)
            .collect();
        assert_eq!(seven.len(), 2);
        assert_eq!(inverse_class(&psl, &cl, seven[0]).unwrap(), seven[1]);
        assert!(inverse_class(&psl, &cl, 99).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let s3 = make_named_group("S3").unwrap();
        let cl = conjugacy_classes(&s3);
        let d = class_product_decomposition(&s3, &cl, 0, 2).unwrap();
        assert_eq!(d.terms, vec![(2, 1)]);
        let t = class_with(&cl, |r| r.order() == 2);
        let c3 = class_with(&cl, |r| r.order() == 3);
        let d =
            class_product_decomposition(&s3, &cl, inverse_class(&s3, &cl, t).unwrap(), t).unwrap();
        assert_eq!(d.terms, vec![(0, 3), (c3, 3)]);
        assert!(real_classes(&s3, &cl).contains(&c3));

        let q8 = make_named_group("Q8").unwrap();
        let cl = conjugacy_classes(&q8);
        let minus_one = class_with(&cl, |r| r.order() == 2);
        let k = 2; // first size-2 class
        assert_eq!(cl[k].size(), 2);
        let d =
            class_product_decomposition(&q8, &cl, inverse_class(&q8, &cl, k).unwrap(), k).unwrap();
        assert_eq!(d.terms, vec![(0, 2), (minus_one, 2)]);
    }

    #[test]
    fn decomposition_matches_pair_oracle() {
        for name in ["S4", "Q8", "D10", "SL(2,3)", "A5"] {
            let g = make_named_group(name).unwrap();
            let cl = conjugacy_classes(&g);
            for k in 0..cl.len() {
                for l in 0..cl.len() {
                    let d = class_product_decomposition(&g, &cl, k, l).unwrap();
                    let oracle: Vec<(usize, u64)> =
                        pair_oracle(&g, &cl, k, l).into_iter().collect();
                    assert_eq!(d.terms, oracle, "{name} {k} {l}");
                    let mass: u64 = d.terms.iter().map(|&(c, m)| m * cl[c].size()).sum();
                    assert_eq!(mass, cl[k].size() * cl[l].size());
                }
            }
        }
    }

    #[test]
    fn structure_constant_examples() {
        let s4 = make_named_group("S4").unwrap();
        let cl = conjugacy_classes(&s4);
        for k in 0..cl.len() {
            let kinv = inverse_class(&s4, &cl, k).unwrap();
            assert_eq!(
                structure_constant_count(&s4, &cl, kinv, k, 0).unwrap(),
                cl[k].size()
            );
        }
        let t = class_with(&cl, |r| r.cycle_type() == vec![2, 1, 1]);
        let dt = class_with(&cl, |r| r.cycle_type() == vec![2, 2]);
        assert_eq!(structure_constant_count(&s4, &cl, t, t, dt).unwrap(), 2);
        // two transpositions never multiply to a transposition
        assert_eq!(structure_constant_count(&s4, &cl, t, t, t).unwrap(), 0);
    }

    #[test]
    fn structure_constants_are_representative_independent() {
        let g = make_named_group("GL(2,3)").unwrap();
        let cl = conjugacy_classes(&g);
        for k in 0..cl.len() {
            for l in 0..cl.len() {
                for c in 0..cl.len() {
                    let base = structure_constant_count(&g, &cl, k, l, c).unwrap();
                    for member in cl[c].members.iter().rev().take(3) {
                        assert_eq!(
                            structure_constant_count_at(&g, &cl, k, l, member).unwrap(),
                            base
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn profile_examples() {
        let gl = make_named_group("GL(2,3)").unwrap();
        let z = crate::group::center(&gl);
        let central = z.elements().last().unwrap();
        let p = commutator_profile(&gl, central).unwrap();
        assert_eq!(p.order_multiset, BTreeMap::from([(1, 48)]));
        let x = gl.elements().iter().find(|e| e.order() == 8).unwrap();
        let p = commutator_profile(&gl, x).unwrap();
        assert_eq!(p.support(), vec![1, 4, 6]);
        assert_eq!(p.total(), 48);
        assert_eq!(p.order_multiset[&1], centralizer(&gl, x).unwrap().order());

        let dic = make_named_group("C3:Q8").unwrap();
        let x = dic.elements().iter().find(|e| e.order() == 12).unwrap();
        assert_eq!(commutator_profile(&dic, x).unwrap().support(), vec![1, 6]);
    }

    #[test]
    fn real_class_examples() {
        for n in 3..=6 {
            let g = make_named_group(&format!("S{n}")).unwrap();
            let cl = conjugacy_classes(&g);
            assert_eq!(real_classes(&g, &cl), (0..cl.len()).collect::<Vec<_>>());
        }
        let a4 = make_named_group("A4").unwrap();
        let cl = conjugacy_classes(&a4);
        let real = real_classes(&a4, &cl);
        assert!(real.contains(&0));
        for k in 0..cl.len() {
            if cl[k].element_order() == 3 {
                assert!(!real.contains(&k));
            }
        }
    }

    #[test]
    fn profile_agrees_with_class_product() {
        for name in ["S4", "GL(2,3)", "C3:Q8", "A5", "D12"] {
            let g = make_named_group(name).unwrap();
            let cl = conjugacy_classes(&g);
            for k in 0..cl.len() {
                let x = &cl[k].representative;
                let profile = commutator_profile(&g, x).unwrap();
                let kinv = inverse_class(&g, &cl, k).unwrap();
                let d = class_product_decomposition(&g, &cl, kinv, k).unwrap();
                let mut orders: Vec<u64> = d
                    .support()
                    .into_iter()
                    .filter(|&c| c != 0)
                    .map(|c| cl[c].element_order())
                    .collect();
                orders.sort_unstable();
                orders.dedup();
                assert_eq!(profile.nonidentity_orders(), orders, "{name} class {k}");
            }
        }
    }
}
