//! Fully enumerated permutation groups.
//!
//! A [`FiniteGroup`] stores every element, sorted lexicographically by image
//! sequence, together with a hash index for membership. Subgroups are plain
//! `FiniteGroup` values over the same degree.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{raw_order, Cycles, Permutation};

/// Default element cap for closures.
pub const DEFAULT_CAP: usize = 100_000;

#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: FxHashMap<Permutation, u32>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Breadth-first closure of `generators` (which may be empty) starting from
/// `start`, which must already be closed under the subgroup it spans.
fn close(
    degree: usize,
    start: Vec<Permutation>,
    generators: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>> {
    let mut seen: FxHashMap<Permutation, ()> = FxHashMap::default();
    let mut queue = start;
    if queue.is_empty() {
        queue.push(Permutation::identity(degree));
    }
    for e in &queue {
        seen.insert(e.clone(), ());
    }
    if queue.len() > cap {
        return Err(Error::CapExceeded {
            cap,
            partial: queue.len(),
        });
    }
    let mut head = 0;
    while head < queue.len() {
        let e = queue[head].clone();
        head += 1;
        for g in generators {
            let h = e.then(g);
            if !seen.contains_key(&h) {
                seen.insert(h.clone(), ());
                queue.push(h);
                if queue.len() > cap {
                    return Err(Error::CapExceeded {
                        cap,
                        partial: queue.len(),
                    });
                }
            }
        }
    }
    Ok(queue)
}

/// Closes `generators` under multiplication; errors when more than `cap` elements appear.
pub fn generate(degree: usize, generators: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    if generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    if cap == 0 {
        return Err(Error::CapExceeded { cap, partial: 1 });
    }
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    let elements = close(degree, Vec::new(), generators, cap)?;
    Ok(FiniteGroup::assemble(degree, generators.to_vec(), elements))
}

/// `x^-1 g^-1 x g`, evaluated left to right.
pub fn commutator(x: &Permutation, g: &Permutation) -> Result<Permutation> {
    if x.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: x.degree(),
            right: g.degree(),
        });
    }
    Ok(raw_commutator(x, g))
}

pub(crate) fn raw_commutator(x: &Permutation, g: &Permutation) -> Permutation {
    x.inverse().then(&x.conjugate_by(g))
}

/// Scratch space for computing commutator orders without allocation.
pub(crate) struct CommutatorScratch {
    ginv: Vec<u16>,
    buf: Vec<u16>,
    seen: Vec<bool>,
}

impl CommutatorScratch {
    pub(crate) fn new(degree: usize) -> Self {
        CommutatorScratch {
            ginv: vec![0; degree],
            buf: vec![0; degree],
            seen: vec![false; degree],
        }
    }

    /// Order of `[x, g]`; `x_inv` must be the inverse of `x`.
    pub(crate) fn order(&mut self, x: &Permutation, x_inv: &Permutation, g: &Permutation) -> u64 {
        let (xr, xi, gr) = (x.raw(), x_inv.raw(), g.raw());
        for (i, &j) in gr.iter().enumerate() {
            self.ginv[j as usize] = i as u16;
        }
        // [x,g](i) = g(x(g^-1(x^-1(i))))
        for (i, out) in self.buf.iter_mut().enumerate() {
            let k = self.ginv[xi[i] as usize] as usize;
            *out = gr[xr[k] as usize];
        }
        raw_order(&self.buf, &mut self.seen)
    }
}

impl FiniteGroup {
    fn assemble(
        degree: usize,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
    ) -> Self {
        elements.sort_unstable();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        FiniteGroup {
            degree,
            generators,
            elements,
            index,
        }
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        let id = Permutation::identity(degree);
        FiniteGroup::assemble(degree, vec![id.clone()], vec![id])
    }

    /// Builds a group from an element set already known to be a subgroup,
    /// choosing a small generating set greedily in the stable order.
    pub(crate) fn from_closed_set(degree: usize, elements: Vec<Permutation>) -> Self {
        let mut sorted = elements;
        sorted.sort_unstable();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current: Vec<Permutation> = vec![Permutation::identity(degree)];
        let mut member: FxHashMap<Permutation, ()> = FxHashMap::default();
        member.insert(Permutation::identity(degree), ());
        for e in &sorted {
            if current.len() == sorted.len() {
                break;
            }
            if member.contains_key(e) {
                continue;
            }
            gens.push(e.clone());
            current = close(degree, current, &gens, usize::MAX).expect("uncapped closure");
            member = current.iter().map(|p| (p.clone(), ())).collect();
        }
        debug_assert_eq!(current.len(), sorted.len());
        if gens.is_empty() {
            gens.push(Permutation::identity(degree));
        }
        FiniteGroup::assemble(degree, gens, sorted)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in the stable (lexicographic) order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Position of `p` in the stable order.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.then(b) == b.then(a))
        })
    }

    /// True when every element of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &FiniteGroup) -> bool {
        self.order() <= other.order() && self.generators.iter().all(|g| other.contains(g))
    }

    /// True when `self` is normalised by every generator of `ambient`.
    pub fn is_normal_in(&self, ambient: &FiniteGroup) -> bool {
        self.is_subset_of(ambient)
            && ambient.generators.iter().all(|g| {
                self.generators
                    .iter()
                    .all(|h| self.contains(&h.conjugate_by(g)))
            })
    }

    /// Exponent: lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.elements
            .iter()
            .fold(1, |acc, e| num_integer::lcm(acc, e.order()))
    }

    fn check_member(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        if !self.contains(p) {
            return Err(Error::NotInGroup);
        }
        Ok(())
    }
}

/// Conjugacy class with its canonical (minimal) representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    /// Members in the stable order.
    pub members: Vec<Permutation>,
}

impl ConjugacyClass {
    pub fn size(&self) -> u64 {
        self.members.len() as u64
    }

    /// Element order shared by all members.
    pub fn element_order(&self) -> u64 {
        self.representative.order()
    }
}

/// The classes of a group plus a lookup from element position to class index.
#[derive(Debug, Clone)]
pub struct ClassList {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
}

impl ClassList {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn get(&self, idx: usize) -> Option<&ConjugacyClass> {
        self.classes.get(idx)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ConjugacyClass> {
        self.classes.iter()
    }

    /// Index of the class of the element at position `element_idx` of the group.
    pub fn class_of_index(&self, element_idx: usize) -> usize {
        self.class_of[element_idx] as usize
    }

    /// Index of the class containing `p`, which must belong to `group`.
    pub fn class_of(&self, group: &FiniteGroup, p: &Permutation) -> Option<usize> {
        group.index_of(p).map(|i| self.class_of[i] as usize)
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size()).collect()
    }
}

impl std::ops::Index<usize> for ClassList {
    type Output = ConjugacyClass;

    fn index(&self, idx: usize) -> &ConjugacyClass {
        &self.classes[idx]
    }
}

/// Conjugacy classes ordered by `(size, representative)`; the identity class comes first.
pub fn conjugacy_classes(group: &FiniteGroup) -> ClassList {
    let n = group.elements.len();
    let mut assigned = vec![u32::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if assigned[start] != u32::MAX {
            continue;
        }
        let tag = raw.len() as u32;
        assigned[start] = tag;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let y = &group.elements[orbit[head]];
            head += 1;
            for g in &group.generators {
                let z = y.conjugate_by(g);
                let zi = group.index[&z] as usize;
                if assigned[zi] == u32::MAX {
                    assigned[zi] = tag;
                    orbit.push(zi);
                }
            }
        }
        orbit.sort_unstable();
        raw.push(orbit);
    }
    // each orbit's first index is its minimum because of the scan order
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&i| (raw[i].len(), raw[i][0]));
    let mut class_of = vec![0u32; n];
    let mut classes = Vec::with_capacity(raw.len());
    for (new_idx, &old) in order.iter().enumerate() {
        for &e in &raw[old] {
            class_of[e] = new_idx as u32;
        }
        classes.push(ConjugacyClass {
            representative: group.elements[raw[old][0]].clone(),
            members: raw[old]
                .iter()
                .map(|&e| group.elements[e].clone())
                .collect(),
        });
    }
    ClassList { classes, class_of }
}

pub fn centralizer(group: &FiniteGroup, x: &Permutation) -> Result<FiniteGroup> {
    group.check_member(x)?;
    let elements: Vec<Permutation> = group
        .elements
        .iter()
        .filter(|g| g.then(x) == x.then(g))
        .cloned()
        .collect();
    Ok(FiniteGroup::from_closed_set(group.degree, elements))
}

pub fn center(group: &FiniteGroup) -> FiniteGroup {
    let elements: Vec<Permutation> = group
        .elements
        .iter()
        .filter(|z| group.generators.iter().all(|g| g.then(z) == z.then(g)))
        .cloned()
        .collect();
    FiniteGroup::from_closed_set(group.degree, elements)
}

/// Smallest subgroup of `group` containing `seeds`.
pub fn subgroup_from(group: &FiniteGroup, seeds: &[Permutation]) -> Result<FiniteGroup> {
    for s in seeds {
        group.check_member(s)?;
    }
    Ok(subgroup_unchecked(group.degree, seeds))
}

fn subgroup_unchecked(degree: usize, seeds: &[Permutation]) -> FiniteGroup {
    let mut gens: Vec<Permutation> = Vec::new();
    for s in seeds {
        if !s.is_identity() && !gens.contains(s) {
            gens.push(s.clone());
        }
    }
    if gens.is_empty() {
        return FiniteGroup::trivial(degree);
    }
    let elements = close(degree, Vec::new(), &gens, usize::MAX).expect("uncapped closure");
    FiniteGroup::assemble(degree, gens, elements)
}

/// Smallest normal subgroup of `group` containing `seeds`.
pub fn normal_closure(group: &FiniteGroup, seeds: &[Permutation]) -> Result<FiniteGroup> {
    for s in seeds {
        group.check_member(s)?;
    }
    Ok(normal_closure_unchecked(group, seeds))
}

pub(crate) fn normal_closure_unchecked(group: &FiniteGroup, seeds: &[Permutation]) -> FiniteGroup {
    let degree = group.degree;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut member: FxHashMap<Permutation, ()> = FxHashMap::default();
    let mut current = vec![Permutation::identity(degree)];
    member.insert(Permutation::identity(degree), ());
    let mut pending: Vec<Permutation> = seeds.to_vec();
    while let Some(s) = pending.pop() {
        if member.contains_key(&s) {
            continue;
        }
        gens.push(s.clone());
        current = close(degree, current, &gens, usize::MAX).expect("uncapped closure");
        member = current.iter().map(|p| (p.clone(), ())).collect();
        // conjugates of every generator by every ambient generator must stay inside
        for h in &gens {
            for g in &group.generators {
                let c = h.conjugate_by(g);
                if !member.contains_key(&c) {
                    pending.push(c);
                }
            }
        }
    }
    if gens.is_empty() {
        return FiniteGroup::trivial(degree);
    }
    FiniteGroup::assemble(degree, gens, current)
}

pub fn derived_subgroup(group: &FiniteGroup) -> FiniteGroup {
    let gens = &group.generators;
    let mut seeds = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = raw_commutator(a, b);
            if !c.is_identity() && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    normal_closure_unchecked(group, &seeds)
}

/// Group-spec JSON: `{"name", "degree", "generators": [cycles...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Cycles>,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GroupSpec = serde_json::from_str(text)?;
        spec.permutations()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group spec serialises")
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        if self.degree == 0 {
            return Err(Error::Parse("degree must be positive".into()));
        }
        if self.generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        self.generators
            .iter()
            .map(|c| Permutation::from_cycles(self.degree, c))
            .collect()
    }

    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        generate(self.degree, &self.permutations()?, cap)
    }

    pub fn from_group(name: &str, group: &FiniteGroup) -> Self {
        GroupSpec {
            name: name.to_string(),
            degree: group.degree(),
            generators: group.generators().iter().map(|g| g.to_cycles()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_named_group;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        let cycles: Cycles = c.iter().map(|v| v.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    fn s3() -> FiniteGroup {
        generate(3, &[cyc(3, &[&[1, 2]]), cyc(3, &[&[1, 2, 3]])], 100).unwrap()
    }

    #[test]
    fn generate_examples() {
        assert_eq!(s3().order(), 6);
        let s5 = make_named_group("S5").unwrap();
        let err = generate(5, s5.generators(), 10).unwrap_err();
        match err {
            Error::CapExceeded { cap, partial } => {
                assert_eq!(cap, 10);
                assert!(partial > 10);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(generate(3, &[], 10).unwrap_err(), Error::NoGenerators);
    }

    #[test]
    fn elements_sorted_and_closed() {
        let g = s3();
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
        assert!(g.elements()[0].is_identity());
        for a in g.elements() {
            assert!(g.contains(&a.inverse()));
            for b in g.elements() {
                assert!(g.contains(&a.then(b)));
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let x = cyc(3, &[&[1, 2]]);
        let g = cyc(3, &[&[1, 2, 3]]);
        assert!(commutator(&x, &x).unwrap().is_identity());
        let c = commutator(&x, &g).unwrap();
        assert_eq!(c.order(), 3);
        // x^-1 g^-1 x g by explicit products
        let explicit = x.inverse().then(&g.inverse()).then(&x).then(&g);
        assert_eq!(c, explicit);
        let a = cyc(4, &[&[1, 2]]);
        let b = cyc(4, &[&[3, 4]]);
        assert!(commutator(&a, &b).unwrap().is_identity());
        assert!(commutator(&a, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn commutator_order_fast_path() {
        let s5 = make_named_group("S5").unwrap();
        let mut scratch = CommutatorScratch::new(5);
        for x in s5.elements().iter().step_by(7) {
            let xi = x.inverse();
            for g in s5.elements() {
                let slow = commutator(x, g).unwrap().order();
                assert_eq!(scratch.order(x, &xi, g), slow);
            }
        }
    }

    #[test]
    fn class_examples() {
        assert_eq!(conjugacy_classes(&s3()).sizes(), vec![1, 2, 3]);
        let c6 = make_named_group("C6").unwrap();
        assert_eq!(conjugacy_classes(&c6).sizes(), vec![1; 6]);
        let q8 = make_named_group("Q8").unwrap();
        assert_eq!(conjugacy_classes(&q8).sizes(), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn class_representatives_are_minimal() {
        let s4 = make_named_group("S4").unwrap();
        let classes = conjugacy_classes(&s4);
        assert!(classes[0].representative.is_identity());
        for c in classes.iter() {
            assert_eq!(&c.representative, c.members.iter().min().unwrap());
            assert_eq!(s4.order() % c.size(), 0);
        }
        assert_eq!(classes.sizes().iter().sum::<u64>(), s4.order());
    }

    #[test]
    fn centralizer_examples() {
        let g = s3();
        assert_eq!(centralizer(&g, &g.identity()).unwrap().order(), 6);
        assert_eq!(centralizer(&g, &cyc(3, &[&[1, 2]])).unwrap().order(), 2);
        let q8 = make_named_group("Q8").unwrap();
        let z = center(&q8);
        let minus_one = z.elements().iter().find(|e| !e.is_identity()).unwrap();
        assert_eq!(centralizer(&q8, minus_one).unwrap().order(), 8);
        let outside = cyc(3, &[&[1, 3]]);
        let c3 = generate(3, &[cyc(3, &[&[1, 2, 3]])], 10).unwrap();
        assert_eq!(centralizer(&c3, &outside).unwrap_err(), Error::NotInGroup);
    }

    #[test]
    fn center_examples() {
        let c4 = make_named_group("C4").unwrap();
        assert_eq!(center(&c4).order(), 4);
        assert_eq!(center(&s3()).order(), 1);
        let dic = make_named_group("C3:Q8").unwrap();
        assert_eq!(center(&dic).order(), 2);
    }

    #[test]
    fn normal_closure_examples() {
        let g = s3();
        assert_eq!(normal_closure(&g, &[g.identity()]).unwrap().order(), 1);
        assert_eq!(
            normal_closure(&g, &[cyc(3, &[&[1, 2, 3]])])
                .unwrap()
                .order(),
            3
        );
        let a5 = make_named_group("A5").unwrap();
        for x in a5.elements().iter().filter(|e| !e.is_identity()).take(10) {
            assert_eq!(
                normal_closure(&a5, std::slice::from_ref(x))
                    .unwrap()
                    .order(),
                60
            );
        }
        assert!(normal_closure(&g, &[cyc(3, &[&[1, 2]]).extend_to(4).unwrap()]).is_err());
    }

    #[test]
    fn derived_examples() {
        assert_eq!(
            derived_subgroup(&make_named_group("C6").unwrap()).order(),
            1
        );
        assert_eq!(derived_subgroup(&s3()).order(), 3);
        let q8 = make_named_group("Q8").unwrap();
        let d = derived_subgroup(&q8);
        assert_eq!(d.order(), 2);
        assert_eq!(d.elements(), center(&q8).elements());
    }

    #[test]
    fn derived_contains_all_commutators() {
        let s4 = make_named_group("S4").unwrap();
        let d = derived_subgroup(&s4);
        assert_eq!(d.order(), 12);
        for a in s4.elements() {
            for b in s4.elements() {
                assert!(d.contains(&raw_commutator(a, b)));
            }
        }
    }

    #[test]
    fn subgroup_examples() {
        let g = s3();
        assert_eq!(subgroup_from(&g, &[]).unwrap().order(), 1);
        assert_eq!(subgroup_from(&g, &[cyc(3, &[&[1, 2]])]).unwrap().order(), 2);
        let s4 = make_named_group("S4").unwrap();
        let h = subgroup_from(&s4, &[cyc(4, &[&[1, 2]]), cyc(4, &[&[3, 4]])]).unwrap();
        assert_eq!(h.order(), 4);
    }

    #[test]
    fn from_closed_set_picks_generators() {
        let s4 = make_named_group("S4").unwrap();
        let rebuilt = FiniteGroup::from_closed_set(4, s4.elements().to_vec());
        assert_eq!(rebuilt.order(), 24);
        assert!(rebuilt.generators().len() <= 4);
        assert_eq!(rebuilt.elements(), s4.elements());
    }

    #[test]
    fn group_spec_json() {
        let text = r#"{"name":"S3","degree":3,"generators":[[[1,2]],[[1,2,3]]]}"#;
        let spec = GroupSpec::from_json(text).unwrap();
        assert_eq!(spec.build(DEFAULT_CAP).unwrap().order(), 6);
        assert_eq!(spec.to_json(), text);
        assert!(GroupSpec::from_json(r#"{"name":"x","degree":3,"generators":[[[1,4]]]}"#).is_err());
        assert!(GroupSpec::from_json(r#"{"name":"x","degree":3,"generators":[]}"#).is_err());
    }
}
