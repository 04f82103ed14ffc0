//! Exact character tables over cyclotomic integers.
//!
//! The table is computed from the class matrices `A_K[L][C] = n(K, L, C)`.
//! Their common eigenvectors over a prime field F_l, with `l = 1 mod exp(G)`
//! and `l^2 > 4|G|`, are the central characters reduced mod `l`. Degrees and
//! values follow mod `l`, and the eigenvalue multiplicities of each element
//! are recovered exactly from the power maps, which gives the values in
//! `Z[z]` with `z = exp(2 pi i / exp(G))`.

pub mod cyclotomic;
mod modp;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, lcm, p_part, pow_mod, prime_divisors};
use crate::classalg::{class_matrix, inverse_class};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ClassList, FiniteGroup};
use crate::perm::Cycles;

pub use cyclotomic::{CyclotomicAccumulator, CyclotomicValue};

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group_order: u64,
    exponent: u64,
    modulus: u64,
    classes: ClassList,
    inverse: Vec<usize>,
    degrees: Vec<u64>,
    values: Vec<Vec<CyclotomicValue>>,
}

impl CharacterTable {
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// The conductor of every value: the exponent of the group.
    pub fn conductor(&self) -> u32 {
        self.exponent as u32
    }

    /// The prime `l` used for the modular computation.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn classes(&self) -> &ClassList {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        self.classes.sizes()
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse[c]
    }

    /// Number of irreducible characters.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.degrees[chi]
    }

    pub fn value(&self, chi: usize, class: usize) -> &CyclotomicValue {
        &self.values[chi][class]
    }

    pub fn row(&self, chi: usize) -> &[CyclotomicValue] {
        &self.values[chi]
    }

    fn check_indices(&self, chi: usize, class: usize) -> Result<()> {
        if chi >= self.len() {
            return Err(Error::IndexOutOfRange(chi));
        }
        if class >= self.classes.len() {
            return Err(Error::IndexOutOfRange(class));
        }
        Ok(())
    }

    /// `sum_C |C| chi(C) conj(psi(C))`.
    pub fn row_inner_product(&self, chi: usize, psi: usize) -> CyclotomicValue {
        let mut acc = CyclotomicAccumulator::new(self.conductor());
        for (c, class) in self.classes.iter().enumerate() {
            let term = self.values[chi][c].mul(&self.values[psi][c].conj());
            acc.add_value(&term.scale(class.size() as i64));
        }
        acc.finish()
    }

    /// `sum_chi chi(C) conj(chi(D))`.
    pub fn column_inner_product(&self, c: usize, d: usize) -> CyclotomicValue {
        let mut acc = CyclotomicAccumulator::new(self.conductor());
        for row in &self.values {
            acc.add_value(&row[c].mul(&row[d].conj()));
        }
        acc.finish()
    }

    /// Checks both orthogonality relations and `sum chi(1)^2 = |G|` exactly.
    pub fn check_orthogonality(&self) -> Result<()> {
        let n = self.len();
        let square_sum: u64 = self.degrees.iter().map(|d| d * d).sum();
        if square_sum != self.group_order {
            return Err(Error::CharacterTable(format!(
                "squared degrees sum to {square_sum}, not {}",
                self.group_order
            )));
        }
        for i in 0..n {
            for j in i..n {
                let expected = if i == j { self.group_order as i64 } else { 0 };
                if self.row_inner_product(i, j).as_integer() != Some(expected) {
                    return Err(Error::CharacterTable(format!(
                        "rows {i} and {j} fail orthogonality"
                    )));
                }
            }
        }
        let sizes = self.class_sizes();
        for (c, &size) in sizes.iter().enumerate() {
            for d in c..n {
                let expected = if c == d {
                    (self.group_order / size) as i64
                } else {
                    0
                };
                if self.column_inner_product(c, d).as_integer() != Some(expected) {
                    return Err(Error::CharacterTable(format!(
                        "columns {c} and {d} fail orthogonality"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn export(&self) -> TableExport {
        TableExport {
            group_order: self.group_order,
            conductor: self.conductor(),
            class_sizes: self.class_sizes(),
            representatives: self
                .classes
                .iter()
                .map(|c| c.representative.to_cycles())
                .collect(),
            degrees: self.degrees.clone(),
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.coefficients().to_vec()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.export()).expect("table serialises")
    }
}

/// Serialised form of a table: values as power-basis coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableExport {
    pub group_order: u64,
    pub conductor: u32,
    pub class_sizes: Vec<u64>,
    pub representatives: Vec<Cycles>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<Vec<i64>>>,
}

/// Smallest prime `l` with `l = 1 (mod exponent)` and `l^2 > 4 * order`.
pub fn table_modulus(order: u64, exponent: u64) -> u64 {
    let mut l = exponent + 1;
    loop {
        if is_prime(l) && (l as u128) * (l as u128) > 4 * order as u128 {
            return l;
        }
        l += exponent;
    }
}

fn primitive_root(l: u64) -> u64 {
    let factors = prime_divisors(l - 1);
    (2..l)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (l - 1) / q, l) != 1))
        .unwrap_or(1)
}

pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    character_table_with(group, conjugacy_classes(group))
}

pub fn character_table_with(group: &FiniteGroup, classes: ClassList) -> Result<CharacterTable> {
    let r = classes.len();
    let order = group.order();
    let exponent = group.exponent();
    if exponent > u32::MAX as u64 {
        return Err(Error::Unsupported(format!("exponent {exponent}")));
    }
    let l = table_modulus(order, exponent);
    let sizes = classes.sizes();
    let inverse = (0..r)
        .map(|k| inverse_class(group, &classes, k))
        .collect::<Result<Vec<_>>>()?;

    let eigenvectors = split_eigenspaces(group, &classes, l)?;

    let size_inv: Vec<u64> = sizes.iter().map(|&s| modp::inv(s % l, l)).collect();
    let max_degree = (order as f64).sqrt() as u64 + 1;
    let mut modular: Vec<(u64, Vec<u64>)> = Vec::with_capacity(r);
    for w in &eigenvectors {
        let s = (0..r).fold(0u64, |acc, c| {
            let t = modp::mul(modp::mul(w[c], w[inverse[c]], l), size_inv[c], l);
            modp::add(acc, t, l)
        });
        if s == 0 {
            return Err(Error::CharacterTable("degenerate central character".into()));
        }
        let target = modp::mul(order % l, modp::inv(s, l), l);
        let degree = (1..=max_degree)
            .find(|&d| d * d % l == target && order.is_multiple_of(d))
            .ok_or_else(|| Error::CharacterTable("no admissible degree".into()))?;
        let vals = (0..r)
            .map(|c| modp::mul(modp::mul(w[c], degree % l, l), size_inv[c], l))
            .collect();
        modular.push((degree, vals));
    }

    // power maps: class of g^k for the representative g of each class
    let power_classes: Vec<Vec<usize>> = classes
        .iter()
        .map(|class| {
            let g = &class.representative;
            let o = g.order();
            let mut acc = g.pow(0);
            (0..o)
                .map(|_| {
                    let idx = classes
                        .class_of(group, &acc)
                        .expect("power lies in the group");
                    acc = acc.then(g);
                    idx
                })
                .collect()
        })
        .collect();

    let z = pow_mod(primitive_root(l), (l - 1) / exponent, l);
    let conductor = exponent as u32;
    let mut rows: Vec<(u64, Vec<CyclotomicValue>)> = Vec::with_capacity(r);
    for (degree, vals) in &modular {
        let mut row = Vec::with_capacity(r);
        for (c, powers) in power_classes.iter().enumerate() {
            let o = powers.len() as u64;
            let step = exponent / o;
            let zo = pow_mod(z, step, l);
            let zo_inv = modp::inv(zo, l);
            let o_inv = modp::inv(o % l, l);
            let mut acc = CyclotomicAccumulator::new(conductor);
            let mut total = 0u64;
            for j in 0..o {
                let base = pow_mod(zo_inv, j, l);
                let mut pw = 1u64;
                let mut sum = 0u64;
                for &pc in powers {
                    sum = modp::add(sum, modp::mul(vals[pc], pw, l), l);
                    pw = modp::mul(pw, base, l);
                }
                let mult = modp::mul(sum, o_inv, l);
                if mult > *degree {
                    return Err(Error::CharacterTable(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree} at class {c}"
                    )));
                }
                total += mult;
                acc.add_root_power(j * step, mult as i64);
            }
            if total != *degree {
                return Err(Error::CharacterTable(format!(
                    "multiplicities at class {c} do not sum to the degree"
                )));
            }
            let value = acc.finish();
            if value.reduce_mod(z, l) != vals[c] {
                return Err(Error::CharacterTable(format!(
                    "lifted value at class {c} disagrees mod {l}"
                )));
            }
            row.push(value);
        }
        rows.push((*degree, row));
    }

    let is_trivial = |row: &[CyclotomicValue]| row.iter().all(|v| v.as_integer() == Some(1));
    rows.sort_by(|a, b| (a.0, !is_trivial(&a.1), &a.1).cmp(&(b.0, !is_trivial(&b.1), &b.1)));
    let (degrees, values) = rows.into_iter().unzip();
    Ok(CharacterTable {
        group_order: order,
        exponent,
        modulus: l,
        classes,
        inverse,
        degrees,
        values,
    })
}

/// Common eigenvectors of all class matrices mod `l`, each scaled so that its
/// identity-class entry is 1.
fn split_eigenspaces(group: &FiniteGroup, classes: &ClassList, l: u64) -> Result<Vec<Vec<u64>>> {
    let r = classes.len();
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    let mut used = Vec::new();
    for k in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a: Vec<Vec<u64>> = class_matrix(group, classes, k)
            .into_iter()
            .map(|row| row.into_iter().map(|v| v % l).collect())
            .collect();
        used.push(k);
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&a, space, l).map_err(|d| {
                Error::CharacterTable(format!(
                    "class matrix {k} is not diagonalisable on a space of dimension {d}"
                ))
            })?);
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.len() > 1) {
        return Err(Error::CharacterTable(format!(
            "common eigenspace of dimension {} remains after splitting by class matrices {used:?}",
            s.len()
        )));
    }
    let vectors: Vec<Vec<u64>> = spaces
        .into_iter()
        .map(|mut s| s.pop().expect("one vector"))
        .collect();
    if vectors.iter().any(|w| w[0] != 1) {
        return Err(Error::CharacterTable(
            "central character vanishes at the identity".into(),
        ));
    }
    Ok(vectors)
}

/// Splits the `a`-invariant space spanned by the RREF rows `basis` into
/// eigenspaces of `a`. Fails with the dimension if `a` does not diagonalise.
fn split_space(
    a: &[Vec<u64>],
    basis: Vec<Vec<u64>>,
    l: u64,
) -> std::result::Result<Vec<Vec<Vec<u64>>>, usize> {
    let d = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| {
            b.iter()
                .position(|&x| x != 0)
                .expect("nonzero basis vector")
        })
        .collect();
    let images: Vec<Vec<u64>> = basis.iter().map(|b| modp::mat_vec(a, b, l)).collect();
    // restricted[j][i]: coordinate j of a * b_i
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|j| (0..d).map(|i| images[i][pivots[j]]).collect())
        .collect();
    let poly = modp::charpoly(&restricted, l);
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in modp::roots(&poly, l) {
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &v)| if i == j { modp::sub(v, lambda, l) } else { v })
                    .collect()
            })
            .collect();
        let mut vectors: Vec<Vec<u64>> = modp::nullspace(&shifted, l)
            .into_iter()
            .map(|coords| {
                let mut v = vec![0u64; basis[0].len()];
                for (c, b) in coords.iter().zip(&basis) {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = modp::add(*x, modp::mul(*c, y, l), l);
                    }
                }
                v
            })
            .collect();
        modp::rref(&mut vectors, l);
        found += vectors.len();
        out.push(vectors);
    }
    if found != d {
        return Err(d);
    }
    Ok(out)
}

/// `omega_chi(C^) = |C| chi(g) / chi(1)`, which must be an algebraic integer.
pub fn omega_value(table: &CharacterTable, chi: usize, class: usize) -> Result<CyclotomicValue> {
    table.check_indices(chi, class)?;
    let size = table.classes[class].size() as i64;
    table.values[chi][class]
        .scale(size)
        .div_exact(table.degrees[chi] as i64)
        .ok_or_else(|| Error::NonIntegral(format!("omega of character {chi} at class {class}")))
}

/// `n(K, L, C) = |K||L|/|G| sum_chi chi(x) chi(y) conj(chi(z)) / chi(1)` for
/// `x in K`, `y in L`, `z in C`, evaluated exactly.
pub fn structure_constant_triple(
    table: &CharacterTable,
    k: usize,
    l: usize,
    c: usize,
) -> Result<u64> {
    for idx in [k, l, c] {
        table.check_indices(0, idx)?;
    }
    structure_constant_from(table, k, l, |chi| {
        table.values[chi][k]
            .mul(&table.values[chi][l])
            .mul(&table.values[chi][c].conj())
    })
}

/// `n(K^-1, K, C) = |K|^2/|G| sum_chi |chi(x)|^2 conj(chi(y)) / chi(1)` with
/// `x in K`, `y in C`.
pub fn structure_constant_char(table: &CharacterTable, k: usize, c: usize) -> Result<u64> {
    table.check_indices(0, k)?;
    table.check_indices(0, c)?;
    structure_constant_from(table, k, k, |chi| {
        table.values[chi][k]
            .abs_sq()
            .mul(&table.values[chi][c].conj())
    })
}

fn structure_constant_from(
    table: &CharacterTable,
    k: usize,
    l: usize,
    term: impl Fn(usize) -> CyclotomicValue,
) -> Result<u64> {
    let d = table.degrees.iter().fold(1u64, |acc, &x| lcm(acc, x));
    let mut acc = CyclotomicAccumulator::new(table.conductor());
    for chi in 0..table.len() {
        acc.add_value(&term(chi).scale((d / table.degrees[chi]) as i64));
    }
    let sum = acc.finish();
    let s = sum
        .as_integer()
        .ok_or_else(|| Error::NonIntegral(format!("character sum {sum}")))?;
    let num = table.classes[k].size() as i128 * table.classes[l].size() as i128 * s as i128;
    let den = table.group_order as i128 * d as i128;
    if num % den != 0 || num < 0 {
        return Err(Error::NonIntegral(format!("{num}/{den}")));
    }
    Ok((num / den) as u64)
}

/// An irreducible character with `chi(1)_p = |G|_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectZeroCharacter {
    pub index: usize,
    pub degree: u64,
}

impl DefectZeroCharacter {
    pub fn degree_coprime_to(&self, r: u64) -> bool {
        !self.degree.is_multiple_of(r)
    }
}

pub fn defect_zero_characters(table: &CharacterTable, p: u64) -> Vec<DefectZeroCharacter> {
    let target = p_part(table.group_order, p);
    table
        .degrees
        .iter()
        .enumerate()
        .filter(|&(_, &d)| p_part(d, p) == target)
        .map(|(index, &degree)| DefectZeroCharacter { index, degree })
        .collect()
}
