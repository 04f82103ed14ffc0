//! Permutations of `{1..n}` stored in image form.
//!
//! Products act left to right: `a.compose(&b)` applies `a` first, then `b`.
//! Points are 1-based in every public constructor and in cycle notation;
//! internally they are 0-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::lcm;
use crate::error::{Error, Result};

/// Cycle notation: a list of cycles of 1-based points, fixed points omitted.
pub type Cycles = Vec<Vec<usize>>;

/// A bijection of `{1..degree}`. The derived ordering is lexicographic on
/// the image sequence, which is the stable total order used for canonical
/// class representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= u16::MAX as usize, "degree too large");
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i]` is the image of point `i + 1`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        if degree > u16::MAX as usize {
            return Err(Error::InvalidPermutation("degree too large".into()));
        }
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree {
                return Err(Error::InvalidPermutation(format!(
                    "image {img} outside 1..={degree}"
                )));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {img} repeated")));
            }
            out.push((img - 1) as u16);
        }
        Ok(Permutation {
            images: out.into_boxed_slice(),
        })
    }

    /// Builds a permutation of the given degree from cycle notation.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 || degree > u16::MAX as usize {
            return Err(Error::InvalidPermutation(format!("bad degree {degree}")));
        }
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} outside 1..={degree}"
                    )));
                }
                if std::mem::replace(&mut used[pt - 1], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} appears twice"
                    )));
                }
            }
            for (i, &pt) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u16;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Internal constructor from 0-based images; the caller guarantees bijectivity.
    pub(crate) fn from_raw(images: Vec<u16>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&i| {
                (i as usize) < seen.len() && !std::mem::replace(&mut seen[i as usize], true)
            })
        });
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image table.
    #[inline]
    pub fn raw(&self) -> &[u16] {
        &self.images
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// "Apply `self`, then `other`".
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked left-to-right product; degrees must agree.
    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g^-1 * self * g`, i.e. `self` conjugated by `g`.
    #[inline]
    pub(crate) fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // point g(i) goes to g(self(i))
        let mut out = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[j as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    pub fn pow(&self, exp: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    /// Cycle lengths including fixed points, sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn order(&self) -> u64 {
        raw_order(&self.images, &mut vec![false; self.degree()])
    }

    pub fn order_and_cycle_type(&self) -> (u64, Vec<usize>) {
        let ct = self.cycle_type();
        let order = ct.iter().fold(1u64, |acc, &l| lcm(acc, l as u64));
        (order, ct)
    }

    /// Odd permutations have sign -1.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycle_type().iter().map(|l| l - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Cycle notation with fixed points omitted; each cycle starts at its smallest point.
    pub fn to_cycles(&self) -> Cycles {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Same permutation acting on `{1..degree}` with the extra points fixed.
    pub fn extend_to(&self, degree: usize) -> Result<Permutation> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: degree,
            });
        }
        let mut images = self.images.to_vec();
        images.extend(self.degree() as u16..degree as u16);
        Ok(Permutation::from_raw(images))
    }

    /// Shifts this permutation to act on points `offset+1..offset+degree` inside
    /// a set of `total` points, fixing everything else.
    pub fn shifted(&self, offset: usize, total: usize) -> Permutation {
        assert!(offset + self.degree() <= total);
        let mut images: Vec<u16> = (0..total as u16).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = (offset + j as usize) as u16;
        }
        Permutation::from_raw(images)
    }
}

/// Order of a 0-based image table; `seen` is scratch space of the same length.
pub(crate) fn raw_order(images: &[u16], seen: &mut [bool]) -> u64 {
    seen.iter_mut().for_each(|s| *s = false);
    let mut order = 1u64;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = images[p] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.to_cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Parses cycle notation such as `(1,2,3)(4,5)` or `(1 2 3)`. `()` and the
/// empty string are the identity. Points must be positive.
pub fn parse_cycles(text: &str) -> Result<Cycles> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
        let end = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
        let points = body[..end]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(0) | Err(_) => Err(Error::Parse(format!("bad point {t:?} in {text:?}"))),
                Ok(v) => Ok(v),
            })
            .collect::<Result<Vec<usize>>>()?;
        if points.len() > 1 {
            cycles.push(points);
        }
        rest = body[end + 1..].trim_start();
    }
    Ok(cycles)
}

impl Permutation {
    /// Parses cycle notation into a permutation of the given degree.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        Permutation::from_cycles(degree, &parse_cycles(text)?)
    }
}

/// A permutation tagged with its degree, serialised as cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationRecord {
    pub degree: usize,
    pub cycles: Cycles,
}

impl From<&Permutation> for PermutationRecord {
    fn from(p: &Permutation) -> Self {
        PermutationRecord {
            degree: p.degree(),
            cycles: p.to_cycles(),
        }
    }
}

impl TryFrom<&PermutationRecord> for Permutation {
    type Error = Error;

    fn try_from(rec: &PermutationRecord) -> Result<Self> {
        Permutation::from_cycles(rec.degree, &rec.cycles)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermutationRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = PermutationRecord::deserialize(d)?;
        Permutation::try_from(&rec).map_err(serde::de::Error::custom)
    }
}
