//! Named desk-scale groups and constructors.
//!
//! Recognised names: `Cn` (n <= 36), `D2n` (dihedral of order 2n, n <= 18),
//! `Q8`, `Q16`, `SD16`, `Sn`, `An` (n <= 7), `GL(2,q)`, `SL(2,q)`, `PSL(2,q)`,
//! `PGL(2,q)` for q in {2,3,4,5,7,8,9,11,13}, `F20`, `F21`, `C3:Q8`, and direct
//! products written with `x`, e.g. `S4xA5`.

mod corpus;
mod field;

pub use corpus::{
    builtin_corpus, load_manifest, parse_manifest, Construction, GroupSpecEntry, BUILTIN_MANIFEST,
};
pub use field::SmallField;

use crate::error::{Error, Result};
use crate::group::{generate, FiniteGroup, DEFAULT_CAP};
use crate::perm::Permutation;

pub fn make_named_group(name: &str) -> Result<FiniteGroup> {
    make_named_group_capped(name, DEFAULT_CAP)
}

pub fn make_named_group_capped(name: &str, cap: usize) -> Result<FiniteGroup> {
    let name = name.trim();
    if name.contains('x') {
        let mut factors = name.split('x');
        let first = factors.next().unwrap_or_default();
        let mut acc = builtin(first, cap)?;
        for f in factors {
            let next = builtin(f, cap)?;
            acc = direct_product_capped(&acc, &next, cap)?;
        }
        return Ok(acc);
    }
    builtin(name, cap)
}

fn cycle(points: impl IntoIterator<Item = usize>, degree: usize) -> Permutation {
    let c: Vec<usize> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[c]).expect("valid cycle")
}

fn from_map(degree: usize, f: impl Fn(usize) -> usize) -> Permutation {
    let images: Vec<usize> = (0..degree).map(|i| f(i) + 1).collect();
    Permutation::from_images(&images).expect("bijection")
}

fn parse_suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

fn parse_matrix_name(name: &str) -> Option<(MatrixKind, usize)> {
    let (kind, rest) = [
        ("PSL", MatrixKind::PSL),
        ("PGL", MatrixKind::PGL),
        ("GL", MatrixKind::GL),
        ("SL", MatrixKind::SL),
    ]
    .into_iter()
    .find_map(|(p, k)| name.strip_prefix(p).map(|r| (k, r)))?;
    let inner = rest.strip_prefix("(2,")?.strip_suffix(')')?;
    Some((kind, inner.parse().ok()?))
}

fn builtin(name: &str, cap: usize) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownGroup(name.to_string());
    let g = match name {
        "Q8" => metacyclic(4, 2, 2, 3, cap)?,
        "Q16" => metacyclic(8, 2, 4, 7, cap)?,
        "SD16" => metacyclic(8, 2, 0, 3, cap)?,
        "F20" => affine(5, 2, cap)?,
        "F21" => affine(7, 2, cap)?,
        "C3:Q8" => dicyclic_24(cap)?,
        _ => {
            if let Some((kind, q)) = parse_matrix_name(name) {
                return classical_group(kind, q, cap);
            }
            if let Some(n) = parse_suffix(name, "C") {
                if !(1..=36).contains(&n) {
                    return Err(unknown());
                }
                return generate(n, &[cycle(1..=n, n)], cap);
            }
            if let Some(order) = parse_suffix(name, "D") {
                if order % 2 != 0 || !(4..=36).contains(&order) {
                    return Err(unknown());
                }
                return dihedral(order / 2, cap);
            }
            if let Some(n) = parse_suffix(name, "S") {
                if !(1..=7).contains(&n) {
                    return Err(unknown());
                }
                if n == 1 {
                    return Ok(FiniteGroup::trivial(1));
                }
                return generate(n, &[cycle([1, 2], n), cycle(1..=n, n)], cap);
            }
            if let Some(n) = parse_suffix(name, "A") {
                if !(1..=7).contains(&n) {
                    return Err(unknown());
                }
                if n < 3 {
                    return Ok(FiniteGroup::trivial(n));
                }
                let long = if n % 2 == 1 {
                    cycle(1..=n, n)
                } else {
                    cycle(2..=n, n)
                };
                return generate(n, &[cycle([1, 2, 3], n), long], cap);
            }
            return Err(unknown());
        }
    };
    Ok(g)
}

fn dihedral(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n == 2 {
        return generate(4, &[cycle([1, 2], 4), cycle([3, 4], 4)], cap);
    }
    let rotation = cycle(1..=n, n);
    let reflection = from_map(n, |i| (n - i) % n);
    generate(n, &[rotation, reflection], cap)
}

/// Regular representation of `<a, b | a^n, b^m = a^t, b a b^-1 = a^r>` on the
/// normal forms `a^i b^j`.
fn metacyclic(n: usize, m: usize, t: usize, r: usize, cap: usize) -> Result<FiniteGroup> {
    let idx = |i: usize, j: usize| i * m + j;
    let mut rpow = vec![1usize; m];
    for j in 1..m {
        rpow[j] = rpow[j - 1] * r % n;
    }
    let right_mul = |k: usize, l: usize| {
        from_map(n * m, |e| {
            let (i, j) = (e / m, e % m);
            let mut a = (i + k * rpow[j]) % n;
            let mut b = j + l;
            if b >= m {
                b -= m;
                a = (a + t) % n;
            }
            idx(a, b)
        })
    };
    generate(n * m, &[right_mul(1, 0), right_mul(0, 1)], cap)
}

/// `x -> a x + b` over F_p with `a` in the subgroup generated by `mult`.
fn affine(p: usize, mult: usize, cap: usize) -> Result<FiniteGroup> {
    generate(
        p,
        &[from_map(p, |x| (x + 1) % p), from_map(p, |x| x * mult % p)],
        cap,
    )
}

/// `C3 : Q8` on 11 points: `Q8` regular on 1..8, with the generator that
/// does not centralise the normal `C3` also swapping 10 and 11.
fn dicyclic_24(cap: usize) -> Result<FiniteGroup> {
    let q8 = metacyclic(4, 2, 2, 3, cap)?;
    let gens = q8.generators();
    let a = gens[0].extend_to(11)?;
    let b = gens[1].extend_to(11)?.then(&cycle([10, 11], 11));
    let c = cycle([9, 10, 11], 11);
    generate(11, &[a, b, c], cap)
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_capped(a, b, DEFAULT_CAP)
}

/// `A x B` acting on the disjoint union of the two point sets.
pub fn direct_product_capped(a: &FiniteGroup, b: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let total = a.degree() + b.degree();
    let order = a.order().saturating_mul(b.order());
    if order > cap as u64 {
        return Err(Error::CapExceeded {
            cap,
            partial: order as usize,
        });
    }
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.shifted(0, total)).collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), total)));
    generate(total, &gens, cap)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(clippy::upper_case_acronyms)]
pub enum MatrixKind {
    GL,
    SL,
    PSL,
    PGL,
}

/// A 2x2 matrix over F_q, row major, entries encoded as in [`SmallField`].
pub type Matrix2 = [[usize; 2]; 2];

/// Permutation group generated by 2x2 matrices over F_q: `GL`/`SL` act on the
/// `q^2 - 1` nonzero column vectors, `PSL`/`PGL` on the `q + 1` projective points.
pub fn matrix_to_permutation(
    q: usize,
    kind: MatrixKind,
    generators: &[Matrix2],
) -> Result<FiniteGroup> {
    matrix_to_permutation_capped(q, kind, generators, DEFAULT_CAP)
}

pub fn matrix_to_permutation_capped(
    q: usize,
    kind: MatrixKind,
    generators: &[Matrix2],
    cap: usize,
) -> Result<FiniteGroup> {
    if ![2, 3, 4, 5, 7, 8, 9, 11, 13].contains(&q) {
        return Err(Error::Unsupported(format!("q = {q}")));
    }
    if generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    let f = SmallField::new(q)?;
    let mut perms = Vec::with_capacity(generators.len());
    for m in generators {
        if m.iter().flatten().any(|&e| e >= q) {
            return Err(Error::Unsupported(format!("matrix entry outside F_{q}")));
        }
        let det = f.add(f.mul(m[0][0], m[1][1]), f.neg(f.mul(m[0][1], m[1][0])));
        if det == 0 {
            return Err(Error::SingularMatrix);
        }
        if matches!(kind, MatrixKind::SL | MatrixKind::PSL) && det != 1 {
            return Err(Error::Unsupported("determinant must be 1".into()));
        }
        let apply = |a: usize, b: usize| {
            (
                f.add(f.mul(m[0][0], a), f.mul(m[0][1], b)),
                f.add(f.mul(m[1][0], a), f.mul(m[1][1], b)),
            )
        };
        let perm = match kind {
            MatrixKind::GL | MatrixKind::SL => from_map(q * q - 1, |v| {
                let (a, b) = ((v + 1) / q, (v + 1) % q);
                let (c, d) = apply(a, b);
                c * q + d - 1
            }),
            MatrixKind::PSL | MatrixKind::PGL => {
                // point i < q is [1 : i], point q is [0 : 1]
                from_map(q + 1, |pt| {
                    let (a, b) = if pt < q { (1, pt) } else { (0, 1) };
                    let (c, d) = apply(a, b);
                    if c == 0 {
                        q
                    } else {
                        f.mul(d, f.inv(c).expect("nonzero"))
                    }
                })
            }
        };
        perms.push(perm);
    }
    let degree = perms[0].degree();
    generate(degree, &perms, cap)
}

/// Standard generators: two transvections, plus `diag(w, w^-1)` over non-prime
/// fields, plus `diag(w, 1)` for `GL`/`PGL`.
fn classical_group(kind: MatrixKind, q: usize, cap: usize) -> Result<FiniteGroup> {
    let f = SmallField::new(q)?;
    let w = f.primitive_element().expect("primitive element");
    let mut gens: Vec<Matrix2> = vec![[[1, 1], [0, 1]], [[1, 0], [1, 1]]];
    if ![2, 3, 5, 7, 11, 13].contains(&q) {
        gens.push([[w, 0], [0, f.inv(w).expect("unit")]]);
    }
    if matches!(kind, MatrixKind::GL | MatrixKind::PGL) && q > 2 {
        gens.push([[w, 0], [0, 1]]);
    }
    matrix_to_permutation_capped(q, kind, &gens, cap)
}

/// Order of the classical group of the given kind over F_q.
pub fn classical_order(kind: MatrixKind, q: u64) -> u64 {
    let sl = q * (q * q - 1);
    match kind {
        MatrixKind::GL => sl * (q - 1),
        MatrixKind::SL | MatrixKind::PGL => sl,
        MatrixKind::PSL => sl / crate::arith::gcd(2, q - 1),
    }
}
