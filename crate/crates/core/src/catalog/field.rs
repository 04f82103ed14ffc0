//! Arithmetic in the small fields F_q, q in {2,3,4,5,7,8,9,11,13}.
//!
//! Elements are encoded as integers `0..q`. For prime `q` this is the usual
//! residue; for `q = p^k` it is the coefficient vector of a polynomial in a
//! fixed root of an irreducible polynomial, read in base `p`.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SmallField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

/// Conway-style defining polynomials `x^k + c_{k-1} x^{k-1} + ... + c_0`,
/// given as `(p, k, [c_0, .., c_{k-1}])`.
const MODULI: &[(usize, usize, &[usize])] = &[(2, 2, &[1, 1]), (2, 3, &[1, 1, 0]), (3, 2, &[2, 2])];

impl SmallField {
    pub fn new(q: usize) -> Result<Self> {
        let (p, k) = match q {
            2 | 3 | 5 | 7 | 11 | 13 => (q, 1),
            4 => (2, 2),
            8 => (2, 3),
            9 => (3, 2),
            _ => return Err(Error::Unsupported(format!("field of size {q}"))),
        };
        let digits = |mut v: usize| {
            let mut d = vec![0usize; k];
            for slot in d.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().rev().fold(0usize, |acc, &c| acc * p + c);
        let modulus: Vec<usize> = if k == 1 {
            vec![]
        } else {
            MODULI
                .iter()
                .find(|m| m.0 == p && m.1 == k)
                .map(|m| m.2.to_vec())
                .expect("modulus listed")
        };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum) as u8;
                // schoolbook product then reduce by x^k = -(c_0 + ... + c_{k-1} x^{k-1})
                let mut prod = vec![0usize; 2 * k - 1];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for deg in (k..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &m) in modulus.iter().enumerate() {
                        let idx = deg - k + i;
                        prod[idx] = (prod[idx] + p * p - c * m % p) % p;
                    }
                }
                mul[a * q + b] = undigits(&prod[..k]) as u8;
            }
        }
        let field = SmallField { q, add, mul };
        debug_assert!(field.primitive_element().is_some());
        Ok(field)
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q)
            .find(|&b| self.add(a, b) == 0)
            .expect("additive inverse")
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Option<usize> {
        (1..self.q).find(|&c| {
            let mut acc = c;
            let mut order = 1;
            while acc != 1 {
                acc = self.mul(acc, c);
                order += 1;
            }
            order == self.q - 1
        })
    }
}
