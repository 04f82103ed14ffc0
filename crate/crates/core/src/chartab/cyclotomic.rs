//! Exact arithmetic in the ring of integers `Z[z]` of the m-th cyclotomic field,
//! stored in the power basis `1, z, .., z^(phi(m)-1)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::divisors;

/// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<[i64]> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by every Phi_d with d | m, d < m
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m as u64) {
        if d == m as u64 {
            continue;
        }
        let den = cyclotomic_polynomial(d as u32);
        num = exact_div(&num, &den);
    }
    let poly: Arc<[i64]> = num.into();
    cache.lock().expect("cache lock").insert(m, poly.clone());
    poly
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduces a polynomial (coefficients up to any degree) modulo `Phi_m`.
fn reduce(m: u32, mut raw: Vec<i128>) -> Vec<i64> {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    for top in (deg..raw.len()).rev() {
        let c = raw[top];
        if c == 0 {
            continue;
        }
        for (j, &p) in phi.iter().enumerate() {
            raw[top - deg + j] -= c * p as i128;
        }
    }
    raw.truncate(deg);
    raw.resize(deg, 0);
    raw.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicValue {
    conductor: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicValue {
    pub fn zero(conductor: u32) -> Self {
        Self::from_int(conductor, 0)
    }

    pub fn from_int(conductor: u32, n: i64) -> Self {
        assert!(conductor >= 1);
        let len = cyclotomic_polynomial(conductor).len() - 1;
        let mut coeffs = vec![0; len];
        coeffs[0] = n;
        CyclotomicValue { conductor, coeffs }
    }

    /// `z^k` for the primitive root `z = exp(2 pi i / conductor)`.
    pub fn root_power(conductor: u32, k: u64) -> Self {
        let mut acc = CyclotomicAccumulator::new(conductor);
        acc.add_root_power(k, 1);
        acc.finish()
    }

    /// Builds a value from power-basis coefficients, reducing if necessary.
    pub fn from_coefficients(conductor: u32, coeffs: &[i64]) -> Self {
        CyclotomicValue {
            conductor,
            coeffs: reduce(conductor, coeffs.iter().map(|&c| c as i128).collect()),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.conductor, other.conductor, "conductor mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicValue {
            conductor: self.conductor,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        CyclotomicValue {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let m = self.conductor as usize;
        let mut raw = vec![0i128; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    raw[(i + j) % m] += a as i128 * b as i128;
                }
            }
        }
        CyclotomicValue {
            conductor: self.conductor,
            coeffs: reduce(self.conductor, raw),
        }
    }

    /// Complex conjugate: `z -> z^-1`.
    pub fn conj(&self) -> Self {
        let mut acc = CyclotomicAccumulator::new(self.conductor);
        for (j, &c) in self.coeffs.iter().enumerate() {
            acc.add_root_power(self.conductor as u64 - j as u64, c);
        }
        acc.finish()
    }

    pub fn abs_sq(&self) -> Self {
        self.mul(&self.conj())
    }

    /// Exact division by a rational integer, if the quotient lies in `Z[z]`.
    pub fn div_exact(&self, d: i64) -> Option<Self> {
        if d == 0 || self.coeffs.iter().any(|c| c % d != 0) {
            return None;
        }
        Some(CyclotomicValue {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c / d).collect(),
        })
    }

    /// Image under the ring map `Z[z] -> F_l` sending `z` to `root`.
    pub fn reduce_mod(&self, root: u64, l: u64) -> u64 {
        let mut acc = 0u64;
        let mut pw = 1u64;
        for &c in &self.coeffs {
            acc = (acc + super::modp::from_i64(c, l) * pw) % l;
            pw = pw * root % l;
        }
        acc
    }
}

impl fmt::Debug for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let term = match (j, mag) {
                (0, _) => format!("{mag}"),
                (1, 1) => format!("z{}", self.conductor),
                (_, 1) => format!("z{}^{j}", self.conductor),
                (1, _) => format!("{mag}*z{}", self.conductor),
                _ => format!("{mag}*z{}^{j}", self.conductor),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        Ok(())
    }
}

/// Unreduced sum of terms `c * z^k`, kept modulo `x^m - 1` until `finish`.
#[derive(Debug, Clone)]
pub struct CyclotomicAccumulator {
    conductor: u32,
    raw: Vec<i128>,
}

impl CyclotomicAccumulator {
    pub fn new(conductor: u32) -> Self {
        CyclotomicAccumulator {
            conductor,
            raw: vec![0; conductor as usize],
        }
    }

    pub fn add_root_power(&mut self, k: u64, c: i64) {
        let idx = (k % self.conductor as u64) as usize;
        self.raw[idx] += c as i128;
    }

    pub fn add_value(&mut self, v: &CyclotomicValue) {
        assert_eq!(v.conductor, self.conductor, "conductor mismatch");
        for (j, &c) in v.coeffs.iter().enumerate() {
            self.raw[j] += c as i128;
        }
    }

    pub fn finish(self) -> CyclotomicValue {
        CyclotomicValue {
            conductor: self.conductor,
            coeffs: reduce(self.conductor, self.raw),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(&*cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_polynomial(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
        for m in 1..=60u32 {
            assert_eq!(
                cyclotomic_polynomial(m).len() - 1,
                crate::arith::totient(m as u64) as usize
            );
        }
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for m in 2..=30u32 {
            let mut acc = CyclotomicAccumulator::new(m);
            for k in 0..m as u64 {
                acc.add_root_power(k, 1);
            }
            assert!(acc.finish().is_zero(), "m={m}");
            let z = CyclotomicValue::root_power(m, 1);
            let mut p = CyclotomicValue::from_int(m, 1);
            for _ in 0..m {
                p = p.mul(&z);
            }
            assert_eq!(p, CyclotomicValue::from_int(m, 1));
            assert_eq!(z.abs_sq(), CyclotomicValue::from_int(m, 1));
        }
    }

    #[test]
    fn gaussian_integers() {
        let i = CyclotomicValue::root_power(4, 1);
        assert_eq!(i.mul(&i).as_integer(), Some(-1));
        let v = CyclotomicValue::from_coefficients(4, &[3, 4]);
        assert_eq!(v.abs_sq().as_integer(), Some(25));
        assert_eq!(v.conj().coefficients(), &[3, -4]);
        assert_eq!(v.scale(2).div_exact(2), Some(v.clone()));
        assert_eq!(v.div_exact(2), None);
    }

    fn value(m: u32) -> impl Strategy<Value = CyclotomicValue> {
        proptest::collection::vec(-20i64..20, m as usize)
            .prop_map(move |c| CyclotomicValue::from_coefficients(m, &c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in value(15), b in value(15), c in value(15)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
            prop_assert_eq!(a.conj().conj(), a.clone());
        }

        #[test]
        fn reduction_mod_prime_is_a_ring_map(a in value(12), b in value(12)) {
            // 13 = 1 mod 12, and 2 has order 12 mod 13
            let (root, l) = (2u64, 13u64);
            prop_assert_eq!(
                a.mul(&b).reduce_mod(root, l),
                a.reduce_mod(root, l) * b.reduce_mod(root, l) % l
            );
            prop_assert_eq!(
                a.add(&b).reduce_mod(root, l),
                (a.reduce_mod(root, l) + b.reduce_mod(root, l)) % l
            );
        }
    }
}
