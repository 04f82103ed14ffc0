//! Small integer helpers: primality, factorisation, p-parts, modular powers.

pub use num_integer::{gcd, lcm};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n` in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Prime factorisation of `n` as `(prime, exponent)` pairs, by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Largest power of `p` dividing `n` (the p-part `n_p`).
pub fn p_part(mut n: u64, p: u64) -> u64 {
    debug_assert!(p >= 2);
    let mut part = 1;
    if n == 0 {
        return 0;
    }
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// True when `n` is a power of `p`, including `p^0 = 1`.
pub fn is_power_of(n: u64, p: u64) -> bool {
    n >= 1 && p_part(n, p) == n
}

/// Returns `Some(p)` when `n = p^k` with `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo a prime `p` (Fermat).
pub fn inv_mod_prime(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Inverse of `a` modulo `m` for coprime `a`, `m`, via the extended Euclidean algorithm.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorisation_and_parts() {
        assert_eq!(factorize(168), vec![(2, 3), (3, 1), (7, 1)]);
        assert_eq!(p_part(168, 2), 8);
        assert_eq!(p_part(168, 5), 1);
        assert!(is_power_of(1, 7));
        assert!(is_power_of(27, 3));
        assert!(!is_power_of(12, 2));
        assert_eq!(prime_power_base(32), Some(2));
        assert_eq!(prime_power_base(1), None);
        assert_eq!(prime_power_base(6), None);
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(pow_mod(3, 4, 7), 4);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(4, 8), None);
        assert_eq!(inv_mod_prime(10, 13) * 10 % 13, 1);
        assert_eq!(totient(420), 96);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
