//! Small integer helpers.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, e)` when `n = p^e` for a prime `p` and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let mut m = n;
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

/// Lazard's λ(m): the prime `l` when `m` is a power of `l`, otherwise 1.
pub fn lambda_of(m: u64) -> u64 {
    prime_power(m).map_or(1, |(l, _)| l)
}

/// Exponent `j` with `n = p^j`, if any (`j = 0` for `n = 1`).
pub fn log_exact(n: u64, p: u64) -> Option<u32> {
    let mut m = n;
    let mut j = 0;
    while m > 1 {
        if m % p != 0 {
            return None;
        }
        m /= p;
        j += 1;
    }
    (m == 1).then_some(j)
}

/// Largest `l` with `p^l <= n` (`n >= 1`).
pub fn floor_log(n: u64, p: u64) -> u32 {
    let mut l = 0;
    let mut q = p;
    while q <= n {
        l += 1;
        q = q.saturating_mul(p);
    }
    l
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn bigint_mod(a: &BigInt, m: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(m));
    u64::try_from(r).expect("residue fits")
}

/// Integers `u` with `Σ u_i c_i = gcd(c)`, together with that gcd (made
/// nonnegative).
pub fn bezout(cs: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut us: Vec<BigInt> = Vec::with_capacity(cs.len());
    for c in cs {
        let e = g.extended_gcd(c);
        for u in us.iter_mut() {
            *u = &*u * &e.x;
        }
        us.push(e.y);
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for u in us.iter_mut() {
            *u = -&*u;
        }
    }
    (g, us)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_of(4), 2);
        assert_eq!(lambda_of(6), 1);
        assert_eq!(lambda_of(9), 3);
        assert_eq!(lambda_of(2), 2);
        assert_eq!(lambda_of(7), 7);
        assert_eq!(lambda_of(12), 1);
    }

    #[test]
    fn bezout_combination() {
        let cs: Vec<BigInt> = [6, 10, 15].iter().map(|&x| BigInt::from(x)).collect();
        let (g, u) = bezout(&cs);
        assert_eq!(g, BigInt::one());
        let s: BigInt = cs.iter().zip(&u).map(|(c, u)| c * u).sum();
        assert_eq!(s, BigInt::one());
    }

    #[test]
    fn logs() {
        assert_eq!(log_exact(8, 2), Some(3));
        assert_eq!(log_exact(1, 3), Some(0));
        assert_eq!(log_exact(6, 2), None);
        assert_eq!(floor_log(4, 2), 2);
        assert_eq!(floor_log(7, 2), 2);
        assert_eq!(floor_log(9, 3), 2);
        assert_eq!(floor_log(1, 2), 0);
    }
}
