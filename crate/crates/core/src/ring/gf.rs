//! Finite fields `F_{p^k}` with log/antilog tables.
//!
//! An element is stored as its code `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`,
//! where `c_0 + c_1 x + ...` is its residue modulo the field modulus. Codes
//! also give the canonical element order.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug)]
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("field degree must be positive".into()));
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER as u128);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p: p as u32, k });
        };
        let p = p as u32;
        let q = q as u32;
        let modulus = canonical_modulus(p, k);
        let mut f = GaloisField { p, k, q, modulus, exp: Vec::new(), log: Vec::new() };
        f.build_tables();
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, constant term first, length `k + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut d = vec![0; self.k as usize];
        let mut a = a;
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn from_u64(&self, n: u64) -> u32 {
        (n % self.p as u64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % (self.q as u64 - 1)) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let s = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[s as usize]
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        if q == 2 {
            self.exp = vec![1];
            self.log = vec![0, 0];
            return;
        }
        let mut g = 2u32.min(self.q - 1);
        loop {
            let mut exp = Vec::with_capacity(q - 1);
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..q - 1 {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = self.slow_mul(x, g);
            }
            if ok && x == 1 {
                let mut log = vec![0u32; q];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
            g += 1;
        }
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for d in (k..2 * k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate().take(k) {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
            prod[d] = 0;
        }
        let digits: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.from_digits(&digits)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

/// Lexicographically least monic irreducible of degree `k` over `F_p`,
/// comparing coefficient vectors from the constant term up.
pub fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    let mut low = vec![0u32; k];
    loop {
        let mut cand = low.clone();
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
        // increment with the constant term most significant
        let mut i = k;
        loop {
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            if i == 0 {
                unreachable!("an irreducible polynomial of every degree exists");
            }
        }
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    let lead_inv = crate::arith::inv_mod(b[db] as u64, p64).expect("monic divisor");
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = top * lead_inv % p64;
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p64 - c) * bc as u64) % p64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let mut low = vec![0u32; d];
        loop {
            let mut div = low.clone();
            div.push(1);
            if poly_rem(f, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(canonical_modulus(2, 1), vec![0, 1]);
        assert_eq!(canonical_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(canonical_modulus(2, 3), vec![1, 0, 1, 1]);
        assert_eq!(canonical_modulus(2, 4), vec![1, 0, 0, 1, 1]);
    }

    #[test]
    fn f4_multiplication() {
        let f = GaloisField::new(2, 2).unwrap();
        let x = 2;
        assert_eq!(f.mul(x, x), 3); // x^2 = x + 1
        assert_eq!(f.mul(x, 3), 1);
        for a in 1..4 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn f9_frobenius_of_x() {
        let f = GaloisField::new(3, 2).unwrap();
        let x = 3;
        assert_eq!(f.pow(x, 3), f.neg(x));
    }

    #[test]
    fn table_mul_agrees_with_schoolbook() {
        for (p, k) in [(2, 3), (3, 3), (5, 2), (2, 5)] {
            let f = GaloisField::new(p, k).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                }
            }
        }
    }

    #[test]
    fn rejects_composite() {
        assert_eq!(GaloisField::new(4, 1), Err(Error::NotPrime(4)));
    }
}
