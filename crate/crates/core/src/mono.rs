//! Exponent vectors shared by truncated series and parameter polynomials.

use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

/// An exponent vector. Ordered graded-lexicographically: lower total degree
/// first, and within a degree the vector with the larger leading exponent
/// first (so `T1` precedes `T2`, and `T1^2` precedes `T1*T2`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono(SmallVec<[u32; 4]>);

impl Mono {
    pub fn one(vars: usize) -> Self {
        Mono(SmallVec::from_elem(0, vars))
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut m = Self::one(vars);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(e: &[u32]) -> Self {
        Mono(SmallVec::from_slice(e))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(Mono)
    }

    pub fn swapped(&self, i: usize, j: usize) -> Mono {
        let mut m = self.clone();
        m.0.swap(i, j);
        m
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let mut v = [
            Mono::from_slice(&[0, 2]),
            Mono::from_slice(&[1, 1]),
            Mono::from_slice(&[0, 1]),
            Mono::from_slice(&[2, 0]),
            Mono::from_slice(&[1, 0]),
            Mono::from_slice(&[0, 0]),
        ];
        v.sort();
        let got: alloc::vec::Vec<_> = v.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(
            got,
            alloc::vec![
                alloc::vec![0, 0],
                alloc::vec![1, 0],
                alloc::vec![0, 1],
                alloc::vec![2, 0],
                alloc::vec![1, 1],
                alloc::vec![0, 2]
            ]
        );
    }
}
