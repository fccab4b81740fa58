//! Finite rings given by explicit addition and multiplication tables, and
//! the unit-group quotient checks run on them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite ring (not necessarily commutative) on the indices `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    pub size: usize,
    pub zero: usize,
    pub one: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl FiniteRing {
    /// Tabulates the operations on `elems`; fails when the set is not closed.
    pub fn tabulate<T: Ord + Clone>(
        elems: &[T],
        zero: &T,
        one: &T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<FiniteRing> {
        let index: BTreeMap<&T, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let find = |e: &T, what: &str| {
            index.get(e).copied().ok_or_else(|| Error::InvalidArgument(format!("set is not closed under {what}")))
        };
        let size = elems.len();
        let mut at = Vec::with_capacity(size * size);
        let mut mt = Vec::with_capacity(size * size);
        for a in elems {
            for b in elems {
                at.push(find(&add(a, b), "addition")?);
                mt.push(find(&mul(a, b), "multiplication")?);
            }
        }
        Ok(FiniteRing { size, zero: find(zero, "zero")?, one: find(one, "one")?, add: at, mul: mt })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.size).find(|&b| self.add(a, b) == self.zero).expect("additive inverse")
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.size).find(|&b| self.mul(a, b) == self.one && self.mul(b, a) == self.one)
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.inverse(a).is_some()).collect()
    }

    /// Multiplication table as rows of indices.
    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// Ring axioms by exhaustion; cubic in the size.
    pub fn satisfies_axioms(&self) -> bool {
        let s = 0..self.size;
        let unital = s.clone().all(|a| {
            self.add(a, self.zero) == a
                && self.mul(a, self.one) == a
                && self.mul(self.one, a) == a
                && (0..self.size).all(|b| self.add(a, b) == self.add(b, a))
        });
        unital
            && s.clone().all(|a| {
                (0..self.size).all(|b| {
                    (0..self.size).all(|c| {
                        self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                            && self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                            && self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
                            && self.mul(self.add(a, b), c) == self.add(self.mul(a, c), self.mul(b, c))
                    })
                })
            })
    }

    pub fn is_ideal(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        s.contains(&self.zero)
            && set.iter().all(|&a| {
                set.iter().all(|&b| s.contains(&self.add(a, b)))
                    && (0..self.size).all(|r| s.contains(&self.mul(r, a)) && s.contains(&self.mul(a, r)))
            })
    }
}

/// Outcome of [`unit_quotient_check`]: each named check with its result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitQuotientReport {
    pub checks: Vec<(String, bool)>,
}

impl UnitQuotientReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, b)| *b)
    }

    fn record(&mut self, name: &str, ok: bool) {
        self.checks.push((name.into(), ok));
    }
}

/// Checks on finite data that `R^×/(1+I) ≅ (R/I)^×` through the natural map,
/// and that `i ↦ 1+i` induces `I/J ≅ (1+I)/(1+J)` when `I² ⊆ J ⊆ I`.
pub fn unit_quotient_check(r: &FiniteRing, ideal_i: &[usize], ideal_j: &[usize]) -> UnitQuotientReport {
    let mut rep = UnitQuotientReport { checks: Vec::new() };
    let iset: BTreeSet<usize> = ideal_i.iter().copied().collect();
    let jset: BTreeSet<usize> = ideal_j.iter().copied().collect();
    rep.record("I is an ideal", r.is_ideal(ideal_i));
    rep.record("J is an ideal", r.is_ideal(ideal_j));
    rep.record("J ⊆ I", jset.is_subset(&iset));
    rep.record("I·I ⊆ J", ideal_i.iter().all(|&a| ideal_i.iter().all(|&b| jset.contains(&r.mul(a, b)))));

    let one_plus = |s: &BTreeSet<usize>| -> BTreeSet<usize> { s.iter().map(|&a| r.add(r.one, a)).collect() };
    let one_i = one_plus(&iset);
    let one_j = one_plus(&jset);
    let units: Vec<usize> = r.units();
    let unit_set: BTreeSet<usize> = units.iter().copied().collect();
    rep.record("1+I consists of units", one_i.is_subset(&unit_set));
    rep.record("1+I is closed under products", one_i.iter().all(|&a| one_i.iter().all(|&b| one_i.contains(&r.mul(a, b)))));

    // R/I: each element labelled by the least index of its coset
    let class: Vec<usize> = (0..r.size).map(|a| iset.iter().map(|&i| r.add(a, i)).min().unwrap_or(a)).collect();
    let classes: BTreeSet<usize> = class.iter().copied().collect();
    let one_c = class[r.one];
    let well_defined = (0..r.size).all(|a| (0..r.size).all(|b| class[r.mul(a, b)] == class[r.mul(class[a], class[b])]));
    rep.record("multiplication on R/I is well defined", well_defined);
    let quotient_units: BTreeSet<usize> = classes
        .iter()
        .copied()
        .filter(|&c| classes.iter().any(|&d| class[r.mul(c, d)] == one_c && class[r.mul(d, c)] == one_c))
        .collect();
    let image: BTreeSet<usize> = units.iter().map(|&u| class[u]).collect();
    rep.record("R^× maps into (R/I)^×", image.is_subset(&quotient_units));
    rep.record("R^× → (R/I)^× is surjective", image == quotient_units);
    let kernel: BTreeSet<usize> = units.iter().copied().filter(|&u| class[u] == one_c).collect();
    rep.record("kernel of R^× → (R/I)^× is 1+I", kernel == one_i);
    rep.record(
        "|R^×| = |1+I|·|(R/I)^×|",
        units.len() == one_i.len() * quotient_units.len(),
    );

    let inverse: BTreeMap<usize, usize> = one_i.iter().filter_map(|&u| r.inverse(u).map(|v| (u, v))).collect();
    let hom = ideal_i.iter().all(|&a| {
        ideal_i.iter().all(|&b| {
            let prod = r.mul(r.add(r.one, a), r.add(r.one, b));
            let sum = r.add(r.one, r.add(a, b));
            inverse.get(&sum).is_some_and(|&s| one_j.contains(&r.mul(s, prod)))
        })
    });
    rep.record("i ↦ 1+i is additive modulo 1+J", hom);
    let injective_mod = ideal_i.iter().all(|&a| {
        ideal_i.iter().all(|&b| {
            let same_coset_i = jset.contains(&r.add(a, r.neg(b)));
            let ua = r.add(r.one, a);
            let ub = r.add(r.one, b);
            let same_coset_u = inverse.get(&ub).is_some_and(|&v| one_j.contains(&r.mul(v, ua)));
            same_coset_i == same_coset_u
        })
    });
    rep.record("I/J → (1+I)/(1+J) is injective", injective_mod);
    rep.record(
        "|I|/|J| = |1+I|/|1+J|",
        !jset.is_empty() && iset.len() * one_j.len() == one_i.len() * jset.len(),
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(m: usize) -> FiniteRing {
        let elems: Vec<usize> = (0..m).collect();
        FiniteRing::tabulate(&elems, &0, &1, |a, b| (a + b) % m, |a, b| (a * b) % m).unwrap()
    }

    #[test]
    fn integers_mod_prime_power() {
        let r = zmod(8);
        assert!(r.satisfies_axioms());
        assert_eq!(r.units(), [1, 3, 5, 7]);
        // I = (2), J = (4) with I² = (4)
        let rep = unit_quotient_check(&r, &[0, 2, 4, 6], &[0, 4]);
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn zero_ideal_is_trivial() {
        let r = zmod(9);
        let rep = unit_quotient_check(&r, &[0], &[0]);
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn detects_non_ideal() {
        let r = zmod(8);
        let rep = unit_quotient_check(&r, &[0, 3], &[0]);
        assert!(!rep.ok());
        assert!(!rep.checks[0].1);
    }

    #[test]
    fn noncommutative_upper_triangular() {
        // upper triangular 2x2 matrices over F_2: (a, b, d) ~ [[a, b], [0, d]]
        let elems: Vec<(u8, u8, u8)> = (0..8).map(|i| (i & 1, (i >> 1) & 1, (i >> 2) & 1)).collect();
        let r = FiniteRing::tabulate(
            &elems,
            &(0, 0, 0),
            &(1, 0, 1),
            |x, y| (x.0 ^ y.0, x.1 ^ y.1, x.2 ^ y.2),
            |x, y| (x.0 & y.0, (x.0 & y.1) ^ (x.1 & y.2), x.2 & y.2),
        )
        .unwrap();
        assert!(r.satisfies_axioms());
        assert_ne!(r.mul(1, 2), r.mul(2, 1));
        let nil: Vec<usize> = elems.iter().enumerate().filter(|(_, e)| e.0 == 0 && e.2 == 0).map(|(i, _)| i).collect();
        let rep = unit_quotient_check(&r, &nil, &[r.zero]);
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn rejects_open_sets() {
        let elems = [0usize, 1];
        assert!(FiniteRing::tabulate(&elems, &0, &1, |a, b| a + b, |a, b| a * b).is_err());
    }
}
