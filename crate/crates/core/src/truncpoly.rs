//! Polynomials in `T1..Tv` modulo all monomials of total degree above a bound.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::mono::Mono;
use crate::ring::{Elem, Ring, RingHom};

/// An element of `R[T1..Tv] / (T1..Tv)^(bound+1)`. Zero coefficients are
/// never stored and terms iterate in the graded monomial order.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncPoly {
    ring: Ring,
    vars: usize,
    bound: u32,
    terms: BTreeMap<Mono, Elem>,
}

impl TruncPoly {
    pub fn zero(ring: &Ring, vars: usize, bound: u32) -> Self {
        TruncPoly { ring: ring.clone(), vars, bound, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, vars: usize, bound: u32, c: Elem) -> Self {
        Self::monomial(ring, vars, bound, Mono::one(vars), c)
    }

    pub fn one(ring: &Ring, vars: usize, bound: u32) -> Self {
        Self::constant(ring, vars, bound, ring.one())
    }

    /// The variable `T_{i+1}`.
    pub fn var(ring: &Ring, vars: usize, bound: u32, i: usize) -> Self {
        Self::monomial(ring, vars, bound, Mono::var(vars, i), ring.one())
    }

    /// `c * m`, or zero when `m` lies above the bound.
    pub fn monomial(ring: &Ring, vars: usize, bound: u32, m: Mono, c: Elem) -> Self {
        let mut out = Self::zero(ring, vars, bound);
        out.add_term(&m, &c);
        out
    }

    /// Builds a polynomial from terms, summing repeats. Terms above the bound,
    /// of the wrong arity, or with coefficients outside `ring` are rejected.
    pub fn from_terms(ring: &Ring, vars: usize, bound: u32, terms: impl IntoIterator<Item = (Mono, Elem)>) -> Result<Self> {
        let mut out = Self::zero(ring, vars, bound);
        for (m, c) in terms {
            if m.vars() != vars {
                return Err(Error::ShapeMismatch(format!("exponent vector {m:?} in a {vars}-variable ring")));
            }
            if m.degree() > bound {
                return Err(Error::ShapeMismatch(format!("term {m:?} above bound {bound}")));
            }
            if !ring.contains(&c) {
                return Err(Error::DescriptorMismatch);
            }
            out.add_term(&m, &c);
        }
        Ok(out)
    }

    /// Like `from_terms` but silently drops terms above the bound.
    pub(crate) fn from_terms_truncating(ring: &Ring, vars: usize, bound: u32, terms: impl IntoIterator<Item = (Mono, Elem)>) -> Self {
        let mut out = Self::zero(ring, vars, bound);
        for (m, c) in terms {
            out.add_term(&m, &c);
        }
        out
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Mono) -> Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Coefficient of the monomial with exponents `e`.
    pub fn coeff(&self, e: &[u32]) -> Elem {
        self.coefficient(&Mono::from_slice(e))
    }

    /// Coefficient of `T^d` in a one-variable polynomial.
    pub fn coeff1(&self, d: u32) -> Elem {
        self.coeff(&[d])
    }

    pub(crate) fn add_term(&mut self, m: &Mono, c: &Elem) {
        if c.is_zero() || m.degree() > self.bound {
            return;
        }
        if let Some(slot) = self.terms.get_mut(m) {
            *slot = self.ring.add(slot, c);
            if slot.is_zero() {
                self.terms.remove(m);
            }
        } else {
            self.terms.insert(m.clone(), c.clone());
        }
    }

    pub fn same_shape(&self, other: &TruncPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ShapeMismatch("different coefficient rings".into()));
        }
        if self.vars != other.vars || self.bound != other.bound {
            return Err(Error::ShapeMismatch(format!(
                "({} vars, bound {}) vs ({} vars, bound {})",
                self.vars, self.bound, other.vars, other.bound
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, &self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn neg(&self) -> TruncPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c))).collect();
        TruncPoly { terms, ..self.shape() }
    }

    pub fn mul(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.same_shape(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &TruncPoly) -> TruncPoly {
        let mut out = self.shape();
        for (ma, ca) in &self.terms {
            let room = self.bound - ma.degree();
            for (mb, cb) in &other.terms {
                if mb.degree() > room {
                    break;
                }
                out.add_term(&ma.mul(mb), &self.ring.mul(ca, cb));
            }
        }
        out
    }

    /// `c * self` for a ring element `c`.
    pub fn scale(&self, c: &Elem) -> TruncPoly {
        let mut out = self.shape();
        for (m, a) in &self.terms {
            out.add_term(m, &self.ring.mul(c, a));
        }
        out
    }

    pub fn pow(&self, e: u64) -> TruncPoly {
        let mut result = Self::one(&self.ring, self.vars, self.bound);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Same ring, arity and bound, no terms.
    fn shape(&self) -> TruncPoly {
        Self::zero(&self.ring, self.vars, self.bound)
    }

    /// Re-bounds the polynomial, discarding terms above `bound`.
    pub fn with_bound(&self, bound: u32) -> TruncPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() <= bound).map(|(m, c)| (m.clone(), c.clone())).collect();
        TruncPoly { ring: self.ring.clone(), vars: self.vars, bound, terms }
    }

    /// Truncation to a lower bound.
    pub fn truncate(&self, bound: u32) -> Result<TruncPoly> {
        if bound > self.bound {
            return Err(Error::ShapeMismatch(format!("cannot truncate bound {} to {bound}", self.bound)));
        }
        Ok(self.with_bound(bound))
    }

    pub fn homogeneous_part(&self, d: u32) -> TruncPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        TruncPoly { terms, ..self.shape() }
    }

    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Mono::degree)
    }

    /// Largest total degree carrying a nonzero coefficient.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Mono::degree)
    }

    pub fn constant_term(&self) -> Elem {
        self.coefficient(&Mono::one(self.vars))
    }

    /// `self(args[0], ..., args[v-1])`. The arguments share a ring and
    /// bound, have no constant term, and fix the shape of the result.
    pub fn substitute(&self, args: &[TruncPoly]) -> Result<TruncPoly> {
        if args.len() != self.vars {
            return Err(Error::ShapeMismatch(format!("{} arguments for {} variables", args.len(), self.vars)));
        }
        let Some(first) = args.first() else {
            return Err(Error::ShapeMismatch("no arguments".into()));
        };
        for a in args {
            first.same_shape(a)?;
            if !a.constant_term().is_zero() {
                return Err(Error::NonzeroConstantTerm);
            }
        }
        if self.ring != first.ring {
            return Err(Error::ShapeMismatch("different coefficient rings".into()));
        }
        let terms: Vec<(&Mono, &Elem)> = self.terms.iter().collect();
        let mut powers: Vec<Vec<TruncPoly>> = args.iter().map(|a| vec![Self::one(&a.ring, a.vars, a.bound), a.clone()]).collect();
        Ok(subst_rec(0, &terms, args, &mut powers))
    }

    /// `self(g)` for one-variable `self`.
    pub fn compose(&self, g: &TruncPoly) -> Result<TruncPoly> {
        self.substitute(core::slice::from_ref(g))
    }

    /// The series `g` with `self(g) = g(self) = T`.
    pub fn compositional_inverse(&self) -> Result<TruncPoly> {
        if self.vars != 1 {
            return Err(Error::ShapeMismatch("compositional inverse needs one variable".into()));
        }
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let r = &self.ring;
        let a1_inv = r.unit_inverse(&self.coeff1(1)).ok_or(Error::NonUnitLinearTerm)?;
        let mut g = Self::monomial(r, 1, self.bound, Mono::var(1, 0), a1_inv.clone());
        for m in 2..=self.bound {
            let c = self.compose(&g)?.coeff1(m);
            if !c.is_zero() {
                g.add_term(&Mono::from_slice(&[m]), &r.neg(&r.mul(&c, &a1_inv)));
            }
        }
        Ok(g)
    }

    pub fn map_coefficients(&self, phi: &RingHom) -> Result<TruncPoly> {
        if phi.source() != &self.ring {
            return Err(Error::DescriptorMismatch);
        }
        let mut out = Self::zero(phi.target(), self.vars, self.bound);
        for (m, c) in &self.terms {
            out.add_term(m, &phi.apply(c)?);
        }
        Ok(out)
    }

    /// Re-reads the coefficients in `ring` through its canonical map.
    pub fn change_ring(&self, ring: &Ring) -> Result<TruncPoly> {
        if &self.ring == ring {
            return Ok(self.clone());
        }
        self.map_coefficients(&RingHom::canonical(&self.ring, ring)?)
    }

    /// A one-variable polynomial rewritten in variable `i` of `vars`.
    pub fn in_var(&self, vars: usize, i: usize) -> TruncPoly {
        let mut out = Self::zero(&self.ring, vars, self.bound);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; vars];
            e[i] = m.exps()[0];
            out.add_term(&Mono::from_slice(&e), c);
        }
        out
    }

    /// Exchanges variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> TruncPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.swapped(i, j), c.clone())).collect();
        TruncPoly { terms, ..self.shape() }
    }

    /// Sets the given variable to zero.
    pub fn kill_var(&self, i: usize) -> TruncPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.exps()[i] == 0).map(|(m, c)| (m.clone(), c.clone())).collect();
        TruncPoly { terms, ..self.shape() }
    }

    /// Terms of degree in `lo..=hi`.
    pub fn degree_range(&self, lo: u32, hi: u32) -> TruncPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| (lo..=hi).contains(&m.degree()))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncPoly { terms, ..self.shape() }
    }
}

fn subst_rec(k: usize, terms: &[(&Mono, &Elem)], args: &[TruncPoly], powers: &mut Vec<Vec<TruncPoly>>) -> TruncPoly {
    let a0 = &args[0];
    if k == args.len() {
        let mut out = TruncPoly::zero(&a0.ring, a0.vars, a0.bound);
        for (_, c) in terms {
            out.add_term(&Mono::one(a0.vars), c);
        }
        return out;
    }
    let mut groups: BTreeMap<u32, Vec<(&Mono, &Elem)>> = BTreeMap::new();
    for &(m, c) in terms {
        groups.entry(m.exps()[k]).or_default().push((m, c));
    }
    let mut acc = TruncPoly::zero(&a0.ring, a0.vars, a0.bound);
    for (e, group) in groups {
        if e > a0.bound {
            break;
        }
        let inner = subst_rec(k + 1, &group, args, powers);
        if inner.is_zero() {
            continue;
        }
        while powers[k].len() <= e as usize {
            let next = powers[k].last().unwrap().mul_unchecked(&args[k]);
            powers[k].push(next);
        }
        let prod = if e == 0 { inner } else { powers[k][e as usize].mul_unchecked(&inner) };
        for (m, c) in &prod.terms {
            acc.add_term(m, c);
        }
    }
    acc
}

fn var_name(vars: usize, i: usize) -> String {
    if vars == 1 {
        "T".into()
    } else {
        format!("T{}", i + 1)
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mut coef = self.ring.format(c);
            let neg = coef.starts_with('-') && !coef[1..].contains(['+', '-', ' ']);
            if neg {
                coef.remove(0);
            }
            if coef.contains(['+', '-', ' ']) {
                coef = format!("({coef})");
            }
            let mono: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { var_name(self.vars, i) } else { format!("{}^{e}", var_name(self.vars, i)) })
                .collect();
            let term = match (mono.is_empty(), coef.as_str()) {
                (true, _) => coef,
                (false, "1") => mono.join("*"),
                _ => format!("{coef}*{}", mono.join("*")),
            };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(&term)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncPoly[{:?}, v={}, n={}]({self})", self.ring, self.vars, self.bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn z() -> Ring {
        Ring::Integers
    }

    fn poly1(ring: &Ring, bound: u32, coeffs: &[i64]) -> TruncPoly {
        TruncPoly::from_terms_truncating(
            ring,
            1,
            bound,
            coeffs.iter().enumerate().map(|(d, &c)| (Mono::from_slice(&[d as u32]), ring.from_i64(c))),
        )
    }

    fn poly2(ring: &Ring, bound: u32, terms: &[(u32, u32, i64)]) -> TruncPoly {
        TruncPoly::from_terms_truncating(ring, 2, bound, terms.iter().map(|&(a, b, c)| (Mono::from_slice(&[a, b]), ring.from_i64(c))))
    }

    #[test]
    fn arithmetic_examples() {
        let t = TruncPoly::var(&z(), 1, 1, 0);
        assert!(t.mul(&t).unwrap().is_zero());

        let x = TruncPoly::var(&z(), 2, 3, 0);
        let y = TruncPoly::var(&z(), 2, 3, 1);
        let s = x.add(&y).unwrap();
        assert_eq!(s.mul(&s).unwrap(), poly2(&z(), 3, &[(2, 0, 1), (1, 1, 2), (0, 2, 1)]));

        let f2 = Ring::finite_field(2, 1).unwrap();
        let u = poly1(&f2, 2, &[1, 1]);
        assert_eq!(u.mul(&u).unwrap(), poly1(&f2, 2, &[1, 0, 1]));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = TruncPoly::var(&z(), 1, 2, 0);
        let b = TruncPoly::var(&z(), 1, 3, 0);
        assert!(matches!(a.add(&b), Err(Error::ShapeMismatch(_))));
        let c = TruncPoly::var(&Ring::Rationals, 1, 2, 0);
        assert!(matches!(a.mul(&c), Err(Error::ShapeMismatch(_))));
        assert!(TruncPoly::from_terms(&z(), 1, 2, [(Mono::from_slice(&[3]), z().one())]).is_err());
    }

    #[test]
    fn substitution_examples() {
        let f = poly1(&z(), 2, &[0, 0, 1]);
        let x = TruncPoly::var(&z(), 2, 2, 0);
        let y = TruncPoly::var(&z(), 2, 2, 1);
        let got = f.substitute(&[x.add(&y).unwrap()]).unwrap();
        assert_eq!(got, poly2(&z(), 2, &[(2, 0, 1), (1, 1, 2), (0, 2, 1)]));

        let g = poly2(&z(), 3, &[(1, 0, 1), (0, 1, 1), (1, 1, 5), (2, 1, -3)]);
        let ids = [TruncPoly::var(&z(), 2, 3, 0), TruncPoly::var(&z(), 2, 3, 1)];
        assert_eq!(g.substitute(&ids).unwrap(), g);

        let f = poly1(&z(), 4, &[0, 1, 1]);
        let arg = poly1(&z(), 4, &[0, 1, 0, 1]);
        assert_eq!(f.compose(&arg).unwrap(), poly1(&z(), 4, &[0, 1, 1, 1, 2]));

        let bad = poly1(&z(), 4, &[1, 1]);
        assert_eq!(f.compose(&bad), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn inverse_examples() {
        let t = poly1(&z(), 3, &[0, 1]);
        assert_eq!(t.compositional_inverse().unwrap(), t);
        let f = poly1(&z(), 3, &[0, 1, 1]);
        assert_eq!(f.compositional_inverse().unwrap(), poly1(&z(), 3, &[0, 1, -1, 2]));
        let q = Ring::Rationals;
        let f = poly1(&q, 5, &[0, 2]);
        let half = q.parse("1/2").unwrap();
        assert_eq!(f.compositional_inverse().unwrap(), TruncPoly::monomial(&q, 1, 5, Mono::var(1, 0), half));
        assert_eq!(poly1(&z(), 3, &[0, 2]).compositional_inverse(), Err(Error::NonUnitLinearTerm));
    }

    #[test]
    fn coefficient_access_and_maps() {
        let f = poly2(&z(), 3, &[(1, 0, 1), (1, 1, 1)]);
        assert_eq!(f.homogeneous_part(2), poly2(&z(), 3, &[(1, 1, 1)]));
        assert_eq!(f.coeff(&[1, 1]), z().one());

        let f2 = Ring::finite_field(2, 1).unwrap();
        let g = poly2(&z(), 3, &[(1, 1, 2)]);
        let phi = RingHom::canonical(&z(), &f2).unwrap();
        assert!(g.map_coefficients(&phi).unwrap().is_zero());

        let zt = Ring::param_poly(z(), ["t1"]).unwrap();
        let t1 = zt.param(0).unwrap();
        let mut h = TruncPoly::var(&zt, 2, 2, 0).add(&TruncPoly::var(&zt, 2, 2, 1)).unwrap();
        h.add_term(&Mono::from_slice(&[1, 1]), &t1);
        let spec = RingHom::specialize(&zt, &z(), vec![z().one()]).unwrap();
        assert_eq!(h.map_coefficients(&spec).unwrap(), poly2(&z(), 2, &[(1, 0, 1), (0, 1, 1), (1, 1, 1)]));
    }

    #[test]
    fn display() {
        let f = poly2(&z(), 3, &[(1, 0, 1), (0, 1, 1), (1, 1, -2)]);
        assert_eq!(alloc::format!("{f}"), "T1 + T2 - 2*T1*T2");
    }

    fn ring_for(sel: u8) -> Ring {
        match sel % 4 {
            0 => Ring::Integers,
            1 => Ring::finite_field(3, 1).unwrap(),
            2 => Ring::mod_n(4).unwrap(),
            _ => Ring::finite_field(2, 2).unwrap(),
        }
    }

    fn series(ring: &Ring, bound: u32, cs: &[i64], linear_one: bool) -> TruncPoly {
        let mut v: Vec<i64> = core::iter::once(0).chain(cs.iter().copied()).collect();
        if linear_one {
            v[1] = 1;
        }
        poly1(ring, bound, &v)
    }

    proptest! {
        #[test]
        fn composition_is_associative(sel in 0u8..4, bound in 1u32..7,
                                      a in prop::collection::vec(-5i64..5, 7),
                                      b in prop::collection::vec(-5i64..5, 7),
                                      c in prop::collection::vec(-5i64..5, 7)) {
            let r = ring_for(sel);
            let (f, g, h) = (series(&r, bound, &a, false), series(&r, bound, &b, false), series(&r, bound, &c, false));
            let lhs = f.compose(&g.compose(&h).unwrap()).unwrap();
            let rhs = f.compose(&g).unwrap().compose(&h).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_round_trips(sel in 0u8..4, bound in 1u32..8, a in prop::collection::vec(-5i64..5, 8)) {
            let r = ring_for(sel);
            let f = series(&r, bound, &a, true);
            let g = f.compositional_inverse().unwrap();
            let t = TruncPoly::var(&r, 1, bound, 0);
            prop_assert_eq!(f.compose(&g).unwrap(), t.clone());
            prop_assert_eq!(g.compose(&f).unwrap(), t);
        }

        #[test]
        fn truncation_is_a_ring_map(sel in 0u8..4, bound in 2u32..8, cut in 0u32..8,
                                    a in prop::collection::vec((0u32..4, 0u32..4, -5i64..5), 6),
                                    b in prop::collection::vec((0u32..4, 0u32..4, -5i64..5), 6)) {
            let r = ring_for(sel);
            let cut = cut.min(bound);
            let (f, g) = (poly2(&r, bound, &a), poly2(&r, bound, &b));
            let lhs = f.mul(&g).unwrap().truncate(cut).unwrap();
            let rhs = f.truncate(cut).unwrap().mul(&g.truncate(cut).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduction_commutes_with_operations(bound in 1u32..7,
                                              a in prop::collection::vec(-9i64..9, 7),
                                              b in prop::collection::vec(-9i64..9, 7)) {
            let f3 = Ring::finite_field(3, 1).unwrap();
            let phi = RingHom::canonical(&Ring::Integers, &f3).unwrap();
            let (f, g) = (series(&z(), bound, &a, false), series(&z(), bound, &b, false));
            let m = |x: &TruncPoly| x.map_coefficients(&phi).unwrap();
            prop_assert_eq!(m(&f.mul(&g).unwrap()), m(&f).mul(&m(&g)).unwrap());
            prop_assert_eq!(m(&f.add(&g).unwrap()), m(&f).add(&m(&g)).unwrap());
            prop_assert_eq!(m(&f.compose(&g).unwrap()), m(&f).compose(&m(&g)).unwrap());
            prop_assert_eq!(m(&f.scale(&Ring::Integers.from_bigint(&BigInt::from(5)))), m(&f).scale(&f3.from_i64(5)));
        }
    }
}
