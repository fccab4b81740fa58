//! Bud laws, their homomorphisms, `[m]`-series and height.

use alloc::sync::Arc;

use crate::arith::{is_prime, log_exact};
use crate::error::{Error, Result};
use crate::mono::Mono;
use crate::ring::{Elem, Ring, RingHom};
use crate::truncpoly::TruncPoly;

/// An `n`-bud law `F(T1, T2)` with `n` the truncation bound of `F`.
#[derive(Clone)]
pub struct BudLaw {
    f: Arc<TruncPoly>,
    validated: bool,
}

impl PartialEq for BudLaw {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.f, &other.f) || self.f == other.f
    }
}

impl Eq for BudLaw {}

impl core::fmt::Debug for BudLaw {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "BudLaw[n={}]({})", self.n(), self.f)
    }
}

impl BudLaw {
    /// Checks identity, associativity and commutativity, in that order,
    /// reporting the first offending monomial.
    pub fn validate(f: TruncPoly) -> Result<BudLaw> {
        if f.vars() != 2 {
            return Err(Error::ShapeMismatch("a bud law has two variables".into()));
        }
        if f.bound() == 0 {
            return Err(Error::ShapeMismatch("a bud law has order at least 1".into()));
        }
        check_identity(&f)?;
        check_assoc(&f)?;
        check_comm(&f)?;
        Ok(BudLaw { f: Arc::new(f), validated: true })
    }

    /// Wraps `f` without checking the axioms. Such a law reports
    /// `is_validated() == false` until passed through [`BudLaw::revalidate`].
    pub fn unchecked(f: TruncPoly) -> Result<BudLaw> {
        if f.vars() != 2 || f.bound() == 0 {
            return Err(Error::ShapeMismatch("a bud law is a two-variable polynomial of order at least 1".into()));
        }
        Ok(BudLaw { f: Arc::new(f), validated: false })
    }

    /// For laws that are valid by construction.
    pub(crate) fn trusted(f: TruncPoly) -> BudLaw {
        debug_assert_eq!(f.vars(), 2);
        BudLaw { f: Arc::new(f), validated: true }
    }

    pub fn revalidate(&self) -> Result<BudLaw> {
        if self.validated {
            return Ok(self.clone());
        }
        BudLaw::validate((*self.f).clone())
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn additive(ring: &Ring, n: u32) -> BudLaw {
        let f = TruncPoly::var(ring, 2, n, 0).add(&TruncPoly::var(ring, 2, n, 1)).unwrap();
        BudLaw::trusted(f)
    }

    /// `T1 + T2 + T1 T2`.
    pub fn multiplicative(ring: &Ring, n: u32) -> BudLaw {
        let mut f = TruncPoly::var(ring, 2, n, 0).add(&TruncPoly::var(ring, 2, n, 1)).unwrap();
        f.add_term(&Mono::from_slice(&[1, 1]), &ring.one());
        BudLaw::trusted(f)
    }

    pub fn poly(&self) -> &TruncPoly {
        &self.f
    }

    pub fn ring(&self) -> &Ring {
        self.f.ring()
    }

    pub fn n(&self) -> u32 {
        self.f.bound()
    }

    /// `F(a(T), b(T))` for one-variable series without constant term.
    pub fn sum(&self, a: &TruncPoly, b: &TruncPoly) -> Result<TruncPoly> {
        self.f.substitute(&[a.clone(), b.clone()])
    }

    /// The inverse series `i(T)` with `F(T, i(T)) = 0`.
    pub fn inverse_series(&self) -> Endo {
        let r = self.ring();
        let n = self.n();
        let t = TruncPoly::var(r, 1, n, 0);
        let mut i = t.neg();
        for m in 2..=n {
            let c = self.f.substitute(&[t.clone(), i.clone()]).unwrap().coeff1(m);
            if !c.is_zero() {
                i.add_term(&Mono::from_slice(&[m]), &r.neg(&c));
            }
        }
        Endo::trusted(self.clone(), self.clone(), i)
    }

    /// `[m](T)`, by doubling and adding.
    pub fn m_series(&self, m: u64) -> Endo {
        let r = self.ring();
        let n = self.n();
        let t = TruncPoly::var(r, 1, n, 0);
        let mut acc = TruncPoly::zero(r, 1, n);
        for bit in (0..64 - m.leading_zeros()).rev() {
            acc = self.f.substitute(&[acc.clone(), acc.clone()]).unwrap();
            if (m >> bit) & 1 == 1 {
                acc = self.f.substitute(&[acc, t.clone()]).unwrap();
            }
        }
        debug_assert_eq!(acc.coeff1(1), r.from_i64(m as i64));
        Endo::trusted(self.clone(), self.clone(), acc)
    }

    /// Classifies the lowest term of `[p](T)`.
    pub fn height(&self, p: u64) -> Result<HeightClass> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let r = self.ring();
        let ps = self.m_series(p);
        let ps = ps.series();
        let Some(d) = ps.lowest_degree() else {
            if (self.n() as u64) < p {
                return Err(Error::TruncationTooShallow { n: self.n(), p });
            }
            return Ok(HeightClass::PSeriesZero);
        };
        let c = ps.coeff1(d);
        match log_exact(d as u64, p) {
            Some(h) if r.is_unit(&c) => {
                if r.characteristic() == p && r.is_field() {
                    let step = d;
                    if let Some((m, _)) = ps.terms().find(|(m, _)| m.exps()[0] % step != 0) {
                        return Err(Error::ShapeViolation(alloc::format!(
                            "[p]-series has a term of degree {} outside multiples of {step}",
                            m.exps()[0]
                        )));
                    }
                }
                Ok(HeightClass::Height { h, leading: c })
            }
            _ => Ok(HeightClass::Undefined { degree: d, coeff: c }),
        }
    }

    /// Transport of structure along `f`: `G = f(F(f^{-1}(T1), f^{-1}(T2)))`.
    pub fn conjugate(&self, f: &TruncPoly) -> Result<BudLaw> {
        if f.vars() != 1 {
            return Err(Error::ShapeMismatch("coordinate change has one variable".into()));
        }
        self.f.same_shape(&f.in_var(2, 0))?;
        let g = f.compositional_inverse()?;
        let inner = self.f.substitute(&[g.in_var(2, 0), g.in_var(2, 1)])?;
        let out = f.substitute(&[inner])?;
        Ok(BudLaw { f: Arc::new(out), validated: self.validated })
    }

    /// The order-`m` truncation.
    pub fn truncate_law(&self, m: u32) -> Result<BudLaw> {
        if m == 0 {
            return Err(Error::ShapeMismatch("a bud law has order at least 1".into()));
        }
        Ok(BudLaw { f: Arc::new(self.f.truncate(m)?), validated: self.validated })
    }

    /// The same law read over `ring` through the canonical map.
    pub fn change_ring(&self, ring: &Ring) -> Result<BudLaw> {
        Ok(BudLaw { f: Arc::new(self.f.change_ring(ring)?), validated: self.validated })
    }

    pub fn map_coefficients(&self, phi: &RingHom) -> Result<BudLaw> {
        Ok(BudLaw { f: Arc::new(self.f.map_coefficients(phi)?), validated: self.validated })
    }

    /// Zero-extension to order `n + 1`; not a law in general.
    pub(crate) fn lifted_poly(&self) -> TruncPoly {
        self.f.with_bound(self.n() + 1)
    }
}

fn check_identity(f: &TruncPoly) -> Result<()> {
    let r = f.ring();
    for (m, c) in f.terms() {
        let e = m.exps();
        if e[0] != 0 && e[1] != 0 {
            continue;
        }
        let ok = (e[0] + e[1] == 1) && r.is_one(c);
        if !ok {
            return Err(Error::IdentityFail { witness: m.clone() });
        }
    }
    for i in 0..2 {
        let m = Mono::var(2, i);
        if f.coefficient(&m).is_zero() {
            return Err(Error::IdentityFail { witness: m });
        }
    }
    Ok(())
}

fn check_comm(f: &TruncPoly) -> Result<()> {
    for (m, c) in f.terms() {
        if f.coefficient(&m.swapped(0, 1)) != *c {
            let w = core::cmp::min(m.clone(), m.swapped(0, 1));
            return Err(Error::CommFail { witness: w });
        }
    }
    Ok(())
}

fn check_assoc(f: &TruncPoly) -> Result<()> {
    let (lhs, rhs) = assoc_sides(f)?;
    if let Some(w) = first_difference(&lhs, &rhs) {
        return Err(Error::AssocFail { witness: w });
    }
    Ok(())
}

/// `F(F(x, y), z)` and `F(x, F(y, z))` in three variables at the bound of `f`.
pub(crate) fn assoc_sides(f: &TruncPoly) -> Result<(TruncPoly, TruncPoly)> {
    let r = f.ring();
    let n = f.bound();
    let x = TruncPoly::var(r, 3, n, 0);
    let y = TruncPoly::var(r, 3, n, 1);
    let z = TruncPoly::var(r, 3, n, 2);
    let xy = f.substitute(&[x.clone(), y.clone()])?;
    let yz = f.substitute(&[y, z.clone()])?;
    Ok((f.substitute(&[xy, z])?, f.substitute(&[x, yz])?))
}

fn first_difference(a: &TruncPoly, b: &TruncPoly) -> Option<Mono> {
    let d = a.sub(b).ok()?;
    let first = d.terms().next().map(|(m, _)| m.clone());
    first
}

/// `f(F(T1, T2)) - G(f(T1), f(T2))`.
pub fn defect(f: &TruncPoly, x: &BudLaw, y: &BudLaw) -> Result<TruncPoly> {
    if x.ring() != y.ring() || x.n() != y.n() {
        return Err(Error::ShapeMismatch("laws over different rings or orders".into()));
    }
    if f.vars() != 1 || f.bound() != x.n() || f.ring() != x.ring() {
        return Err(Error::ShapeMismatch("series does not match the laws".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let lhs = f.substitute(core::slice::from_ref(x.poly()))?;
    let rhs = y.poly().substitute(&[f.in_var(2, 0), f.in_var(2, 1)])?;
    lhs.sub(&rhs)
}

/// Whether `f` is a homomorphism `x -> y`.
pub fn hom_check(f: &TruncPoly, x: &BudLaw, y: &BudLaw) -> bool {
    defect(f, x, y).map(|d| d.is_zero()).unwrap_or(false)
}

/// A verified homomorphism between two laws of the same ring and order.
#[derive(Clone, PartialEq, Eq)]
pub struct Endo {
    source: BudLaw,
    target: BudLaw,
    f: TruncPoly,
}

impl core::fmt::Debug for Endo {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Endo({})", self.f)
    }
}

impl Endo {
    pub fn new(source: &BudLaw, target: &BudLaw, f: TruncPoly) -> Result<Endo> {
        let d = defect(&f, source, target)?;
        if let Some((m, _)) = d.terms().next() {
            return Err(Error::NotHomomorphism { witness: m.clone() });
        }
        Ok(Endo { source: source.clone(), target: target.clone(), f })
    }

    pub(crate) fn trusted(source: BudLaw, target: BudLaw, f: TruncPoly) -> Endo {
        Endo { source, target, f }
    }

    pub fn identity(x: &BudLaw) -> Endo {
        Endo::trusted(x.clone(), x.clone(), TruncPoly::var(x.ring(), 1, x.n(), 0))
    }

    pub fn zero(x: &BudLaw, y: &BudLaw) -> Endo {
        Endo::trusted(x.clone(), y.clone(), TruncPoly::zero(x.ring(), 1, x.n()))
    }

    pub fn series(&self) -> &TruncPoly {
        &self.f
    }

    pub fn into_series(self) -> TruncPoly {
        self.f
    }

    pub fn source(&self) -> &BudLaw {
        &self.source
    }

    pub fn target(&self) -> &BudLaw {
        &self.target
    }

    /// `f +_G g = G(f(T), g(T))`.
    pub fn add(&self, other: &Endo) -> Result<Endo> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::LawMismatch);
        }
        let s = self.target.poly().substitute(&[self.f.clone(), other.f.clone()])?;
        Endo::new(&self.source, &self.target, s)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endo) -> Result<Endo> {
        if other.target != self.source {
            return Err(Error::LawMismatch);
        }
        let s = self.f.compose(&other.f)?;
        Endo::new(&other.source, &self.target, s)
    }

    /// Whether the linear coefficient is a unit.
    pub fn is_iso(&self) -> bool {
        self.f.ring().is_unit(&self.f.coeff1(1))
    }

    /// The inverse isomorphism.
    pub fn inverse(&self) -> Result<Endo> {
        let g = self.f.compositional_inverse()?;
        Endo::new(&self.target, &self.source, g)
    }
}

/// `f +_F g` for endomorphisms of one law.
pub fn end_ring_add(f: &Endo, g: &Endo) -> Result<Endo> {
    f.add(g)
}

/// `f ∘ g` for endomorphisms of one law.
pub fn end_ring_mul(f: &Endo, g: &Endo) -> Result<Endo> {
    if f.source != f.target || g.source != g.target {
        return Err(Error::LawMismatch);
    }
    f.compose(g)
}

/// The lowest term of `[p](T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeightClass {
    /// Lowest term `leading * T^(p^h)` with `leading` a unit.
    Height { h: u32, leading: Elem },
    PSeriesZero,
    /// Lowest term `coeff * T^degree` that is not of height form.
    Undefined { degree: u32, coeff: Elem },
}
