//! Exact coefficient rings: `Z`, `Q`, `Z/m`, `F_{p^k}` and flat polynomial
//! rings in named parameters over any of those.
//!
//! A [`Ring`] is a cheap-to-clone descriptor; an [`Elem`] is a bare payload
//! interpreted relative to a descriptor. Ring methods assume their arguments
//! belong to `self`. [`RingElement`] bundles the two for checked use.

mod fmt;
mod gf;
mod hom;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{bigint_mod, gcd_u64, inv_mod, is_prime, mul_mod};
use crate::error::{Error, Result};
use crate::mono::Mono;

pub use gf::{canonical_modulus, is_irreducible, GaloisField, MAX_FIELD_ORDER};
pub use hom::RingHom;

pub type PolyMap = BTreeMap<Mono, Elem>;

/// Payload of a ring element, always in canonical form: reduced fractions
/// with positive denominator, residues in `[0, m)`, field codes below `q`,
/// parameter polynomials without zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Res(u64),
    Gf(u32),
    Poly(PolyMap),
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Int(a) => a.is_zero(),
            Elem::Rat(a) => a.is_zero(),
            Elem::Res(a) => *a == 0,
            Elem::Gf(a) => *a == 0,
            Elem::Poly(a) => a.is_empty(),
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct ParamRing {
    base: Ring,
    params: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    Integers,
    Rationals,
    ModN(u64),
    FiniteField(Arc<GaloisField>),
    ParamPoly(Arc<ParamRing>),
}

impl Ring {
    pub fn mod_n(m: u64) -> Result<Ring> {
        if m == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        Ok(Ring::ModN(m))
    }

    /// `F_{p^k}` with its canonical modulus.
    pub fn finite_field(p: u64, k: u32) -> Result<Ring> {
        Ok(Ring::FiniteField(Arc::new(GaloisField::new(p, k)?)))
    }

    /// Polynomial ring over `base` in the given parameters. A polynomial
    /// base is flattened: its parameters come first.
    pub fn param_poly<S: Into<String>>(base: Ring, params: impl IntoIterator<Item = S>) -> Result<Ring> {
        let (base, mut all) = match base {
            Ring::ParamPoly(pr) => (pr.base.clone(), pr.params.clone()),
            other => (other, Vec::new()),
        };
        for p in params {
            let p = p.into();
            if p.is_empty() || all.contains(&p) {
                return Err(Error::InvalidArgument(alloc::format!("bad or repeated parameter name {p:?}")));
            }
            all.push(p);
        }
        Ok(Ring::ParamPoly(Arc::new(ParamRing { base, params: all })))
    }

    /// Parameter names `t1..tr`.
    pub fn standard_params(r: usize) -> Vec<String> {
        (1..=r).map(|i| alloc::format!("t{i}")).collect()
    }

    pub fn base(&self) -> &Ring {
        match self {
            Ring::ParamPoly(pr) => &pr.base,
            other => other,
        }
    }

    pub fn params(&self) -> &[String] {
        match self {
            Ring::ParamPoly(pr) => &pr.params,
            _ => &[],
        }
    }

    pub fn galois_field(&self) -> Option<&GaloisField> {
        match self {
            Ring::FiniteField(f) => Some(f),
            _ => None,
        }
    }

    /// Characteristic, with 0 for `Z` and `Q` (and polynomial rings over them).
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Integers | Ring::Rationals => 0,
            Ring::ModN(m) => *m,
            Ring::FiniteField(f) => f.p() as u64,
            Ring::ParamPoly(pr) => pr.base.characteristic(),
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Rationals | Ring::FiniteField(_) => true,
            Ring::ModN(m) => is_prime(*m),
            _ => false,
        }
    }

    pub fn is_q_algebra(&self) -> bool {
        matches!(self.base(), Ring::Rationals)
    }

    /// Number of elements, for finite rings.
    pub fn order(&self) -> Option<u64> {
        match self {
            Ring::ModN(m) => Some(*m),
            Ring::FiniteField(f) => Some(f.order() as u64),
            _ => None,
        }
    }

    /// All elements in canonical order, for finite rings.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match self {
            Ring::ModN(m) => Some((0..*m).map(Elem::Res).collect()),
            Ring::FiniteField(f) => Some(f.elements().map(Elem::Gf).collect()),
            _ => None,
        }
    }

    /// The `index`-th element in canonical order, for finite rings.
    pub fn element_at(&self, index: u64) -> Option<Elem> {
        match self {
            Ring::ModN(m) => Some(Elem::Res(index % m)),
            Ring::FiniteField(f) => Some(Elem::Gf((index % f.order() as u64) as u32)),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Integers => Elem::Int(BigInt::zero()),
            Ring::Rationals => Elem::Rat(BigRational::zero()),
            Ring::ModN(_) => Elem::Res(0),
            Ring::FiniteField(_) => Elem::Gf(0),
            Ring::ParamPoly(_) => Elem::Poly(PolyMap::new()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of an integer under the unique map `Z -> self`.
    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self {
            Ring::Integers => Elem::Int(n.clone()),
            Ring::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            Ring::ModN(m) => Elem::Res(bigint_mod(n, *m)),
            Ring::FiniteField(f) => Elem::Gf(bigint_mod(n, f.p() as u64) as u32),
            Ring::ParamPoly(pr) => constant_poly(pr.base.from_bigint(n), pr.params.len()),
        }
    }

    /// Embeds a base-ring element as a constant.
    pub fn constant(&self, c: Elem) -> Elem {
        match self {
            Ring::ParamPoly(pr) => constant_poly(c, pr.params.len()),
            _ => c,
        }
    }

    /// The `i`-th parameter (0-based).
    pub fn param(&self, i: usize) -> Result<Elem> {
        match self {
            Ring::ParamPoly(pr) if i < pr.params.len() => {
                let mut m = PolyMap::new();
                m.insert(Mono::var(pr.params.len(), i), pr.base.one());
                Ok(Elem::Poly(m))
            }
            _ => Err(Error::InvalidArgument(alloc::format!("no parameter with index {i}"))),
        }
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params().iter().position(|p| p == name)
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.is_zero()
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Ring::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Ring::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Ring::ModN(m), Elem::Res(x), Elem::Res(y)) => Elem::Res(((*x as u128 + *y as u128) % *m as u128) as u64),
            (Ring::FiniteField(f), Elem::Gf(x), Elem::Gf(y)) => Elem::Gf(f.add(*x, *y)),
            (Ring::ParamPoly(pr), Elem::Poly(x), Elem::Poly(y)) => {
                let mut out = x.clone();
                for (m, c) in y {
                    poly_add_term(&pr.base, &mut out, m, c);
                }
                Elem::Poly(out)
            }
            _ => panic!("element does not belong to {self:?}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Ring::Integers, Elem::Int(x)) => Elem::Int(-x),
            (Ring::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (Ring::ModN(m), Elem::Res(x)) => Elem::Res((m - x) % m),
            (Ring::FiniteField(f), Elem::Gf(x)) => Elem::Gf(f.neg(*x)),
            (Ring::ParamPoly(pr), Elem::Poly(x)) => {
                Elem::Poly(x.iter().map(|(m, c)| (m.clone(), pr.base.neg(c))).collect())
            }
            _ => panic!("element does not belong to {self:?}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Ring::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (Ring::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Ring::ModN(m), Elem::Res(x), Elem::Res(y)) => Elem::Res(mul_mod(*x, *y, *m)),
            (Ring::FiniteField(f), Elem::Gf(x), Elem::Gf(y)) => Elem::Gf(f.mul(*x, *y)),
            (Ring::ParamPoly(pr), Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(poly_mul(&pr.base, x, y)),
            _ => panic!("element does not belong to {self:?}"),
        }
    }

    /// `n * a` for an integer `n`.
    pub fn mul_int(&self, a: &Elem, n: &BigInt) -> Elem {
        self.mul(&self.from_bigint(n), a)
    }

    pub fn pow(&self, a: &Elem, e: u64) -> Elem {
        if let (Ring::FiniteField(f), Elem::Gf(x)) = (self, a) {
            return Elem::Gf(f.pow(*x, e));
        }
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Multiplicative inverse, when `a` is a unit.
    pub fn unit_inverse(&self, a: &Elem) -> Option<Elem> {
        match (self, a) {
            (Ring::Integers, Elem::Int(x)) => (x.abs().is_one()).then(|| Elem::Int(x.clone())),
            (Ring::Rationals, Elem::Rat(x)) => (!x.is_zero()).then(|| Elem::Rat(x.recip())),
            (Ring::ModN(m), Elem::Res(x)) => inv_mod(*x, *m).map(Elem::Res),
            (Ring::FiniteField(f), Elem::Gf(x)) => f.inv(*x).map(Elem::Gf),
            (Ring::ParamPoly(pr), Elem::Poly(x)) => poly_unit_inverse(pr, x).map(Elem::Poly),
            _ => panic!("element does not belong to {self:?}"),
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.unit_inverse(a).is_some()
    }

    /// `a / b`: multiplication by the inverse when `b` is a unit, otherwise
    /// exact division where the ring admits one.
    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        if let Some(inv) = self.unit_inverse(b) {
            return Ok(self.mul(a, &inv));
        }
        match (self, a, b) {
            (Ring::Integers, Elem::Int(x), Elem::Int(y)) => {
                if y.is_zero() || !(x % y).is_zero() {
                    return Err(Error::DivisionUndefined);
                }
                Ok(Elem::Int(x / y))
            }
            (Ring::ModN(m), Elem::Res(x), Elem::Res(y)) => {
                let g = gcd_u64(*y, *m);
                if *y == 0 || x % g != 0 {
                    return Err(Error::DivisionUndefined);
                }
                let m2 = m / g;
                let inv = inv_mod((y / g) % m2, m2).ok_or(Error::DivisionUndefined)?;
                Ok(Elem::Res(mul_mod(x / g, inv, m2)))
            }
            (Ring::ParamPoly(pr), Elem::Poly(x), Elem::Poly(y)) => poly_exact_div(&pr.base, x, y).map(Elem::Poly),
            _ => Err(Error::DivisionUndefined),
        }
    }

    /// Some `y` with `d * y = a`, if one exists. For `Z/m` and parameter
    /// rings over it the returned solution is the canonical one.
    pub fn div_by_integer(&self, a: &Elem, d: &BigInt) -> Option<Elem> {
        if d.is_zero() {
            return a.is_zero().then(|| self.zero());
        }
        match (self, a) {
            (Ring::Integers, Elem::Int(x)) => x.is_multiple_of(d).then(|| Elem::Int(x / d)),
            (Ring::Rationals, Elem::Rat(x)) => Some(Elem::Rat(x / BigRational::from_integer(d.clone()))),
            (Ring::ModN(m), Elem::Res(x)) => {
                let dm = bigint_mod(d, *m);
                let g = gcd_u64(dm, *m);
                if x % g != 0 {
                    return None;
                }
                let m2 = m / g;
                let inv = inv_mod((dm / g) % m2, m2)?;
                Some(Elem::Res(mul_mod(x / g, inv, m2)))
            }
            (Ring::FiniteField(f), Elem::Gf(x)) => {
                let dm = bigint_mod(d, f.p() as u64) as u32;
                if dm == 0 {
                    return (*x == 0).then_some(Elem::Gf(0));
                }
                Some(Elem::Gf(f.mul(*x, f.inv(dm)?)))
            }
            (Ring::ParamPoly(pr), Elem::Poly(x)) => {
                let mut out = PolyMap::new();
                for (m, c) in x {
                    let y = pr.base.div_by_integer(c, d)?;
                    if !y.is_zero() {
                        out.insert(m.clone(), y);
                    }
                }
                Some(Elem::Poly(out))
            }
            _ => panic!("element does not belong to {self:?}"),
        }
    }

    /// `a^(p^e)`; requires characteristic `p`.
    pub fn frobenius(&self, a: &Elem, p: u64, e: u32) -> Result<Elem> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.characteristic() != p {
            return Err(Error::CharacteristicMismatch);
        }
        let mut x = a.clone();
        for _ in 0..e {
            x = self.pow(&x, p);
        }
        Ok(x)
    }

    /// Checks that `a` is a canonical element of this ring.
    pub fn contains(&self, a: &Elem) -> bool {
        match (self, a) {
            (Ring::Integers, Elem::Int(_)) => true,
            (Ring::Rationals, Elem::Rat(x)) => x.denom().is_positive() && x.numer().gcd(x.denom()).is_one(),
            (Ring::ModN(m), Elem::Res(x)) => x < m,
            (Ring::FiniteField(f), Elem::Gf(x)) => *x < f.order(),
            (Ring::ParamPoly(pr), Elem::Poly(x)) => x
                .iter()
                .all(|(m, c)| m.vars() == pr.params.len() && !c.is_zero() && pr.base.contains(c)),
            _ => false,
        }
    }

    /// The integer `n` if `a` is the image of `n` with `|n|` small; used for
    /// compact output and for integer-valued checks.
    pub fn as_integer(&self, a: &Elem) -> Option<BigInt> {
        match (self, a) {
            (Ring::Integers, Elem::Int(x)) => Some(x.clone()),
            (Ring::Rationals, Elem::Rat(x)) => x.is_integer().then(|| x.to_integer()),
            (Ring::ModN(_), Elem::Res(x)) => Some(BigInt::from(*x)),
            (Ring::FiniteField(f), Elem::Gf(x)) => (*x < f.p()).then(|| BigInt::from(*x)),
            (Ring::ParamPoly(pr), Elem::Poly(x)) => {
                if x.is_empty() {
                    return Some(BigInt::zero());
                }
                let (m, c) = x.iter().next()?;
                (x.len() == 1 && m.is_one()).then(|| pr.base.as_integer(c)).flatten()
            }
            _ => None,
        }
    }

    /// For a parameter polynomial: its constant term in the base ring.
    pub fn constant_term(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Ring::ParamPoly(pr), Elem::Poly(x)) => {
                x.get(&Mono::one(pr.params.len())).cloned().unwrap_or_else(|| pr.base.zero())
            }
            _ => a.clone(),
        }
    }

    /// Whether the nonzero element `c` is nilpotent.
    fn is_nilpotent(&self, c: &Elem) -> bool {
        match (self, c) {
            (Ring::ModN(m), Elem::Res(x)) => {
                let mut rad = 1u64;
                let mut n = *m;
                let mut d = 2;
                while d * d <= n {
                    if n % d == 0 {
                        rad *= d;
                        while n % d == 0 {
                            n /= d;
                        }
                    }
                    d += 1;
                }
                if n > 1 {
                    rad *= n;
                }
                x % rad == 0
            }
            _ => c.is_zero(),
        }
    }

    pub fn to_u64(&self, a: &Elem) -> Option<u64> {
        self.as_integer(a).and_then(|n| n.to_u64())
    }
}

fn constant_poly(c: Elem, nparams: usize) -> Elem {
    let mut m = PolyMap::new();
    if !c.is_zero() {
        m.insert(Mono::one(nparams), c);
    }
    Elem::Poly(m)
}

fn poly_add_term(base: &Ring, out: &mut PolyMap, m: &Mono, c: &Elem) {
    if c.is_zero() {
        return;
    }
    if let Some(slot) = out.get_mut(m) {
        *slot = base.add(slot, c);
        if slot.is_zero() {
            out.remove(m);
        }
    } else {
        out.insert(m.clone(), c.clone());
    }
}

fn poly_mul(base: &Ring, x: &PolyMap, y: &PolyMap) -> PolyMap {
    let mut out = PolyMap::new();
    for (mx, cx) in x {
        for (my, cy) in y {
            let c = base.mul(cx, cy);
            poly_add_term(base, &mut out, &mx.mul(my), &c);
        }
    }
    out
}

fn poly_unit_inverse(pr: &ParamRing, x: &PolyMap) -> Option<PolyMap> {
    let nparams = pr.params.len();
    let one = Mono::one(nparams);
    let c0 = x.get(&one)?;
    let c0_inv = pr.base.unit_inverse(c0)?;
    let mut rest = PolyMap::new();
    for (m, c) in x {
        if *m != one {
            if !pr.base.is_nilpotent(c) {
                return None;
            }
            rest.insert(m.clone(), pr.base.mul(c, &c0_inv));
        }
    }
    // x = c0 (1 + rest) with rest nilpotent: invert the geometric series.
    let neg_rest: PolyMap = rest.iter().map(|(m, c)| (m.clone(), pr.base.neg(c))).collect();
    let mut sum = PolyMap::new();
    sum.insert(one.clone(), pr.base.one());
    let mut power = sum.clone();
    while !power.is_empty() {
        power = poly_mul(&pr.base, &power, &neg_rest);
        for (m, c) in &power {
            poly_add_term(&pr.base, &mut sum, m, c);
        }
    }
    let c0_inv_poly: PolyMap = [(one, c0_inv)].into_iter().collect();
    Some(poly_mul(&pr.base, &sum, &c0_inv_poly))
}

/// Exact multivariate division using leading terms in the graded order.
fn poly_exact_div(base: &Ring, x: &PolyMap, y: &PolyMap) -> Result<PolyMap> {
    let (ly_m, ly_c) = y.iter().next_back().ok_or(Error::DivisionUndefined)?;
    let mut rem = x.clone();
    let mut quot = PolyMap::new();
    while let Some((lm, lc)) = rem.iter().next_back() {
        let qm = lm.div(ly_m).ok_or(Error::DivisionUndefined)?;
        let qc = base.div(lc, ly_c)?;
        let term: PolyMap = [(qm.clone(), qc.clone())].into_iter().collect();
        let sub = poly_mul(base, &term, y);
        for (m, c) in &sub {
            poly_add_term(base, &mut rem, m, &base.neg(c));
        }
        poly_add_term(base, &mut quot, &qm, &qc);
    }
    Ok(quot)
}

/// An element together with its ring, for checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub ring: Ring,
    pub value: Elem,
}

impl RingElement {
    pub fn new(ring: Ring, value: Elem) -> Result<Self> {
        if !ring.contains(&value) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(RingElement { ring, value })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::DescriptorMismatch);
        }
        Ok(())
    }

    fn wrap(&self, value: Elem) -> Self {
        RingElement { ring: self.ring.clone(), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.ring.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.ring.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.ring.mul(&self.value, &other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.ring.div(&self.value, &other.value)?))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.ring.neg(&self.value))
    }

    /// The inverse when this element is a unit.
    pub fn is_unit(&self) -> Option<Self> {
        self.ring.unit_inverse(&self.value).map(|v| self.wrap(v))
    }

    pub fn frobenius(&self, p: u64, e: u32) -> Result<Self> {
        Ok(self.wrap(self.ring.frobenius(&self.value, p, e)?))
    }
}

impl core::fmt::Display for RingElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.ring.format(&self.value))
    }
}

#[cfg(test)]
mod tests;
