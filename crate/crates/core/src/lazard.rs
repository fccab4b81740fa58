//! Symmetric 2-cocycles, one-degree extension of bud laws, the universal
//! bud law and classification by its parameters.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{bezout, binomial, lambda_of};
use crate::budlaw::{assoc_sides, BudLaw};
use crate::error::{Error, Result};
use crate::mono::Mono;
use crate::ring::{Elem, Ring, RingHom};
use crate::smith::{smith, Smith};
use crate::truncpoly::TruncPoly;

pub use crate::budlaw::defect;

/// Integer coefficients of `C_m`, indexed by the exponent of `T1` (`1..m`).
fn c_coeffs(m: u32) -> Vec<BigInt> {
    let lambda = BigInt::from(lambda_of(m as u64));
    (1..m).map(|a| binomial(m as u64, a as u64) / &lambda).collect()
}

/// `B_m = (T1 + T2)^m - T1^m - T2^m` at bound `m`.
pub fn b_poly(m: u32, ring: &Ring) -> TruncPoly {
    let terms = (1..m).map(|a| (Mono::from_slice(&[a, m - a]), ring.from_bigint(&binomial(m as u64, a as u64))));
    TruncPoly::from_terms_truncating(ring, 2, m, terms)
}

/// `C_m = B_m / λ(m)`, divided over `Z` and then mapped into `ring`.
pub fn c_poly(m: u32, ring: &Ring) -> TruncPoly {
    let terms = (1..m).zip(c_coeffs(m)).map(|(a, c)| (Mono::from_slice(&[a, m - a]), ring.from_bigint(&c)));
    TruncPoly::from_terms_truncating(ring, 2, m, terms)
}

/// Whether `p` is homogeneous of degree `m` (or zero).
fn homogeneous_of(p: &TruncPoly, m: u32) -> bool {
    p.terms().all(|(e, _)| e.degree() == m)
}

/// `P(y,z) - P(x+y,z) + P(x,y+z) - P(x,y)` in three variables.
pub fn coboundary(p: &TruncPoly, bound: u32) -> Result<TruncPoly> {
    let r = p.ring();
    let p = p.with_bound(bound);
    let x = TruncPoly::var(r, 3, bound, 0);
    let y = TruncPoly::var(r, 3, bound, 1);
    let z = TruncPoly::var(r, 3, bound, 2);
    let xy = x.add(&y)?;
    let yz = y.add(&z)?;
    let a = p.substitute(&[y.clone(), z.clone()])?;
    let b = p.substitute(&[xy, z])?;
    let c = p.substitute(&[x.clone(), yz])?;
    let d = p.substitute(&[x, y])?;
    a.sub(&b)?.add(&c)?.sub(&d)
}

/// Symmetric and killed by the coboundary. `p` must be homogeneous.
pub fn is_spc(p: &TruncPoly) -> bool {
    let Some(m) = p.lowest_degree() else { return true };
    if p.vars() != 2 || !homogeneous_of(p, m) {
        return false;
    }
    if *p != p.swap_vars(0, 1) {
        return false;
    }
    coboundary(p, m).map(|d| d.is_zero()).unwrap_or(false)
}

/// Bézout vector `u` with `Σ u_a c_a = 1` for the coefficients of `C_m`.
pub fn c_bezout(m: u32) -> Vec<BigInt> {
    let (g, u) = bezout(&c_coeffs(m));
    debug_assert!(g == BigInt::from(1));
    u
}

/// The unique `a` with `p = a C_m`, for `p` homogeneous of degree `m`.
pub fn spc_multiplier(p: &TruncPoly, m: u32) -> Result<Elem> {
    let r = p.ring();
    if m < 2 || p.vars() != 2 || !homogeneous_of(p, m) {
        return Err(Error::NotMultipleOfC { degree: m });
    }
    let u = c_bezout(m);
    let mut a = r.zero();
    for (i, ui) in u.iter().enumerate() {
        let c = p.coeff(&[i as u32 + 1, m - 1 - i as u32]);
        if !c.is_zero() && !ui.is_zero() {
            a = r.add(&a, &r.mul_int(&c, ui));
        }
    }
    let expect = c_poly(m, r).scale(&a).with_bound(p.bound());
    if expect != *p {
        return Err(Error::NotMultipleOfC { degree: m });
    }
    Ok(a)
}

/// The coboundary matrix in degree `deg` over `Z`: rows are the degree-`deg`
/// monomials in three variables, columns the symmetric cochains
/// `x^a y^b + x^b y^a`, `1 <= a <= b`, `a + b = deg`.
struct CoboundarySystem {
    rows: Vec<Mono>,
    basis: Vec<(u32, u32)>,
    snf: Smith,
}

impl CoboundarySystem {
    fn new(deg: u32) -> Result<Self> {
        let z = Ring::Integers;
        let basis: Vec<(u32, u32)> = (1..=deg / 2).map(|a| (a, deg - a)).collect();
        let mut rows = Vec::new();
        for i in (0..=deg).rev() {
            for j in (0..=deg - i).rev() {
                rows.push(Mono::from_slice(&[i, j, deg - i - j]));
            }
        }
        let mut mat = vec![vec![BigInt::zero(); basis.len()]; rows.len()];
        for (k, g) in basis.iter().map(|&(a, b)| basis_cochain(&z, deg, a, b)).enumerate() {
            let d = coboundary(&g, deg)?;
            for (i, m) in rows.iter().enumerate() {
                if let Elem::Int(c) = d.coefficient(m) {
                    mat[i][k] = c;
                }
            }
        }
        let snf = smith(&mat, basis.len());
        Ok(CoboundarySystem { rows, basis, snf })
    }
}

fn basis_cochain(ring: &Ring, bound: u32, a: u32, b: u32) -> TruncPoly {
    let mut g = TruncPoly::monomial(ring, 2, bound, Mono::from_slice(&[a, b]), ring.one());
    if a != b {
        g.add_term(&Mono::from_slice(&[b, a]), &ring.one());
    }
    g
}

/// An `(n+1)`-bud law restricting to `x`.
pub fn extend_one_degree(x: &BudLaw) -> Result<BudLaw> {
    let r = x.ring();
    let deg = x.n() + 1;
    let f = x.lifted_poly();
    let (lhs, rhs) = assoc_sides(&f)?;
    let d = lhs.sub(&rhs)?.homogeneous_part(deg);
    if d.is_zero() {
        return Ok(BudLaw::trusted(f));
    }
    let sys = CoboundarySystem::new(deg)?;
    let b: Vec<Elem> = sys.rows.iter().map(|m| d.coefficient(m)).collect();
    let sol = sys.snf.solve(r, &b).ok_or(Error::NoExtension { degree: deg })?;
    let mut g = f;
    for (&(a, bb), c) in sys.basis.iter().zip(&sol) {
        if c.is_zero() {
            continue;
        }
        g.add_term(&Mono::from_slice(&[a, bb]), c);
        if a != bb {
            g.add_term(&Mono::from_slice(&[bb, a]), c);
        }
    }
    BudLaw::validate(g).map_err(|_| Error::NoExtension { degree: deg })
}

/// The universal `n`-bud law over `Z[t1..t_{n-1}]`.
#[derive(Clone, Debug)]
pub struct UniversalLaw {
    pub n: u32,
    pub law: BudLaw,
}

pub fn universal_law(n: u32) -> Result<UniversalLaw> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let mut law = BudLaw::additive(&Ring::param_poly(Ring::Integers, Vec::<String>::new())?, 1);
    for m in 2..=n {
        let ext = extend_one_degree(&law)?;
        let next = Ring::param_poly(Ring::Integers, Ring::standard_params(m as usize - 1))?;
        let ext = ext.change_ring(&next)?;
        let t = next.param(m as usize - 2)?;
        let shifted = ext.poly().add(&c_poly(m, &next).scale(&t))?;
        law = BudLaw::trusted(shifted);
    }
    Ok(UniversalLaw { n, law })
}

impl UniversalLaw {
    pub fn ring(&self) -> &Ring {
        self.law.ring()
    }

    /// The law obtained by sending `t_i` to `values[i-1]` in `target`.
    pub fn specialize(&self, target: &Ring, values: &[Elem]) -> Result<BudLaw> {
        let phi = RingHom::specialize(self.ring(), target, values.to_vec())?;
        self.law.map_coefficients(&phi)
    }
}

/// Parameters `τ_1..τ_{n-1}` with `universal_law(n).specialize(τ) = x`.
pub fn classify(x: &BudLaw) -> Result<Vec<Elem>> {
    let r = x.ring();
    let n = x.n();
    let u = universal_law(n)?;
    let mut tau: Vec<Elem> = Vec::new();
    for m in 2..=n {
        let um = u.law.truncate_law(m)?;
        let mut values = tau.clone();
        values.resize(n as usize - 1, r.zero());
        let phi = RingHom::specialize(u.ring(), r, values)?;
        let g = um.poly().map_coefficients(&phi)?;
        let diff = x.poly().truncate(m)?.sub(&g)?;
        tau.push(spc_multiplier(&diff, m)?);
    }
    Ok(tau)
}

/// One elimination step in [`universal_height_ge`].
#[derive(Clone, Debug)]
pub struct Elimination {
    pub j: u32,
    pub param: String,
    /// The scalar `(p^(p^j - 1) - 1) mod p` found in front of the parameter.
    pub scalar: Elem,
}

/// Universal law of height at least `h` over `F_p[remaining t's]`.
#[derive(Clone, Debug)]
pub struct HeightGeLaw {
    pub law: BudLaw,
    pub eliminations: Vec<Elimination>,
    /// Coefficients `a_1..a_{h-1}` of `T^(p^j)` in `[p]` after elimination.
    pub vanishing: Vec<Elem>,
    /// `a_j` for `j = h..` while `p^j <= n`, with their leading scalars checked.
    pub remaining: Vec<Elem>,
}

pub fn universal_height_ge(p: u64, h: u32, n: u32) -> Result<HeightGeLaw> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let ph = p.checked_pow(h).filter(|&x| x <= n as u64);
    if h == 0 || ph.is_none() {
        return Err(Error::InvalidArgument(format!("need h >= 1 and n >= p^h, got h = {h}, n = {n}")));
    }
    let fp = Ring::finite_field(p, 1)?;
    let u = universal_law(n)?;
    let mut ring = Ring::param_poly(fp.clone(), Ring::standard_params(n as usize - 1))?;
    let mut law = u.law.change_ring(&ring)?;
    let mut eliminations = Vec::new();
    let mut remaining = Vec::new();
    let mut j = 1u32;
    while p.pow(j) <= n as u64 {
        let deg = p.pow(j) as u32;
        let ps = law.m_series(p);
        let a = ps.series().coeff1(deg);
        let name = format!("t{}", deg - 1);
        let idx = ring.param_index(&name).ok_or_else(|| Error::ShapeViolation(format!("{name} missing")))?;
        let scalar = fp.from_bigint(&(BigInt::from(p).pow(deg - 1) - 1));
        let Elem::Poly(terms) = &a else { unreachable!() };
        let lead = Mono::var(ring.params().len(), idx);
        for (mono, c) in terms {
            let later = mono.exps().iter().enumerate().any(|(i, &e)| e > 0 && param_number(&ring, i) >= deg - 1);
            if later && (*mono != lead || *c != scalar) {
                return Err(Error::ShapeViolation(format!("a_{j} has term {mono:?} beyond the expected shape")));
            }
        }
        if terms.get(&lead) != Some(&scalar) || !fp.is_unit(&scalar) {
            return Err(Error::ShapeViolation(format!("a_{j} lacks the unit leading term in {name}")));
        }
        if j >= h {
            remaining.push(a);
            j += 1;
            continue;
        }
        // t = -(a - s t) / s
        let s_inv = fp.unit_inverse(&scalar).unwrap();
        let rest = ring.sub(&a, &ring.mul(&ring.constant(scalar.clone()), &ring.param(idx)?));
        let value_full = ring.mul(&ring.neg(&rest), &ring.constant(s_inv));
        let keep: Vec<String> = ring.params().iter().filter(|p| **p != name).cloned().collect();
        let next = Ring::param_poly(fp.clone(), keep)?;
        let mut values = Vec::new();
        for (i, pname) in ring.params().iter().enumerate() {
            if i == idx {
                values.push(strip_param(&ring, &value_full, idx, &next)?);
            } else {
                values.push(next.param(next.param_index(pname).unwrap())?);
            }
        }
        let phi = RingHom::specialize(&ring, &next, values)?;
        law = law.map_coefficients(&phi)?;
        eliminations.push(Elimination { j, param: name, scalar });
        ring = next;
        j += 1;
    }
    let ps = law.m_series(p);
    let vanishing: Vec<Elem> = (1..h).map(|j| ps.series().coeff1(p.pow(j) as u32)).collect();
    if vanishing.iter().any(|a| !a.is_zero()) {
        return Err(Error::ShapeViolation("eliminated coefficients do not vanish".into()));
    }
    Ok(HeightGeLaw { law, eliminations, vanishing, remaining })
}

/// The integer `k` of the parameter named `tk` at index `i`.
fn param_number(ring: &Ring, i: usize) -> u32 {
    ring.params()[i][1..].parse().unwrap_or(u32::MAX)
}

/// Rewrites an element free of parameter `idx` into the ring `next` that
/// lacks it.
fn strip_param(ring: &Ring, v: &Elem, idx: usize, next: &Ring) -> Result<Elem> {
    let Elem::Poly(terms) = v else { unreachable!() };
    let mut out = next.zero();
    for (m, c) in terms {
        if m.exps()[idx] != 0 {
            return Err(Error::ShapeViolation("solved value involves its own parameter".into()));
        }
        let mut term = next.constant(c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            if i != idx && e > 0 {
                let k = next.param_index(&ring.params()[i]).unwrap();
                term = next.mul(&term, &next.pow(&next.param(k)?, e as u64));
            }
        }
        out = next.add(&out, &term);
    }
    Ok(out)
}

/// Integer `(k^m - k) / λ(m)`.
pub fn difference_factor(k: u64, m: u32) -> BigInt {
    let km = BigInt::from(k).pow(m);
    (km - BigInt::from(k)) / BigInt::from(lambda_of(m as u64))
}

/// `λ(m)` as a small integer, for callers outside the crate.
pub fn lambda(m: u32) -> u64 {
    lambda_of(m as u64)
}

#[cfg(test)]
mod tests;
