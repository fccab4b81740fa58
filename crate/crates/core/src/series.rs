//! Dense kernels over a finite field, on element codes.
//!
//! One-variable series are `Vec<u32>` of length `n + 1` indexed by degree;
//! two-variable ones are `(n + 1)^2` arrays indexed by `a * (n + 1) + b`.
//! The generic [`TruncPoly`] routines compute the same quantities.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::{bigint_mod, lambda_of};
use crate::budlaw::BudLaw;
use crate::error::{Error, Result};
use crate::lazard::c_bezout;
use crate::mono::Mono;
use crate::ring::{Elem, GaloisField, Ring};
use crate::truncpoly::TruncPoly;

#[derive(Clone, Debug)]
pub struct Fq {
    f: Arc<GaloisField>,
}

impl Fq {
    pub fn of(ring: &Ring) -> Option<Fq> {
        match ring {
            Ring::FiniteField(f) => Some(Fq { f: f.clone() }),
            _ => None,
        }
    }

    pub fn field(&self) -> &GaloisField {
        &self.f
    }

    pub fn ring(&self) -> Ring {
        Ring::FiniteField(self.f.clone())
    }

    pub fn p(&self) -> u64 {
        self.f.p() as u64
    }

    pub fn q(&self) -> u32 {
        self.f.order()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.f.k() == 1 {
            let s = a + b;
            if s >= self.f.p() {
                s - self.f.p()
            } else {
                s
            }
        } else {
            self.f.add(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.f.neg(a)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.f.mul(a, b)
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        self.f.inv(a)
    }

    pub fn from_int(&self, n: &BigInt) -> u32 {
        bigint_mod(n, self.p()) as u32
    }

    /// `a * b` truncated past degree `n`.
    pub fn mul1(&self, a: &[u32], b: &[u32], n: usize) -> Vec<u32> {
        let mut out = vec![0u32; n + 1];
        for (i, &x) in a.iter().enumerate().take(n + 1) {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(n + 1 - i) {
                if y != 0 {
                    out[i + j] = self.add(out[i + j], self.mul(x, y));
                }
            }
        }
        out
    }

    /// `g^0 .. g^kmax`, truncated past degree `n`.
    pub fn powers1(&self, g: &[u32], n: usize, kmax: usize) -> Vec<Vec<u32>> {
        let mut one = vec![0u32; n + 1];
        one[0] = 1;
        let mut out = vec![one];
        for k in 1..=kmax {
            let next = self.mul1(&out[k - 1], g, n);
            out.push(next);
        }
        out
    }

    /// `f(g)` for `g` without constant term.
    pub fn compose1(&self, f: &[u32], g: &[u32], n: usize) -> Vec<u32> {
        let mut out = vec![0u32; n + 1];
        let mut pw = vec![0u32; n + 1];
        pw[0] = 1;
        for (k, &c) in f.iter().enumerate().take(n + 1) {
            if k > 0 {
                pw = self.mul1(&pw, g, n);
            }
            if c != 0 {
                for (o, &x) in out.iter_mut().zip(&pw) {
                    if x != 0 {
                        *o = self.add(*o, self.mul(c, x));
                    }
                }
            }
        }
        out
    }

    /// Compositional inverse of `f` with `f[1]` nonzero.
    pub fn inverse1(&self, f: &[u32], n: usize) -> Option<Vec<u32>> {
        let a1_inv = self.inv(*f.get(1)?)?;
        let mut g = vec![0u32; n + 1];
        g[1] = a1_inv;
        for m in 2..=n {
            let c = self.compose1(f, &g, n)[m];
            if c != 0 {
                g[m] = self.sub(g[m], self.mul(c, a1_inv));
            }
        }
        Some(g)
    }
}

/// Coefficients of a one-variable series over a finite field as codes.
pub fn to_dense(f: &TruncPoly) -> Vec<u32> {
    let mut v = vec![0u32; f.bound() as usize + 1];
    for (m, c) in f.terms() {
        if let Elem::Gf(x) = c {
            v[m.exps()[0] as usize] = *x;
        }
    }
    v
}

pub fn from_dense(ring: &Ring, v: &[u32]) -> TruncPoly {
    let n = v.len() as u32 - 1;
    let mut out = TruncPoly::zero(ring, 1, n);
    for (d, &c) in v.iter().enumerate() {
        if c != 0 {
            out.add_term(&Mono::from_slice(&[d as u32]), &Elem::Gf(c));
        }
    }
    out
}

/// A bud law over a finite field prepared for fast defect computation.
#[derive(Clone, Debug)]
pub struct DenseLaw {
    fq: Fq,
    n: usize,
    /// Nonzero coefficients `(a, b, c)` of `c T1^a T2^b`.
    terms: Vec<(usize, usize, u32)>,
    /// `F^k` as dense two-variable arrays, `k = 0..=n`.
    pows: Vec<Vec<u32>>,
}

impl DenseLaw {
    pub fn new(law: &BudLaw) -> Result<DenseLaw> {
        let fq = Fq::of(law.ring()).ok_or(Error::InvalidArgument("dense kernels need a finite field".into()))?;
        let n = law.n() as usize;
        let w = n + 1;
        let mut terms = Vec::new();
        let mut f = vec![0u32; w * w];
        for (m, c) in law.poly().terms() {
            let (a, b) = (m.exps()[0] as usize, m.exps()[1] as usize);
            if let Elem::Gf(x) = c {
                terms.push((a, b, *x));
                f[a * w + b] = *x;
            }
        }
        let mut one = vec![0u32; w * w];
        one[0] = 1;
        let mut pows = vec![one];
        for k in 1..=n {
            let next = mul2(&fq, &pows[k - 1], &f, n);
            pows.push(next);
        }
        Ok(DenseLaw { fq, n, terms, pows })
    }

    pub fn fq(&self) -> &Fq {
        &self.fq
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `F(a(T), b(T))`.
    pub fn sum(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.n;
        let pa = self.fq.powers1(a, n, n);
        let pb = self.fq.powers1(b, n, n);
        let mut out = vec![0u32; n + 1];
        for &(i, j, c) in &self.terms {
            let prod = self.fq.mul1(&pa[i], &pb[j], n);
            for (o, &x) in out.iter_mut().zip(&prod) {
                if x != 0 {
                    *o = self.fq.add(*o, self.fq.mul(c, x));
                }
            }
        }
        out
    }

    /// Degree-`m` part of `f(F(T1,T2)) - G(f(T1), f(T2))` with `self = F`,
    /// as coefficients of `T1^a T2^(m-a)`, `a = 0..=m`. Only `f[..=m]` is read.
    pub fn defect_slice(&self, target: &DenseLaw, f: &[u32], m: usize) -> Vec<u32> {
        let fq = &self.fq;
        let w = self.n + 1;
        let mut out = vec![0u32; m + 1];
        for (k, &c) in f.iter().enumerate().take(m + 1).skip(1) {
            if c == 0 {
                continue;
            }
            let pk = &self.pows[k];
            for (a, o) in out.iter_mut().enumerate() {
                let x = pk[a * w + (m - a)];
                if x != 0 {
                    *o = fq.add(*o, fq.mul(c, x));
                }
            }
        }
        let fm = &f[..=m];
        let pw = fq.powers1(fm, m, m);
        for &(i, j, c) in &target.terms {
            if i + j > m {
                continue;
            }
            let (pi, pj) = (&pw[i], &pw[j]);
            for (a, o) in out.iter_mut().enumerate() {
                let x = pi[a];
                if x == 0 {
                    continue;
                }
                let y = pj[m - a];
                if y != 0 {
                    *o = fq.sub(*o, fq.mul(c, fq.mul(x, y)));
                }
            }
        }
        out
    }

    /// Whether `f` is a homomorphism `self -> target`, degree by degree.
    pub fn is_hom(&self, target: &DenseLaw, f: &[u32]) -> bool {
        f[0] == 0 && (1..=self.n).all(|m| self.defect_slice(target, f, m).iter().all(|&x| x == 0))
    }
}

fn mul2(fq: &Fq, a: &[u32], b: &[u32], n: usize) -> Vec<u32> {
    let w = n + 1;
    let mut out = vec![0u32; w * w];
    for i1 in 0..w {
        for j1 in 0..w - i1 {
            let x = a[i1 * w + j1];
            if x == 0 {
                continue;
            }
            for i2 in 0..w - i1 - j1 {
                for j2 in 0..w - i1 - j1 - i2 {
                    let y = b[i2 * w + j2];
                    if y != 0 {
                        let idx = (i1 + i2) * w + j1 + j2;
                        out[idx] = fq.add(out[idx], fq.mul(x, y));
                    }
                }
            }
        }
    }
    out
}

/// `C_m` and its Bézout vector reduced into a finite field.
#[derive(Clone, Debug)]
pub struct CocycleData {
    pub m: usize,
    /// Coefficient of `T1^a T2^(m-a)` in `C_m`, `a = 0..=m`.
    pub c: Vec<u32>,
    /// Bézout weights on the same indices.
    pub u: Vec<u32>,
    /// `λ(m)` reduced, zero when `m` is a power of the characteristic.
    pub lambda: u32,
}

impl CocycleData {
    pub fn new(fq: &Fq, m: usize) -> CocycleData {
        let mut c = vec![0u32; m + 1];
        let mut u = vec![0u32; m + 1];
        let cz = crate::lazard::c_poly(m as u32, &Ring::Integers);
        for (mono, x) in cz.terms() {
            if let Elem::Int(v) = x {
                c[mono.exps()[0] as usize] = fq.from_int(v);
            }
        }
        for (i, ui) in c_bezout(m as u32).iter().enumerate() {
            u[i + 1] = fq.from_int(ui);
        }
        let lambda = fq.from_int(&BigInt::from(lambda_of(m as u64)));
        CocycleData { m, c, u, lambda }
    }

    /// The `a` with `slice = a C_m`, if the slice has that form.
    pub fn multiplier(&self, fq: &Fq, slice: &[u32]) -> Option<u32> {
        let mut a = 0;
        for (&s, &u) in slice.iter().zip(&self.u) {
            if s != 0 && u != 0 {
                a = fq.add(a, fq.mul(s, u));
            }
        }
        slice.iter().zip(&self.c).all(|(&s, &c)| s == fq.mul(a, c)).then_some(a)
    }
}

/// Precomputed cocycle data for degrees `0..=n` (entries below 2 unused).
pub fn cocycles(fq: &Fq, n: usize) -> Vec<CocycleData> {
    (0..=n).map(|m| if m < 2 { CocycleData { m, c: vec![], u: vec![], lambda: 0 } } else { CocycleData::new(fq, m) }).collect()
}

/// Outcome of one step of the degree-by-degree homomorphism search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// The coefficient at this degree is forced.
    Forced(u32),
    /// The degree is a power of the characteristic and the defect vanishes:
    /// every coefficient works here.
    Free,
    /// The degree is a power of the characteristic and the defect does not
    /// vanish.
    Obstructed,
}

/// Decides degree `m` given `f[..m]` (with `f[m]` ignored).
pub fn step(src: &DenseLaw, tgt: &DenseLaw, cocycles: &[CocycleData], f: &mut [u32], m: usize) -> Result<Step> {
    let fq = src.fq();
    let saved = f[m];
    f[m] = 0;
    let slice = src.defect_slice(tgt, f, m);
    f[m] = saved;
    if m == 1 {
        return Ok(Step::Free);
    }
    let cd = &cocycles[m];
    if cd.lambda == 0 {
        return Ok(if slice.iter().all(|&x| x == 0) { Step::Free } else { Step::Obstructed });
    }
    let a = cd.multiplier(fq, &slice).ok_or(Error::NotMultipleOfC { degree: m as u32 })?;
    // a C_m + a_m λ C_m = 0
    let am = fq.neg(fq.mul(a, fq.inv(cd.lambda).expect("λ(m) is a unit")));
    Ok(Step::Forced(am))
}

/// Degree-by-degree search for homomorphisms `X -> Y` between laws over the
/// same finite field.
#[derive(Clone, Debug)]
pub struct HomSearch {
    src: DenseLaw,
    tgt: DenseLaw,
    cocycles: Vec<CocycleData>,
}

impl HomSearch {
    pub fn new(x: &BudLaw, y: &BudLaw) -> Result<HomSearch> {
        if x.ring() != y.ring() {
            return Err(Error::DescriptorMismatch);
        }
        if x.n() != y.n() {
            return Err(Error::ShapeMismatch(alloc::format!("orders {} and {}", x.n(), y.n())));
        }
        let src = DenseLaw::new(x)?;
        let tgt = DenseLaw::new(y)?;
        let cocycles = cocycles(src.fq(), src.n());
        Ok(HomSearch { src, tgt, cocycles })
    }

    pub fn fq(&self) -> &Fq {
        self.src.fq()
    }

    pub fn n(&self) -> usize {
        self.src.n()
    }

    pub fn source(&self) -> &DenseLaw {
        &self.src
    }

    pub fn target(&self) -> &DenseLaw {
        &self.tgt
    }

    pub fn step(&self, f: &mut [u32], m: usize) -> Result<Step> {
        step(&self.src, &self.tgt, &self.cocycles, f, m)
    }

    /// Every homomorphism with linear coefficient `a1`, in canonical order.
    pub fn all_with_linear(&self, a1: u32) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        self.search(a1, &mut |f| {
            out.push(f.to_vec());
            false
        })?;
        Ok(out)
    }

    /// The first homomorphism with linear coefficient `a1` in canonical order.
    pub fn first_with_linear(&self, a1: u32) -> Result<Option<Vec<u32>>> {
        let mut out = None;
        self.search(a1, &mut |f| {
            out = Some(f.to_vec());
            true
        })?;
        Ok(out)
    }

    /// Runs `visit` on each solution until it returns `true`.
    pub fn search(&self, a1: u32, visit: &mut dyn FnMut(&[u32]) -> bool) -> Result<bool> {
        let mut f = vec![0u32; self.n() + 1];
        f[1] = a1;
        self.dfs(&mut f, 2, visit)
    }

    fn dfs(&self, f: &mut Vec<u32>, m: usize, visit: &mut dyn FnMut(&[u32]) -> bool) -> Result<bool> {
        if m > self.n() {
            return Ok(visit(f));
        }
        match self.step(f, m)? {
            Step::Obstructed => Ok(false),
            Step::Forced(a) => {
                f[m] = a;
                let stop = self.dfs(f, m + 1, visit)?;
                f[m] = 0;
                Ok(stop)
            }
            Step::Free => {
                for a in 0..self.fq().q() {
                    f[m] = a;
                    if self.dfs(f, m + 1, visit)? {
                        f[m] = 0;
                        return Ok(true);
                    }
                }
                f[m] = 0;
                Ok(false)
            }
        }
    }
}
