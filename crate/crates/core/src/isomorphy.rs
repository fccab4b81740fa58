//! Isomorphisms between bud laws: search over a finite field, passage to
//! Honda form over finite extensions, and the logarithm over `Q`-algebras.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::lambda_of;
use crate::budlaw::{defect, BudLaw, Endo, HeightClass};
use crate::error::{Error, Result};
use crate::honda::honda_law;
use crate::lazard::spc_multiplier;
use crate::mono::Mono;
use crate::ring::Ring;
use crate::series::{from_dense, HomSearch};
use crate::truncpoly::TruncPoly;

#[derive(Clone, Debug, PartialEq)]
pub enum IsoResult {
    /// `iso` is an isomorphism from the first law to the second over `field`.
    Found { iso: Endo, field: Ring },
    NotFoundOverBase,
    Failed(String),
}

impl IsoResult {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoResult::Found { .. })
    }
}

/// A prepared isomorphism search whose branches (one per linear coefficient)
/// can run independently.
#[derive(Clone, Debug)]
pub struct IsoSearch {
    x: BudLaw,
    y: BudLaw,
    field: Ring,
    search: HomSearch,
}

impl IsoSearch {
    pub fn new(x: &BudLaw, y: &BudLaw, field: &Ring) -> Result<IsoSearch> {
        if !matches!(field, Ring::FiniteField(_)) {
            return Err(Error::InvalidArgument("isomorphism search needs a finite field".into()));
        }
        if x.n() != y.n() {
            return Err(Error::ShapeMismatch(format!("orders {} and {}", x.n(), y.n())));
        }
        let x = x.change_ring(field)?;
        let y = y.change_ring(field)?;
        let search = HomSearch::new(&x, &y)?;
        Ok(IsoSearch { x, y, field: field.clone(), search })
    }

    /// Codes of the admissible linear coefficients, in canonical order.
    pub fn linear_choices(&self) -> core::ops::Range<u32> {
        1..self.search.fq().q()
    }

    /// First solution with linear coefficient `a1`, as coefficient codes.
    pub fn branch(&self, a1: u32) -> Result<Option<Vec<u32>>> {
        self.search.first_with_linear(a1)
    }

    /// Turns the first successful branch into a result, re-checking it
    /// through the generic series arithmetic.
    pub fn finish(&self, found: Option<Vec<u32>>) -> Result<IsoResult> {
        let Some(f) = found else {
            return Ok(IsoResult::NotFoundOverBase);
        };
        let f = from_dense(&self.field, &f);
        let iso = match Endo::new(&self.x, &self.y, f.clone()) {
            Ok(iso) => iso,
            Err(e) => return Ok(IsoResult::Failed(format!("witness rejected: {e}"))),
        };
        if self.x.conjugate(&f)?.poly() != self.y.poly() {
            return Ok(IsoResult::Failed("witness does not conjugate onto the target".into()));
        }
        Ok(IsoResult::Found { iso, field: self.field.clone() })
    }

    pub fn run(&self) -> Result<IsoResult> {
        for a1 in self.linear_choices() {
            if let Some(f) = self.branch(a1)? {
                return self.finish(Some(f));
            }
        }
        self.finish(None)
    }
}

/// First isomorphism `X -> Y` over `field` in canonical coefficient order.
pub fn find_iso(x: &BudLaw, y: &BudLaw, field: &Ring) -> Result<IsoResult> {
    IsoSearch::new(x, y, field)?.run()
}

/// The fields `F_{q^d}`, `d = 1..=max_ext`, searched by [`trivialize_height_h`].
pub fn extension_tower(base: &Ring, max_ext: u32) -> Result<Vec<Ring>> {
    let Some(gf) = base.galois_field() else {
        return Err(Error::InvalidArgument("expected a finite field".into()));
    };
    let mut out = Vec::new();
    for d in 1..=max_ext {
        match Ring::finite_field(gf.p() as u64, gf.k() * d) {
            Ok(r) => out.push(r),
            Err(Error::FieldTooLarge { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Checks that `x` has height `h` and returns the characteristic.
pub fn check_height(x: &BudLaw, h: u32) -> Result<u64> {
    let p = x.ring().characteristic();
    if x.ring().galois_field().is_none() {
        return Err(Error::InvalidArgument("expected a law over a finite field".into()));
    }
    match x.height(p) {
        Ok(HeightClass::Height { h: hx, .. }) if hx == h => Ok(p),
        Ok(_) | Err(Error::ShapeViolation(_)) | Err(Error::TruncationTooShallow { .. }) => Err(Error::HeightMismatch),
        Err(e) => Err(e),
    }
}

/// An isomorphism from `x` (height `h` over `F_q`) to the Honda law over the
/// first `F_{q^d}`, `d <= max_ext` (default `p^h`), where one exists.
pub fn trivialize_height_h(x: &BudLaw, h: u32, max_ext: Option<u32>) -> Result<IsoResult> {
    let p = check_height(x, h)?;
    let max_ext = max_ext.unwrap_or_else(|| (p as u32).pow(h));
    let honda = honda_law(p, h, x.n())?;
    for field in extension_tower(x.ring(), max_ext)? {
        let res = find_iso(x, &honda.law, &field)?;
        if res.is_found() {
            return Ok(res);
        }
    }
    Ok(IsoResult::Failed("BoundExceeded".into()))
}

/// The strict isomorphism from `x` to the additive law over a `Q`-algebra.
pub fn log_to_additive(x: &BudLaw) -> Result<Endo> {
    let r = x.ring();
    if !r.is_q_algebra() {
        return Err(Error::NotQAlgebra);
    }
    let n = x.n();
    let add = BudLaw::additive(r, n);
    let mut f = TruncPoly::var(r, 1, n, 0);
    for m in 2..=n {
        let slice = defect(&f, x, &add)?.homogeneous_part(m);
        let a = spc_multiplier(&slice, m)?;
        // a C_m + a_m λ(m) C_m = 0
        let am = r.div_by_integer(&r.neg(&a), &BigInt::from(lambda_of(m as u64))).ok_or(Error::DivisionUndefined)?;
        f.add_term(&Mono::from_slice(&[m]), &am);
    }
    Endo::new(x, &add, f)
}
