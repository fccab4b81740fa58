//! Honda bud laws over `F_p` and the finite endomorphism data attached to
//! them over finite fields.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::{floor_log, gcd_u64, is_prime};
use crate::budlaw::{BudLaw, Endo};
use crate::error::{Error, Result};
use crate::finite_ring::FiniteRing;
use crate::mono::Mono;
use crate::ring::{Ring, RingHom};
use crate::series::{from_dense, to_dense, DenseLaw, Fq, HomSearch, Step};
use crate::truncpoly::TruncPoly;

/// `H_h^{(n)}` over `F_p`, with the rational law and logarithm it comes from.
#[derive(Clone, Debug, PartialEq)]
pub struct HondaLaw {
    pub p: u64,
    pub h: u32,
    pub n: u32,
    pub law: BudLaw,
    /// The law over `Q` with logarithm `log`.
    pub rational: BudLaw,
    pub log: TruncPoly,
}

impl HondaLaw {
    /// The `l` with `p^l <= n < p^{l+1}`.
    pub fn l(&self) -> u32 {
        floor_log(self.n as u64, self.p)
    }

    /// The law over an extension `F_q` of `F_p`.
    pub fn over(&self, field: &Ring) -> Result<BudLaw> {
        check_field(self.p, field)?;
        self.law.change_ring(field)
    }
}

fn check_field(p: u64, field: &Ring) -> Result<()> {
    match field {
        Ring::FiniteField(f) if f.p() as u64 == p => Ok(()),
        Ring::FiniteField(_) => Err(Error::CharacteristicMismatch),
        _ => Err(Error::InvalidArgument("expected a finite field".into())),
    }
}

pub fn honda_law(p: u64, h: u32, n: u32) -> Result<HondaLaw> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || h == 0 {
        return Err(Error::InvalidArgument("order and height must be positive".into()));
    }
    let q = Ring::Rationals;
    let ph = BigInt::from(p).pow(h);
    let mut log = TruncPoly::zero(&q, 1, n);
    let (mut deg, mut denom) = (BigInt::from(1), BigInt::from(1));
    while deg <= BigInt::from(n) {
        let d: u32 = deg.clone().try_into().expect("degree fits");
        let c = q.div(&q.one(), &q.from_bigint(&denom))?;
        log.add_term(&Mono::from_slice(&[d]), &c);
        deg *= &ph;
        denom *= p;
    }
    let exp = log.compositional_inverse()?;
    let sum = log.in_var(2, 0).add(&log.in_var(2, 1))?;
    let rational = BudLaw::trusted(exp.substitute(&[sum])?);
    let fp = Ring::finite_field(p, 1)?;
    let to_fp = RingHom::canonical(&q, &fp)?;
    let law = BudLaw::trusted(rational.poly().map_coefficients(&to_fp)?);

    let expected = match u32::try_from(&ph) {
        Ok(d) if d <= n => TruncPoly::monomial(&fp, 1, n, Mono::from_slice(&[d]), fp.one()),
        _ => TruncPoly::zero(&fp, 1, n),
    };
    if law.m_series(p).series() != &expected {
        return Err(Error::ShapeViolation(format!("[{p}]-series of the reduced law is not T^{ph}")));
    }
    Ok(HondaLaw { p, h, n, law, rational, log })
}

/// Lifts `a T^{p^j}` to an endomorphism of `H^{(n)}` over `field`.
pub fn lift_endomorphism(hl: &HondaLaw, field: &Ring, j: u32, a: &crate::ring::Elem) -> Result<Endo> {
    let law = hl.over(field)?;
    let search = HomSearch::new(&law, &law)?;
    let fq = search.fq().clone();
    let n = hl.n as usize;
    let start = (hl.p as usize).checked_pow(j).filter(|&d| d <= n).ok_or_else(|| {
        Error::InvalidArgument(format!("p^{j} exceeds the order {n}"))
    })?;
    let crate::ring::Elem::Gf(a) = a else {
        return Err(Error::DescriptorMismatch);
    };
    if !field.contains(&crate::ring::Elem::Gf(*a)) {
        return Err(Error::DescriptorMismatch);
    }
    let mut f = vec![0u32; n + 1];
    f[start] = *a;
    let ph = (hl.p as usize).pow(hl.h);
    for m in start + 1..=n {
        match search.step(&mut f, m)? {
            Step::Forced(c) => f[m] = c,
            Step::Obstructed => return Err(Error::Obstructed { degree: m as u32 }),
            Step::Free => {
                // [p]-commutation through degree m: f(T^{p^h}) = f(T)^{p^h}
                if ph <= m && shift_pow(&f[..=m], ph, m) != fq.powers1(&f[..=m], m, ph)[ph] {
                    return Err(Error::Obstructed { degree: m as u32 });
                }
            }
        }
    }
    Ok(Endo::trusted(law.clone(), law, from_dense(field, &f)))
}

/// `f(T^e)` truncated past degree `m`.
fn shift_pow(f: &[u32], e: usize, m: usize) -> Vec<u32> {
    let mut out = vec![0u32; m + 1];
    for (d, &c) in f.iter().enumerate() {
        if d * e <= m {
            out[d * e] = c;
        }
    }
    out
}

/// All endomorphisms of `H^{(n)}` over `F_q`, sorted by coefficient vectors.
#[derive(Clone, Debug)]
pub struct EndoSet {
    pub law: HondaLaw,
    pub field: Ring,
    pub elements: Vec<Endo>,
    pub l: u32,
}

impl EndoSet {
    /// Coefficient codes of each element, degree 0 through `n`.
    pub fn dense(&self) -> Vec<Vec<u32>> {
        self.elements.iter().map(|e| to_dense(e.series())).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The endomorphism ring as a finite ring under `+_H` and composition.
    pub fn ring(&self) -> Result<FiniteRing> {
        let dl = DenseLaw::new(self.elements.first().map(|e| e.source()).ok_or(Error::InvalidArgument("empty set".into()))?)?;
        let fq = dl.fq().clone();
        let n = dl.n();
        let elems = self.dense();
        let zero = vec![0u32; n + 1];
        let mut one = zero.clone();
        one[1] = 1;
        FiniteRing::tabulate(&elems, &zero, &one, |a, b| dl.sum(a, b), |a, b| fq.compose1(a, b, n))
    }

    /// Indices of `I_i`: elements with no terms of degree `<= i`.
    pub fn ideal(&self, i: u32) -> Vec<usize> {
        self.dense().iter().enumerate().filter(|(_, f)| f[1..=i as usize].iter().all(|&c| c == 0)).map(|(k, _)| k).collect()
    }
}

/// Endomorphisms of `H^{(n)}` over `field` with linear coefficient `a1`.
/// Running every code `a1` and concatenating gives [`enumerate_endos`].
pub fn enumerate_endos_branch(hl: &HondaLaw, field: &Ring, a1: u32) -> Result<Vec<Endo>> {
    let law = hl.over(field)?;
    let search = HomSearch::new(&law, &law)?;
    Ok(search.all_with_linear(a1)?.into_iter().map(|f| Endo::trusted(law.clone(), law.clone(), from_dense(field, &f))).collect())
}

/// Collects branch results into a canonically sorted set.
pub fn assemble_endos(hl: &HondaLaw, field: &Ring, parts: Vec<Vec<Endo>>) -> EndoSet {
    let mut elements: Vec<(Vec<u32>, Endo)> = parts.into_iter().flatten().map(|e| (to_dense(e.series()), e)).collect();
    elements.sort_by(|a, b| a.0.cmp(&b.0));
    EndoSet { law: hl.clone(), field: field.clone(), elements: elements.into_iter().map(|(_, e)| e).collect(), l: hl.l() }
}

pub fn enumerate_endos(hl: &HondaLaw, field: &Ring) -> Result<EndoSet> {
    check_field(hl.p, field)?;
    let q = field.order().expect("finite field") as u32;
    let parts = (0..q).map(|a| enumerate_endos_branch(hl, field, a)).collect::<Result<Vec<_>>>()?;
    Ok(assemble_endos(hl, field, parts))
}

/// `p^{gcd(h, k)}`: the number of points of `Fix(Fr_{p^h})` in `F_{p^k}`.
pub fn fixed_points(p: u64, h: u32, field: &Ring) -> u64 {
    let k = field.galois_field().map_or(1, |f| f.k());
    p.pow(gcd_u64(h as u64, k as u64) as u32)
}

/// Predicted `|A_i / A_{i+1}|` over `F_q`, `i = 0..n`.
///
/// Level `p^j - 1` is Frobenius-constrained when `p^{j+h} <= n`; when
/// `p^h > n` nothing is constrained and level 0 is all of `F_q^×`.
pub fn predicted_quotients(p: u64, h: u32, n: u32, field: &Ring) -> Vec<u64> {
    let q = field.order().expect("finite field");
    let fix = fixed_points(p, h, field);
    let constrained = |j: u32| p.checked_pow(j + h).is_some_and(|d| d <= n as u64);
    (0..n)
        .map(|i| {
            if i == 0 {
                return if constrained(0) { fix - 1 } else { q - 1 };
            }
            match crate::arith::log_exact(i as u64 + 1, p) {
                Some(j) if constrained(j) => fix,
                Some(_) => q,
                None => 1,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub p: u64,
    pub h: u32,
    pub n: u32,
    pub q: u64,
    /// `|A_i|` for `i = 0..=n`.
    pub group_orders: Vec<u64>,
    /// `|A_i| / |A_{i+1}|` for `i = 0..n`.
    pub quotient_orders: Vec<u64>,
    pub predicted: Vec<u64>,
    pub matches: Vec<bool>,
    /// `A_i` is a normal subgroup of `Aut`, `i = 0..=n`.
    pub normal: Vec<bool>,
    /// `f ↦ T +_H f` is a bijection `I_i → A_i`, `i = 1..=n`.
    pub bijection: Vec<bool>,
}

impl FiltrationReport {
    pub fn all_match(&self) -> bool {
        self.matches.iter().all(|&b| b) && self.normal.iter().all(|&b| b) && self.bijection.iter().all(|&b| b)
    }
}

/// Automorphisms of `H^{(n)}` over `field` and their filtration report.
pub fn aut_group(hl: &HondaLaw, field: &Ring) -> Result<(EndoSet, FiltrationReport)> {
    aut_group_of(&enumerate_endos(hl, field)?)
}

pub fn aut_group_of(set: &EndoSet) -> Result<(EndoSet, FiltrationReport)> {
    let hl = &set.law;
    let n = hl.n as usize;
    let dl = DenseLaw::new(&hl.over(&set.field)?)?;
    let fq = dl.fq().clone();
    let dense = set.dense();
    let aut_idx: Vec<usize> = (0..dense.len()).filter(|&i| dense[i][1] != 0).collect();
    let aut: Vec<&Vec<u32>> = aut_idx.iter().map(|&i| &dense[i]).collect();
    let in_a = |f: &[u32], i: usize| f[1] == 1 && f[2..=i.max(1)].iter().all(|&c| c == 0);
    let in_i = |f: &[u32], i: usize| f[1..=i].iter().all(|&c| c == 0);

    let mut group_orders = Vec::new();
    let mut normal = Vec::new();
    let inverses: Vec<Vec<u32>> = aut.iter().map(|f| fq.inverse1(f, n).expect("unit linear term")).collect();
    for i in 0..=n {
        let a_i: Vec<&Vec<u32>> = aut.iter().copied().filter(|f| i == 0 || in_a(f, i)).collect();
        group_orders.push(a_i.len() as u64);
        let member = |f: &[u32]| f[1] != 0 && (i == 0 || in_a(f, i));
        let closed = a_i.iter().all(|a| a_i.iter().all(|b| member(&fq.compose1(a, b, n))));
        let conj = aut.iter().zip(&inverses).all(|(g, gi)| {
            a_i.iter().all(|a| member(&fq.compose1(&fq.compose1(g, a, n), gi, n)))
        });
        normal.push(closed && conj);
    }
    let mut bijection = Vec::new();
    let mut t = vec![0u32; n + 1];
    t[1] = 1;
    for i in 1..=n {
        let image: BTreeSet<Vec<u32>> = dense.iter().filter(|f| in_i(f, i)).map(|f| dl.sum(&t, f)).collect();
        let source_len = dense.iter().filter(|f| in_i(f, i)).count();
        let a_i: BTreeSet<Vec<u32>> = aut.iter().filter(|f| in_a(f, i)).map(|f| (*f).clone()).collect();
        bijection.push(image.len() == source_len && image == a_i);
    }
    let quotient_orders: Vec<u64> = group_orders.windows(2).map(|w| if w[1] == 0 { 0 } else { w[0] / w[1] }).collect();
    let exact = group_orders.windows(2).all(|w| w[1] != 0 && w[0] % w[1] == 0);
    let predicted = predicted_quotients(hl.p, hl.h, hl.n, &set.field);
    let matches = quotient_orders.iter().zip(&predicted).map(|(a, b)| exact && a == b).collect();
    let units = EndoSet {
        law: hl.clone(),
        field: set.field.clone(),
        elements: aut_idx.iter().map(|&i| set.elements[i].clone()).collect(),
        l: set.l,
    };
    let report = FiltrationReport {
        p: hl.p,
        h: hl.h,
        n: hl.n,
        q: set.field.order().expect("finite field"),
        group_orders,
        quotient_orders,
        predicted,
        matches,
        normal,
        bijection,
    };
    Ok((units, report))
}

/// `E_n = End(H)/I_n` over a finite field, computed as the image of
/// `End(H^{(N)})` under truncation to order `n`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub p: u64,
    pub h: u32,
    pub n: u32,
    pub ambient: u32,
    pub field: Ring,
    /// Coefficient codes of the truncated series, degrees `0..=n`, sorted.
    pub elements: Vec<Vec<u32>>,
    pub ring: FiniteRing,
    /// Indices of the unit group `U_n`.
    pub units: Vec<usize>,
    /// `|Fix(Fr_{p^h})(F_q)|^{l+1}`.
    pub expected_order: u64,
    /// Every truncation is an endomorphism of `H^{(n)}`.
    pub truncations_are_endos: bool,
}

impl QuotientRing {
    pub fn order_matches(&self) -> bool {
        self.elements.len() as u64 == self.expected_order
    }

    pub fn elements_as_endos(&self) -> Result<Vec<Endo>> {
        let law = honda_law(self.p, self.h, self.n)?.over(&self.field)?;
        Ok(self.elements.iter().map(|f| Endo::trusted(law.clone(), law.clone(), from_dense(&self.field, f))).collect())
    }
}

/// The smallest ambient order accepted by [`quotient_ring`].
pub fn min_ambient(p: u64, h: u32, n: u32) -> u64 {
    p.pow(floor_log(n as u64, p) + h)
}

pub fn quotient_ring(p: u64, h: u32, n: u32, ambient: u32, field: &Ring) -> Result<QuotientRing> {
    let need = min_ambient(p, h, n);
    if (ambient as u64) < need {
        return Err(Error::OrderTooSmall { order: ambient, required: need as u32 });
    }
    let big = honda_law(p, h, ambient)?;
    let set = enumerate_endos(&big, field)?;
    quotient_ring_of(&set, n)
}

/// [`quotient_ring`] from an already enumerated `End(H^{(N)})`.
pub fn quotient_ring_of(set: &EndoSet, n: u32) -> Result<QuotientRing> {
    let big = &set.law;
    let (p, h, ambient) = (big.p, big.h, big.n);
    let need = min_ambient(p, h, n);
    if (ambient as u64) < need {
        return Err(Error::OrderTooSmall { order: ambient, required: need as u32 });
    }
    let small = honda_law(p, h, n)?;
    let dl = DenseLaw::new(&small.over(&set.field)?)?;
    let fq: Fq = dl.fq().clone();
    let nn = n as usize;
    let elements: Vec<Vec<u32>> =
        set.dense().into_iter().map(|f| f[..=nn].to_vec()).collect::<BTreeSet<_>>().into_iter().collect();
    let truncations_are_endos = elements.iter().all(|f| dl.is_hom(&dl, f));
    let zero = vec![0u32; nn + 1];
    let mut one = zero.clone();
    one[1] = 1;
    let ring = FiniteRing::tabulate(&elements, &zero, &one, |a, b| dl.sum(a, b), |a, b| fq.compose1(a, b, nn))?;
    let units = (0..elements.len()).filter(|&i| elements[i][1] != 0).collect();
    let expected_order = fixed_points(p, h, &set.field).pow(floor_log(n as u64, p) + 1);
    Ok(QuotientRing { p, h, n, ambient, field: set.field.clone(), elements, ring, units, expected_order, truncations_are_endos })
}
