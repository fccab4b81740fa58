//! Ring homomorphisms used for base change: reductions, inclusions, field
//! embeddings, parameter renaming and parameter specialization.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{poly_add_term, Elem, PolyMap, Ring};
use crate::arith::{bigint_mod, inv_mod};
use crate::error::{Error, Result};
use crate::mono::Mono;

#[derive(Clone, Debug)]
enum HomMap {
    Identity,
    FromIntegers,
    FromRationals,
    FromResidues,
    /// `F_{p^k} -> F_{p^K}` sending `x` to the root with the given code.
    Embed(u32),
    /// Non-polynomial source into a parameter ring, as constants.
    Constants(Box<RingHom>),
    /// Parameter ring to parameter ring; `param_map[i]` is the target index
    /// of source parameter `i`, or `None` when it must not occur.
    Coefficients { base: Box<RingHom>, param_map: Vec<Option<usize>> },
    /// Parameter ring to any ring: coefficients through `base`, then the
    /// parameters replaced by `values`.
    Specialize { base: Box<RingHom>, values: Vec<Elem> },
}

#[derive(Clone, Debug)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    map: HomMap,
}

impl RingHom {
    pub fn identity(ring: &Ring) -> Self {
        RingHom { source: ring.clone(), target: ring.clone(), map: HomMap::Identity }
    }

    /// The structural map `source -> target`, when there is an evident one:
    /// `Z -> anything`, `Q -> Q`-algebras and (on p-integral elements)
    /// rings of characteristic `c`, `Z/m -> ` characteristic dividing `m`,
    /// `F_{p^k} -> F_{p^{km}}`, and coefficientwise maps between parameter
    /// rings matching parameters by name.
    pub fn canonical(source: &Ring, target: &Ring) -> Result<Self> {
        if source == target {
            return Ok(Self::identity(source));
        }
        let undefined = || Error::EmbeddingUndefined(format!("{source:?} -> {target:?}"));
        let map = match (source, target) {
            (Ring::ParamPoly(sp), Ring::ParamPoly(tp)) => {
                let base = RingHom::canonical(&sp.base, &tp.base)?;
                let param_map = sp.params.iter().map(|n| tp.params.iter().position(|m| m == n)).collect();
                HomMap::Coefficients { base: Box::new(base), param_map }
            }
            (Ring::ParamPoly(sp), _) => {
                let base = RingHom::canonical(&sp.base, target)?;
                let param_map = sp.params.iter().map(|_| None).collect();
                HomMap::Coefficients { base: Box::new(base), param_map }
            }
            (_, Ring::ParamPoly(tp)) => HomMap::Constants(Box::new(RingHom::canonical(source, &tp.base)?)),
            (Ring::Integers, _) => HomMap::FromIntegers,
            (Ring::Rationals, Ring::Rationals) => HomMap::Identity,
            (Ring::Rationals, Ring::Integers | Ring::ModN(_) | Ring::FiniteField(_)) => HomMap::FromRationals,
            (Ring::ModN(m), Ring::ModN(_) | Ring::FiniteField(_)) => {
                let c = target.characteristic();
                if m % c != 0 {
                    return Err(undefined());
                }
                HomMap::FromResidues
            }
            (Ring::FiniteField(sf), Ring::FiniteField(tf)) => {
                if sf.p() != tf.p() || tf.k() % sf.k() != 0 {
                    return Err(undefined());
                }
                let root = tf
                    .elements()
                    .find(|&r| {
                        let v = sf.modulus().iter().rev().fold(0u32, |acc, &c| tf.add(tf.mul(acc, r), tf.from_u64(c as u64)));
                        v == 0
                    })
                    .ok_or_else(undefined)?;
                HomMap::Embed(root)
            }
            _ => return Err(undefined()),
        };
        Ok(RingHom { source: source.clone(), target: target.clone(), map })
    }

    /// Specialization of a parameter ring: parameter `i` goes to `values[i]`
    /// (an element of `target`), coefficients go through the canonical map.
    pub fn specialize(source: &Ring, target: &Ring, values: Vec<Elem>) -> Result<Self> {
        let Ring::ParamPoly(sp) = source else {
            return Err(Error::InvalidArgument("specialization needs a parameter ring".into()));
        };
        if values.len() != sp.params.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} parameter values, got {}",
                sp.params.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !target.contains(v)) {
            return Err(Error::DescriptorMismatch);
        }
        let base = RingHom::canonical(&sp.base, target)?;
        Ok(RingHom { source: source.clone(), target: target.clone(), map: HomMap::Specialize { base: Box::new(base), values } })
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        let t = &self.target;
        match (&self.map, x) {
            (HomMap::Identity, _) => Ok(x.clone()),
            (HomMap::FromIntegers, Elem::Int(n)) => Ok(t.from_bigint(n)),
            (HomMap::FromRationals, Elem::Rat(r)) => {
                if r.is_integer() {
                    return Ok(t.from_bigint(&r.to_integer()));
                }
                let c = t.characteristic();
                if c == 0 {
                    return Err(Error::NotPIntegral);
                }
                let den = bigint_mod(r.denom(), c);
                let inv = inv_mod(den, c).ok_or(Error::NotPIntegral)?;
                Ok(t.mul(&t.from_bigint(r.numer()), &t.from_bigint(&BigInt::from(inv))))
            }
            (HomMap::FromResidues, Elem::Res(a)) => Ok(t.from_bigint(&BigInt::from(*a))),
            (HomMap::Embed(root), Elem::Gf(a)) => {
                let sf = self.source.galois_field().expect("field source");
                let tf = t.galois_field().expect("field target");
                let v = sf
                    .digits(*a)
                    .iter()
                    .rev()
                    .fold(0u32, |acc, &c| tf.add(tf.mul(acc, *root), tf.from_u64(c as u64)));
                Ok(Elem::Gf(v))
            }
            (HomMap::Constants(base), _) => Ok(t.constant(base.apply(x)?)),
            (HomMap::Coefficients { base, param_map }, Elem::Poly(p)) => {
                let tbase = t.base().clone();
                let nt = t.params().len();
                if !matches!(t, Ring::ParamPoly(_)) {
                    // only constants survive
                    let mut acc = t.zero();
                    for (m, c) in p {
                        if !m.is_one() {
                            return Err(Error::EmbeddingUndefined("parameter has no image".into()));
                        }
                        acc = t.add(&acc, &base.apply(c)?);
                    }
                    return Ok(acc);
                }
                let mut out = PolyMap::new();
                for (m, c) in p {
                    let mut e = alloc::vec![0u32; nt];
                    for (i, &k) in m.exps().iter().enumerate() {
                        if k == 0 {
                            continue;
                        }
                        let j = param_map[i].ok_or_else(|| {
                            Error::EmbeddingUndefined(format!("parameter {} has no image", self.source.params()[i]))
                        })?;
                        e[j] += k;
                    }
                    poly_add_term(&tbase, &mut out, &Mono::from_slice(&e), &base.apply(c)?);
                }
                Ok(Elem::Poly(out))
            }
            (HomMap::Specialize { base, values }, Elem::Poly(p)) => {
                let mut acc = t.zero();
                for (m, c) in p {
                    let mut term = base.apply(c)?;
                    for (i, &k) in m.exps().iter().enumerate() {
                        if k > 0 {
                            term = t.mul(&term, &t.pow(&values[i], k as u64));
                        }
                    }
                    acc = t.add(&acc, &term);
                }
                Ok(acc)
            }
            _ => Err(Error::DescriptorMismatch),
        }
    }
}
