use super::*;
use alloc::string::ToString;
use alloc::vec;
use proptest::prelude::*;

fn int(n: i64) -> Elem {
    Elem::Int(BigInt::from(n))
}

fn rings() -> Vec<Ring> {
    let zt = Ring::param_poly(Ring::Integers, ["t1", "t2"]).unwrap();
    vec![
        Ring::Integers,
        Ring::Rationals,
        Ring::mod_n(4).unwrap(),
        Ring::mod_n(12).unwrap(),
        Ring::finite_field(2, 1).unwrap(),
        Ring::finite_field(2, 2).unwrap(),
        Ring::finite_field(3, 2).unwrap(),
        Ring::finite_field(5, 1).unwrap(),
        zt,
        Ring::param_poly(Ring::finite_field(2, 2).unwrap(), ["t1"]).unwrap(),
        Ring::param_poly(Ring::mod_n(4).unwrap(), ["t1"]).unwrap(),
    ]
}

/// A pseudo-random element of `ring` from a seed vector.
fn sample(ring: &Ring, seed: &[i64]) -> Elem {
    match ring {
        Ring::Rationals => {
            let d = seed[1].rem_euclid(7) + 1;
            Elem::Rat(BigRational::new(BigInt::from(seed[0]), BigInt::from(d)))
        }
        Ring::ParamPoly(pr) => {
            let mut acc = ring.zero();
            for (i, chunk) in seed.chunks(2).enumerate() {
                let c = ring.constant(sample(&pr.base, chunk));
                let mut m = ring.one();
                for (j, _) in pr.params.iter().enumerate() {
                    if (i >> j) & 1 == 1 {
                        m = ring.mul(&m, &ring.param(j).unwrap());
                    }
                }
                acc = ring.add(&acc, &ring.mul(&c, &m));
            }
            acc
        }
        Ring::FiniteField(f) => Elem::Gf(seed[0].rem_euclid(f.order() as i64) as u32),
        _ => ring.from_i64(seed[0]),
    }
}

proptest! {
    #[test]
    fn ring_axioms(a in prop::collection::vec(-20i64..20, 6),
                   b in prop::collection::vec(-20i64..20, 6),
                   c in prop::collection::vec(-20i64..20, 6)) {
        for r in rings() {
            let (x, y, z) = (sample(&r, &a), sample(&r, &b), sample(&r, &c));
            prop_assert!(r.contains(&x));
            prop_assert_eq!(r.add(&r.add(&x, &y), &z), r.add(&x, &r.add(&y, &z)));
            prop_assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
            prop_assert_eq!(r.mul(&x, &r.add(&y, &z)), r.add(&r.mul(&x, &y), &r.mul(&x, &z)));
            prop_assert_eq!(r.add(&x, &y), r.add(&y, &x));
            prop_assert_eq!(r.mul(&x, &y), r.mul(&y, &x));
            prop_assert_eq!(r.add(&x, &r.zero()), x.clone());
            prop_assert_eq!(r.mul(&x, &r.one()), x.clone());
            prop_assert!(r.add(&x, &r.neg(&x)).is_zero());
            prop_assert!(r.contains(&r.mul(&x, &y)));
            if let Some(inv) = r.unit_inverse(&x) {
                prop_assert!(r.is_one(&r.mul(&x, &inv)));
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative(a in 0u32..81, b in 0u32..81, e in 0u32..4) {
        for (p, k) in [(2u64, 3u32), (3, 4), (5, 1)] {
            let r = Ring::finite_field(p, k).unwrap();
            let q = r.order().unwrap() as u32;
            let (x, y) = (Elem::Gf(a % q), Elem::Gf(b % q));
            let fr = |v: &Elem| r.frobenius(v, p, e).unwrap();
            prop_assert_eq!(fr(&r.add(&x, &y)), r.add(&fr(&x), &fr(&y)));
            prop_assert_eq!(fr(&r.mul(&x, &y)), r.mul(&fr(&x), &fr(&y)));
        }
    }

    #[test]
    fn format_parse_round_trip(a in prop::collection::vec(-20i64..20, 6)) {
        for r in rings() {
            let x = sample(&r, &a);
            let s = r.format(&x);
            prop_assert_eq!(r.parse(&s).unwrap(), x);
        }
    }

    #[test]
    fn rational_canonical_form(n in -50i64..50, d in 1i64..50) {
        let q = Ring::Rationals;
        let x = q.parse(&alloc::format!("{n}/{d}")).unwrap();
        prop_assert!(q.contains(&x));
        let again = q.parse(&q.format(&x)).unwrap();
        prop_assert_eq!(again, x);
    }
}

#[test]
fn integer_and_residue_examples() {
    assert_eq!(Ring::Integers.add(&int(2), &int(3)), int(5));
    let z4 = Ring::mod_n(4).unwrap();
    assert_eq!(z4.mul(&Elem::Res(2), &Elem::Res(2)), Elem::Res(0));
    assert_eq!(z4.unit_inverse(&Elem::Res(3)), Some(Elem::Res(3)));
    assert!(!Ring::Integers.is_unit(&int(2)));
}

#[test]
fn f4_generator_squares() {
    let f4 = Ring::finite_field(2, 2).unwrap();
    let x = f4.parse("x").unwrap();
    assert_eq!(f4.mul(&x, &x), f4.parse("x+1").unwrap());
    assert_eq!(f4.format(&Elem::Gf(3)), "x+1");
}

#[test]
fn frobenius_examples() {
    let f4 = Ring::finite_field(2, 2).unwrap();
    let x = f4.parse("x").unwrap();
    assert_eq!(f4.frobenius(&x, 2, 1).unwrap(), f4.parse("x+1").unwrap());
    let fixed: Vec<Elem> =
        f4.elements().unwrap().into_iter().filter(|a| f4.frobenius(a, 2, 1).unwrap() == *a).collect();
    assert_eq!(fixed, vec![Elem::Gf(0), Elem::Gf(1)]);

    let f2 = Ring::finite_field(2, 1).unwrap();
    assert_eq!(f2.frobenius(&Elem::Gf(1), 2, 3).unwrap(), Elem::Gf(1));

    let f9 = Ring::finite_field(3, 2).unwrap();
    let x = f9.parse("x").unwrap();
    assert_eq!(f9.frobenius(&x, 3, 1).unwrap(), f9.neg(&x));

    assert_eq!(Ring::Integers.frobenius(&int(1), 2, 1), Err(Error::CharacteristicMismatch));
    assert_eq!(f9.frobenius(&x, 2, 1), Err(Error::CharacteristicMismatch));
}

#[test]
fn parameter_units() {
    let zt = Ring::param_poly(Ring::Integers, ["t1"]).unwrap();
    let t = zt.param(0).unwrap();
    assert!(!zt.is_unit(&t));
    assert!(zt.is_unit(&zt.from_i64(-1)));
    let z4t = Ring::param_poly(Ring::mod_n(4).unwrap(), ["t1"]).unwrap();
    let u = z4t.parse("1+2*t1").unwrap();
    let inv = z4t.unit_inverse(&u).unwrap();
    assert!(z4t.is_one(&z4t.mul(&u, &inv)));
}

#[test]
fn nested_parameter_rings_flatten() {
    let a = Ring::param_poly(Ring::Integers, ["t1"]).unwrap();
    let b = Ring::param_poly(a, ["t2"]).unwrap();
    assert_eq!(b.base(), &Ring::Integers);
    assert_eq!(b.params(), &["t1".to_string(), "t2".to_string()]);
    assert!(Ring::param_poly(b, ["t1"]).is_err());
}

#[test]
fn exact_division() {
    let z = Ring::Integers;
    assert_eq!(z.div(&int(6), &int(3)).unwrap(), int(2));
    assert_eq!(z.div(&int(7), &int(3)), Err(Error::DivisionUndefined));
    let zt = Ring::param_poly(Ring::Integers, ["t1", "t2"]).unwrap();
    let a = zt.parse("t1^2 - t2^2").unwrap();
    let b = zt.parse("t1 + t2").unwrap();
    assert_eq!(zt.div(&a, &b).unwrap(), zt.parse("t1 - t2").unwrap());
    assert_eq!(zt.div(&b, &a), Err(Error::DivisionUndefined));
    let z12 = Ring::mod_n(12).unwrap();
    let y = z12.div(&Elem::Res(8), &Elem::Res(4)).unwrap();
    assert_eq!(z12.mul(&y, &Elem::Res(4)), Elem::Res(8));
    assert_eq!(z12.div(&Elem::Res(3), &Elem::Res(4)), Err(Error::DivisionUndefined));
}

#[test]
fn div_by_integer_solves() {
    let z4 = Ring::mod_n(4).unwrap();
    let y = z4.div_by_integer(&Elem::Res(2), &BigInt::from(2)).unwrap();
    assert_eq!(z4.mul_int(&y, &BigInt::from(2)), Elem::Res(2));
    assert_eq!(z4.div_by_integer(&Elem::Res(1), &BigInt::from(2)), None);
    let f2 = Ring::finite_field(2, 1).unwrap();
    assert_eq!(f2.div_by_integer(&Elem::Gf(0), &BigInt::from(2)), Some(Elem::Gf(0)));
    assert_eq!(f2.div_by_integer(&Elem::Gf(1), &BigInt::from(2)), None);
}

#[test]
fn checked_elements_reject_mixing() {
    let a = RingElement::new(Ring::Integers, int(2)).unwrap();
    let b = RingElement::new(Ring::Rationals, Ring::Rationals.from_i64(2)).unwrap();
    assert_eq!(a.add(&b), Err(Error::DescriptorMismatch));
    assert_eq!(a.add(&a).unwrap().to_string(), "4");
    assert!(RingElement::new(Ring::mod_n(4).unwrap(), Elem::Res(7)).is_err());
}

#[test]
fn homomorphisms() {
    let f2 = Ring::finite_field(2, 1).unwrap();
    let to_f2 = RingHom::canonical(&Ring::Integers, &f2).unwrap();
    assert_eq!(to_f2.apply(&int(2)).unwrap(), Elem::Gf(0));

    let f3 = Ring::finite_field(3, 1).unwrap();
    let q_to_f3 = RingHom::canonical(&Ring::Rationals, &f3).unwrap();
    let half = Ring::Rationals.parse("1/2").unwrap();
    assert_eq!(q_to_f3.apply(&half).unwrap(), Elem::Gf(2));
    let third = Ring::Rationals.parse("1/3").unwrap();
    assert_eq!(q_to_f3.apply(&third), Err(Error::NotPIntegral));

    let f4 = Ring::finite_field(2, 2).unwrap();
    let f16 = Ring::finite_field(2, 4).unwrap();
    let emb = RingHom::canonical(&f4, &f16).unwrap();
    for a in f4.elements().unwrap() {
        for b in f4.elements().unwrap() {
            let lhs = emb.apply(&f4.mul(&a, &b)).unwrap();
            let rhs = f16.mul(&emb.apply(&a).unwrap(), &emb.apply(&b).unwrap());
            assert_eq!(lhs, rhs);
            let lhs = emb.apply(&f4.add(&a, &b)).unwrap();
            let rhs = f16.add(&emb.apply(&a).unwrap(), &emb.apply(&b).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
    assert!(RingHom::canonical(&f4, &Ring::finite_field(2, 3).unwrap()).is_err());

    let zt = Ring::param_poly(Ring::Integers, ["t1"]).unwrap();
    let spec = RingHom::specialize(&zt, &Ring::Integers, vec![int(3)]).unwrap();
    assert_eq!(spec.apply(&zt.parse("t1^2 + 1").unwrap()).unwrap(), int(10));

    let f2t = Ring::param_poly(f2.clone(), ["t1"]).unwrap();
    let red = RingHom::canonical(&zt, &f2t).unwrap();
    assert_eq!(red.apply(&zt.parse("2*t1 + 3").unwrap()).unwrap(), f2t.one());
}
