use super::*;
use crate::budlaw::hom_check;
use proptest::prelude::*;

fn zt(names: &[&str]) -> Ring {
    Ring::param_poly(Ring::Integers, names.iter().copied()).unwrap()
}

fn f2() -> Ring {
    Ring::finite_field(2, 1).unwrap()
}

fn f3() -> Ring {
    Ring::finite_field(3, 1).unwrap()
}

fn poly2(ring: &Ring, bound: u32, terms: &[(u32, u32, Elem)]) -> TruncPoly {
    TruncPoly::from_terms(ring, 2, bound, terms.iter().map(|(a, b, c)| (Mono::from_slice(&[*a, *b]), c.clone()))).unwrap()
}

/// Expands `(T1 + T2)^m` by repeated multiplication: an independent route
/// to the binomial coefficients.
fn b_by_expansion(m: u32, ring: &Ring) -> TruncPoly {
    let s = TruncPoly::var(ring, 2, m, 0).add(&TruncPoly::var(ring, 2, m, 1)).unwrap();
    let mut p = TruncPoly::one(ring, 2, m);
    for _ in 0..m {
        p = p.mul(&s).unwrap();
    }
    p.homogeneous_part(m)
        .sub(&TruncPoly::monomial(ring, 2, m, Mono::from_slice(&[m, 0]), ring.one()))
        .unwrap()
        .sub(&TruncPoly::monomial(ring, 2, m, Mono::from_slice(&[0, m]), ring.one()))
        .unwrap()
}

#[test]
fn cocycle_examples() {
    let z = Ring::Integers;
    assert_eq!(c_poly(2, &z), poly2(&z, 2, &[(1, 1, z.one())]));
    for m in 2..10 {
        assert_eq!(b_poly(m, &z), b_by_expansion(m, &z));
    }
    assert!(b_poly(4, &f2()).is_zero());
    assert_eq!(c_poly(4, &f2()), poly2(&f2(), 4, &[(2, 2, f2().one())]));
    assert_eq!(c_poly(3, &z), poly2(&z, 3, &[(2, 1, z.one()), (1, 2, z.one())]));
    // (T1+T2)^6 - T1^6 - T2^6 has gcd 6 but λ(6) = 1
    assert_eq!(c_poly(6, &z), b_poly(6, &z));
}

#[test]
fn spc_checks() {
    let z = Ring::Integers;
    for r in [z.clone(), f2(), f3(), Ring::mod_n(4).unwrap()] {
        for m in 2..=8 {
            assert!(is_spc(&c_poly(m, &r)), "C_{m} over {r:?}");
        }
    }
    let bad = poly2(&z, 3, &[(1, 2, z.one())]);
    assert!(!is_spc(&bad));
    assert_eq!(spc_multiplier(&bad, 3), Err(Error::NotMultipleOfC { degree: 3 }));
    // symmetric but not a cocycle
    let sym = poly2(&z, 4, &[(2, 2, z.one())]);
    assert!(!is_spc(&sym));
    assert_eq!(spc_multiplier(&sym, 4), Err(Error::NotMultipleOfC { degree: 4 }));
    assert_eq!(spc_multiplier(&TruncPoly::zero(&z, 2, 5), 5).unwrap(), z.zero());
    let five = z.from_i64(5);
    assert_eq!(spc_multiplier(&c_poly(4, &z).scale(&five), 4).unwrap(), five);
}

#[test]
fn universal_examples() {
    let u2 = universal_law(2).unwrap();
    let r = zt(&["t1"]);
    let t1 = r.param(0).unwrap();
    assert_eq!(*u2.law.poly(), poly2(&r, 2, &[(1, 0, r.one()), (0, 1, r.one()), (1, 1, t1.clone())]));

    let u3 = universal_law(3).unwrap();
    let r = zt(&["t1", "t2"]);
    let (t1, t2) = (r.param(0).unwrap(), r.param(1).unwrap());
    let expect = poly2(
        &r,
        3,
        &[(1, 0, r.one()), (0, 1, r.one()), (1, 1, t1), (2, 1, t2.clone()), (1, 2, t2)],
    );
    assert_eq!(*u3.law.poly(), expect);
    assert_eq!(universal_law(1).unwrap().law.poly().len(), 2);
}

#[test]
fn extension_examples() {
    let r = zt(&["t1"]);
    let u2 = universal_law(2).unwrap();
    let e = extend_one_degree(&u2.law).unwrap();
    assert_eq!(*e.poly(), u2.law.poly().with_bound(3));
    for ring in [Ring::Integers, f2(), r] {
        let a = BudLaw::additive(&ring, 3);
        assert_eq!(extend_one_degree(&a).unwrap(), BudLaw::additive(&ring, 4));
    }
    // the multiplicative law extends to itself up to a multiple of C_{n+1};
    // its restriction is always the input
    for n in 1..7 {
        for ring in [Ring::Integers, Ring::mod_n(4).unwrap(), f3()] {
            let x = BudLaw::multiplicative(&ring, n);
            let e = extend_one_degree(&x).unwrap();
            assert_eq!(e.truncate_law(n).unwrap(), x);
            assert!(BudLaw::validate(e.poly().clone()).is_ok());
        }
    }
}

#[test]
fn shift_property_small() {
    for n in 2..=6u32 {
        let u = universal_law(n).unwrap();
        let r = u.ring().clone();
        let s_ring = Ring::param_poly(r.clone(), ["s"]).unwrap();
        let s = s_ring.param(n as usize - 1).unwrap();
        let mut values: Vec<Elem> = (0..n as usize - 1).map(|i| s_ring.param(i).unwrap()).collect();
        values[n as usize - 2] = s_ring.add(&values[n as usize - 2], &s);
        let shifted = u.specialize(&s_ring, &values).unwrap();
        let base = u.law.change_ring(&s_ring).unwrap();
        let diff = shifted.poly().sub(base.poly()).unwrap();
        assert_eq!(diff, c_poly(n, &s_ring).scale(&s));
    }
}

#[test]
fn truncation_coherence() {
    let u = universal_law(6).unwrap();
    for m in 1..=6 {
        let um = universal_law(m).unwrap().law.change_ring(u.ring()).unwrap();
        assert_eq!(u.law.truncate_law(m).unwrap(), um);
        for (mono, c) in um.poly().terms() {
            let Elem::Poly(cp) = c else { unreachable!() };
            for pm in cp.keys() {
                assert!(pm.exps()[m.saturating_sub(1) as usize..].iter().all(|&e| e == 0), "{mono:?}");
            }
        }
    }
}

#[test]
fn classify_examples() {
    let z = Ring::Integers;
    assert_eq!(classify(&BudLaw::additive(&z, 4)).unwrap(), vec![z.zero(); 3]);
    assert_eq!(classify(&BudLaw::multiplicative(&z, 2)).unwrap(), vec![z.one()]);
}

#[test]
fn height_ge_examples() {
    let r = universal_height_ge(2, 1, 2).unwrap();
    assert!(r.eliminations.is_empty());
    let f2 = f2();
    let f2t = Ring::param_poly(f2.clone(), ["t1"]).unwrap();
    assert_eq!(r.remaining, vec![f2t.param(0).unwrap()]);

    let r = universal_height_ge(2, 2, 4).unwrap();
    assert_eq!(r.eliminations.len(), 1);
    assert_eq!(r.eliminations[0].param, "t1");
    assert_eq!(r.eliminations[0].scalar, f2.one());
    assert!(r.vanishing.iter().all(|a| a.is_zero()));
    // the a_2 coefficient has t3 with scalar 2^3 - 1 = 1 mod 2
    let ring = r.law.ring().clone();
    let Elem::Poly(a2) = &r.remaining[0] else { unreachable!() };
    let t3 = ring.param_index("t3").unwrap();
    assert_eq!(a2.get(&Mono::var(ring.params().len(), t3)), Some(&f2.one()));

    let r = universal_height_ge(3, 1, 3).unwrap();
    assert_eq!(r.remaining.len(), 1);
    // (3^2 - 1) mod 3 = 2
    let f3 = f3();
    let Elem::Poly(a1) = &r.remaining[0] else { unreachable!() };
    assert_eq!(a1.get(&Mono::var(2, 1)), Some(&f3.from_i64(2)));

    assert!(universal_height_ge(2, 2, 3).is_err());
}

#[test]
fn height_ge_law_has_height_at_least_h() {
    let r = universal_height_ge(2, 2, 5).unwrap();
    let ps = r.law.m_series(2);
    assert!(ps.series().lowest_degree().map_or(true, |d| d >= 4));
}

fn ring_for(sel: u8) -> Ring {
    match sel % 3 {
        0 => f2(),
        1 => f3(),
        _ => Ring::mod_n(4).unwrap(),
    }
}

/// A random law: extend degree by degree adding random multiples of `C_m`.
fn random_law(ring: &Ring, n: u32, seeds: &[i64]) -> BudLaw {
    let mut x = BudLaw::additive(ring, 1);
    for m in 2..=n {
        let e = extend_one_degree(&x).unwrap();
        let a = ring.from_i64(seeds[m as usize]);
        x = BudLaw::validate(e.poly().add(&c_poly(m, ring).scale(&a)).unwrap()).unwrap();
    }
    x
}

/// `[k](T)` computed by `k - 1` plain substitutions.
fn k_series_naive(x: &BudLaw, k: u64) -> TruncPoly {
    let t = TruncPoly::var(x.ring(), 1, x.n(), 0);
    let mut acc = t.clone();
    for _ in 1..k {
        acc = x.poly().substitute(&[acc, t.clone()]).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplier_round_trip(sel in 0u8..4, m in 2u32..13, a in -50i64..50) {
        let r = match sel { 0 => Ring::Integers, 1 => f2(), 2 => f3(), _ => Ring::mod_n(4).unwrap() };
        let a = r.from_i64(a);
        prop_assert_eq!(spc_multiplier(&c_poly(m, &r).scale(&a), m).unwrap(), a);
    }

    #[test]
    fn coboundary_correction(sel in 0u8..3, n in 1u32..6, seeds in prop::collection::vec(-5i64..5, 8),
                             gam in prop::collection::vec(-5i64..5, 4)) {
        let r = ring_for(sel);
        let x = random_law(&r, n, &seeds);
        let deg = n + 1;
        let f = x.lifted_poly();
        let mut g = TruncPoly::zero(&r, 2, deg);
        for a in 1..=deg / 2 {
            let c = r.from_i64(gam[a as usize - 1]);
            g = g.add(&basis_cochain(&r, deg, a, deg - a).scale(&c)).unwrap();
        }
        let defect_of = |p: &TruncPoly| {
            let (l, rr) = assoc_sides(p).unwrap();
            l.sub(&rr).unwrap().homogeneous_part(deg)
        };
        let before = defect_of(&f);
        let after = defect_of(&f.add(&g).unwrap());
        prop_assert_eq!(after, before.sub(&coboundary(&g, deg).unwrap()).unwrap());
    }

    #[test]
    fn classify_round_trip(n in 2u32..7, seeds in prop::collection::vec(-5i64..5, 8)) {
        let r = f3();
        let x = random_law(&r, n, &seeds);
        let tau = classify(&x).unwrap();
        let u = universal_law(n).unwrap();
        prop_assert_eq!(u.specialize(&r, &tau).unwrap(), x);
    }

    #[test]
    fn perturbation_changes_defect_by_b(sel in 0u8..3, n in 2u32..7, m in 2u32..7, a in -5i64..5,
                                        seeds in prop::collection::vec(-5i64..5, 8),
                                        fs in prop::collection::vec(-5i64..5, 8)) {
        let r = ring_for(sel);
        let m = m.min(n);
        let x = random_law(&r, n, &seeds);
        let y = random_law(&r, n, &fs);
        let f = TruncPoly::from_terms_truncating(&r, 1, n, fs.iter().enumerate().skip(1).take(m as usize - 1)
            .map(|(d, &c)| (Mono::from_slice(&[d as u32]), r.from_i64(c))));
        let a = r.from_i64(a);
        let g = f.add(&TruncPoly::monomial(&r, 1, n, Mono::from_slice(&[m]), a.clone())).unwrap();
        let df = defect(&f, &x, &y).unwrap().homogeneous_part(m);
        let dg = defect(&g, &x, &y).unwrap().homogeneous_part(m);
        let bm = b_poly(m, &r).with_bound(n).scale(&a);
        prop_assert_eq!(dg, df.add(&bm).unwrap());
    }

    #[test]
    fn truncated_defect_is_multiple_of_c(sel in 0u8..3, n in 2u32..8, m in 2u32..8,
                                          seeds in prop::collection::vec(-5i64..5, 9),
                                          ks in prop::collection::vec(-5i64..5, 9), k in 1u64..6) {
        let r = ring_for(sel);
        let m = m.min(n);
        let x = random_law(&r, n, &seeds);
        // conjugate by a random strict series; the identity is a homomorphism
        // up to degree m - 1 between x^{(m-1)} and a law agreeing below m
        let h = TruncPoly::from_terms_truncating(&r, 1, n, core::iter::once((Mono::from_slice(&[1]), r.one()))
            .chain(ks.iter().enumerate().skip(2).map(|(d, &c)| (Mono::from_slice(&[d as u32]), r.from_i64(c)))));
        let y0 = x.conjugate(&h).unwrap();
        let y = y0;
        let f = h.truncate(m - 1).unwrap().with_bound(n);
        let d = defect(&f, &x, &y).unwrap();
        prop_assert!(d.lowest_degree().map_or(true, |e| e >= m));
        let dm = d.homogeneous_part(m);
        prop_assert!(is_spc(&dm.with_bound(m)));
        let a = spc_multiplier(&dm, m).unwrap();
        // commutator with [k]
        let fm = f.truncate(m).unwrap();
        let xm = x.truncate_law(m).unwrap();
        let ym = y.truncate_law(m).unwrap();
        let lhs = k_series_naive(&ym, k).compose(&fm).unwrap();
        let rhs = fm.compose(&k_series_naive(&xm, k)).unwrap();
        let factor = r.from_bigint(&difference_factor(k, m));
        let corr = TruncPoly::monomial(&r, 1, m, Mono::from_slice(&[m]), r.mul(&factor, &a));
        prop_assert_eq!(lhs.add(&corr).unwrap(), rhs);
    }

    #[test]
    fn difference_lemma(sel in 0u8..3, m in 2u32..8, k in 1u64..7, a in -5i64..5,
                        seeds in prop::collection::vec(-5i64..5, 9)) {
        let r = ring_for(sel);
        let g_prev = random_law(&r, m - 1, &seeds);
        let g = extend_one_degree(&g_prev).unwrap();
        let a = r.from_i64(a);
        let f = BudLaw::validate(g.poly().add(&c_poly(m, &r).scale(&a)).unwrap()).unwrap();
        let lhs = k_series_naive(&f, k);
        let factor = r.from_bigint(&difference_factor(k, m));
        let rhs = k_series_naive(&g, k).add(&TruncPoly::monomial(&r, 1, m, Mono::from_slice(&[m]), r.mul(&factor, &a))).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.m_series(k).series().clone(), k_series_naive(&f, k));
    }
}

#[test]
fn conjugation_defect_sanity() {
    let r = f3();
    let x = BudLaw::multiplicative(&r, 5);
    let h = TruncPoly::from_terms(&r, 1, 5, [(Mono::from_slice(&[1]), r.one()), (Mono::from_slice(&[3]), r.one())]).unwrap();
    let y = x.conjugate(&h).unwrap();
    assert!(hom_check(&h, &x, &y));
}
