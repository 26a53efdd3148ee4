use proptest::collection::vec;
use proptest::prelude::*;

use uncorrset::constructions::{construct, cross_witness, d_value, singleton_witness, two_point_witness, Family};
use uncorrset::determinants::{det2_sigma, direct_eval, sigma_in, Which};
use uncorrset::engine::{condition_lhs, enumerate_box, y_condition_lhs, ASequence, Witness};
use uncorrset::model::{from_y, rescale, to_y, BetaSupport, JointTable, OffsetVector, Support3};
use uncorrset::numeric::{quad_sign, IntPoly, MultiPoly, QuadExt, Rational, Scalar};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| Rational::frac(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn offsets() -> impl Strategy<Value = OffsetVector> {
    [rational(), rational(), rational(), rational()].prop_map(OffsetVector::from_rationals)
}

fn nonzero_offsets() -> impl Strategy<Value = OffsetVector> {
    offsets().prop_filter("nonzero", |x| !x.is_zero())
}

fn positive_support() -> impl Strategy<Value = Support3> {
    (1i64..=20, 1i64..=20, 1i64..=20, 1i64..=4).prop_filter_map("distinct", |(a, b, c, d)| {
        let mut v = [Rational::frac(a, d), Rational::frac(b, d + 1), Rational::frac(c, 1)];
        v.sort();
        if v[0] == v[1] || v[1] == v[2] {
            return None;
        }
        Support3::new(v).ok()
    })
}

fn beta_support() -> impl Strategy<Value = BetaSupport> {
    (1i64..=5, 1i64..=3, 1i64..=4, 1i64..=3).prop_filter_map("beta > 1", |(a, ad, bn, bd)| {
        BetaSupport::new(Rational::frac(a, ad), Rational::frac(bd + bn, bd)).ok()
    })
}

fn sparse_poly() -> impl Strategy<Value = MultiPoly> {
    vec((-5i64..=5, 0u32..=3, 0u32..=3, 0u32..=2), 0..6).prop_map(|terms| {
        let mut p = MultiPoly::zero(3);
        for (c, a, b, e) in terms {
            p = &p + &MultiPoly::term(3, c, vec![a, b, e]);
        }
        p
    })
}

fn lhs(x: &OffsetVector, s: &Support3, j: u32, k: u32) -> Scalar {
    condition_lhs(x, &ASequence::new(s).unwrap(), j, k).unwrap()
}

fn table_ok(t: &JointTable) -> bool {
    let third = Scalar::from(Rational::frac(1, 3));
    let e = t.entries();
    (0..3).all(|i| {
        let row = e[i].iter().fold(Scalar::zero(), |a, v| a.checked_add(v).unwrap());
        let col = (0..3).fold(Scalar::zero(), |a, r| a.checked_add(&e[r][i]).unwrap());
        row == third && col == third && e[i].iter().all(|v| v.sign() >= 0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &(-&a), Rational::zero());
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), Rational::one());
        }
    }

    #[test]
    fn rational_round_trips_through_text(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn isolate_root_nests(d in 2i64..200) {
        prop_assume!(((d as f64).sqrt() as i64).pow(2) != d);
        let p = IntPoly::from_i64(&[-d, 0, 1]);
        let (lo, hi) = (Rational::from(0), Rational::from(d));
        let (l1, h1) = p.isolate_root(&lo, &hi, &Rational::frac(1, 1000)).unwrap();
        let (l2, h2) = p.isolate_root(&lo, &hi, &Rational::frac(1, 1_000_000)).unwrap();
        prop_assert!(p.sign_at(&l1) * p.sign_at(&h1) < 0);
        prop_assert!(p.sign_at(&l2) * p.sign_at(&h2) < 0);
        prop_assert!(l1 <= l2 && h2 <= h1);
        prop_assert!(&h2 - &l2 <= Rational::frac(1, 1_000_000));
    }

    #[test]
    fn multipoly_ring_laws(p in sparse_poly(), q in sparse_poly(), r in sparse_poly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn offsets_induce_thirds(x in nonzero_offsets(), s in positive_support()) {
        let t = JointTable::from_offsets(&rescale(&x).unwrap(), s.clone(), s).unwrap();
        prop_assert!(table_ok(&t));
    }

    #[test]
    fn y_round_trip(x in offsets()) {
        let y = to_y(&x);
        prop_assert_eq!(from_y(&y), x.clone());
        prop_assert_eq!(y.is_zero(), x.is_zero());
    }

    #[test]
    fn oracle_equivalence(x in nonzero_offsets(), s in positive_support(), j in 1u32..=10, k in 1u32..=10) {
        let t = JointTable::from_offsets(&rescale(&x).unwrap(), s.clone(), s.clone()).unwrap();
        prop_assert_eq!(uncorrset::engine::is_uncorrelated(&t, j, k), lhs(&x, &s, j, k).is_zero());
    }

    #[test]
    fn transposition_symmetry(x in nonzero_offsets(), s in positive_support()) {
        let w = Witness::offsets(s.clone(), x.clone());
        let mut flipped: Vec<_> = enumerate_box(&w, 8, 8).unwrap().into_iter().map(|(j, k)| (k, j)).collect();
        flipped.sort();
        prop_assert_eq!(enumerate_box(&Witness::offsets(s, x.transposed()), 8, 8).unwrap(), flipped);
    }

    #[test]
    fn beta_form_equivalence(x in offsets(), bs in beta_support(), j in 1u32..=10, k in 1u32..=10) {
        let by_x = lhs(&x, &bs.support(), j, k).is_zero();
        let by_y = y_condition_lhs(&to_y(&x), bs.beta(), j, k).unwrap().is_zero();
        prop_assert_eq!(by_x, by_y);
    }

    #[test]
    fn column_implication(j in 1u32..=6, k1 in 1u32..=6, k2 in 1u32..=6, s in positive_support()) {
        prop_assume!(k1 != k2);
        // every witness through (j,k1) and (j,k2): kernel of two equations
        let seq = ASequence::new(&s).unwrap();
        let rows: Vec<Vec<Rational>> = [k1, k2].iter().map(|&k| {
            let (aj, ak) = (seq.get(j), seq.get(k));
            vec![Rational::one(), aj.clone(), ak.clone(), &aj * &ak]
        }).collect();
        for v in uncorrset::numeric::RatMatrix::from_rows(rows).nullspace() {
            let x = OffsetVector::from_rationals([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]);
            let found = enumerate_box(&Witness::offsets(s.clone(), x), 8, 8).unwrap();
            prop_assert!((1..=8).all(|k| found.contains(&(j, k))));
        }
    }

    #[test]
    fn cross_maximality(j in 1u32..=4, k in 1u32..=4, pj in 1u32..=6, pk in 1u32..=6, s in positive_support()) {
        prop_assume!(pj != j && pk != k);
        let seq = ASequence::new(&s).unwrap();
        let eq = |a: u32, b: u32| {
            let (aa, ab) = (seq.get(a), seq.get(b));
            vec![Rational::one(), aa.clone(), ab.clone(), &aa * &ab]
        };
        let other = |v: u32| if v == 1 { 2 } else { 1 };
        let rows = vec![eq(j, other(k)), eq(j, k), eq(other(j), k), eq(pj, pk)];
        prop_assert!(uncorrset::numeric::RatMatrix::from_rows(rows).nullspace().is_empty());
    }

    #[test]
    fn a_sequence_decreases(s in positive_support()) {
        let seq = ASequence::new(&s).unwrap();
        for j in 1..50 {
            prop_assert!(seq.get(j) > seq.get(j + 1));
            prop_assert!(seq.get(j) > Rational::one());
        }
    }

    #[test]
    fn cross_lhs_factorizes(j in 1u32..=8, k in 1u32..=8, m in 1u32..=8, n in 1u32..=8) {
        let s = Support3::ints(1, 2, 3).unwrap();
        let seq = ASequence::new(&s).unwrap();
        let x = cross_witness(j, k, &seq).unwrap();
        let want = &(&seq.get(m) - &seq.get(j)) * &(&seq.get(n) - &seq.get(k));
        prop_assert_eq!(lhs(&x, &s, m, n), Scalar::from(want));
    }

    #[test]
    fn singleton_non_members_are_nonzero(j0 in 1u32..=5, k0 in 1u32..=5, j in 1u32..=10, k in 1u32..=10) {
        let s = Support3::ints(1, 2, 3).unwrap();
        let seq = ASequence::new(&s).unwrap();
        let x = singleton_witness(j0, k0, &seq).unwrap();
        prop_assert_eq!(lhs(&x, &s, j, k).sign() == 0, (j, k) == (j0, k0));
    }

    #[test]
    fn two_point_non_members_are_nonzero(a in 1u32..=4, b in 1u32..=4, c in 1u32..=4, d in 1u32..=4, j in 1u32..=8, k in 1u32..=8) {
        prop_assume!(a != c && b != d);
        let s = Support3::ints(1, 2, 3).unwrap();
        let seq = ASequence::new(&s).unwrap();
        let x = two_point_witness((a, b), (c, d), &seq).unwrap();
        let member = (j, k) == (a, b) || (j, k) == (c, d);
        prop_assert_eq!(lhs(&x, &s, j, k).sign() == 0, member);
    }

    #[test]
    fn alternating_determinants(
        p in [nonzero_rational(), nonzero_rational(), nonzero_rational(), nonzero_rational()],
        m in 1u32..=5, dn in 1u32..=4, i in 0usize..4, l in 0usize..4,
    ) {
        prop_assume!(i != l);
        let n = m + dn;
        let mut swapped = p.clone();
        swapped.swap(i, l);
        for which in [Which::F, Which::G] {
            let a = direct_eval(which, m, n, &p).unwrap();
            let b = direct_eval(which, m, n, &swapped).unwrap();
            prop_assert_eq!(a, -b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn quad_sign_matches_float(a in rational(), b in rational(), d in prop::sample::select(vec![2u64, 3, 5, 6, 7])) {
        let f = a.to_f64() + b.to_f64() * (d as f64).sqrt();
        let s = quad_sign(&a, &b, d);
        if f.abs() > 1e-9 {
            prop_assert_eq!(s, f.signum() as i32);
        }
        prop_assert_eq!(s == 0, a.is_zero() && b.is_zero());
        prop_assert_eq!(QuadExt::new(a, b, d).unwrap().sign(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructions_give_valid_tables(j in 1u32..=4, k in 1u32..=4) {
        let s = Support3::ints(1, 2, 3).unwrap();
        let fams = [
            Family::Singleton { support: s.clone(), j, k },
            Family::Vline { support: s.clone(), j },
            Family::Hline { support: s.clone(), k },
            Family::Cross { support: s, j, k },
        ];
        for f in fams {
            let c = construct(&f, (8, 8)).unwrap();
            prop_assert!(table_ok(&c.table.unwrap()));
        }
    }
}

#[test]
fn sigma_difference_factor() {
    for k in 1..=12 {
        let lhs = &(&MultiPoly::var(2, 0) - &MultiPoly::var(2, 1)) * &sigma_in(2, 0, 1, k - 1);
        let rhs = &MultiPoly::var_pow(2, 0, k) - &MultiPoly::var_pow(2, 1, k);
        assert_eq!(lhs, rhs, "k = {k}");
    }
}

#[test]
fn slope_line_d_is_negative_beyond_three() {
    for beta in [Rational::from(2), Rational::frac(15, 8), Rational::from(3)] {
        for j in 4..=12 {
            for k in 1..=12 {
                assert!(d_value(&beta, 2, j, k).signum() < 0, "beta {beta}, D({j},{k})");
            }
        }
    }
}

#[test]
fn det2_factor_is_positive_and_antisymmetric() {
    for m in 1..=6 {
        for j in 0..m {
            let r = det2_sigma(j, m).unwrap();
            assert!(r.result.equal && r.factor_positive && r.factor_symmetric, "({j},{m})");
            assert_eq!(r.result.direct.swap_vars(1, 2), -&r.result.direct);
        }
    }
}
