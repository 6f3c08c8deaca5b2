mod common;

use common::{core_strategy, element_strategy};
use leavitt_core::gauge::{gauge_act, project, shift_endo};
use leavitt_core::invariants::{
    classify_iso, k0_contains, supernatural_of, AlgebraDescriptor, Exponent, GeneratorSequence,
    SupernaturalNumber,
};
use leavitt_core::json::{element_from_json, element_to_json};
use leavitt_core::lpnorm::{opnorm, opnorm_exact, vec_norm, CMatrix, NormConfig, PExponent};
use leavitt_core::uhf::{expect_to_level, phi, phi_inv, trace};
use leavitt_core::witness::witness;
use leavitt_core::{format_element, parse_element, LeavittElement, Scalar, Word};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn d_and_three() -> impl Strategy<Value = (LeavittElement, LeavittElement, LeavittElement)> {
    (2u32..=3).prop_flat_map(|d| (element_strategy(d), element_strategy(d), element_strategy(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in d_and_three()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_agrees_with_monomial_route((a, b, _) in d_and_three()) {
        let fast = &a * &b;
        prop_assert_eq!(&fast, &a.mul_by_monomials(&b).unwrap());
        prop_assert!(fast.equals_expanded(&a.mul_by_monomials(&b).unwrap()).unwrap());
    }

    #[test]
    fn star_is_an_involutive_antihomomorphism((a, b, _) in d_and_three()) {
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
        prop_assert_eq!((&a + &b).star(), &a.star() + &b.star());
    }

    #[test]
    fn canonical_form_is_minimal(a in element_strategy(2)) {
        for c in a.components() {
            prop_assert!(c.contract_once().is_none());
            prop_assert_eq!(&c.expand().contract(), c);
            prop_assert_eq!(&c.expand_to(c.level() + 2).contract(), c);
        }
    }

    #[test]
    fn text_and_json_round_trip(a in element_strategy(3)) {
        prop_assert_eq!(parse_element(3, &format_element(&a)).unwrap(), a.clone());
        prop_assert_eq!(element_from_json(&element_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn projections_decompose(a in element_strategy(2), lam in (-3i64..=3, 1i64..=3, -3i64..=3)) {
        let mut sum = LeavittElement::zero(2);
        for n in -3..=3 {
            let pn = project(&a, n);
            prop_assert_eq!(project(&pn, n), pn.clone());
            prop_assert!(project(&pn, n + 1).is_zero());
            let lambda = Scalar::gaussian((lam.0, lam.1), (lam.2, 1));
            if !lambda.is_zero() {
                prop_assert_eq!(gauge_act(&pn, &lambda).unwrap(), pn.scale(&lambda.pow(n).unwrap()));
            }
            sum = &sum + &pn;
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn gauge_is_multiplicative((a, b, _) in d_and_three()) {
        let lambda = Scalar::gaussian((3, 5), (-4, 5));
        let ab = gauge_act(&(&a * &b), &lambda).unwrap();
        prop_assert_eq!(ab, &gauge_act(&a, &lambda).unwrap() * &gauge_act(&b, &lambda).unwrap());
    }

    #[test]
    fn shift_laws(a in element_strategy(2), b in element_strategy(2)) {
        prop_assert_eq!(shift_endo(&(&a * &b), 1).unwrap(), &shift_endo(&a, 1).unwrap() * &shift_endo(&b, 1).unwrap());
        let twice = shift_endo(&shift_endo(&a, 1).unwrap(), 1).unwrap();
        prop_assert_eq!(shift_endo(&a, 2).unwrap(), twice);
        for n in -2..=2 {
            prop_assert_eq!(shift_endo(&project(&a, n), 2).unwrap(), project(&shift_endo(&a, 2).unwrap(), n));
        }
    }

    #[test]
    fn trace_laws(a in core_strategy(3), b in core_strategy(3)) {
        prop_assert_eq!(trace(&(&a * &b)).unwrap(), trace(&(&b * &a)).unwrap());
        prop_assert_eq!(trace(&shift_endo(&a, 1).unwrap()).unwrap(), trace(&a).unwrap());
        prop_assert_eq!(trace(&a.star()).unwrap(), trace(&a).unwrap().conj());
        for m in 0..=3 {
            prop_assert_eq!(trace(&expect_to_level(&a, m).unwrap()).unwrap(), trace(&a).unwrap());
        }
    }

    #[test]
    fn expectation_laws(b in core_strategy(2), x in core_strategy(2), y in core_strategy(2)) {
        for m in 0..=2 {
            let x = expect_to_level(&x, m).unwrap();
            let y = expect_to_level(&y, m).unwrap();
            let e = expect_to_level(&b, m).unwrap();
            prop_assert!(e.level() <= m);
            prop_assert_eq!(expect_to_level(&e, m).unwrap(), e.clone());
            let sandwich = LeavittElement::product_of(&[&x, &b, &y]).unwrap();
            prop_assert_eq!(expect_to_level(&sandwich, m).unwrap(), LeavittElement::product_of(&[&x, &e, &y]).unwrap());
            for k in 0..=m {
                prop_assert_eq!(expect_to_level(&e, k).unwrap(), expect_to_level(&b, k).unwrap());
            }
        }
    }

    #[test]
    fn matrix_picture_is_a_homomorphism(a in core_strategy(2), b in core_strategy(2)) {
        let m = a.level().max(b.level());
        let (ma, mb) = (phi_inv(&a, m).unwrap(), phi_inv(&b, m).unwrap());
        prop_assert_eq!(phi(&ma), a.clone());
        prop_assert_eq!(phi(&ma.mul(&mb).unwrap()), &a * &b);
        prop_assert_eq!(ma.normalized_trace(), trace(&a).unwrap());
    }
}

fn complex_matrix(n: usize, m: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * m)
        .prop_map(move |v| CMatrix::from_iterator(n, m, v.into_iter().map(|(re, im)| Complex64::new(re, im))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn norm_intervals_are_sound(a in (1usize..=5, 1usize..=5).prop_flat_map(|(n, m)| complex_matrix(n, m)), pi in 0usize..5) {
        let p: PExponent = ["1", "1.3", "2", "2.5", "inf"][pi].parse().unwrap();
        let iv = opnorm(&a, p, &NormConfig::default()).unwrap();
        prop_assert!(iv.lower <= iv.upper);
        let x = &iv.witness;
        let ax = &a * nalgebra::DVector::from_column_slice(x);
        let realized = vec_norm(ax.as_slice(), p) / vec_norm(x, p);
        prop_assert!((realized - iv.lower).abs() <= 1e-9 * iv.lower.max(1.0));
        if let Ok(exact) = opnorm_exact(&a, p) {
            prop_assert!((iv.lower - exact).abs() <= 1e-8 && (iv.upper - exact).abs() <= 1e-8);
        }
        let scaled = opnorm(&a.map(|v| v * Complex64::new(0.0, 2.0)), p, &NormConfig::default()).unwrap();
        prop_assert!(scaled.upper >= 2.0 * iv.lower - 1e-9 && 2.0 * iv.upper >= scaled.lower - 1e-9);
    }

    #[test]
    fn witnesses_certify(a in element_strategy(2)) {
        prop_assume!(!a.is_zero());
        let pair = witness(&a).unwrap();
        prop_assert!(LeavittElement::product_of(&[&pair.x, &a, &pair.y]).unwrap().is_one());
    }
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn sequence_strategy() -> impl Strategy<Value = GeneratorSequence> {
    (prop::collection::vec(2u64..=30, 0..4), prop::collection::vec(2u64..=30, 1..4))
        .prop_map(|(pre, per)| GeneratorSequence::new(pre, per).unwrap())
}

proptest! {
    #[test]
    fn supernatural_shift_stability(seq in sequence_strategy(), k in 0usize..6) {
        let n = supernatural_of(&seq);
        let m = supernatural_of(&seq.drop_front(k));
        let infinite = |s: &SupernaturalNumber| {
            s.exponents().iter().filter(|(_, e)| **e == Exponent::Infinite).map(|(t, _)| *t).collect::<Vec<_>>()
        };
        prop_assert_eq!(infinite(&n), infinite(&m));
        for (t, e) in m.exponents() {
            prop_assert!(*e <= n.exponent(*t));
        }
    }

    #[test]
    fn k0_is_a_subgroup(seq in sequence_strategy(), a in (-50i64..50, 1i64..200), b in (-50i64..50, 1i64..200)) {
        let n = supernatural_of(&seq);
        let (x, y) = (rational(a.0, a.1), rational(b.0, b.1));
        if k0_contains(&n, &x) && k0_contains(&n, &y) {
            prop_assert!(k0_contains(&n, &(&x + &y)));
            prop_assert!(k0_contains(&n, &-&x));
        }
        prop_assert!(k0_contains(&n, &rational(a.0, 1)));
    }

    #[test]
    fn isomorphism_is_an_equivalence(descs in prop::collection::vec((0usize..3, 0usize..3), 3)) {
        let ps = ["1", "3/2", "3"];
        let ns = ["2^inf", "3^inf", "2^inf*3"];
        let ds: Vec<_> = descs.iter().map(|&(p, n)| AlgebraDescriptor::parse(ps[p], ns[n]).unwrap()).collect();
        for a in &ds {
            prop_assert!(classify_iso(a, a));
            for b in &ds {
                prop_assert_eq!(classify_iso(a, b), classify_iso(b, a));
                for c in &ds {
                    if classify_iso(a, b) && classify_iso(b, c) {
                        prop_assert!(classify_iso(a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn shift_commutes_with_matrix_units_exhaustively() {
    let a = parse_element(2, "s1 t2 + 3 s21 - (1+1i) t12 + s2 t221").unwrap();
    for r in 1..=2 {
        let shifted = shift_endo(&a, r).unwrap();
        for alpha in Word::all(2, r) {
            for beta in Word::all(2, r) {
                let e = LeavittElement::matrix_unit(alpha.clone(), beta).unwrap();
                assert_eq!(&shifted * &e, &e * &shifted);
            }
        }
    }
}
