mod common;

use common::*;
use num_complex::Complex64;
use paired::operators::{apply_s, apply_sigma, commutator_residual, composition_residual, norm_bounds, op_norm};
use paired::symbols::{classify, conj_reflect};
use paired::{parse_symbol, LaurentPoly, PairedSpec};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Complex64> {
    (-4i32..=4, -4i32..=4).prop_map(|(re, im)| Complex64::new(re as f64 / 4.0, im as f64 / 4.0))
}

fn poly(lo: i64, hi: i64) -> impl Strategy<Value = LaurentPoly> {
    (lo..=hi, 0usize..=4)
        .prop_flat_map(|(start, len)| (Just(start), prop::collection::vec(coeff(), len)))
        .prop_map(|(start, cs)| LaurentPoly::from_dense(start, cs))
}

fn any_poly() -> impl Strategy<Value = LaurentPoly> {
    poly(-4, 2)
}

fn analytic() -> impl Strategy<Value = LaurentPoly> {
    poly(0, 2)
}

fn coanalytic() -> impl Strategy<Value = LaurentPoly> {
    poly(-4, 0).prop_map(|p| p.restrict(-8, 0))
}

fn spec() -> impl Strategy<Value = PairedSpec> {
    (any_poly(), any_poly()).prop_map(|(a, b)| PairedSpec::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parses_back(p in any_poly()) {
        let back = parse_symbol(&p.to_string()).unwrap();
        prop_assert!((&back - &p).norm_max() <= 1e-15);
    }

    #[test]
    fn riesz_projections_split_the_identity(f in any_poly()) {
        prop_assert_eq!(&f.riesz_plus() + &f.riesz_minus(), f.clone());
        prop_assert!(f.riesz_plus().inner(&f.riesz_minus()).norm() == 0.0);
    }

    #[test]
    fn apply_matches_the_naive_applier(s in spec(), f in any_poly()) {
        let (a, b) = (coeffs(&s.a), coeffs(&s.b));
        prop_assert!(dist(&coeffs(&apply_s(&s, &f)), &common::apply_s(&a, &b, &coeffs(&f))) <= 1e-14);
        prop_assert!(dist(&coeffs(&apply_sigma(&s, &f)), &common::apply_sigma(&a, &b, &coeffs(&f))) <= 1e-14);
    }

    #[test]
    fn sigma_of_conjugates_is_the_adjoint(s in spec(), f in any_poly(), g in any_poly()) {
        let lhs = apply_s(&s, &f).inner(&g);
        let rhs = f.inner(&apply_sigma(&s.conj(), &g));
        prop_assert!((lhs - rhs).norm() <= 1e-13);
    }

    #[test]
    fn conj_reflect_is_a_multiplicative_involution(a in any_poly(), b in any_poly()) {
        prop_assert_eq!(conj_reflect(&conj_reflect(&a)), a.clone());
        prop_assert_eq!(conj_reflect(&(&a * &b)), &conj_reflect(&a) * &conj_reflect(&b));
    }

    #[test]
    fn conj_reflect_swaps_analytic_and_coanalytic(a in analytic()) {
        prop_assert!(classify(&conj_reflect(&a)).is_coanalytic());
        prop_assert!(classify(&a).is_analytic());
    }

    #[test]
    fn products_agree_with_pointwise_values(a in any_poly(), b in any_poly(), t in 0.0f64..6.3) {
        let z = Complex64::from_polar(1.0, t);
        let lhs = (&a * &b).eval(z);
        let rhs = a.eval(z) * b.eval(z);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        prop_assert!((eval(&coeffs(&a), z) - a.eval(z)).norm() <= 1e-12);
    }

    #[test]
    fn conforming_compositions_are_paired(s in spec(), at in analytic(), bt in coanalytic()) {
        let t = PairedSpec::new(at, bt);
        let r = composition_residual(&s, &t, 8).unwrap();
        prop_assert!(r.residual <= 1e-12);
        prop_assert!(r.discrepancy <= 1e-12);
    }

    #[test]
    fn composition_defect_matches_its_formula(s in spec(), t in spec()) {
        let r = composition_residual(&s, &t, 8).unwrap();
        prop_assert!(r.discrepancy <= 1e-12);
        let c = commutator_residual(&s, &t, 8).unwrap();
        prop_assert!(c.identity_discrepancy <= 1e-12);
    }

    #[test]
    fn norm_lies_in_the_sandwich(s in spec()) {
        let b = norm_bounds(&s, 1024);
        let n = op_norm(&s, 16).unwrap();
        prop_assert!(n <= b.upper() * (1.0 + 1e-9) + 1e-12);
        prop_assert!(n <= op_norm(&s, 24).unwrap() + 1e-12);
    }

    #[test]
    fn scaling_both_symbols_scales_the_operator(s in spec(), f in any_poly(), eta in coeff()) {
        let scaled = PairedSpec::new(s.a.scale(eta), s.b.scale(eta));
        prop_assert!((&apply_s(&scaled, &f) - &apply_s(&s, &f).scale(eta)).norm_max() <= 1e-14);
    }

    #[test]
    fn spec_json_round_trips(s in spec()) {
        let text = serde_json::to_string(&s).unwrap();
        let back: PairedSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, s);
    }
}
