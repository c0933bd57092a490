//! Property-based invariants for norms, bounds and the iteration.

use orlicz_szlenk::bounds::{
    exact_radius, lower_radius, lp_radius, radius_profile, upper_radius, EquivalenceConstants,
    ModulusTriple,
};
use orlicz_szlenk::iteration::{iterate_radii, lp_radius_fn, DEFAULT_MAX_N};
use orlicz_szlenk::orlicz::{
    luxemburg_norm, mab_constants, quartic_norm_closed_form, OrliczFunction,
};
use orlicz_szlenk::sparse::{lp_norm, SparseVector};
use proptest::prelude::*;

fn sparse_vec() -> impl Strategy<Value = SparseVector> {
    proptest::collection::btree_map(1u64..=30, -10.0f64..10.0, 0..8).prop_map(|m| {
        SparseVector::from_pairs(m.into_iter().filter(|&(_, v)| v.abs() > 1e-6)).unwrap()
    })
}

fn orlicz_functions() -> impl Strategy<Value = OrliczFunction> {
    prop_oneof![
        (1.0f64..4.0).prop_map(|q| OrliczFunction::power(q).unwrap()),
        (0.0f64..3.0, 0.1f64..2.0).prop_map(|(a, b)| OrliczFunction::quartic(a, b).unwrap()),
    ]
}

proptest! {
    #[test]
    fn luxemburg_is_absolutely_homogeneous(
        m in orlicz_functions(),
        x in sparse_vec(),
        c in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0],
    ) {
        let base = luxemburg_norm(&m, &x).unwrap();
        let scaled = luxemburg_norm(&m, &x.scale(c)).unwrap();
        let want = c.abs() * base;
        prop_assert!((scaled - want).abs() <= 1e-10 * want.max(1.0));
    }

    #[test]
    fn luxemburg_satisfies_triangle_inequality(
        m in orlicz_functions(),
        x in sparse_vec(),
        y in sparse_vec(),
    ) {
        let lhs = luxemburg_norm(&m, &x.add(&y)).unwrap();
        let rhs = luxemburg_norm(&m, &x).unwrap() + luxemburg_norm(&m, &y).unwrap();
        prop_assert!(lhs <= rhs + 1e-9);
    }

    #[test]
    fn quartic_norm_is_sandwiched_by_constants(
        a in 0.0f64..3.0,
        b in 0.1f64..2.0,
        x in sparse_vec(),
    ) {
        let m = OrliczFunction::quartic(a, b).unwrap();
        let (c1, c2) = mab_constants(a, b).unwrap();
        let l2 = lp_norm(2.0, &x).unwrap();
        let norm = luxemburg_norm(&m, &x).unwrap();
        prop_assert!(c1 * l2 <= norm + 1e-9);
        prop_assert!(norm <= c2 * l2 + 1e-9);
    }

    #[test]
    fn quartic_norm_matches_closed_form(
        a in 0.0f64..3.0,
        b in 0.1f64..2.0,
        x in sparse_vec(),
    ) {
        let m = OrliczFunction::quartic(a, b).unwrap();
        let lux = luxemburg_norm(&m, &x).unwrap();
        let cf = quartic_norm_closed_form(a, b, &x).unwrap();
        prop_assert!((lux - cf).abs() <= 1e-9 * lux.max(1.0));
    }

    #[test]
    fn luxemburg_normalizes_the_unit_sum(m in orlicz_functions(), x in sparse_vec()) {
        prop_assume!(!x.is_zero());
        let lambda = luxemburg_norm(&m, &x).unwrap();
        let sum: f64 = x.values().map(|v| m.evaluate(v.abs() / lambda).unwrap()).sum();
        prop_assert!((sum - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn inverse_inverts_evaluate(m in orlicz_functions(), t in 0.0f64..1000.0) {
        let back = m.inverse(m.evaluate(t).unwrap()).unwrap();
        prop_assert!((back - t).abs() <= 1e-10 * t.max(1.0));
    }

    #[test]
    fn bounds_are_ordered_and_monotone(
        q in 1.1f64..4.0,
        c1 in 0.5f64..1.5,
        ratio in 1.0f64..1.6,
    ) {
        let triple = ModulusTriple::power(q).unwrap();
        let consts = EquivalenceConstants::new(c1, c1 * ratio).unwrap();
        let grid: Vec<f64> = (1..40).map(|i| 0.05 * i as f64).collect();
        let profile = radius_profile(&triple, &consts, &grid).unwrap();
        for i in 0..grid.len() {
            if let Some(lower) = profile.lower[i] {
                prop_assert!(lower <= profile.upper[i] + 1e-10);
            }
            if i > 0 {
                prop_assert!(profile.upper[i] <= profile.upper[i - 1] + 1e-10);
                if let (Some(a), Some(b)) = (profile.lower[i], profile.lower[i - 1]) {
                    prop_assert!(a <= b + 1e-10);
                }
            }
        }
    }

    #[test]
    fn unit_constants_collapse_bounds_to_exact(q in 1.1f64..4.0, eps in 0.05f64..1.9) {
        let triple = ModulusTriple::power(q).unwrap();
        let consts = EquivalenceConstants::unit();
        let exact = exact_radius(&triple, eps).unwrap();
        let upper = upper_radius(&triple, &consts, eps).unwrap();
        let lower = lower_radius(&triple, &consts, eps).unwrap();
        prop_assert!((upper - exact).abs() <= 1e-10);
        prop_assert!((lower - exact).abs() <= 1e-10);
    }

    #[test]
    fn recursion_steps_factor_through_the_radius_function(
        p in 1.2f64..5.0,
        eps in 0.2f64..1.8,
    ) {
        let trace = iterate_radii(lp_radius_fn(p), eps, DEFAULT_MAX_N).unwrap();
        for w in trace.radii.windows(2) {
            let step = lp_radius(p, eps / w[0]).unwrap();
            prop_assert_eq!(w[1], w[0] * step);
        }
    }
}
