use proptest::collection::btree_map;
use proptest::prelude::*;

use rearrange_lab::comparison::{comparison_function, grad_lp_tree, ComparisonTree};
use rearrange_lab::enumerations::{spiral_index, spiral_label, Enumeration};
use rearrange_lab::lattice::{coarea_check, lp_norm};
use rearrange_lab::rearrangement::{ps_ratio, rearrange};
use rearrange_lab::{Exponent, LatticeFunction, LatticePoint};

fn function() -> impl Strategy<Value = LatticeFunction> {
    btree_map((-4i64..=4, -4i64..=4), 0.01f64..=1.0, 1..15).prop_map(|m| {
        LatticeFunction::from_entries(
            2,
            m.into_iter().map(|((x, y), v)| (LatticePoint::xy(x, y), v)),
        )
        .unwrap()
    })
}

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        (1.0f64..8.0).prop_map(Exponent::Finite),
        Just(Exponent::Infinity)
    ]
}

fn enumeration() -> impl Strategy<Value = Enumeration> {
    prop_oneof![
        Just(Enumeration::spiral(0)),
        Just(Enumeration::wang_wang(0)),
        (0u64..50).prop_map(|s| Enumeration::l1_random(2, s, 0).unwrap()),
    ]
}

proptest! {
    #[test]
    fn spiral_round_trip(x in -500i64..500, y in -500i64..500) {
        let p = LatticePoint::xy(x, y);
        prop_assert_eq!(spiral_label(spiral_index(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn rearrangement_preserves_norms(f in function(), mut e in enumeration(), p in exponent()) {
        let g = rearrange(&f, &mut e).unwrap();
        let (a, b) = (lp_norm(&f, p), lp_norm(&g, p));
        prop_assert!((a - b).abs() <= 1e-12 * a);
        let values: Vec<f64> = (1..=g.len() as u64).map(|k| g.value(e.point(k).unwrap())).collect();
        prop_assert!(values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn comparison_function_preserves_norms(f in function(), p in exponent()) {
        let fc = comparison_function(&f);
        let g = LatticeFunction::from_entries(1, fc.values().iter().enumerate().map(|(i, v)| (LatticePoint::new([i as i64]), *v))).unwrap();
        prop_assert!((lp_norm(&f, p) - lp_norm(&g, p)).abs() <= 1e-12 * lp_norm(&f, p));
    }

    #[test]
    fn comparison_lemma(f in function(), p in exponent()) {
        let t = ComparisonTree::z2(200).unwrap();
        let lhs = grad_lp_tree(&comparison_function(&f), &t, p).unwrap();
        let rhs = rearrange_lab::lattice::grad_lp(&f, p);
        prop_assert!(lhs <= rhs * (1.0 + 1e-9));
    }

    #[test]
    fn ratio_is_scale_invariant(f in function(), p in exponent(), lambda in 0.01f64..100.0) {
        let mut e = Enumeration::spiral(0);
        let a = ps_ratio(&f, &mut e, p).unwrap().norm_ratio;
        let b = ps_ratio(&f.scale(&lambda).unwrap(), &mut e, p).unwrap().norm_ratio;
        prop_assert!((a - b).abs() <= 1e-9 * a);
    }

    #[test]
    fn spiral_is_optimal_at_p1(f in function()) {
        let r = ps_ratio(&f, &mut Enumeration::spiral(0), Exponent::Finite(1.0)).unwrap().norm_ratio;
        prop_assert!(r <= 1.0 + 1e-9);
    }

    #[test]
    fn wang_is_optimal_at_infinity(f in function()) {
        let r = ps_ratio(&f, &mut Enumeration::wang_wang(0), Exponent::Infinity).unwrap().norm_ratio;
        prop_assert!(r <= 1.0 + 1e-9);
    }

    #[test]
    fn coarea_in_floating_point(f in function(), p in 1.0f64..6.0) {
        let (lhs, rhs) = coarea_check(&f, Exponent::Finite(p)).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.max(1.0));
    }
}
