use kbhom_core::calculus::{
    blowup_hodge, blowup_kb, blowup_point_kb, flag_manifold_kb, kunneth_dims, leray_hirsch_hh, projective_bundle_hodge,
    BlowupData, ClassBidegrees,
};
use kbhom_core::kbengine::{euler_char, hkr_hochschild, HodgeDiamond, KBDims};
use proptest::prelude::*;

fn kb_strategy() -> impl Strategy<Value = KBDims> {
    (0usize..4).prop_flat_map(|n| {
        prop::collection::vec(0usize..6, 2 * n + 1).prop_map(move |v| KBDims::from_vec(n, v).unwrap())
    })
}

fn diamond(n: usize) -> impl Strategy<Value = HodgeDiamond> {
    prop::collection::vec(prop::collection::vec(0usize..5, n + 1), n + 1).prop_map(|h| HodgeDiamond::from_rows(h).unwrap())
}

fn shifted(d: &KBDims, by: i64) -> i64 {
    // χ of the table shifted up by `by` degrees
    if by % 2 == 0 {
        euler_char(d)
    } else {
        -euler_char(d)
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn kunneth_algebra(a in kb_strategy(), b in kb_strategy(), c in kb_strategy()) {
        prop_assert_eq!(kunneth_dims(&a, &b), kunneth_dims(&b, &a));
        prop_assert_eq!(
            kunneth_dims(&kunneth_dims(&a, &b), &c),
            kunneth_dims(&a, &kunneth_dims(&b, &c))
        );
        let pt = KBDims::from_vec(0, vec![1]).unwrap();
        prop_assert_eq!(kunneth_dims(&pt, &a), a.clone());
        prop_assert_eq!(euler_char(&kunneth_dims(&a, &b)), euler_char(&a) * euler_char(&b));
    }

    #[test]
    fn blowup_bookkeeping((hx, hy, r) in (2usize..4, 0usize..3).prop_flat_map(|(r, ny)| (diamond(ny + r), diamond(ny), Just(r)))) {
        let bx = blowup_hodge(&hx, &hy, r).unwrap();
        let he = projective_bundle_hodge(&hy, r).unwrap();
        prop_assert_eq!(he.n, hx.n - 1);
        for p in 0..=hx.n as i64 {
            for q in 0..=hx.n as i64 {
                prop_assert_eq!(
                    bx.get(p, q) + hy.get(p - r as i64, q - r as i64),
                    hx.get(p, q) + he.get(p - 1, q - 1)
                );
            }
        }
    }

    #[test]
    fn blowup_euler_additivity(x in prop::collection::vec(0usize..6, 7), y in prop::collection::vec(0usize..3, 3), e in prop::collection::vec(0usize..6, 5)) {
        // n_X = 3, r = 2, n_Y = 1, n_E = 2
        let x = KBDims::from_vec(3, x).unwrap();
        let y = KBDims::from_vec(1, y).unwrap();
        let e = KBDims::from_vec(2, e).unwrap();
        let d = BlowupData::new(2, x.clone(), y.clone(), e.clone()).unwrap();
        if let Ok(b) = blowup_kb(&d) {
            prop_assert_eq!(euler_char(&b), euler_char(&x) + shifted(&e, 1) - shifted(&y, 2));
            for k in 0..=6i64 {
                prop_assert!(e.get(k - 1) + x.get(k) >= y.get(k - 2));
            }
        }
    }

    #[test]
    fn leray_hirsch_matches_projective_bundles(diag in prop::collection::vec(0usize..4, 1..4), r in 1usize..4) {
        let hy = HodgeDiamond::diagonal(&diag);
        let via_lh = leray_hirsch_hh(&hkr_hochschild(&hy), &ClassBidegrees::projective(r));
        let via_hodge = hkr_hochschild(&projective_bundle_hodge(&hy, r).unwrap());
        for k in -6i64..=6 {
            prop_assert_eq!(via_lh.get(k), via_hodge.get(k));
        }
    }

    #[test]
    fn point_blowup_agrees_with_general_rule(n in 2usize..6, v in prop::collection::vec(0usize..5, 11)) {
        let x = KBDims::from_vec(n, v[..2 * n + 1].to_vec()).unwrap();
        let pt = KBDims::from_vec(0, vec![1]).unwrap();
        let d = BlowupData::new(n, x.clone(), pt, flag_manifold_kb(n - 1, n).unwrap()).unwrap();
        prop_assert_eq!(blowup_kb(&d).unwrap(), blowup_point_kb(&x).unwrap());
    }
}
