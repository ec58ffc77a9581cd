use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use filliform_core::linalg::{determinant, IntMatrix, Rational};
use filliform_core::surgery::{
    classify, cobordism_b2, complement_b1, dual_knot, extended_link, homology, knot_order, rational_linking,
    zero_slope, FramedLink, KnotInPresentation, KnotOrder, SurgeryCase,
};

fn knot() -> impl Strategy<Value = KnotInPresentation> {
    (0usize..=4).prop_flat_map(|m| {
        (prop::collection::vec(-3i64..=3, m * (m + 1) / 2), prop::collection::vec(-3i64..=3, m), -3i64..=3).prop_map(
            move |(upper, ell, f)| {
                let mut a = IntMatrix::zeros(m, m);
                let mut it = upper.into_iter();
                for i in 0..m {
                    for j in i..m {
                        let x = BigInt::from(it.next().unwrap());
                        a[(i, j)] = x.clone();
                        a[(j, i)] = x;
                    }
                }
                let link = FramedLink::from_matrix(a).unwrap();
                KnotInPresentation::new(link, ell.into_iter().map(BigInt::from).collect(), BigInt::from(f)).unwrap()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn trichotomy_matches_b1(k in knot()) {
        let case = classify(&k).unwrap();
        let before = homology(&k.link).b1 as i64;
        let after = homology(&extended_link(&k)).b1 as i64;
        let want = match after - before {
            -1 => SurgeryCase::One,
            1 => SurgeryCase::Two,
            _ => SurgeryCase::Three,
        };
        prop_assert_eq!(case, want);
        // filling the complement along any slope but lambda_0 lowers b1 by one
        let extra = if case == SurgeryCase::Three { 1 } else { 0 };
        prop_assert_eq!(complement_b1(&k) as i64, before.max(after) + extra);
    }

    #[test]
    fn order_is_divisibility_times_intersection(k in knot()) {
        let s = zero_slope(&k).unwrap();
        let prod = &s.d * &s.mu_dot_lambda0;
        match knot_order(&k) {
            KnotOrder::Finite(o) => prop_assert_eq!(o, prod),
            KnotOrder::Infinite => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn dual_knot_reverses_the_surgery(k in knot()) {
        let d = dual_knot(&k);
        prop_assert_eq!(homology(&extended_link(&d)), homology(&k.link));
        let swapped = match classify(&k).unwrap() {
            SurgeryCase::One => SurgeryCase::Two,
            SurgeryCase::Two => SurgeryCase::One,
            SurgeryCase::Three => SurgeryCase::Three,
        };
        prop_assert_eq!(classify(&d).unwrap(), swapped);
    }

    #[test]
    fn linking_is_a_determinant_ratio(k in knot()) {
        // det [[L, l], [l^T, f]] = det L (f - l^T L^-1 l)
        let dl = determinant(k.link.matrix()).unwrap();
        prop_assume!(!dl.is_zero());
        let de = determinant(extended_link(&k).matrix()).unwrap();
        prop_assert_eq!(rational_linking(&k).unwrap(), Rational::new(de, dl));
    }

    #[test]
    fn cobordism_sign(k in knot()) {
        let b = cobordism_b2(&k).unwrap();
        prop_assert_eq!(b.b2_plus + b.b2_minus + b.b2_zero, complement_b1(&k));
        if b.case == SurgeryCase::Three {
            let lk = rational_linking(&k).unwrap();
            prop_assert_eq!(b.b2_plus == 1, lk.is_positive());
            prop_assert_eq!(b.b2_minus == 1, lk.is_negative());
        } else {
            prop_assert_eq!(b.b2_plus + b.b2_minus, 0);
        }
    }
}
