use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use filliform_core::linalg::{
    cokernel, determinant, rank, signature, smith_normal_form, unimodular_inverse, IntMatrix,
};

fn matrix(max_dim: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-range..=range, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

fn square(max_dim: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(-range..=range, n), n)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

/// A unimodular matrix as a product of elementary column operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..3 * n + 1).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (i, j, k, flip) in ops {
            if i != j {
                u.add_col_multiple(i, j, &BigInt::from(k));
            } else if flip {
                u.negate_col(i);
            }
        }
        u
    })
}

proptest! {
    #[test]
    fn snf_round_trip(a in matrix(5, 9)) {
        let s = smith_normal_form(&a);
        let prod = s.u.mul(&a).unwrap().mul(&s.v).unwrap();
        prop_assert_eq!(prod, s.diagonal_matrix(a.rows(), a.cols()));
        prop_assert!(determinant(&s.u).unwrap().abs().is_one());
        prop_assert!(determinant(&s.v).unwrap().abs().is_one());
        prop_assert_eq!(s.rank(), rank(&a));
        for w in s.d.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn cokernel_order_is_determinant(a in square(4, 6)) {
        let d = determinant(&a).unwrap();
        let c = cokernel(&a);
        if d.is_zero() {
            prop_assert!(c.free_rank > 0);
        } else {
            prop_assert_eq!(c.free_rank, 0);
            prop_assert_eq!(c.torsion_order(), d.abs());
        }
    }

    #[test]
    fn inverse_of_unimodular((n, u) in (1usize..6).prop_flat_map(|n| (Just(n), unimodular(n)))) {
        let inv = unimodular_inverse(&u).unwrap();
        prop_assert_eq!(u.mul(&inv).unwrap(), IntMatrix::identity(n));
    }

    #[test]
    fn signature_is_a_congruence_invariant(
        (diag, u) in (1usize..6).prop_flat_map(|n| (prop::collection::vec(-3i64..=3, n), unimodular(n)))
    ) {
        let d = IntMatrix::diagonal(diag.iter().map(|x| BigInt::from(*x)));
        let sig = signature(&d.congruent(&u).unwrap()).unwrap();
        prop_assert_eq!(sig.plus, diag.iter().filter(|x| **x > 0).count());
        prop_assert_eq!(sig.minus, diag.iter().filter(|x| **x < 0).count());
        prop_assert_eq!(sig.zero, diag.iter().filter(|x| **x == 0).count());
    }
}
