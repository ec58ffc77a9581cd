//! Exact basis reduction on a positive-definite Gram matrix.
//!
//! Used only to precondition enumeration; callers never see the reduced
//! basis except through the transform they asked for.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{rat, round_rational, IntMatrix, Rational};

/// Gram-Schmidt data of a positive-definite Gram matrix: `mu[i][j]` for
/// `j < i` and squared lengths `b[i]`.
pub(crate) struct Gso {
    pub mu: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
}

pub(crate) fn gso(g: &[Vec<Rational>]) -> Gso {
    let n = g.len();
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut b = vec![Rational::zero(); n];
    // r[i][j] = <b_i, b*_j>
    let mut r = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut v = g[i][j].clone();
            for k in 0..j {
                v -= &mu[j][k] * &r[i][k];
            }
            if j < i {
                mu[i][j] = &v / &b[j];
                r[i][j] = v;
            } else {
                b[i] = v;
            }
        }
        mu[i][i] = Rational::one();
    }
    Gso { mu, b }
}

/// Replaces basis vector `k` by `b_k - q b_j`.
fn sub_multiple(g: &mut [Vec<Rational>], t: &mut IntMatrix, k: usize, j: usize, q: &BigInt) {
    let qr = Rational::from_integer(q.clone());
    let n = g.len();
    for i in 0..n {
        let v = &qr * &g[i][j];
        g[i][k] -= v;
    }
    for i in 0..n {
        let v = &qr * &g[j][i];
        g[k][i] -= v;
    }
    t.add_col_multiple(k, j, &-q);
}

fn swap(g: &mut [Vec<Rational>], t: &mut IntMatrix, a: usize, b: usize) {
    g.swap(a, b);
    for row in g.iter_mut() {
        row.swap(a, b);
    }
    t.swap_cols(a, b);
}

/// LLL with parameter 3/4. Returns `(g', t)` with `t` unimodular and
/// `g' = t^T g t`.
pub(crate) fn lll_gram(g: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, IntMatrix) {
    let n = g.len();
    let mut g = g.to_vec();
    let mut t = IntMatrix::identity(n);
    if n < 2 {
        return (g, t);
    }
    let delta = rat(3, 4);
    let half = rat(1, 2);
    let mut k = 1;
    while k < n {
        let s = gso(&g);
        let m = s.mu[k][k - 1].clone();
        if m.abs() > half {
            let q = round_rational(&m);
            sub_multiple(&mut g, &mut t, k, k - 1, &q);
            continue;
        }
        if s.b[k] < (&delta - &m * &m) * &s.b[k - 1] {
            swap(&mut g, &mut t, k, k - 1);
            k = (k - 1).max(1);
            continue;
        }
        for j in (0..k.saturating_sub(1)).rev() {
            let s = gso(&g);
            let m = &s.mu[k][j];
            if m.abs() > half {
                let q = round_rational(m);
                sub_multiple(&mut g, &mut t, k, j, &q);
            }
        }
        k += 1;
    }
    (g, t)
}

/// LLL-reduces an integral positive-definite Gram matrix, then sorts the
/// basis by norm (stable). Returns `(g', t)` with `g' = t^T g t`.
pub(crate) fn reduce_int(g: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (_, mut t) = lll_gram(&g.to_rational());
    let mut red = g.congruent(&t).expect("square");
    let n = g.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| red[(a, a)].cmp(&red[(b, b)]));
    t = t.select_columns(&order);
    red = g.congruent(&t).expect("square");
    (red, t)
}
