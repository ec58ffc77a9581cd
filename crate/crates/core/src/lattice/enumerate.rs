//! Exact Fincke-Pohst enumeration of lattice points in an ellipsoid.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::reduce::reduce_int;
use crate::linalg::{round_rational, IntMatrix, Rational};

/// Quadratic form `Q(x) = sum_i q[i] (x_i + sum_{j>i} mu[i][j] x_j)^2`.
pub(crate) struct Enumerator {
    q: Vec<Rational>,
    mu: Vec<Vec<Rational>>,
}

impl Enumerator {
    /// Decomposes a positive-definite Gram matrix; fails otherwise.
    pub fn new(g: &[Vec<Rational>]) -> Result<Self> {
        let n = g.len();
        let mut a = g.to_vec();
        for i in 0..n {
            if !a[i][i].is_positive() {
                return Err(Error::NotDefinite("positive definite"));
            }
            for j in i + 1..n {
                a[j][i] = a[i][j].clone();
                a[i][j] = &a[i][j] / &a[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let v = &a[k][i] * &a[i][l];
                    a[k][l] -= v;
                }
            }
        }
        let q = (0..n).map(|i| a[i][i].clone()).collect();
        let mu =
            (0..n).map(|i| (0..n).map(|j| if j > i { a[i][j].clone() } else { Rational::zero() }).collect()).collect();
        Ok(Enumerator { q, mu })
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    /// Visits every integer `z` with `Q(z - center) <= bound`. The visitor
    /// receives `z` and the exact value and may return a smaller bound.
    pub fn visit<F>(&self, center: &[Rational], bound: Rational, visit: &mut F)
    where
        F: FnMut(&[BigInt], &Rational) -> Option<Rational>,
    {
        let n = self.dim();
        let mut bound = bound;
        if bound.is_negative() {
            return;
        }
        let mut z = vec![BigInt::zero(); n];
        if n == 0 {
            visit(&z, &Rational::zero());
            return;
        }
        self.level(n - 1, center, &mut z, &Rational::zero(), &mut bound, visit);
    }

    fn level<F>(
        &self,
        i: usize,
        center: &[Rational],
        z: &mut [BigInt],
        partial: &Rational,
        bound: &mut Rational,
        visit: &mut F,
    ) where
        F: FnMut(&[BigInt], &Rational) -> Option<Rational>,
    {
        let mut c = center[i].clone();
        for j in i + 1..z.len() {
            if !self.mu[i][j].is_zero() {
                c -= &self.mu[i][j] * (Rational::from_integer(z[j].clone()) - &center[j]);
            }
        }
        let start = round_rational(&c);
        for dir in [1i32, -1] {
            let mut x = if dir == 1 { start.clone() } else { &start - 1 };
            loop {
                let diff = Rational::from_integer(x.clone()) - &c;
                let value = partial + &self.q[i] * &diff * &diff;
                if value > *bound {
                    break;
                }
                z[i] = x.clone();
                if i == 0 {
                    if let Some(b) = visit(z, &value) {
                        *bound = b;
                    }
                } else {
                    self.level(i - 1, center, z, &value, bound, visit);
                }
                x += dir;
            }
        }
        z[i] = BigInt::zero();
    }
}

/// All nonzero `v` with `v^T p v <= bound` for a positive-definite integral
/// `p`, both signs, sorted by norm then lexicographically.
pub(crate) fn short_vectors_pos(p: &IntMatrix, bound: &BigInt) -> Result<Vec<(Vec<BigInt>, BigInt)>> {
    let n = p.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (red, t) = reduce_int(p);
    let e = Enumerator::new(&red.to_rational())?;
    let center = vec![Rational::zero(); n];
    let mut out = Vec::new();
    e.visit(&center, Rational::from_integer(bound.clone()), &mut |z, v| {
        if z.iter().any(|x| !x.is_zero()) {
            let vec = t.mul_vec(z).expect("dimensions agree");
            out.push((vec, v.to_integer()));
        }
        None
    });
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard;
    use crate::linalg::rat;

    #[test]
    fn cube_unit_vectors() {
        let v = short_vectors_pos(&IntMatrix::identity(2), &BigInt::from(1)).unwrap();
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn e8_roots_by_box_oracle() {
        let p = standard::e8().neg();
        let v = short_vectors_pos(&p, &BigInt::from(2)).unwrap();
        assert_eq!(v.len(), 240);
        assert!(v.iter().all(|(_, n)| *n == BigInt::from(2)));
    }

    #[test]
    fn box_enumeration_agrees() {
        // rank-3 form, every point of a box that covers the ellipsoid
        let p = IntMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let bound = BigInt::from(9);
        let fast = short_vectors_pos(&p, &bound).unwrap();
        let mut slow = Vec::new();
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                for c in -5i64..=5 {
                    let x = crate::linalg::int_vec(&[a, b, c]);
                    let n = p.bilinear(&x, &x).unwrap();
                    if !n.is_zero() && n <= bound {
                        slow.push((x, n));
                    }
                }
            }
        }
        slow.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        assert_eq!(fast, slow);
    }

    #[test]
    fn closest_point() {
        let e = Enumerator::new(&IntMatrix::identity(2).to_rational()).unwrap();
        let center = vec![rat(2, 5), rat(-7, 5)];
        let mut best: Option<(Vec<BigInt>, Rational)> = None;
        e.visit(&center, rat(4, 1), &mut |z, v| {
            if best.as_ref().is_none_or(|(_, b)| v < b) {
                best = Some((z.to_vec(), v.clone()));
            }
            best.as_ref().map(|(_, b)| b.clone())
        });
        let (z, v) = best.unwrap();
        assert_eq!(z, crate::linalg::int_vec(&[0, -1]));
        assert_eq!(v, rat(4, 25) + rat(4, 25));
    }

    #[test]
    fn rejects_indefinite() {
        assert!(Enumerator::new(&IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).to_rational()).is_err());
    }
}
