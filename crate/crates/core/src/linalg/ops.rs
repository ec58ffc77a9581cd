use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix, Rational};

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> Result<BigInt> {
    a.ensure_square()?;
    let n = a.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// Inertia of a real symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

/// Counts positive, negative and zero eigenvalues by exact symmetric
/// elimination over the rationals, using a 2x2 block pivot whenever the
/// remaining diagonal vanishes.
pub fn signature(a: &IntMatrix) -> Result<Signature> {
    a.ensure_symmetric()?;
    let mut m: Vec<Vec<Rational>> = a.to_rational();
    let mut sig = Signature { plus: 0, minus: 0, zero: 0 };
    while !m.is_empty() {
        let n = m.len();
        if let Some(p) = (0..n).find(|&i| !m[i][i].is_zero()) {
            let piv = m[p][p].clone();
            if piv.is_positive() {
                sig.plus += 1;
            } else {
                sig.minus += 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            let next =
                rest.iter().map(|&i| rest.iter().map(|&j| &m[i][j] - &m[i][p] * &m[p][j] / &piv).collect()).collect();
            m = next;
            continue;
        }
        let Some((p, q)) = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero())
        else {
            sig.zero += n;
            break;
        };
        // block [[0, b], [b, 0]] has one positive and one negative eigenvalue
        sig.plus += 1;
        sig.minus += 1;
        let b = m[p][q].clone();
        let rest: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
        // Schur complement with B^{-1} = [[0, 1/b], [1/b, 0]]
        let next = rest
            .iter()
            .map(|&i| rest.iter().map(|&j| &m[i][j] - (&m[i][p] * &m[q][j] + &m[i][q] * &m[p][j]) / &b).collect())
            .collect();
        m = next;
    }
    Ok(sig)
}

/// Reduced row echelon form over Q; returns pivot columns.
pub(crate) fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (src, dst) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, s) in dst.iter_mut().zip(src.iter()) {
                    *x -= &f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Some rational solution of `a x = b`, or `None` when `b` is not in the
/// column span of `a` over Q.
pub fn solve_rational(a: &IntMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!("right-hand side has length {}, expected {}", b.len(), a.rows())));
    }
    solve_rational_matrix(&a.to_rational(), b, a.cols())
}

pub(crate) fn solve_rational_matrix(a: &[Vec<Rational>], b: &[Rational], cols: usize) -> Result<Option<Vec<Rational>>> {
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Ok(Some(x))
}

/// Inverse over Q of a nonsingular square matrix.
pub fn rational_inverse(a: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let pivots = rref(&mut aug, n);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(Error::Degenerate);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rank_rational(a: &[Vec<Rational>], cols: usize) -> usize {
    let mut m = a.to_vec();
    rref(&mut m, cols).len()
}

pub fn rank(a: &IntMatrix) -> usize {
    rank_rational(&a.to_rational(), a.cols())
}

/// Structure of `coker(a: Z^cols -> Z^rows)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    /// Invariant factors greater than one, divisibility-sorted.
    pub torsion: Vec<BigInt>,
}

impl Cokernel {
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

pub fn cokernel(a: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    Cokernel {
        free_rank: a.rows() - r,
        torsion: snf.d.iter().filter(|x| !x.is_zero() && !x.is_one()).cloned().collect(),
    }
}
