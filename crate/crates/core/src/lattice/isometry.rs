//! Isometry testing for definite forms by backtracking over short-vector
//! images of a reduced basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::enumerate::short_vectors_pos;
use crate::lattice::reduce::reduce_int;
use crate::lattice::{root_system, Form};
use crate::linalg::{unimodular_inverse, IntMatrix};

fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow("isometry search"))).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| i128::from(x) * i128::from(y)).sum()
}

struct Search<'a> {
    /// Target Gram entries of the reduced source basis.
    gram: Vec<Vec<i128>>,
    vectors: &'a [Vec<i64>],
    covectors: &'a [Vec<i64>],
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, level: usize, candidates: &[Vec<usize>]) -> bool {
        let n = self.gram.len();
        if level == n {
            return true;
        }
        for &c in &candidates[level] {
            let v = &self.vectors[c];
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(n - level - 1);
            let mut dead = false;
            for j in level + 1..n {
                let want = self.gram[level][j];
                let kept: Vec<usize> =
                    candidates[j].iter().copied().filter(|&w| dot(&self.covectors[w], v) == want).collect();
                if kept.is_empty() {
                    dead = true;
                    break;
                }
                next.push(kept);
            }
            if dead {
                continue;
            }
            // re-index so that next[j - level - 1] sits at position j
            let mut shifted: Vec<Vec<usize>> = vec![Vec::new(); level + 1];
            shifted.extend(next);
            self.chosen.push(c);
            if self.run(level + 1, &shifted) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

fn norm_counts(vs: &[(Vec<BigInt>, BigInt)]) -> BTreeMap<BigInt, usize> {
    let mut m = BTreeMap::new();
    for (_, n) in vs {
        *m.entry(n.clone()).or_insert(0) += 1;
    }
    m
}

/// Short vectors of a fixed target form, kept for repeated searches.
pub(crate) struct IsometryTarget {
    pg: IntMatrix,
    max_norm: BigInt,
    dst: Vec<(Vec<BigInt>, BigInt)>,
    vectors: Vec<Vec<i64>>,
    covectors: Vec<Vec<i64>>,
}

impl IsometryTarget {
    /// `pg` is the positive-definite Gram `-gram(g)`.
    pub fn new(pg: IntMatrix, max_norm: BigInt) -> Result<Self> {
        let dst = short_vectors_pos(&pg, &max_norm)?;
        let vectors = dst.iter().map(|(v, _)| to_i64_vec(v)).collect::<Result<_>>()?;
        let covectors = dst.iter().map(|(v, _)| to_i64_vec(&pg.mul_vec(v).expect("square"))).collect::<Result<_>>()?;
        Ok(IsometryTarget { pg, max_norm, dst, vectors, covectors })
    }

    pub fn max_norm(&self) -> &BigInt {
        &self.max_norm
    }

    pub fn norm_counts(&self) -> BTreeMap<BigInt, usize> {
        norm_counts(&self.dst)
    }

    /// Finds `W'` with `W'^T P_g W' = red`, where `red` is positive definite
    /// with diagonal entries at most `max_norm`.
    pub fn embed_basis(&self, red: &IntMatrix) -> Result<Option<IntMatrix>> {
        let n = red.rows();
        if n != self.pg.rows() {
            return Ok(None);
        }
        if (0..n).any(|i| red[(i, i)] > self.max_norm) {
            return Err(Error::Precondition("target vectors do not reach the basis norms".into()));
        }
        let mut gram = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = red[(i, j)].to_i128().ok_or(Error::Overflow("isometry search"))?;
            }
        }
        let candidates: Vec<Vec<usize>> =
            (0..n).map(|j| (0..self.dst.len()).filter(|&w| self.dst[w].1 == red[(j, j)]).collect()).collect();
        let mut search = Search { gram, vectors: &self.vectors, covectors: &self.covectors, chosen: Vec::new() };
        if !search.run(0, &candidates) {
            return Ok(None);
        }
        let cols: Vec<Vec<BigInt>> = search.chosen.iter().map(|&c| self.dst[c].0.clone()).collect();
        Ok(Some(IntMatrix::from_columns(n, &cols)?))
    }
}

/// Decides whether two negative-definite forms are isometric. On success the
/// witness `w` satisfies `w^T gram(f) w = gram(g)`.
pub fn is_isometric(f: &Form, g: &Form) -> Result<Option<IntMatrix>> {
    f.ensure_negative_definite()?;
    g.ensure_negative_definite()?;
    let n = f.rank();
    if n != g.rank() || f.determinant() != g.determinant() || f.is_even() != g.is_even() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(IntMatrix::zeros(0, 0)));
    }
    if f == g {
        return Ok(Some(IntMatrix::identity(n)));
    }
    let pf = f.gram().neg();
    let (red, t_f) = reduce_int(&pf);
    let max_norm = (0..n).map(|i| red[(i, i)].clone()).max().expect("n > 0");

    let src = short_vectors_pos(&pf, &max_norm)?;
    let target = IsometryTarget::new(g.gram().neg(), max_norm)?;
    if norm_counts(&src) != target.norm_counts() {
        return Ok(None);
    }
    if src.iter().any(|(_, m)| *m == BigInt::from(2)) && root_system(f)?.components != root_system(g)?.components {
        return Ok(None);
    }
    let Some(w_prime) = target.embed_basis(&red)? else {
        return Ok(None);
    };
    // W'^T P_g W' = red = T_f^T P_f T_f
    let w = t_f.mul(&unimodular_inverse(&w_prime)?)?;
    debug_assert_eq!(f.gram().congruent(&w)?, *g.gram());
    Ok(Some(w))
}
