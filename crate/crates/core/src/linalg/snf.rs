use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Smith normal form `u * a * v = diag(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// `min(rows, cols)` invariant factors: nonnegative, `d[i] | d[i+1]`,
    /// zeros last.
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.d.iter().take_while(|x| !x.is_zero()).count()
    }

    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, x) in self.d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }
}

/// Position of the entry of least nonzero absolute value in `a[t.., t..]`.
fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                let done = ax.is_one();
                best = Some(((i, j), ax));
                if done {
                    return best.map(|(p, _)| p);
                }
            }
        }
    }
    best.map(|(p, _)| p)
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut a = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let steps = m.min(n);
    for t in 0..steps {
        let Some((pi, pj)) = min_pivot(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder survived: bring the smallest entry of row/column t to the pivot
                let mut best = (t, t);
                let mut best_abs = a[(t, t)].abs();
                for i in t + 1..m {
                    let x = a[(i, t)].abs();
                    if !x.is_zero() && x < best_abs {
                        best = (i, t);
                        best_abs = x;
                    }
                }
                for j in t + 1..n {
                    let x = a[(t, j)].abs();
                    if !x.is_zero() && x < best_abs {
                        best = (t, j);
                        best_abs = x;
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    a.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            // divisibility of the remaining block
            let p = a[(t, t)].clone();
            let mut offender = None;
            'search: for i in t + 1..m {
                for j in t + 1..n {
                    if !a[(i, j)].is_multiple_of(&p) {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let d = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SnfResult { d, u, v }
}

/// Z-basis (as columns) of `{x : a x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let idx: Vec<usize> = (r..a.cols()).collect();
    column_hnf(&snf.v.select_columns(&idx))
}

/// Row Hermite normal form of the row span of `rows` (each of length
/// `width`). Zero rows are dropped; pivots are positive and entries above
/// each pivot are reduced into `[0, pivot)`.
pub fn row_hnf(rows: &[Vec<BigInt>], width: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut out_row = 0;
    for col in 0..width {
        if out_row >= m.len() {
            break;
        }
        // gcd-combine all rows below into out_row at this column
        loop {
            let mut pivot: Option<usize> = None;
            for (r, row) in m.iter().enumerate().skip(out_row) {
                if row[col].is_zero() {
                    continue;
                }
                if pivot.is_none_or(|p| row[col].abs() < m[p][col].abs()) {
                    pivot = Some(r);
                }
            }
            let Some(p) = pivot else { break };
            m.swap(out_row, p);
            let mut changed = false;
            for r in out_row + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[out_row][col]);
                let (head, tail) = m.split_at_mut(r);
                let src = &head[out_row];
                for (x, s) in tail[0].iter_mut().zip(src) {
                    *x -= &q * s;
                }
                if !tail[0][col].is_zero() {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if m[out_row][col].is_zero() {
            continue;
        }
        if m[out_row][col].is_negative() {
            for x in m[out_row].iter_mut() {
                *x = -&*x;
            }
        }
        let piv = m[out_row][col].clone();
        for r in 0..out_row {
            let q = m[r][col].div_floor(&piv);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = m.split_at_mut(out_row);
            for (x, s) in head[r].iter_mut().zip(&tail[0]) {
                *x -= &q * s;
            }
        }
        out_row += 1;
    }
    m.truncate(out_row);
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    m
}

/// Canonical basis (as columns) of the column span of `b`.
pub fn column_hnf(b: &IntMatrix) -> IntMatrix {
    let rows = row_hnf(&b.transpose().to_rows(), b.rows());
    let mut out = IntMatrix::zeros(b.rows(), rows.len());
    for (j, r) in rows.iter().enumerate() {
        for (i, x) in r.iter().enumerate() {
            out[(i, j)] = x.clone();
        }
    }
    out
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    m.ensure_square()?;
    let n = m.rows();
    // row-reduce [m | I]
    let mut aug = IntMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = BigInt::one();
    }
    let rows = row_hnf(&aug.to_rows(), 2 * n);
    if rows.len() != n {
        return Err(Error::NotUnimodular("singular".into()));
    }
    for (i, r) in rows.iter().enumerate() {
        if !r[i].is_one() {
            return Err(Error::NotUnimodular(r[i].to_string()));
        }
    }
    let mut inv = IntMatrix::zeros(n, n);
    for (i, r) in rows.iter().enumerate() {
        for j in 0..n {
            inv[(i, j)] = r[n + j].clone();
        }
    }
    Ok(inv)
}

/// Extends the columns of `b` (a basis of a primitive sublattice of `Z^n`)
/// to a unimodular matrix whose first `k` columns span the same sublattice.
pub fn complete_to_unimodular(b: &IntMatrix) -> Result<IntMatrix> {
    let snf = smith_normal_form(b);
    if snf.d.iter().any(|x| !x.is_one()) || snf.d.len() != b.cols() {
        return Err(Error::Precondition("sublattice is not primitive".into()));
    }
    let mut full = unimodular_inverse(&snf.u)?;
    // u b v = [I; 0], so b v is the first k columns of u^-1; use b itself
    // for the leading columns so callers keep their chosen basis.
    for j in 0..b.cols() {
        for i in 0..b.rows() {
            full[(i, j)] = b[(i, j)].clone();
        }
    }
    Ok(full)
}

/// gcd of the entries (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
