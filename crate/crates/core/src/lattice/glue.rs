use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Form;
use crate::linalg::{determinant, smith_normal_form, solve_rational, unimodular_inverse, IntMatrix, Rational};

/// Which unimodular-type overlattice of `D_n` a lattice is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OverlatticeClass {
    /// `Z^n`: half the sum of the two short legs lies in the lattice.
    Integer,
    /// `Gamma_n`.
    Gamma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueReport {
    pub index: BigInt,
    /// Nonzero cosets of `L / R`, in `R`-basis coordinates reduced into `[0, 1)`.
    pub glue: Vec<Vec<Rational>>,
    /// Set only when `R` is of type `D_n` (`n >= 4`) with index 2.
    pub class: Option<OverlatticeClass>,
}

const MAX_COSETS: usize = 1 << 16;

/// Index and glue of the sublattice `R` spanned by the columns of
/// `root_basis` inside the lattice of `f`.
pub fn overlattice_glue(f: &Form, root_basis: &IntMatrix) -> Result<GlueReport> {
    let n = f.rank();
    if root_basis.rows() != n || root_basis.cols() != n {
        return Err(Error::Dimension(format!("root basis must be {n}x{n}")));
    }
    let det_b = determinant(root_basis)?;
    if det_b.is_zero() {
        return Err(Error::Precondition("root basis spans a sublattice of infinite index".into()));
    }
    let index = det_b.abs();
    let det_f = f.determinant();
    let rg = f.change_basis(root_basis)?;
    if !det_f.is_zero() && rg.determinant() != &det_f * &index * &index {
        return Err(Error::Inconsistency("determinant ratio differs from the squared index".into()));
    }
    let count = index
        .to_usize()
        .filter(|&c| c <= MAX_COSETS)
        .ok_or_else(|| Error::Precondition(format!("index {index} is too large to list cosets")))?;

    // u B v = diag(d): L / R is generated by the columns g_i of u^-1 with orders d_i.
    let snf = smith_normal_form(root_basis);
    let gens = unimodular_inverse(&snf.u)?;
    let orders: Vec<usize> = snf.d.iter().map(|d| d.to_usize().expect("bounded by the index")).collect();
    let mut glue = Vec::with_capacity(count - 1);
    let mut digits = vec![0usize; n];
    loop {
        // advance the mixed-radix counter
        let mut i = 0;
        while i < n {
            digits[i] += 1;
            if digits[i] < orders[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        let mut x = vec![BigInt::zero(); n];
        for (j, &a) in digits.iter().enumerate() {
            if a > 0 {
                for (r, xr) in x.iter_mut().enumerate() {
                    *xr += &gens[(r, j)] * BigInt::from(a);
                }
            }
        }
        let rhs: Vec<Rational> = x.into_iter().map(Rational::from_integer).collect();
        let coords = solve_rational(root_basis, &rhs)?.expect("nonsingular");
        glue.push(coords.into_iter().map(|c| &c - c.floor()).collect());
    }
    glue.sort();

    let class = if index == BigInt::from(2) { classify_d(&rg, root_basis) } else { None };
    Ok(GlueReport { index, glue, class })
}

/// The short legs of a `D_n` Dynkin diagram (`n >= 4`), read off the Gram
/// matrix of a simple-root basis, or `None` if it is not of that shape.
fn d_short_legs(g: &Form) -> Option<Vec<usize>> {
    let n = g.rank();
    if n < 4 {
        return None;
    }
    let gm = g.gram();
    let mut adj = vec![Vec::new(); n];
    let mut edges = 0;
    for i in 0..n {
        if gm[(i, i)].abs() != BigInt::from(2) || gm[(i, i)] != gm[(0, 0)] {
            return None;
        }
        for j in i + 1..n {
            let x = &gm[(i, j)];
            if x.is_zero() {
                continue;
            }
            if !x.abs().is_one() {
                return None;
            }
            adj[i].push(j);
            adj[j].push(i);
            edges += 1;
        }
    }
    if edges != n - 1 {
        return None;
    }
    let branches: Vec<usize> = (0..n).filter(|&i| adj[i].len() == 3).collect();
    if branches.len() != 1 || adj.iter().any(|a| a.len() > 3 || a.is_empty()) {
        return None;
    }
    let b = branches[0];
    let short: Vec<usize> = adj[b].iter().copied().filter(|&v| adj[v].len() == 1).collect();
    let ok = if n == 4 { short.len() == 3 } else { short.len() == 2 };
    ok.then_some(short)
}

fn classify_d(rg: &Form, basis: &IntMatrix) -> Option<OverlatticeClass> {
    let legs = d_short_legs(rg)?;
    let n = basis.rows();
    for (i, &a) in legs.iter().enumerate() {
        for &b in &legs[i + 1..] {
            let half_sum_in_l = (0..n).all(|r| (&basis[(r, a)] + &basis[(r, b)]).is_even());
            if half_sum_in_l {
                return Some(OverlatticeClass::Integer);
            }
        }
    }
    Some(OverlatticeClass::Gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard;
    use crate::linalg::{rat, solve_rational};

    /// Columns of `sub` rewritten in the basis given by the columns of `basis`.
    fn coords_in(basis: &IntMatrix, sub: &IntMatrix) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = sub
            .columns()
            .iter()
            .map(|c| {
                let rhs: Vec<Rational> = c.iter().cloned().map(Rational::from_integer).collect();
                solve_rational(basis, &rhs).unwrap().unwrap().into_iter().map(|x| x.to_integer()).collect()
            })
            .collect();
        IntMatrix::from_columns(basis.cols(), &cols).unwrap()
    }

    #[test]
    fn gamma8_over_d8() {
        let gb = standard::gamma_basis(8).unwrap();
        let d8_doubled = IntMatrix::from_columns(
            8,
            &standard::d_basis(8).columns().iter().map(|c| c.iter().map(|x| x * 2).collect()).collect::<Vec<_>>(),
        )
        .unwrap();
        let r = coords_in(&gb, &d8_doubled);
        let rep = overlattice_glue(&standard::gamma_form(8).unwrap(), &r).unwrap();
        assert_eq!(rep.index, BigInt::from(2));
        assert_eq!(rep.glue.len(), 1);
        assert_eq!(rep.class, Some(OverlatticeClass::Gamma));
    }

    #[test]
    fn cube4_over_d4() {
        let rep = overlattice_glue(&Form::cube(-1, 4), &standard::d_basis(4)).unwrap();
        assert_eq!(rep.index, BigInt::from(2));
        assert_eq!(rep.class, Some(OverlatticeClass::Integer));
        assert!(rep.glue[0].iter().all(|x| *x == rat(0, 1) || *x == rat(1, 2)));
    }

    #[test]
    fn trivial_and_infinite() {
        let rep = overlattice_glue(&standard::e8_form(), &IntMatrix::identity(8)).unwrap();
        assert_eq!(rep.index, BigInt::one());
        assert!(rep.glue.is_empty());
        assert!(overlattice_glue(&Form::cube(-1, 2), &IntMatrix::from_i64(&[&[1, 1], &[1, 1]])).is_err());
    }

    #[test]
    fn z5_over_d5() {
        let rep = overlattice_glue(&Form::cube(-1, 5), &standard::d_basis(5)).unwrap();
        assert_eq!(rep.class, Some(OverlatticeClass::Integer));
    }
}
