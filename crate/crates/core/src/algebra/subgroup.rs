use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, integer_kernel, rank, smith_normal_form, IntMatrix};

/// Subgroup of `Z^r` generated by the columns of `basis`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    pub ambient: usize,
    #[serde(with = "crate::doc::serde_matrix")]
    pub basis: IntMatrix,
}

impl Subgroup {
    pub fn new(ambient: usize, basis: IntMatrix) -> Result<Self> {
        if basis.rows() != ambient {
            return Err(Error::Dimension(format!("basis must have {ambient} rows, found {}", basis.rows())));
        }
        if rank(&basis) != basis.cols() {
            return Err(Error::Precondition("basis columns are dependent".into()));
        }
        Ok(Subgroup { ambient, basis })
    }

    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Result<Self> {
        Self::new(ambient, IntMatrix::from_columns(ambient, gens)?)
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Whether `V` is primitive, i.e. `Z^r / V` is torsion-free.
    pub fn is_direct_summand(&self) -> bool {
        smith_normal_form(&self.basis).d.iter().all(|d| d.abs().is_one())
    }

    /// `{x : pairing(x, v) = 0 for all v in V}` for a unimodular pairing.
    pub fn perp(&self, pairing: &IntMatrix) -> Result<Subgroup> {
        pairing.ensure_square()?;
        if pairing.rows() != self.ambient {
            return Err(Error::Dimension(format!("pairing must be {0}x{0}", self.ambient)));
        }
        let det: BigInt = determinant(pairing)?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        if self.rank() == 0 {
            return Subgroup::new(self.ambient, IntMatrix::identity(self.ambient));
        }
        // rows (P v)^T, so the kernel is all x with v^T P^T x = 0
        let rows = pairing.transpose().mul(&self.basis)?.transpose();
        Subgroup::new(self.ambient, integer_kernel(&rows))
    }
}

pub fn is_direct_summand(v: &Subgroup) -> bool {
    v.is_direct_summand()
}

pub fn perp(v: &Subgroup, pairing: &IntMatrix) -> Result<Subgroup> {
    v.perp(pairing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use num_traits::Zero;

    fn sub(r: usize, gens: &[&[i64]]) -> Subgroup {
        Subgroup::from_generators(r, &gens.iter().map(|g| int_vec(g)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn summands() {
        assert!(!sub(1, &[&[2]]).is_direct_summand());
        assert!(sub(2, &[&[1, 0]]).is_direct_summand());
        assert!(sub(2, &[&[2, 1]]).is_direct_summand());
        assert!(!sub(2, &[&[2, 0], &[0, 1]]).is_direct_summand());
    }

    #[test]
    fn perps() {
        let id = IntMatrix::identity(2);
        assert_eq!(sub(2, &[&[1, 0], &[0, 1]]).perp(&id).unwrap().rank(), 0);
        let p = sub(2, &[&[1, 0]]).perp(&id).unwrap();
        assert_eq!(p.basis.column(0).iter().map(|x| x.abs()).collect::<Vec<_>>(), int_vec(&[0, 1]));
        let p = sub(2, &[&[1, 2]]).perp(&id).unwrap();
        let c = p.basis.column(0);
        assert!(c == int_vec(&[2, -1]) || c == int_vec(&[-2, 1]));
        let bad = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert_eq!(sub(2, &[&[1, 0]]).perp(&bad).unwrap_err().kind(), "not_unimodular");
    }

    #[test]
    fn perp_ranks_add_up() {
        let h = IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]);
        let v = sub(3, &[&[1, 1, 1]]);
        let p = v.perp(&h).unwrap();
        assert_eq!(v.rank() + p.rank(), 3);
        for j in 0..p.rank() {
            let x = p.basis.column(j);
            assert!(h.bilinear(&x, &v.basis.column(0)).unwrap().is_zero());
        }
    }
}
