use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    complete_to_unimodular, determinant, integer_kernel, rational_inverse, signature, IntMatrix, Rational, Signature,
};

/// Integral symmetric bilinear form on `Z^n`, given by its Gram matrix.
///
/// Definite examples throughout the crate use the negative-definite
/// convention; see [`Form::negate`] for the other sign.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Form {
    gram: IntMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    PosDef,
    NegDef,
    PosSemidef,
    NegSemidef,
    Indefinite,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub rank: usize,
    pub signature: Signature,
    #[serde(with = "crate::doc::serde_bigint")]
    pub det: BigInt,
    pub parity: Parity,
    pub definiteness: Definiteness,
}

/// Dual-lattice element in dual-basis coordinates, `kappa(e_j) = coords[j]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharCovector {
    pub coords: Vec<BigInt>,
}

impl CharCovector {
    /// Whether `coords[j] = gram[j][j] (mod 2)` for every `j`.
    pub fn is_characteristic_for(&self, f: &Form) -> bool {
        self.coords.len() == f.rank() && self.coords.iter().enumerate().all(|(j, c)| (c - &f.gram()[(j, j)]).is_even())
    }
}

impl Form {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        gram.ensure_symmetric()?;
        Ok(Form { gram })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Form::new(IntMatrix::from_i64(rows))
    }

    /// The rank-0 form.
    pub fn empty() -> Self {
        Form { gram: IntMatrix::zeros(0, 0) }
    }

    /// `<value>^n`, the diagonal form.
    pub fn cube(value: i64, n: usize) -> Self {
        Form { gram: IntMatrix::diagonal(std::iter::repeat_n(BigInt::from(value), n)) }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn into_gram(self) -> IntMatrix {
        self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn negate(&self) -> Form {
        Form { gram: self.gram.neg() }
    }

    pub fn direct_sum(&self, other: &Form) -> Form {
        Form { gram: self.gram.direct_sum(&other.gram) }
    }

    /// Gram matrix in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &IntMatrix) -> Result<Form> {
        Form::new(self.gram.congruent(p)?)
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        self.gram.bilinear(x, y)
    }

    pub fn norm(&self, x: &[BigInt]) -> Result<BigInt> {
        self.gram.bilinear(x, x)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.gram).expect("gram is square")
    }

    pub fn signature(&self) -> Signature {
        signature(&self.gram).expect("gram is symmetric")
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature().minus == self.rank()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().plus == self.rank()
    }

    pub fn ensure_negative_definite(&self) -> Result<()> {
        if self.is_negative_definite() {
            Ok(())
        } else {
            Err(Error::NotDefinite("negative definite"))
        }
    }

    pub fn ensure_nondegenerate(&self) -> Result<()> {
        if self.determinant().is_zero() {
            Err(Error::Degenerate)
        } else {
            Ok(())
        }
    }

    pub fn invariants(&self) -> FormInvariants {
        let sig = self.signature();
        let n = self.rank();
        let definiteness = if sig.plus == 0 && sig.minus == 0 {
            Definiteness::Zero
        } else if sig.plus == n {
            Definiteness::PosDef
        } else if sig.minus == n {
            Definiteness::NegDef
        } else if sig.minus == 0 {
            Definiteness::PosSemidef
        } else if sig.plus == 0 {
            Definiteness::NegSemidef
        } else {
            Definiteness::Indefinite
        };
        FormInvariants {
            rank: n,
            signature: sig,
            det: self.determinant(),
            parity: if self.is_even() { Parity::Even } else { Parity::Odd },
            definiteness,
        }
    }

    /// Induced form on `Z^n / radical`.
    pub fn nondegenerate_part(&self) -> Form {
        let radical = integer_kernel(&self.gram);
        let r0 = radical.cols();
        if r0 == 0 {
            return self.clone();
        }
        let n = self.rank();
        let full = complete_to_unimodular(&radical).expect("kernel of an integer matrix is saturated");
        let rest: Vec<usize> = (r0..n).collect();
        let complement = full.select_columns(&rest);
        self.change_basis(&complement).expect("dimensions agree")
    }

    /// Rational Gram inverse; fails on degenerate forms.
    pub fn inverse(&self) -> Result<Vec<Vec<Rational>>> {
        rational_inverse(&self.gram.to_rational())
    }

    /// `S*(a, b) = a^T gram^{-1} b` for dual vectors in dual-basis coordinates.
    pub fn dual_pairing(&self, a: &[BigInt], b: &[BigInt]) -> Result<Rational> {
        let n = self.rank();
        if a.len() != n || b.len() != n {
            return Err(Error::Dimension(format!("dual vectors must have length {n}")));
        }
        let inv = self.inverse()?;
        Ok(dual_pairing_with(&inv, a, b))
    }

    /// Canonical characteristic covector, `coords[j] = gram[j][j] mod 2`.
    pub fn char_base(&self) -> CharCovector {
        let two = BigInt::from(2);
        CharCovector { coords: (0..self.rank()).map(|j| self.gram[(j, j)].mod_floor(&two)).collect() }
    }

    /// Dual-basis coordinates of the covector `S(x, -)`.
    pub fn covector_of(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.gram.mul_vec(x)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }
}

pub(crate) fn dual_pairing_with(inv: &[Vec<Rational>], a: &[BigInt], b: &[BigInt]) -> Rational {
    let mut acc = Rational::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let mut row = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                row += &inv[i][j] * Rational::from_integer(bj.clone());
            }
        }
        acc += row * Rational::from_integer(ai.clone());
    }
    acc
}
