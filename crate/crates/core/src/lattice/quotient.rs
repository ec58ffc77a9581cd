use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::reduce::reduce_int;
use crate::lattice::{standard, Form};
use crate::linalg::{complete_to_unimodular, content, integer_kernel, solve_rational, IntMatrix, Rational};

/// `x^perp / <x>` for a primitive isotropic `x`, with the basis used.
#[derive(Debug, Clone)]
pub struct Complement {
    pub form: Form,
    /// Ambient coordinates of lifts of the quotient basis, as columns.
    pub basis: IntMatrix,
    pub x: Vec<BigInt>,
}

impl Complement {
    /// Quotient coordinates of a vector `w` of `x^perp` (ambient coordinates).
    pub fn project(&self, w: &[BigInt]) -> Result<Vec<BigInt>> {
        let n = self.x.len();
        if w.len() != n {
            return Err(Error::Dimension(format!("vector must have length {n}")));
        }
        let mut cols = vec![self.x.clone()];
        cols.extend(self.basis.columns());
        let full = IntMatrix::from_columns(n, &cols)?;
        let rhs: Vec<Rational> = w.iter().cloned().map(Rational::from_integer).collect();
        let a =
            solve_rational(&full, &rhs)?.ok_or_else(|| Error::Precondition("vector is not orthogonal to x".into()))?;
        if a.iter().any(|c| !c.is_integer()) {
            return Err(Error::Precondition("vector is not in the lattice".into()));
        }
        Ok(a[1..].iter().map(|c| c.to_integer()).collect())
    }
}

/// Induced form on `x^perp / <x>`; negative-definite results come back
/// with a reduced basis.
pub fn complement_quotient(amb: &Form, x: &[BigInt]) -> Result<Complement> {
    let n = amb.rank();
    if x.len() != n {
        return Err(Error::Dimension(format!("class must have length {n}")));
    }
    let c = content(x);
    if !c.is_one() {
        return Err(Error::NotPrimitive(c.to_string()));
    }
    let sq = amb.norm(x)?;
    if !sq.is_zero() {
        return Err(Error::NotIsotropic(sq.to_string()));
    }
    let gx = amb.covector_of(x)?;
    let perp = if gx.iter().all(Zero::is_zero) {
        IntMatrix::identity(n)
    } else {
        integer_kernel(&IntMatrix::from_rows_with_cols(vec![gx], n)?)
    };
    // x in perp coordinates; primitive in Z^n, hence in perp
    let rhs: Vec<Rational> = x.iter().cloned().map(Rational::from_integer).collect();
    let a: Vec<BigInt> = solve_rational(&perp, &rhs)?
        .ok_or_else(|| Error::Inconsistency("x is not orthogonal to itself".into()))?
        .into_iter()
        .map(|r| r.to_integer())
        .collect();
    let k = perp.cols();
    let full = complete_to_unimodular(&IntMatrix::from_columns(k, &[a])?)?;
    let rest: Vec<usize> = (1..k).collect();
    let mut basis = perp.mul(&full.select_columns(&rest))?;
    let mut form = amb.change_basis(&basis)?;
    if form.rank() > 0 && form.is_negative_definite() {
        let (red, t) = reduce_int(&form.gram().neg());
        basis = basis.mul(&t)?;
        form = Form::new(red.neg())?;
    }
    Ok(Complement { form, basis, x: x.to_vec() })
}

/// The class `(2g+1) h - g (e_1 + ... + e_4) - (e_5 + ... + e_{4g+5})` in
/// `lorentz(4g + 5)`.
pub fn genus_class(g: usize) -> Vec<BigInt> {
    let mut x = vec![BigInt::from(-1); 4 * g + 6];
    x[0] = BigInt::from(2 * g + 1);
    for xi in &mut x[1..5] {
        *xi = -BigInt::from(g);
    }
    x
}

/// Genus forced by the adjunction formula for a class `c = a h + sum c_i e_i`
/// in `lorentz(k)`, where the canonical class pairs as `-3a - sum c_i`.
pub fn adjunction_genus(amb: &Form, c: &[BigInt]) -> Result<BigInt> {
    let n = amb.rank();
    if n == 0 || *amb != standard::lorentz(n - 1) {
        return Err(Error::Precondition("ambient form must be lorentz(k)".into()));
    }
    if c.len() != n {
        return Err(Error::Dimension(format!("class must have length {n}")));
    }
    let kc: BigInt = -BigInt::from(3) * &c[0] - c[1..].iter().sum::<BigInt>();
    let c2 = amb.norm(c)?;
    let twice: BigInt = kc + c2 + 2;
    if twice.is_odd() || twice.is_negative() {
        return Err(Error::InvalidClass(format!("adjunction gives genus {twice}/2")));
    }
    Ok(twice / 2)
}
