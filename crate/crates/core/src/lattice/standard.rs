//! Named Gram matrices. Definite families are negative definite.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::Form;
use crate::linalg::{row_hnf, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    D,
    E8,
    Gamma,
    Cube,
    Hyperbolic,
    Lorentz,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::D => "D",
            Family::E8 => "E8",
            Family::Gamma => "Gamma",
            Family::Cube => "cube",
            Family::Hyperbolic => "hyperbolic",
            Family::Lorentz => "lorentz",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "a" => Family::A,
            "d" => Family::D,
            "e8" | "e" => Family::E8,
            "gamma" | "g" => Family::Gamma,
            "cube" | "z" => Family::Cube,
            "hyperbolic" | "h" | "u" => Family::Hyperbolic,
            "lorentz" => Family::Lorentz,
            _ => return Err(Error::Parse(format!("unknown form family '{s}'"))),
        })
    }
}

/// A named form such as `E8`, `D4`, `Gamma12`, `cube5` or `lorentz9`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StandardName {
    pub family: Family,
    pub rank: usize,
}

impl FromStr for StandardName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("e8") {
            return Ok(StandardName { family: Family::E8, rank: 8 });
        }
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (head, digits) = s.split_at(split);
        let family: Family = head.parse()?;
        let rank = if digits.is_empty() {
            match family {
                Family::E8 => 8,
                Family::Hyperbolic => 1,
                _ => return Err(Error::Parse(format!("form name '{s}' needs a rank"))),
            }
        } else {
            digits.parse().map_err(|_| Error::Parse(format!("bad rank in '{s}'")))?
        };
        Ok(StandardName { family, rank })
    }
}

impl fmt::Display for StandardName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::E8 => write!(f, "E8"),
            fam => write!(f, "{}{}", fam.name(), self.rank),
        }
    }
}

/// Builds a named form. `sign = -1` is the default convention; `+1` negates
/// the definite families, and for `cube` it is the diagonal entry.
pub fn standard_form(family: Family, k: usize, sign: i8) -> Result<Form> {
    if sign != 1 && sign != -1 {
        return Err(Error::Precondition(format!("sign must be +1 or -1, got {sign}")));
    }
    let f = match family {
        Family::A => a_form(k),
        Family::D => d_form(k),
        Family::E8 => {
            if k != 8 {
                return Err(Error::Precondition(format!("E8 has rank 8, not {k}")));
            }
            e8_form()
        }
        Family::Gamma => gamma_form(k)?,
        Family::Cube => return Ok(Form::cube(i64::from(sign), k)),
        Family::Hyperbolic => hyperbolic(k),
        Family::Lorentz => lorentz(k),
    };
    Ok(if sign == 1 { f.negate() } else { f })
}

pub fn standard_by_name(name: &StandardName, sign: i8) -> Result<Form> {
    standard_form(name.family, name.rank, sign)
}

fn gram_of_columns(basis: &IntMatrix) -> IntMatrix {
    // -B^T B
    basis.transpose().mul(basis).expect("square product").neg()
}

/// Root basis `e_i - e_{i+1}` of `A_k` inside `Z^{k+1}`, as columns.
pub fn a_basis(k: usize) -> IntMatrix {
    let mut b = IntMatrix::zeros(k + 1, k);
    for j in 0..k {
        b[(j, j)] = BigInt::from(1);
        b[(j + 1, j)] = BigInt::from(-1);
    }
    b
}

pub fn a_lattice(k: usize) -> IntMatrix {
    gram_of_columns(&a_basis(k))
}

pub fn a_form(k: usize) -> Form {
    Form::new(a_lattice(k)).expect("symmetric")
}

/// Basis of `D_k = {x in Z^k : sum x even}` as columns: `e_i - e_{i+1}` and
/// `e_{k-1} + e_k` (for `k = 1`, the vector `2 e_1`).
pub fn d_basis(k: usize) -> IntMatrix {
    let mut b = IntMatrix::zeros(k, k);
    if k == 1 {
        b[(0, 0)] = BigInt::from(2);
        return b;
    }
    for j in 0..k.saturating_sub(1) {
        b[(j, j)] = BigInt::from(1);
        b[(j + 1, j)] = BigInt::from(-1);
    }
    if k >= 2 {
        b[(k - 2, k - 1)] = BigInt::from(1);
        b[(k - 1, k - 1)] = BigInt::from(1);
    }
    b
}

pub fn d_lattice(k: usize) -> IntMatrix {
    gram_of_columns(&d_basis(k))
}

pub fn d_form(k: usize) -> Form {
    Form::new(d_lattice(k)).expect("symmetric")
}

/// Negated Cartan matrix of `E8`: a chain of seven nodes with the eighth
/// attached to the fifth.
pub fn e8() -> IntMatrix {
    let mut g = IntMatrix::diagonal(std::iter::repeat_n(BigInt::from(-2), 8));
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    for (i, j) in edges {
        g[(i, j)] = BigInt::from(1);
        g[(j, i)] = BigInt::from(1);
    }
    g
}

pub fn e8_form() -> Form {
    Form::new(e8()).expect("symmetric")
}

/// Basis of `Gamma_k = D_k + Z (1/2, ..., 1/2)` in doubled coordinates
/// (every entry is twice the true coordinate), as columns.
pub fn gamma_basis(k: usize) -> Result<IntMatrix> {
    if !k.is_multiple_of(4) {
        return Err(Error::Precondition(format!("Gamma_k needs k divisible by 4, got {k}")));
    }
    if k == 0 {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let d = d_basis(k);
    let mut gens: Vec<Vec<BigInt>> = (0..k).map(|j| d.column(j).iter().map(|x| x * 2).collect()).collect();
    gens.push(vec![BigInt::from(1); k]);
    let rows = row_hnf(&gens, k);
    IntMatrix::from_columns(k, &rows)
}

pub fn gamma(k: usize) -> Result<IntMatrix> {
    let b = gamma_basis(k)?;
    let g = gram_of_columns(&b);
    let mut out = IntMatrix::zeros(k, k);
    let four = BigInt::from(4);
    for i in 0..k {
        for j in 0..k {
            let x = &g[(i, j)];
            if !(x % &four).is_zero() {
                return Err(Error::Inconsistency("Gamma Gram is not integral".into()));
            }
            out[(i, j)] = x / &four;
        }
    }
    Ok(out)
}

pub fn gamma_form(k: usize) -> Result<Form> {
    Form::new(gamma(k)?)
}

/// `copies` orthogonal hyperbolic planes `[[0, 1], [1, 0]]`.
pub fn hyperbolic(copies: usize) -> Form {
    let h = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    let mut g = IntMatrix::zeros(0, 0);
    for _ in 0..copies {
        g = g.direct_sum(&h);
    }
    Form::new(g).expect("symmetric")
}

/// `diag(+1, -1, ..., -1)` in the basis `(h, e_1, ..., e_k)`.
pub fn lorentz(k: usize) -> Form {
    Form::new(IntMatrix::diagonal(std::iter::once(BigInt::from(1)).chain(std::iter::repeat_n(BigInt::from(-1), k))))
        .expect("symmetric")
}
