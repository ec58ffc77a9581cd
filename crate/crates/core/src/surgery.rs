//! Homology of integral Dehn surgery on framed links in `S^3`.
//!
//! A 3-manifold `Y` is presented by a symmetric linking matrix `Lambda`
//! (framings on the diagonal), so `H_1(Y) = coker Lambda` on the meridians.
//! A framed knot `(K, lambda)` in `Y` is recorded by its linking numbers
//! `ell` with the link components and its framing `f`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{cokernel, integer_kernel, row_hnf, smith_normal_form, solve_rational, IntMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    matrix: IntMatrix,
    names: Vec<String>,
}

impl FramedLink {
    /// Empty `names` are filled in as `K1, K2, ...`.
    pub fn new(matrix: IntMatrix, names: Vec<String>) -> Result<Self> {
        matrix.ensure_symmetric()?;
        let n = matrix.rows();
        let names = if names.is_empty() { (1..=n).map(|i| format!("K{i}")).collect() } else { names };
        if names.len() != n {
            return Err(Error::Dimension(format!("{} names for {n} components", names.len())));
        }
        Ok(FramedLink { matrix, names })
    }

    pub fn from_matrix(matrix: IntMatrix) -> Result<Self> {
        FramedLink::new(matrix, Vec::new())
    }

    /// The empty link, presenting `S^3`.
    pub fn empty() -> Self {
        FramedLink { matrix: IntMatrix::zeros(0, 0), names: Vec::new() }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn components(&self) -> usize {
        self.matrix.rows()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryManifold {
    pub b1: usize,
    #[serde(rename = "torsion", with = "crate::doc::serde_bigint_vec")]
    pub torsion_factors: Vec<BigInt>,
    #[serde(with = "crate::doc::serde_bigint")]
    pub torsion_order: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotInPresentation {
    pub link: FramedLink,
    pub ell: Vec<BigInt>,
    pub framing: BigInt,
}

impl KnotInPresentation {
    pub fn new(link: FramedLink, ell: Vec<BigInt>, framing: BigInt) -> Result<Self> {
        if ell.len() != link.components() {
            return Err(Error::Dimension(format!(
                "linking vector has length {}, link has {} components",
                ell.len(),
                link.components()
            )));
        }
        Ok(KnotInPresentation { link, ell, framing })
    }

    fn m(&self) -> usize {
        self.link.components()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeData {
    #[serde(with = "crate::doc::serde_bigint")]
    pub d: BigInt,
    /// `(p, q)` with `lambda_0 = p mu + q lambda`.
    #[serde(with = "crate::doc::serde_bigint_pair")]
    pub lambda0: (BigInt, BigInt),
    #[serde(with = "crate::doc::serde_bigint")]
    pub mu_dot_lambda0: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotOrder {
    Finite(BigInt),
    Infinite,
}

impl KnotOrder {
    pub fn is_finite(&self) -> bool {
        matches!(self, KnotOrder::Finite(_))
    }
}

/// `1`: `mu ~ lambda_0`; `2`: `lambda ~ lambda_0`; `3`: neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurgeryCase {
    One,
    Two,
    Three,
}

impl SurgeryCase {
    pub fn number(self) -> u8 {
        match self {
            SurgeryCase::One => 1,
            SurgeryCase::Two => 2,
            SurgeryCase::Three => 3,
        }
    }
}

impl Serialize for SurgeryCase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CobordismHomology {
    pub case: SurgeryCase,
    pub b2_plus: usize,
    pub b2_minus: usize,
    pub b2_zero: usize,
}

pub fn homology(link: &FramedLink) -> SurgeryManifold {
    let c = cokernel(&link.matrix);
    let torsion_order = c.torsion_order();
    SurgeryManifold { b1: c.free_rank, torsion_factors: c.torsion, torsion_order }
}

/// Relations of `H_1(M_K)` on `mu_1, ..., mu_m, mu_K`: one column per link
/// longitude, `[Lambda; ell^T]`.
fn complement_relations(k: &KnotInPresentation) -> IntMatrix {
    let m = k.m();
    let mut r = IntMatrix::zeros(m + 1, m);
    for i in 0..m {
        for j in 0..m {
            r[(i, j)] = k.link.matrix[(i, j)].clone();
        }
    }
    for j in 0..m {
        r[(m, j)] = k.ell[j].clone();
    }
    r
}

/// `b_1(M_K)` for the knot complement.
pub fn complement_b1(k: &KnotInPresentation) -> usize {
    cokernel(&complement_relations(k)).free_rank
}

/// Order of `[K] = sum ell_i mu_i` in `coker Lambda`.
pub fn knot_order(k: &KnotInPresentation) -> KnotOrder {
    let snf = smith_normal_form(&k.link.matrix);
    let y = snf.u.mul_vec(&k.ell).expect("dimensions checked");
    let mut order = BigInt::one();
    for (d, yi) in snf.d.iter().zip(&y) {
        if d.is_zero() {
            if !yi.is_zero() {
                return KnotOrder::Infinite;
            }
            continue;
        }
        let o = d / d.gcd(yi);
        order = order.lcm(&o);
    }
    KnotOrder::Finite(order)
}

/// Generator `d lambda_0` of `ker(H_1(T) -> H_1(M_K))` in the basis
/// `(mu, lambda)` of the boundary torus.
pub fn zero_slope(k: &KnotInPresentation) -> Result<SlopeData> {
    let m = k.m();
    let r = complement_relations(k);
    // columns: phi(mu), phi(lambda), then -R
    let mut big = IntMatrix::zeros(m + 1, m + 2);
    big[(m, 0)] = BigInt::one();
    for i in 0..m {
        big[(i, 1)] = k.ell[i].clone();
    }
    big[(m, 1)] = k.framing.clone();
    for i in 0..=m {
        for j in 0..m {
            big[(i, j + 2)] = -&r[(i, j)];
        }
    }
    let kern = integer_kernel(&big);
    let proj: Vec<Vec<BigInt>> = kern.columns().into_iter().map(|c| vec![c[0].clone(), c[1].clone()]).collect();
    let h = row_hnf(&proj, 2);
    if h.len() != 1 {
        return Err(Error::Inconsistency(format!("boundary kernel has rank {}, expected 1", h.len())));
    }
    let (mut p, mut q) = (h[0][0].clone(), h[0][1].clone());
    let d = p.gcd(&q);
    p /= &d;
    q /= &d;
    if q.is_negative() || (q.is_zero() && p.is_negative()) {
        p = -p;
        q = -q;
    }
    Ok(SlopeData { d, mu_dot_lambda0: q.clone(), lambda0: (p, q) })
}

/// Surgery presentation of `Y_lambda`: `[[Lambda, ell], [ell^T, f]]`.
pub fn extended_link(k: &KnotInPresentation) -> FramedLink {
    let m = k.m();
    let mut e = IntMatrix::zeros(m + 1, m + 1);
    for i in 0..m {
        for j in 0..m {
            e[(i, j)] = k.link.matrix[(i, j)].clone();
        }
        e[(i, m)] = k.ell[i].clone();
        e[(m, i)] = k.ell[i].clone();
    }
    e[(m, m)] = k.framing.clone();
    let mut names = k.link.names.clone();
    names.push(format!("K{}", m + 1));
    FramedLink { matrix: e, names }
}

pub fn classify(k: &KnotInPresentation) -> Result<SurgeryCase> {
    let slope = zero_slope(k)?;
    let case = if slope.lambda0.1.is_zero() {
        SurgeryCase::One
    } else if slope.lambda0 == (BigInt::zero(), BigInt::one()) {
        SurgeryCase::Two
    } else {
        SurgeryCase::Three
    };
    let before = homology(&k.link).b1 as i64;
    let after = homology(&extended_link(k)).b1 as i64;
    let expected = match case {
        SurgeryCase::One => before - 1,
        SurgeryCase::Two => before + 1,
        SurgeryCase::Three => before,
    };
    if after != expected {
        return Err(Error::Inconsistency(format!("case {} but b1 goes {before} -> {after}", case.number())));
    }
    Ok(case)
}

/// `lk_Q(K, lambda) = f - ell^T x` with `Lambda x = ell`.
pub fn rational_linking(k: &KnotInPresentation) -> Result<Rational> {
    if !knot_order(k).is_finite() {
        return Err(Error::InfiniteOrder);
    }
    for v in integer_kernel(&k.link.matrix).columns() {
        let dot: BigInt = v.iter().zip(&k.ell).map(|(a, b)| a * b).sum();
        if !dot.is_zero() {
            return Err(Error::Inconsistency("linking vector is not orthogonal to ker Lambda".into()));
        }
    }
    let rhs: Vec<Rational> = k.ell.iter().cloned().map(Rational::from_integer).collect();
    let x = solve_rational(&k.link.matrix, &rhs)?
        .ok_or_else(|| Error::Inconsistency("Lambda x = ell has no rational solution".into()))?;
    let ex: Rational = k.ell.iter().zip(&x).map(|(e, xi)| Rational::from_integer(e.clone()) * xi).sum();
    Ok(Rational::from_integer(k.framing.clone()) - ex)
}

pub fn cobordism_b2(k: &KnotInPresentation) -> Result<CobordismHomology> {
    let case = classify(k)?;
    let (b2_plus, b2_minus) = match case {
        SurgeryCase::One | SurgeryCase::Two => (0, 0),
        SurgeryCase::Three => {
            let lk = rational_linking(k)?;
            if lk.is_zero() {
                return Err(Error::Inconsistency("vanishing rational linking in case 3".into()));
            }
            if lk.is_positive() {
                (1, 0)
            } else {
                (0, 1)
            }
        }
    };
    // H_2(W) = H_2(M_K) + Z and rank H_2(M_K) = b_1(M_K) - 1
    let b2 = complement_b1(k);
    Ok(CobordismHomology { case, b2_plus, b2_minus, b2_zero: b2 - b2_plus - b2_minus })
}

/// The dual knot in `Y_lambda`: a 0-framed meridian of the new component.
pub fn dual_knot(k: &KnotInPresentation) -> KnotInPresentation {
    let link = extended_link(k);
    let m = link.components();
    let mut ell = vec![BigInt::zero(); m];
    ell[m - 1] = BigInt::one();
    KnotInPresentation { link, ell, framing: BigInt::zero() }
}
