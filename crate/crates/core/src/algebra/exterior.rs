//! Exterior algebra `Lambda^* Q^n` with monomials indexed by bitmasks.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, rank_rational, Rational};

const MAX_RANK: usize = 24;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExteriorElement {
    rank: usize,
    terms: BTreeMap<u32, Rational>,
}

fn check_rank(n: usize) -> Result<()> {
    if n > MAX_RANK {
        return Err(Error::Precondition(format!("exterior algebra rank {n} exceeds {MAX_RANK}")));
    }
    Ok(())
}

/// Sign of `e_a ^ e_b` relative to `e_{a | b}`, or `None` when they overlap.
fn wedge_sign(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // count pairs (i in a, j in b) with i > j
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inv += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    Some(inv % 2 == 1)
}

impl ExteriorElement {
    pub fn zero(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        Ok(ExteriorElement { rank, terms: BTreeMap::new() })
    }

    pub fn one(rank: usize) -> Result<Self> {
        Self::monomial(rank, &[])
    }

    /// `e_{i_1} ^ ... ^ e_{i_m}` with zero-based indices in any order.
    pub fn monomial(rank: usize, idx: &[usize]) -> Result<Self> {
        let mut out = Self::zero(rank)?;
        let mut acc = Some((0u32, false));
        for &i in idx {
            if i >= rank {
                return Err(Error::Dimension(format!("index {i} out of range for rank {rank}")));
            }
            acc = acc.and_then(|(m, neg)| wedge_sign(m, 1 << i).map(|s| (m | 1 << i, neg ^ s)));
        }
        if let Some((m, neg)) = acc {
            out.terms.insert(m, if neg { -Rational::one() } else { Rational::one() });
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coefficient(&self, mask: u32) -> Rational {
        self.terms.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree if homogeneous; `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.count_ones());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    fn push(&mut self, mask: u32, c: Rational) {
        let e = self.terms.entry(mask).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn same_rank(&self, o: &Self) -> Result<()> {
        if self.rank != o.rank {
            return Err(Error::Dimension(format!("ranks {} and {} differ", self.rank, o.rank)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_rank(o)?;
        let mut out = self.clone();
        for (&m, c) in &o.terms {
            out.push(m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = ExteriorElement { rank: self.rank, terms: BTreeMap::new() };
        for (&m, c) in &self.terms {
            out.push(m, c * k);
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        self.same_rank(o)?;
        let mut out = ExteriorElement { rank: self.rank, terms: BTreeMap::new() };
        for (&a, x) in &self.terms {
            for (&b, y) in &o.terms {
                if let Some(neg) = wedge_sign(a, b) {
                    let c = x * y;
                    out.push(a | b, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Interior product with the covector `xi`.
    pub fn contract(&self, xi: &[Rational]) -> Result<Self> {
        if xi.len() != self.rank {
            return Err(Error::Dimension(format!("covector has length {}, rank is {}", xi.len(), self.rank)));
        }
        let mut out = ExteriorElement { rank: self.rank, terms: BTreeMap::new() };
        for (&m, c) in &self.terms {
            let mut rest = m;
            while rest != 0 {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                if xi[i as usize].is_zero() {
                    continue;
                }
                let before = (m & ((1u32 << i) - 1)).count_ones();
                let v = c * &xi[i as usize];
                out.push(m & !(1 << i), if before % 2 == 1 { -v } else { v });
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&m, c)| {
                let idx: Vec<String> =
                    (0..self.rank).filter(|i| m >> i & 1 == 1).map(|i| format!("e{}", i + 1)).collect();
                let mono = if idx.is_empty() { "1".to_string() } else { idx.join("^") };
                format!("{}*{mono}", format_rational(c))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn contract(xi: &[Rational], w: &ExteriorElement) -> Result<ExteriorElement> {
    w.contract(xi)
}

fn masks_of_degree(k: usize, p: usize) -> Vec<u32> {
    (0u32..1 << k).filter(|m| m.count_ones() as usize == p).collect()
}

/// Dimension, per degree `0..=k`, of the joint kernel of all contractions
/// `iota_{e_i^*}` on `Lambda^* Q^k`.
pub fn kernel_of_full_contraction(k: usize) -> Result<Vec<usize>> {
    check_rank(k)?;
    let mut out = Vec::with_capacity(k + 1);
    for p in 0..=k {
        let src = masks_of_degree(k, p);
        if p == 0 {
            out.push(src.len());
            continue;
        }
        let tgt = masks_of_degree(k, p - 1);
        let pos: BTreeMap<u32, usize> = tgt.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        // stacked matrix: one block of rows per covector, one column per source monomial
        let mut rows = vec![vec![Rational::zero(); src.len()]; k * tgt.len()];
        for (col, &m) in src.iter().enumerate() {
            for i in 0..k {
                let mut xi = vec![Rational::zero(); k];
                xi[i] = Rational::one();
                let img = ExteriorElement::monomial_mask(k, m).contract(&xi)?;
                for (mm, c) in img.terms() {
                    rows[i * tgt.len() + pos[&mm]][col] = c.clone();
                }
            }
        }
        out.push(src.len() - rank_rational(&rows, src.len()));
    }
    Ok(out)
}

impl ExteriorElement {
    fn monomial_mask(rank: usize, mask: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(mask, Rational::one());
        ExteriorElement { rank, terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn e(n: usize, idx: &[usize]) -> ExteriorElement {
        ExteriorElement::monomial(n, idx).unwrap()
    }

    #[test]
    fn alternating() {
        assert_eq!(e(3, &[1, 0]), e(3, &[0, 1]).scale(&rat(-1, 1)));
        assert!(e(3, &[0, 0]).is_zero());
        assert_eq!(e(3, &[0]).wedge(&e(3, &[1])).unwrap(), e(3, &[0, 1]));
        assert_eq!(e(3, &[1]).wedge(&e(3, &[0])).unwrap(), e(3, &[1, 0]));
        assert_eq!(e(3, &[2]).wedge(&e(3, &[0, 1])).unwrap(), e(3, &[0, 1, 2]));
    }

    #[test]
    fn contraction_examples() {
        let one = rat(1, 1);
        let zero = rat(0, 1);
        let e12 = e(2, &[0, 1]);
        assert_eq!(e12.contract(&[one.clone(), zero.clone()]).unwrap(), e(2, &[1]));
        assert!(ExteriorElement::one(2).unwrap().contract(&[one.clone(), one.clone()]).unwrap().is_zero());
        let got = e12.contract(&[one.clone(), one.clone()]).unwrap();
        assert_eq!(got, e(2, &[1]).add(&e(2, &[0]).scale(&rat(-1, 1))).unwrap());
        assert!(e12.contract(&[one]).is_err());
    }

    #[test]
    fn full_contraction_kernel() {
        assert_eq!(kernel_of_full_contraction(0).unwrap(), vec![1]);
        assert_eq!(kernel_of_full_contraction(1).unwrap(), vec![1, 0]);
        assert_eq!(kernel_of_full_contraction(3).unwrap(), vec![1, 0, 0, 0]);
    }
}
