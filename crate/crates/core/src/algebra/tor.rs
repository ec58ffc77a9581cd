//! Tor ranks over group rings: the one-variable route through Laurent Smith
//! forms, the Shapiro route through binomial ranks, and Koszul homology as a
//! cross-check.

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::algebra::laurent::{laurent_snf, Laurent, LaurentMatrix};
use crate::algebra::subgroup::Subgroup;
use crate::error::{Error, Result};
use crate::linalg::{rank_rational, rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    /// `Q` with `t` acting as 1.
    Trivial,
    /// The group ring itself.
    Full,
}

impl std::str::FromStr for Coefficients {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(Coefficients::Trivial),
            "full" => Ok(Coefficients::Full),
            _ => Err(Error::Parse(format!("coefficients must be 'trivial' or 'full', found '{s}'"))),
        }
    }
}

/// `tor[i]` is the dimension of `Tor_i` over `Q` for trivial coefficients
/// and the rank over `Q[t, t^-1]` for full coefficients. In the full case the
/// module `coker m` is also described by its free rank and torsion factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorRanks {
    pub coefficients: Coefficients,
    pub tor: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<Vec<String>>,
}

/// Tor of `M = coker(m : R^s -> R^r)` over `R = Q[t, t^-1]`.
pub fn koszul_tor(m: &LaurentMatrix, coefficients: Coefficients) -> Result<TorRanks> {
    let snf = laurent_snf(m)?;
    let nonzero: Vec<&Laurent> = snf.d.iter().filter(|d| !d.is_zero()).collect();
    let free_rank = m.rows() - nonzero.len();
    match coefficients {
        Coefficients::Trivial => {
            let one = rat(1, 1);
            let mut vanishing = 0;
            for d in &nonzero {
                if d.eval(&one)? == rat(0, 1) {
                    vanishing += 1;
                }
            }
            let tor0 = free_rank + vanishing;
            let at_one = m.eval(&one)?;
            if tor0 != m.rows() - rank_rational(&at_one, m.cols()) {
                return Err(Error::Inconsistency("Tor_0 disagrees with the cokernel at t = 1".into()));
            }
            Ok(TorRanks { coefficients, tor: vec![tor0, vanishing], free_rank: None, torsion: None })
        }
        Coefficients::Full => {
            let torsion = nonzero.iter().filter(|d| !d.is_unit()).map(|d| d.to_string()).collect();
            Ok(TorRanks { coefficients, tor: vec![free_rank, 0], free_rank: Some(free_rank), torsion: Some(torsion) })
        }
    }
}

/// Ranks of `Tor_i^{Z[H]}(Z, Z[H/V])` for `H = Z^r`: `C(k, i)` with
/// `k = rank V`.
pub fn tor_ranks_shapiro(r: usize, v: &Subgroup) -> Result<Vec<u64>> {
    if v.ambient != r {
        return Err(Error::Dimension(format!("subgroup lives in rank {}, expected {r}", v.ambient)));
    }
    if !v.is_direct_summand() {
        return Err(Error::NotSummand);
    }
    let k = v.rank() as u64;
    Ok((0..=k).map(|i| binomial(k, i)).collect())
}

/// Koszul differential `Lambda^p R^n -> Lambda^{p-1} R^n` of the sequence
/// `x`, as a matrix with rows and columns indexed by increasing bitmasks.
pub fn koszul_differential(x: &[Laurent], p: usize) -> LaurentMatrix {
    let n = x.len();
    let src: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == p).collect();
    let tgt: Vec<u32> = (0u32..1 << n).filter(|m| p > 0 && m.count_ones() as usize == p - 1).collect();
    let mut out = LaurentMatrix::zeros(tgt.len(), src.len());
    for (c, &s) in src.iter().enumerate() {
        for j in 0..n {
            if s >> j & 1 == 0 {
                continue;
            }
            let before = (s & ((1u32 << j) - 1)).count_ones();
            let r = tgt.binary_search(&(s & !(1 << j))).expect("face is a subset");
            let v = if before % 2 == 1 { -&x[j] } else { x[j].clone() };
            out.set(r, c, v);
        }
    }
    out
}

/// `dim_Q H_p` of the Koszul complex of `x` over `Q[t, t^-1]`, for
/// `p = 0..=n`. Fails when some homology group has positive rank.
pub fn koszul_homology_dims(x: &[Laurent]) -> Result<Vec<usize>> {
    let n = x.len();
    if n > 16 {
        return Err(Error::Precondition("Koszul complex too large".into()));
    }
    // rank and torsion span of each differential d_p, p = 0..=n+1
    let mut ranks = vec![0usize; n + 2];
    let mut spans = vec![0usize; n + 2];
    for p in 1..=n {
        let d = koszul_differential(x, p);
        let snf = laurent_snf(&d)?;
        let nz: Vec<&Laurent> = snf.d.iter().filter(|f| !f.is_zero()).collect();
        ranks[p] = nz.len();
        spans[p] = nz.iter().map(|f| f.span()).sum();
    }
    (0..=n)
        .map(|p| {
            let dim = binomial(n, p);
            if dim != ranks[p] + ranks[p + 1] {
                return Err(Error::Precondition(format!("H_{p} has positive rank")));
            }
            Ok(spans[p + 1])
        })
        .collect()
}

/// Koszul homology computing `Tor^{Z[Z^(k+1)]}(Z, Z[Z^(k+1)/V])` for a
/// rank-`k` summand `V`, in a basis where `V` is spanned by the first `k`
/// generators: those act trivially and the last acts freely.
pub fn shapiro_oracle(k: usize) -> Result<Vec<usize>> {
    let mut x = vec![Laurent::zero(); k];
    x.push(Laurent::parse("1 - t")?);
    koszul_homology_dims(&x)
}
