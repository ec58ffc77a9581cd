use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ledger::ManifoldClass;
use crate::linalg::{ceil_rational, floor_rational, rat};

/// Integers `n` for which `Y0 # nP` is not ruled out from embedding as a
/// separating hypersurface in a negative-definite 4-manifold. The interval
/// is empty when `n_min > n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingRange {
    #[serde(with = "crate::doc::serde_bigint")]
    pub n_min: BigInt,
    #[serde(with = "crate::doc::serde_bigint")]
    pub n_max: BigInt,
}

impl EmbeddingRange {
    pub fn contains(&self, n: &BigInt) -> bool {
        &self.n_min <= n && n <= &self.n_max
    }

    pub fn is_empty(&self) -> bool {
        self.n_min > self.n_max
    }
}

/// `[ceil(delta(-Y0) / 4d), floor(-delta(Y0) / 4d)]` with `d = ud(P) < 0`.
pub fn embedding_range(y0: &ManifoldClass, p: &ManifoldClass) -> Result<EmbeddingRange> {
    if p.b1 != 0 {
        return Err(Error::Precondition(format!("{} must be a rational homology sphere", p.name)));
    }
    if !p.ud.is_negative() {
        return Err(Error::Precondition(format!("ud({}) = {} must be negative", p.name, p.ud)));
    }
    let four_d = rat(4, 1) * &p.ud;
    Ok(EmbeddingRange {
        n_min: ceil_rational(&(y0.delta_rev() / &four_d)),
        n_max: floor_rational(&(-y0.delta() / &four_d)),
    })
}
