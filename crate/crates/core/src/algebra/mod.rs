//! Rank-level twisted-coefficient algebra.

mod exterior;
mod graded;
mod laurent;
mod subgroup;
mod tor;

pub use exterior::{contract, kernel_of_full_contraction, ExteriorElement};
pub use graded::{kunneth_s1s2, GradedEntry, GradedRankVector, TowerKind};
pub use laurent::{divides, laurent_snf, Laurent, LaurentMatrix, LaurentSnf};
pub use subgroup::{is_direct_summand, perp, Subgroup};
pub use tor::{
    koszul_differential, koszul_homology_dims, koszul_tor, shapiro_oracle, tor_ranks_shapiro, Coefficients, TorRanks,
};
