//! Correction-term ledger and the obstructions it feeds.

mod candidates;
mod embed;
mod filling;
mod manifold;

pub use candidates::{dedupe_isometric, enumerate_even_candidates, reduced_even_grams, CandidateSet, DEFAULT_MAX_RANK};
pub use embed::{embedding_range, EmbeddingRange};
pub use filling::{check_filling, FillingVerdict};
pub use manifold::{builtin, connected_sum, delta, reverse, surface_times_circle, ManifoldClass, Provenance};
