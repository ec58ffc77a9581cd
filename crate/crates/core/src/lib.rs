//! Exact arithmetic for deciding which intersection forms a smooth
//! 4-manifold bounding a given 3-manifold can carry.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: integer matrices, Smith/Hermite forms, exact signatures.
//! * [`lattice`]: integral bilinear forms: characteristic covectors,
//!   shadow invariants, short vectors, root systems, isometry.
//! * [`surgery`]: homology of integral Dehn surgery and surgery cobordisms.
//! * [`algebra`]: rank-level twisted-coefficient algebra (Laurent Smith
//!   forms, Koszul/Tor ranks, exterior contraction, graded ranks).
//! * [`ledger`]: correction-term bookkeeping and the filling obstruction.
//! * [`doc`]: JSON document schemas shared with the command-line tool.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod doc;
pub mod error;
pub mod lattice;
pub mod ledger;
pub mod linalg;
pub mod surgery;

pub use error::{Error, Result};
