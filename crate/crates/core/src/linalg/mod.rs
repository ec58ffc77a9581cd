//! Exact integer and rational linear algebra.
//!
//! Everything here works on arbitrary-precision integers; there is no
//! floating point anywhere in the crate.

mod matrix;
mod ops;
mod rational;
mod snf;

pub use matrix::{int_vec, IntMatrix};
pub use ops::{
    cokernel, determinant, rank, rank_rational, rational_inverse, signature, solve_rational, Cokernel, Signature,
};

pub use rational::{
    ceil_rational, floor_rational, format_rational, is_integer, parse_rational, rat, rat_int, round_rational,
    serde_rational, Rational,
};
pub use snf::{
    column_hnf, complete_to_unimodular, content, integer_kernel, row_hnf, smith_normal_form, unimodular_inverse,
    SnfResult,
};
