//! The multilinear part of the free algebra with derivations.
//!
//! Operator labels are indices into an [`OperatorBasis`], the image of
//! `U(L)` in `End(A)`, so every space here is finite-dimensional and all
//! reported dimensions are relative to that basis.

mod ideal;
mod operator;
mod parse;
mod poly;

pub use ideal::{codim_via_ideal, consequences, in_span};
pub use operator::{operator_basis, OperatorBasis, DEFAULT_DEGREE_CAP};
pub use parse::{format_diff_poly, parse_diff_poly};
pub use poly::{
    derive_poly, factorial_u128, permutation_rank, permutation_unrank, permutations, sn_act,
    substitute_derivative, DiffMonomial, DiffPoly, MonomialIndexer,
};
