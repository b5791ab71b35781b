//! Exact computation of differential polynomial-identity invariants of
//! finite-dimensional associative algebras over the rationals that carry an
//! action of a Lie algebra by derivations.
//!
//! The crate is `no_std` (it needs `alloc`). Modules, bottom-up:
//!
//! * [`exact`]: rational scalars, dense matrices and sparse fraction-free
//!   elimination (rank, nullspace, solve).
//! * [`algebra`]: algebras by structure constants, derivations, Lie actions,
//!   the Jacobson radical, the Wedderburn–Malcev splitting and built-ins.
//! * [`free`]: the multilinear part of the free differential algebra, its
//!   concrete syntax and generation of T_L-ideal consequences.
//! * [`codim`]: evaluation of differential polynomials and codimensions.
//! * [`cochar`]: symmetric-group characters and cocharacter decomposition.
//! * [`growth`]: the exponent, the UT₂-pattern search and the growth
//!   classifier.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod cochar;
pub mod codim;
mod error;
pub mod exact;
pub mod free;
pub mod growth;

pub use error::{Error, Result};
