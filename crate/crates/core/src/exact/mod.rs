//! Exact rational arithmetic and linear algebra.
//!
//! Scalars are canonical arbitrary-precision rationals. Row spans are
//! maintained by [`Echelon`], a fraction-free sparse elimination that keeps
//! every stored row as a primitive integer vector.

mod echelon;
mod matrix;
mod sparse;

pub use echelon::{Echelon, PivotRule};
pub use matrix::Matrix;
pub use sparse::{nullspace, rank, solve, SparseMatrix};

use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact rational scalar; always stored in lowest terms with positive denominator.
pub type Scalar = num_rational::BigRational;

/// A sparse vector as sorted `(index, value)` pairs with no zero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Integer as a scalar.
pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// The rational `num/den`.
///
/// # Panics
/// Panics when `den` is zero.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p` or `p/q` (surrounding whitespace allowed).
pub fn parse_scalar(src: &str) -> Option<Scalar> {
    let src = src.trim();
    let (num, den) = match src.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (src, None),
    };
    let num: BigInt = num.parse().ok()?;
    match den {
        None => Some(Scalar::from_integer(num)),
        Some(d) => {
            let den: BigInt = d.parse().ok()?;
            if den.is_zero() || d.starts_with('-') || d.starts_with('+') {
                return None;
            }
            Some(Scalar::new(num, den))
        }
    }
}

/// Formats a scalar as `p` or `p/q`.
pub fn format_scalar(s: &Scalar) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    let _ = write!(out, "{}", s);
    out
}

pub fn zero_vec(len: usize) -> Vec<Scalar> {
    alloc::vec![Scalar::zero(); len]
}

/// Standard basis vector `e_i` of length `len`.
pub fn unit_vec(len: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(len);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &[(usize, Scalar)], len: usize) -> Vec<Scalar> {
    let mut out = zero_vec(len);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// A canonical basis (reduced row echelon form, leading pivots) of the span
/// of `vectors`, each of length `len`.
pub fn span_basis(vectors: &[Vec<Scalar>], len: usize) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon::new(len, PivotRule::Leading);
    for v in vectors {
        ech.insert(&to_sparse(v));
    }
    ech.rref()
        .into_iter()
        .map(|(_, row)| to_dense(&row, len))
        .collect()
}

/// Dimension of the span of `vectors`.
pub fn span_dim(vectors: &[Vec<Scalar>], len: usize) -> usize {
    let mut ech = Echelon::new(len, PivotRule::Sparsest);
    for v in vectors {
        ech.insert(&to_sparse(v));
    }
    ech.rank()
}

/// Coordinates of `target` in terms of the (independent) `basis`, if it lies in their span.
pub fn coordinates(basis: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let len = target.len();
    let mut ech = Echelon::tracked(len, PivotRule::Sparsest);
    for b in basis {
        ech.insert(&to_sparse(b))?;
    }
    ech.express(&to_sparse(target))
}
