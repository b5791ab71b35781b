//! Named example algebras and direct sums.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{inner_derivation, Algebra, Derivation, LAlgebra};
use crate::exact::{frac, int, Matrix, Scalar};
use crate::{Error, Result};

/// Looks up a named algebra with its canonical action.
///
/// * `UT2eps`: upper triangular 2×2 matrices (basis `e11, e12, e22`) with
///   `eps = ad(½(e11 − e22))`.
/// * `M2sl2`: 2×2 matrices (basis `e11, e12, e21, e22`) with `eps`,
///   `delta`, `gamma` the inner derivations of `½(e11 − e22)`,
///   `½(e12 + e21)`, `½(e12 − e21)`; they span a copy of `sl2`.
/// * `UT<k>`, `M<k>`: upper triangular and full `k×k` matrices, no action.
/// * `F<n>`: `n` copies of the field, no action.
///
/// Names joined with `+` build a direct sum.
pub fn builtin(name: &str) -> Result<LAlgebra> {
    let mut parts = name.split('+').map(str::trim);
    let first = single(parts.next().unwrap_or(""))?;
    parts.try_fold(first, |acc, part| direct_sum(&acc, &single(part)?))
}

fn single(name: &str) -> Result<LAlgebra> {
    let unknown = || Error::UnknownBuiltin(name.to_string());
    let size = |prefix: &str| -> Option<usize> {
        let rest = name.strip_prefix(prefix)?;
        let rest = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(rest);
        rest.parse().ok().filter(|&k| (1..=12).contains(&k))
    };
    match name {
        "UT2eps" => {
            let a = upper_triangular(2);
            let x = alloc::vec![frac(1, 2), int(0), frac(-1, 2)];
            let eps = inner_derivation(&a, &x);
            LAlgebra::new(a, alloc::vec![("eps".into(), eps)])
        }
        "M2sl2" => {
            let a = full_matrix(2);
            let h = |v: [i64; 4]| -> Vec<Scalar> { v.iter().map(|&c| frac(c, 2)).collect() };
            let gens = [
                ("eps", h([1, 0, 0, -1])),
                ("delta", h([0, 1, 1, 0])),
                ("gamma", h([0, 1, -1, 0])),
            ]
            .into_iter()
            .map(|(n, x)| (n.to_string(), inner_derivation(&a, &x)))
            .collect();
            LAlgebra::new(a, gens)
        }
        _ => {
            if let Some(k) = size("UT") {
                Ok(LAlgebra::plain(upper_triangular(k)))
            } else if let Some(k) = size("M") {
                Ok(LAlgebra::plain(full_matrix(k)))
            } else if let Some(n) = size("F") {
                Ok(LAlgebra::plain(split_commutative(n)))
            } else {
                Err(unknown())
            }
        }
    }
}

fn unit_label(k: usize, i: usize, j: usize) -> String {
    if k < 10 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{}_{}", i + 1, j + 1)
    }
}

/// Matrix algebra spanned by the units `e_ij` with `(i, j)` in `cells`,
/// which must be closed under multiplication.
fn matrix_units(k: usize, cells: Vec<(usize, usize)>) -> Algebra {
    let index = |i: usize, j: usize| cells.iter().position(|&c| c == (i, j));
    let mut products = Vec::new();
    for (p, &(i, j)) in cells.iter().enumerate() {
        for (q, &(j2, l)) in cells.iter().enumerate() {
            if j == j2 {
                let r = index(i, l).expect("matrix units closed under products");
                products.push((p, q, alloc::vec![(r, int(1))]));
            }
        }
    }
    let labels = cells.iter().map(|&(i, j)| unit_label(k, i, j)).collect();
    Algebra::new(labels, products).expect("matrix unit table is in range")
}

fn upper_triangular(k: usize) -> Algebra {
    let cells = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    matrix_units(k, cells)
}

fn full_matrix(k: usize) -> Algebra {
    let cells = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    matrix_units(k, cells)
}

fn split_commutative(n: usize) -> Algebra {
    let labels = (1..=n).map(|i| format!("f{i}")).collect();
    let products = (0..n).map(|i| (i, i, alloc::vec![(i, int(1))]));
    Algebra::new(labels, products).expect("diagonal table is in range")
}

/// `a ⊕ b` with block-diagonal structure constants and derivations acting
/// blockwise. Both summands must carry the same generator names, in the
/// same order. Labels of `b` that clash with labels of `a` get primes.
pub fn direct_sum(a: &LAlgebra, b: &LAlgebra) -> Result<LAlgebra> {
    let names_a = a.action.generator_names();
    let names_b = b.action.generator_names();
    if names_a != names_b {
        return Err(Error::ArityMismatch(format!(
            "summands carry generators [{}] and [{}]",
            names_a.join(", "),
            names_b.join(", ")
        )));
    }
    let (da, db) = (a.algebra.dim(), b.algebra.dim());
    let mut labels: Vec<String> = a.algebra.labels().to_vec();
    for l in b.algebra.labels() {
        let mut l = l.clone();
        while labels.contains(&l) {
            l.push('\'');
        }
        labels.push(l);
    }
    let shift = |v: &[(usize, Scalar)], by: usize| -> Vec<(usize, Scalar)> {
        v.iter().map(|(k, x)| (k + by, x.clone())).collect()
    };
    let mut products = Vec::new();
    for i in 0..da {
        for j in 0..da {
            products.push((i, j, shift(a.algebra.product(i, j), 0)));
        }
    }
    for i in 0..db {
        for j in 0..db {
            products.push((da + i, da + j, shift(b.algebra.product(i, j), da)));
        }
    }
    let algebra = Algebra::new(labels, products)?;
    let gens = a
        .action
        .generators()
        .iter()
        .zip(b.action.generators())
        .map(|((name, x), (_, y))| (name.clone(), Derivation::new(block_diagonal(x.matrix(), y.matrix()))))
        .collect();
    LAlgebra::new(algebra, gens)
}

fn block_diagonal(x: &Matrix, y: &Matrix) -> Matrix {
    let (n, m) = (x.rows(), y.rows());
    let mut out = Matrix::zeros(n + m, n + m);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, x.get(r, c).clone());
        }
    }
    for r in 0..m {
        for c in 0..m {
            out.set(n + r, n + c, y.get(r, c).clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::killing_form;

    #[test]
    fn ut2eps_shape() {
        let ut = builtin("UT2eps").unwrap();
        assert_eq!(ut.algebra.labels(), ["e11", "e12", "e22"]);
        let eps = ut.action.generators()[0].1.matrix();
        assert_eq!(&(eps * eps), eps);
        assert_eq!(ut.action.lie_dim(), 1);
        assert!(!ut.action.killing_nondegenerate());
        assert!(ut.algebra.associativity_witness().is_none());
    }

    #[test]
    fn m2sl2_is_sl2() {
        let m = builtin("M2sl2").unwrap();
        assert_eq!(m.algebra.dim(), 4);
        assert_eq!(m.action.lie_dim(), 3);
        assert!(m.action.generators_closed());
        assert!(m.action.killing_nondegenerate());
        assert_eq!(killing_form(m.action.lie_basis()).rank(), 3);
        let square = {
            let x = alloc::vec![int(0), int(1), int(1), int(0)];
            m.algebra.multiply(&x, &x).unwrap()
        };
        assert_eq!(square, [int(1), int(0), int(0), int(1)]);
    }

    #[test]
    fn families() {
        assert_eq!(builtin("UT3").unwrap().algebra.dim(), 6);
        assert_eq!(builtin("M3").unwrap().algebra.dim(), 9);
        assert_eq!(builtin("F(4)").unwrap().algebra.dim(), 4);
        assert!(builtin("F1").unwrap().algebra.unit().is_some());
        assert!(matches!(builtin("XY2"), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(builtin("UT0"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn sums() {
        let s = builtin("UT2eps + UT2eps").unwrap();
        assert_eq!(s.algebra.dim(), 6);
        assert_eq!(s.algebra.labels()[3], "e11'");
        assert!(s.algebra.associativity_witness().is_none());
        assert!(matches!(builtin("UT2eps+F1"), Err(Error::ArityMismatch(_))));
        let f = builtin("F1+F1").unwrap();
        assert_eq!(f.algebra.labels(), ["f1", "f1'"]);
    }
}
