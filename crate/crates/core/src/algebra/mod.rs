//! Finite-dimensional associative algebras given by structure constants,
//! derivations and Lie algebras acting by derivations.

mod builtin;
mod lie;
mod wedderburn;

pub use builtin::{builtin, direct_sum};
pub use lie::{killing_form, DerivationAction};
pub(crate) use wedderburn::product_space;
pub use wedderburn::{
    check_l_stability, nilpotency_index, radical, split_derivation, wedderburn, WedderburnData,
    DEFAULT_SEED,
};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::exact::{self, Matrix, Scalar, SparseMatrix, SparseVec};
use crate::{Error, Result};

/// An associative algebra over the rationals with a fixed basis `b_0..b_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<String>,
    /// `table[i * dim + j]` is `b_i · b_j` in coordinates.
    table: Vec<SparseVec>,
}

impl Algebra {
    /// Builds an algebra from basis labels and the nonzero products
    /// `(i, j, b_i·b_j)`. Unlisted products are zero; listing a pair twice
    /// adds the contributions.
    pub fn new<I>(labels: Vec<String>, products: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, SparseVec)>,
    {
        let dim = labels.len();
        let mut table: Vec<Vec<Scalar>> = alloc::vec![exact::zero_vec(dim); dim * dim];
        for (i, j, v) in products {
            for idx in [i, j] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            for (k, x) in v {
                if k >= dim {
                    return Err(Error::IndexOutOfRange { index: k, dim });
                }
                table[i * dim + j][k] += x;
            }
        }
        Ok(Algebra {
            labels,
            table: table.iter().map(|v| exact::to_sparse(v)).collect(),
        })
    }

    /// The zero-dimensional algebra.
    pub fn zero() -> Self {
        Algebra {
            labels: Vec::new(),
            table: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `b_i · b_j` as a sparse coordinate vector.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        exact::unit_vec(self.dim(), i)
    }

    /// Product `u·v` of coordinate vectors.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        for w in [u, v] {
            if w.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: w.len(),
                });
            }
        }
        Ok(self.mul(u, v))
    }

    pub(crate) fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = exact::zero_vec(d);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (k, x) in &self.table[i * d + j] {
                    out[*k] += &c * x;
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul(&self.basis_vector(j), x))
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// First basis triple `(i, j, k)` with `(b_i b_j) b_k ≠ b_i (b_j b_k)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = exact::to_dense(self.product(i, j), d);
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let jk = exact::to_dense(self.product(j, k), d);
                    let right = self.mul(&self.basis_vector(i), &jk);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// The two-sided unit, if the algebra has one.
    pub fn unit(&self) -> Option<Vec<Scalar>> {
        let d = self.dim();
        if d == 0 {
            return None;
        }
        // u·b_j = b_j and b_j·u = b_j, linear in the coordinates of u
        let mut m = SparseMatrix::new(d);
        let mut rhs = Vec::new();
        for j in 0..d {
            let left = self.right_mult(&self.basis_vector(j));
            let right = self.left_mult(&self.basis_vector(j));
            for mat in [&left, &right] {
                for r in 0..d {
                    m.push_row(exact::to_sparse(mat.row(r)));
                    rhs.push(if r == j { exact::int(1) } else { Scalar::zero() });
                }
            }
        }
        exact::solve(&m, &rhs)
    }

    /// True iff `v` is a two-sided unit.
    pub fn is_unit(&self, v: &[Scalar]) -> bool {
        v.len() == self.dim()
            && (0..self.dim()).all(|j| {
                let b = self.basis_vector(j);
                self.mul(v, &b) == b && self.mul(&b, v) == b
            })
    }

    /// Structure constants of the subalgebra spanned by the independent
    /// vectors `basis`, in that basis.
    pub fn subalgebra(&self, basis: &[Vec<Scalar>], labels: Vec<String>) -> Result<Algebra> {
        if labels.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: labels.len(),
            });
        }
        let mut products = Vec::new();
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let p = self.mul(u, v);
                let c = exact::coordinates(basis, &p).ok_or_else(|| {
                    Error::Inconsistent(format!("span is not closed: b{i}·b{j} leaves it"))
                })?;
                products.push((i, j, exact::to_sparse(&c)));
            }
        }
        Algebra::new(labels, products)
    }
}

/// A linear map `∂: A → A` in coordinates; `matrix` column `j` is `∂(b_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    matrix: Matrix,
}

impl Derivation {
    pub fn new(matrix: Matrix) -> Self {
        Derivation { matrix }
    }

    pub fn zero(dim: usize) -> Self {
        Derivation {
            matrix: Matrix::zeros(dim, dim),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// First basis pair violating `∂(b_i b_j) = ∂(b_i) b_j + b_i ∂(b_j)`.
    pub fn leibniz_witness(&self, a: &Algebra) -> Option<(usize, usize)> {
        let d = a.dim();
        if self.matrix.rows() != d || self.matrix.cols() != d {
            return Some((0, 0));
        }
        for i in 0..d {
            for j in 0..d {
                let bi = a.basis_vector(i);
                let bj = a.basis_vector(j);
                let lhs = self.apply(&exact::to_dense(a.product(i, j), d));
                let rhs = exact::add_vec(
                    &a.mul(&self.apply(&bi), &bj),
                    &a.mul(&bi, &self.apply(&bj)),
                );
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// The inner derivation `ad x: y ↦ xy − yx`.
pub fn inner_derivation(a: &Algebra, x: &[Scalar]) -> Derivation {
    Derivation::new(&a.left_mult(x) - &a.right_mult(x))
}

/// An algebra together with a Lie algebra acting on it by derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LAlgebra {
    pub algebra: Algebra,
    pub action: DerivationAction,
}

impl LAlgebra {
    /// Attaches named derivations, checking the Leibniz rule for each.
    pub fn new(algebra: Algebra, generators: Vec<(String, Derivation)>) -> Result<Self> {
        for (name, d) in &generators {
            if let Some((i, j)) = d.leibniz_witness(&algebra) {
                return Err(Error::NotDerivation {
                    name: name.clone(),
                    i,
                    j,
                });
            }
        }
        Ok(LAlgebra {
            action: DerivationAction::new(algebra.dim(), generators),
            algebra,
        })
    }

    /// The algebra with no derivations attached.
    pub fn plain(algebra: Algebra) -> Self {
        LAlgebra {
            action: DerivationAction::new(algebra.dim(), Vec::new()),
            algebra,
        }
    }

    /// Restriction to the subalgebra spanned by `basis`, which must be
    /// stable under every generator.
    pub fn restrict(&self, basis: &[Vec<Scalar>], labels: Vec<String>) -> Result<Self> {
        let algebra = self.algebra.subalgebra(basis, labels)?;
        let mut gens = Vec::new();
        for (name, d) in self.action.generators() {
            let cols = basis
                .iter()
                .map(|b| {
                    exact::coordinates(basis, &d.apply(b)).ok_or_else(|| {
                        Error::Inconsistent(format!("subspace is not stable under `{name}`"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            gens.push((
                name.clone(),
                Derivation::new(Matrix::from_columns(basis.len(), &cols)),
            ));
        }
        LAlgebra::new(algebra, gens)
    }

    /// The same L-algebra written in the basis given by the columns of the
    /// invertible matrix `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let d = self.algebra.dim();
        if p.rows() != d || p.cols() != d || p.rank() != d {
            return Err(Error::Inconsistent("change of basis is not invertible".into()));
        }
        let basis: Vec<Vec<Scalar>> = (0..d).map(|c| p.column(c)).collect();
        self.restrict(&basis, self.algebra.labels().to_vec())
    }
}
