use alloc::vec::Vec;
use num_traits::Zero;

use super::{Echelon, PivotRule, Scalar, SparseVec};

/// Sparse rational matrix stored by rows; no stored entry is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: Vec<SparseVec>,
    cols: usize,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix {
            rows: Vec::new(),
            cols,
        }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(cols);
        for r in rows {
            m.push_row(super::to_sparse(r));
        }
        m
    }

    /// Appends a row; entries may come in any order, zeros are dropped and
    /// repeated columns are summed.
    pub fn push_row(&mut self, mut row: SparseVec) {
        row.sort_by_key(|(c, _)| *c);
        let mut merged: SparseVec = Vec::with_capacity(row.len());
        for (c, x) in row {
            assert!(c < self.cols, "column {c} out of range");
            match merged.last_mut() {
                Some((lc, lx)) if *lc == c => *lx += x,
                _ => merged.push((c, x)),
            }
        }
        merged.retain(|(_, x)| !x.is_zero());
        self.rows.push(merged);
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.rows[r]
            .binary_search_by_key(&c, |(k, _)| *k)
            .map(|i| self.rows[r][i].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| !v[*c].is_zero())
                    .fold(Scalar::zero(), |acc, (c, x)| acc + x * &v[*c])
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SparseVec> = alloc::vec![Vec::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row {
                cols[*c].push((r, x.clone()));
            }
        }
        SparseMatrix {
            cols: self.rows.len(),
            rows: cols,
        }
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    let mut ech = Echelon::new(m.cols(), PivotRule::Sparsest);
    for r in 0..m.rows() {
        ech.insert(m.row(r));
    }
    ech.rank()
}

/// A basis of `{v : m·v = 0}`, one vector per free column of the reduced
/// echelon form (free coordinate 1, other free coordinates 0).
pub fn nullspace(m: &SparseMatrix) -> Vec<Vec<Scalar>> {
    let n = m.cols();
    let mut ech = Echelon::new(n, PivotRule::Leading);
    for r in 0..m.rows() {
        ech.insert(m.row(r));
    }
    let rref = ech.rref();
    let mut is_pivot = alloc::vec![false; n];
    for (p, _) in &rref {
        is_pivot[*p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = super::zero_vec(n);
            v[f] = num_traits::One::one();
            for (p, row) in &rref {
                if let Ok(i) = row.binary_search_by_key(&f, |(c, _)| *c) {
                    v[*p] = -row[i].1.clone();
                }
            }
            v
        })
        .collect()
}

/// Some `x` with `m·x = b`, or `None` when the system is inconsistent.
/// Free variables of the reduced echelon form are set to zero.
pub fn solve(m: &SparseMatrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length must equal row count");
    let n = m.cols();
    let mut ech = Echelon::new(n + 1, PivotRule::Leading).with_pivot_limit(n);
    for (r, rhs) in b.iter().enumerate() {
        let mut row: SparseVec = m.row(r).to_vec();
        if !rhs.is_zero() {
            row.push((n, rhs.clone()));
        }
        if ech.insert_checked(&row).is_err() {
            return None;
        }
    }
    let mut x = super::zero_vec(n);
    for (p, row) in ech.rref() {
        if let Some((c, v)) = row.last() {
            if *c == n {
                x[p] = v.clone();
            }
        }
    }
    Some(x)
}
