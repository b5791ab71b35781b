//! Evaluation of differential polynomials and differential codimensions.
//!
//! A multilinear polynomial is determined modulo identities by its values
//! on tuples of basis vectors, so `P_n/(P_n ∩ Id)` is the row space of the
//! matrix whose rows are monomials and whose columns are
//! (basis tuple, output coordinate) pairs.

use alloc::vec::Vec;
use num_traits::Zero;

use crate::algebra::Algebra;
use crate::exact::{self, Echelon, PivotRule, Scalar, SparseMatrix, SparseVec};
use crate::free::{factorial_u128, DiffMonomial, DiffPoly, MonomialIndexer, OperatorBasis};
use crate::{Error, Result};

/// Default resource budget on `n!·kⁿ·dimⁿ⁺¹`; admits `n = 6` for
/// `(dim, k) = (3, 2)`.
pub const DEFAULT_BUDGET: u128 = 110_000_000;

/// `n!·kⁿ·dimⁿ⁺¹`, the nominal size of the evaluation matrix.
pub fn evaluation_size(n: usize, dim: usize, k: usize) -> u128 {
    factorial_u128(n)
        .saturating_mul((k as u128).saturating_pow(n as u32))
        .saturating_mul((dim as u128).saturating_pow(n as u32 + 1))
}

fn check_budget(n: usize, dim: usize, k: usize, budget: u128) -> Result<()> {
    let size = evaluation_size(n, dim, k);
    if size > budget {
        return Err(Error::BudgetExceeded { n, size, budget });
    }
    Ok(())
}

/// Value of `p` at `args` (one vector per variable).
pub fn evaluate(
    p: &DiffPoly,
    args: &[Vec<Scalar>],
    a: &Algebra,
    ob: &OperatorBasis,
) -> Result<Vec<Scalar>> {
    let d = a.dim();
    if args.len() != p.degree() {
        return Err(Error::DimensionMismatch {
            expected: p.degree(),
            found: args.len(),
        });
    }
    if let Some(v) = args.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: v.len(),
        });
    }
    if ob.algebra_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: ob.algebra_dim(),
        });
    }
    let mut out = exact::zero_vec(d);
    for (m, c) in p.terms() {
        let mut acc: Option<Vec<Scalar>> = None;
        for (v, h) in m.perm.iter().zip(&m.labels) {
            let x = ob.ops()[*h].apply(&args[*v]);
            acc = Some(match acc {
                None => x,
                Some(y) => a.mul(&y, &x),
            });
        }
        if let Some(v) = acc {
            exact::axpy(&mut out, c, &v);
        }
    }
    Ok(out)
}

/// True iff `p` vanishes on every tuple of basis vectors, hence everywhere.
pub fn is_identity(p: &DiffPoly, a: &Algebra, ob: &OperatorBasis) -> bool {
    if p.is_zero() {
        return true;
    }
    let n = p.degree();
    let d = a.dim();
    let basis: Vec<Vec<Scalar>> = (0..d).map(|i| a.basis_vector(i)).collect();
    let mut tuple = alloc::vec![0usize; n];
    loop {
        let args: Vec<Vec<Scalar>> = tuple.iter().map(|&i| basis[i].clone()).collect();
        match evaluate(p, &args, a, ob) {
            Ok(v) if exact::is_zero_vec(&v) => {}
            _ => return false,
        }
        // next tuple in base d
        let mut j = n;
        loop {
            if j == 0 {
                return true;
            }
            j -= 1;
            tuple[j] += 1;
            if tuple[j] < d {
                break;
            }
            tuple[j] = 0;
        }
        if d == 0 {
            return true;
        }
    }
}

/// Values of every label sequence on every basis tuple, `P[h][s]` =
/// `ops[h_1](b_{s_1}) ⋯ ops[h_n](b_{s_n})`, stored sparsely (zero products
/// are dropped). Shared by all permutations: a monomial's row is a
/// re-indexing of the entries of its label sequence.
#[derive(Clone, Debug)]
pub struct EvaluationTable {
    n: usize,
    dim: usize,
    ix: MonomialIndexer,
    /// Per label-sequence index: `(basis tuple as digits, value)`.
    entries: Vec<Vec<(Vec<usize>, SparseVec)>>,
}

impl EvaluationTable {
    pub fn new(a: &Algebra, ob: &OperatorBasis, n: usize) -> Self {
        let d = a.dim();
        let k = ob.len();
        let images: Vec<Vec<Vec<Scalar>>> = ob
            .ops()
            .iter()
            .map(|op| (0..d).map(|b| op.column(b)).collect())
            .collect();
        let label_count = k.pow(n as u32);
        let mut entries = alloc::vec![Vec::new(); label_count];
        let mut labels = Vec::with_capacity(n);
        let mut tuple = Vec::with_capacity(n);
        fill(a, &images, n, &mut labels, &mut tuple, None, &mut entries, k);
        EvaluationTable {
            n,
            dim: d,
            ix: MonomialIndexer::new(n, k),
            entries,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn indexer(&self) -> &MonomialIndexer {
        &self.ix
    }

    /// Number of columns, `dimⁿ⁺¹`.
    pub fn columns(&self) -> usize {
        self.dim.pow(self.n as u32 + 1)
    }

    /// Column of output coordinate `c` at the tuple assigning basis vector
    /// `t[v]` to variable `v`.
    pub fn column(&self, t: &[usize], c: usize) -> usize {
        t.iter().fold(0, |acc, &x| acc * self.dim + x) * self.dim + c
    }

    /// Evaluation row of a monomial.
    pub fn row(&self, m: &DiffMonomial) -> SparseVec {
        let h = m.labels.iter().fold(0, |acc, &x| acc * self.ix.labels() + x);
        let mut t = alloc::vec![0; self.n];
        let mut row: SparseVec = Vec::new();
        for (s, v) in &self.entries[h] {
            for (j, &var) in m.perm.iter().enumerate() {
                t[var] = s[j];
            }
            let base = self.column(&t, 0);
            row.extend(v.iter().map(|(c, x)| (base + c, x.clone())));
        }
        row.sort_by_key(|(c, _)| *c);
        row
    }

    /// Evaluation row of a polynomial.
    pub fn poly_row(&self, p: &DiffPoly) -> SparseVec {
        let mut acc: alloc::collections::BTreeMap<usize, Scalar> = Default::default();
        for (m, c) in p.terms() {
            for (col, x) in self.row(m) {
                let slot = acc.entry(col).or_insert_with(Scalar::zero);
                *slot += c * x;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }
}

#[allow(clippy::too_many_arguments)]
fn fill(
    a: &Algebra,
    images: &[Vec<Vec<Scalar>>],
    n: usize,
    labels: &mut Vec<usize>,
    tuple: &mut Vec<usize>,
    acc: Option<&Vec<Scalar>>,
    entries: &mut [Vec<(Vec<usize>, SparseVec)>],
    k: usize,
) {
    if labels.len() == n {
        let v = acc.expect("n ≥ 1");
        let h = labels.iter().fold(0, |s, &x| s * k + x);
        entries[h].push((tuple.clone(), exact::to_sparse(v)));
        return;
    }
    for (h, imgs) in images.iter().enumerate() {
        for (b, img) in imgs.iter().enumerate() {
            let next = match acc {
                None => img.clone(),
                Some(y) => a.mul(y, img),
            };
            if exact::is_zero_vec(&next) {
                continue;
            }
            labels.push(h);
            tuple.push(b);
            fill(a, images, n, labels, tuple, Some(&next), entries, k);
            labels.pop();
            tuple.pop();
        }
    }
}

/// The full evaluation matrix, for small cases and inspection.
#[derive(Clone, Debug)]
pub struct EvaluationMatrix {
    pub n: usize,
    pub row_index: Vec<DiffMonomial>,
    /// `(basis tuple, output coordinate)` per column.
    pub col_index: Vec<(Vec<usize>, usize)>,
    pub matrix: SparseMatrix,
}

pub fn evaluation_matrix(
    a: &Algebra,
    ob: &OperatorBasis,
    n: usize,
    budget: u128,
) -> Result<EvaluationMatrix> {
    check_budget(n, a.dim(), ob.len(), budget)?;
    let table = EvaluationTable::new(a, ob, n);
    let ix = *table.indexer();
    let d = a.dim();
    let mut matrix = SparseMatrix::new(table.columns());
    let mut row_index = Vec::with_capacity(ix.len());
    for i in 0..ix.len() {
        let m = ix.monomial(i);
        matrix.push_row(table.row(&m));
        row_index.push(m);
    }
    let col_index = (0..table.columns())
        .map(|col| {
            let mut t = alloc::vec![0; n];
            let mut rest = col / d.max(1);
            for slot in t.iter_mut().rev() {
                *slot = rest % d;
                rest /= d;
            }
            (t, col % d.max(1))
        })
        .collect();
    Ok(EvaluationMatrix {
        n,
        row_index,
        col_index,
        matrix,
    })
}

/// Codimensions at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodimResult {
    pub n: usize,
    /// `None` when only the ordinary codimension was requested.
    pub c_n_l: Option<usize>,
    pub c_n_ordinary: usize,
    /// Monomials whose evaluation rows are independent, chosen greedily in
    /// monomial order.
    pub quotient_basis: Vec<DiffMonomial>,
    /// The same for identity labels only.
    pub ordinary_basis: Vec<DiffMonomial>,
}

/// `c_n^L(A)` and `c_n(A)` by evaluation rank.
pub fn codim(
    a: &Algebra,
    ob: &OperatorBasis,
    n: usize,
    ordinary_only: bool,
    budget: u128,
) -> Result<CodimResult> {
    if n == 0 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: 0,
        });
    }
    let k = if ordinary_only { 1 } else { ob.len() };
    check_budget(n, a.dim(), k, budget)?;
    let table = if ordinary_only {
        EvaluationTable::new(a, &OperatorBasis::trivial(a.dim()), n)
    } else {
        EvaluationTable::new(a, ob, n)
    };
    let ix = *table.indexer();
    let cols = table.columns();
    let mut ordinary = Echelon::new(cols, PivotRule::Sparsest);
    let mut full = Echelon::new(cols, PivotRule::Sparsest);
    let mut quotient_basis = Vec::new();
    let mut ordinary_basis = Vec::new();
    for i in 0..ix.len() {
        let m = ix.monomial(i);
        let row = table.row(&m);
        if m.is_ordinary() && ordinary.insert(&row).is_some() {
            ordinary_basis.push(m.clone());
        }
        if !ordinary_only && full.insert(&row).is_some() {
            quotient_basis.push(m);
        }
    }
    Ok(CodimResult {
        n,
        c_n_l: (!ordinary_only).then_some(quotient_basis.len()),
        c_n_ordinary: ordinary_basis.len(),
        quotient_basis,
        ordinary_basis,
    })
}
