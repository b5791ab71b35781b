use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

use super::OperatorBasis;
use crate::exact::{Scalar, SparseVec};
use crate::{Error, Result};

/// `x_{perm[0]}^{labels[0]} ⋯ x_{perm[n-1]}^{labels[n-1]}` with 0-based
/// variables and operator-basis labels.
///
/// The derived order compares the variable word first, then the labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffMonomial {
    pub perm: Vec<usize>,
    pub labels: Vec<usize>,
}

impl DiffMonomial {
    pub fn new(perm: Vec<usize>, labels: Vec<usize>) -> Self {
        debug_assert_eq!(perm.len(), labels.len());
        DiffMonomial { perm, labels }
    }

    /// `x_1 x_2 ⋯ x_n` with identity labels.
    pub fn identity(n: usize) -> Self {
        DiffMonomial::new((0..n).collect(), alloc::vec![0; n])
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    /// True when every label is the identity operator.
    pub fn is_ordinary(&self) -> bool {
        self.labels.iter().all(|&h| h == 0)
    }
}

/// Dense numbering of all `n!·kⁿ` monomials of degree `n` over `k` labels,
/// consistent with the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialIndexer {
    n: usize,
    k: usize,
    label_count: usize,
}

impl MonomialIndexer {
    pub fn new(n: usize, k: usize) -> Self {
        MonomialIndexer {
            n,
            k,
            label_count: k.pow(n as u32),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> usize {
        self.k
    }

    /// `n!·kⁿ`.
    pub fn len(&self) -> usize {
        factorial(self.n) * self.label_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, m: &DiffMonomial) -> usize {
        let labels = m.labels.iter().fold(0, |acc, &h| acc * self.k + h);
        permutation_rank(&m.perm) * self.label_count + labels
    }

    pub fn monomial(&self, index: usize) -> DiffMonomial {
        let (p, mut l) = (index / self.label_count, index % self.label_count);
        let mut labels = alloc::vec![0; self.n];
        for slot in labels.iter_mut().rev() {
            *slot = l % self.k;
            l /= self.k;
        }
        DiffMonomial::new(permutation_unrank(self.n, p), labels)
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// `n!` without overflow for the sizes used in budgets.
pub fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

/// Rank of a permutation in lexicographic order.
pub fn permutation_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Inverse of [`permutation_rank`].
pub fn permutation_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut digits = alloc::vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..factorial(n)).map(move |r| permutation_unrank(n, r))
}

/// A multilinear differential polynomial of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    n: usize,
    terms: BTreeMap<DiffMonomial, Scalar>,
}

impl DiffPoly {
    pub fn zero(n: usize) -> Self {
        DiffPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: DiffMonomial) -> Self {
        let mut p = DiffPoly::zero(m.degree());
        p.add_term(m, Scalar::from_integer(1.into()));
        p
    }

    /// Builds a polynomial from terms; all monomials must have degree `n`.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (DiffMonomial, Scalar)>,
    {
        let mut p = DiffPoly::zero(n);
        for (m, c) in terms {
            if m.degree() != n || !is_permutation(&m.perm) {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: m.degree(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<DiffMonomial, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &DiffMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, m: DiffMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &DiffPoly) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    pub fn scale(&self, c: &Scalar) -> DiffPoly {
        let mut p = DiffPoly::zero(self.n);
        p.add_scaled(c, self);
        p
    }

    /// True when all labels are the identity.
    pub fn is_ordinary(&self) -> bool {
        self.terms.keys().all(DiffMonomial::is_ordinary)
    }

    pub fn to_sparse(&self, ix: &MonomialIndexer) -> SparseVec {
        let mut v: SparseVec = self
            .terms
            .iter()
            .map(|(m, c)| (ix.index(m), c.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn from_sparse(ix: &MonomialIndexer, v: &[(usize, Scalar)]) -> DiffPoly {
        let mut p = DiffPoly::zero(ix.degree());
        for (i, c) in v {
            p.add_term(ix.monomial(*i), c.clone());
        }
        p
    }

    /// Product `self · other`; the variables of `other` are shifted past
    /// those of `self`.
    pub fn mul_shifted(&self, other: &DiffPoly) -> DiffPoly {
        let mut p = DiffPoly::zero(self.n + other.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut perm = a.perm.clone();
                perm.extend(b.perm.iter().map(|v| v + self.n));
                let mut labels = a.labels.clone();
                labels.extend_from_slice(&b.labels);
                p.add_term(DiffMonomial::new(perm, labels), x * y);
            }
        }
        p
    }

    /// Replaces the label `h` at every position by the coordinates of a
    /// linear map on labels, `f(position, h)`.
    pub(crate) fn map_labels<F>(&self, mut f: F) -> DiffPoly
    where
        F: FnMut(&DiffMonomial, usize) -> Option<(usize, Vec<(usize, Scalar)>)>,
    {
        let mut out = DiffPoly::zero(self.n);
        for (m, c) in &self.terms {
            for pos in 0..self.n {
                let Some((at, image)) = f(m, pos) else { continue };
                for (h, x) in image {
                    let mut labels = m.labels.clone();
                    labels[at] = h;
                    out.add_term(DiffMonomial::new(m.perm.clone(), labels), c * &x);
                }
            }
        }
        out
    }
}

impl fmt::Display for DiffPoly {
    /// Operator-free rendering with numeric labels; see
    /// [`super::format_diff_poly`] for the named form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (v, h) in m.perm.iter().zip(&m.labels) {
                write!(f, " x{}^{h}", v + 1)?;
            }
        }
        Ok(())
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = alloc::vec![false; p.len()];
    p.iter().all(|&v| v < p.len() && !core::mem::replace(&mut seen[v], true))
}

/// `σ·p`: the variable `x_i` becomes `x_{σ(i)}`, labels travel along.
pub fn sn_act(sigma: &[usize], p: &DiffPoly) -> Result<DiffPoly> {
    if sigma.len() != p.degree() || !is_permutation(sigma) {
        return Err(Error::DegreeMismatch {
            expected: p.degree(),
            found: sigma.len(),
        });
    }
    let mut out = DiffPoly::zero(p.n);
    for (m, c) in &p.terms {
        let perm = m.perm.iter().map(|&v| sigma[v]).collect();
        out.add_term(DiffMonomial::new(perm, m.labels.clone()), c.clone());
    }
    Ok(out)
}

/// Applies generator `g` by the Leibniz rule: at each position the label
/// `h` becomes `g ∘ h`, expanded in the operator basis.
pub fn derive_poly(g: usize, p: &DiffPoly, ob: &OperatorBasis) -> DiffPoly {
    p.map_labels(|m, pos| Some((pos, sparse(ob.gen_action(g, m.labels[pos])))))
}

/// Substitutes `x_var ↦ x_var^g`: the label `h` of that variable becomes
/// `h ∘ g`.
pub fn substitute_derivative(var: usize, g: usize, p: &DiffPoly, ob: &OperatorBasis) -> DiffPoly {
    p.map_labels(|m, pos| {
        (m.perm[pos] == var).then(|| (pos, sparse(ob.right_action(g, m.labels[pos]))))
    })
}

fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}
