use alloc::string::String;
use alloc::vec::Vec;

use super::Derivation;
use crate::exact::{self, Echelon, Matrix, PivotRule, Scalar};

/// Named derivations together with the Lie algebra they span.
///
/// `lie_basis` is a basis of the smallest subspace of `End(A)` containing
/// the generators and closed under `[d, e] = de − ed`; the Killing form is
/// computed on that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationAction {
    dim: usize,
    generators: Vec<(String, Derivation)>,
    lie_basis: Vec<Matrix>,
    generators_closed: bool,
    killing_rank: usize,
}

impl DerivationAction {
    pub fn new(dim: usize, generators: Vec<(String, Derivation)>) -> Self {
        let len = dim * dim;
        let mut ech = Echelon::new(len, PivotRule::Sparsest);
        let mut basis: Vec<Matrix> = Vec::new();
        for (_, d) in &generators {
            if ech.insert(&exact::to_sparse(d.matrix().as_slice())).is_some() {
                basis.push(d.matrix().clone());
            }
        }
        let span_of_generators = basis.len();
        // bracket every new element against everything before it
        let mut i = 0;
        while i < basis.len() {
            for j in 0..i {
                let c = basis[j].commutator(&basis[i]);
                if ech.insert(&exact::to_sparse(c.as_slice())).is_some() {
                    basis.push(c);
                }
            }
            i += 1;
        }
        let generators_closed = basis.len() == span_of_generators;
        let killing_rank = killing_form(&basis).rank();
        DerivationAction {
            dim,
            generators,
            lie_basis: basis,
            generators_closed,
            killing_rank,
        }
    }

    /// Dimension of the algebra acted on.
    pub fn algebra_dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[(String, Derivation)] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn lie_basis(&self) -> &[Matrix] {
        &self.lie_basis
    }

    pub fn lie_dim(&self) -> usize {
        self.lie_basis.len()
    }

    /// Whether the span of the generators was already closed under brackets.
    pub fn generators_closed(&self) -> bool {
        self.generators_closed
    }

    /// Full-rank Killing form on the Lie span, i.e. the acting Lie algebra is
    /// semisimple. The zero Lie algebra counts as semisimple.
    pub fn killing_nondegenerate(&self) -> bool {
        self.killing_rank == self.lie_basis.len()
    }

    pub fn killing_rank(&self) -> usize {
        self.killing_rank
    }
}

/// Gram matrix `Tr(ad x · ad y)` over `basis`, which must span a Lie algebra.
pub fn killing_form(basis: &[Matrix]) -> Matrix {
    let n = basis.len();
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    let flat: Vec<Vec<Scalar>> = basis.iter().map(|m| m.as_slice().to_vec()).collect();
    let len = flat[0].len();
    let mut ech = Echelon::tracked(len, PivotRule::Sparsest);
    for f in &flat {
        ech.insert(&exact::to_sparse(f));
    }
    let ad: Vec<Matrix> = basis
        .iter()
        .map(|x| {
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|y| {
                    ech.express(&exact::to_sparse(x.commutator(y).as_slice()))
                        .expect("Lie span closed under brackets")
                })
                .collect();
            Matrix::from_columns(n, &cols)
        })
        .collect();
    let mut k = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            k.set(a, b, (&ad[a] * &ad[b]).trace());
        }
    }
    k
}
