use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::algebra::{Algebra, DerivationAction};
use crate::exact::{self, Echelon, Matrix, PivotRule, Scalar};
use crate::{Error, Result};

/// Basis of the unital algebra of endomorphisms of `A` generated by the
/// derivations of an action: the image of `U(L)` in `End(A)`.
///
/// `ops[0]` is the identity. Each op carries a word in the generators,
/// written as a composition: the word `[g, h]` is `g ∘ h`, so `h` acts
/// first. Differential monomials use op indices as labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorBasis {
    names: Vec<String>,
    generators: Vec<Matrix>,
    ops: Vec<Matrix>,
    words: Vec<Vec<usize>>,
    /// `product_table[i][j]`: coordinates of `ops[i] ∘ ops[j]`.
    product_table: Vec<Vec<Vec<Scalar>>>,
    /// `gen_action[g][j]`: coordinates of `gen_g ∘ ops[j]`.
    gen_action: Vec<Vec<Vec<Scalar>>>,
    /// `right_action[g][j]`: coordinates of `ops[j] ∘ gen_g`.
    right_action: Vec<Vec<Vec<Scalar>>>,
}

/// Default bound on word length for [`operator_basis`].
pub const DEFAULT_DEGREE_CAP: usize = 8;

/// Builds the operator basis breadth-first over words in the generators.
///
/// Words are extended by left composition until no new independent
/// operator appears. If an operator independent of all shorter words still
/// shows up at length `degree_cap + 1`, the algebra did not close in time
/// and [`Error::CapExceeded`] is returned.
pub fn operator_basis(
    a: &Algebra,
    act: &DerivationAction,
    degree_cap: usize,
) -> Result<OperatorBasis> {
    let dim = a.dim();
    if act.algebra_dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: act.algebra_dim(),
        });
    }
    let names: Vec<String> = act.generator_names();
    let generators: Vec<Matrix> = act
        .generators()
        .iter()
        .map(|(_, d)| d.matrix().clone())
        .collect();
    let flat = |m: &Matrix| exact::to_sparse(m.as_slice());
    let mut ech = Echelon::tracked(dim * dim, PivotRule::Sparsest);
    let identity = Matrix::identity(dim);
    ech.insert(&flat(&identity));
    let mut ops = alloc::vec![identity];
    let mut words: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for (g, d) in generators.iter().enumerate() {
            let m = d * &ops[i];
            if ech.insert(&flat(&m)).is_some() {
                let mut w = alloc::vec![g];
                w.extend_from_slice(&words[i]);
                if w.len() > degree_cap {
                    return Err(Error::CapExceeded { cap: degree_cap });
                }
                queue.push_back(ops.len());
                ops.push(m);
                words.push(w);
            }
        }
    }
    let coords = |m: &Matrix| -> Vec<Scalar> {
        ech.express(&flat(m))
            .expect("operator algebra is closed under composition")
    };
    let product_table = ops
        .iter()
        .map(|x| ops.iter().map(|y| coords(&(x * y))).collect())
        .collect();
    let gen_action = generators
        .iter()
        .map(|d| ops.iter().map(|y| coords(&(d * y))).collect())
        .collect();
    let right_action = generators
        .iter()
        .map(|d| ops.iter().map(|y| coords(&(y * d))).collect())
        .collect();
    Ok(OperatorBasis {
        names,
        generators,
        ops,
        words,
        product_table,
        gen_action,
        right_action,
    })
}

impl OperatorBasis {
    /// The basis `{id}` for an algebra of dimension `dim` with no action.
    pub fn trivial(dim: usize) -> Self {
        OperatorBasis {
            names: Vec::new(),
            generators: Vec::new(),
            ops: alloc::vec![Matrix::identity(dim)],
            words: alloc::vec![Vec::new()],
            product_table: alloc::vec![alloc::vec![alloc::vec![exact::int(1)]]],
            gen_action: Vec::new(),
            right_action: Vec::new(),
        }
    }

    /// Number of basis operators `k`.
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Dimension of the algebra the operators act on.
    pub fn algebra_dim(&self) -> usize {
        self.ops[0].rows()
    }

    pub fn ops(&self) -> &[Matrix] {
        &self.ops
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Word of op `i` as juxtaposed generator names; empty for the identity.
    pub fn word_text(&self, i: usize) -> String {
        self.words[i].iter().map(|&g| self.names[g].as_str()).collect()
    }

    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.product_table[i][j]
    }

    pub fn gen_action(&self, g: usize, j: usize) -> &[Scalar] {
        &self.gen_action[g][j]
    }

    pub fn right_action(&self, g: usize, j: usize) -> &[Scalar] {
        &self.right_action[g][j]
    }

    /// Coordinates of the composition `g_1 ∘ g_2 ∘ … ∘ g_r` for the word
    /// `[g_1, …, g_r]` of generator indices.
    pub fn word_coords(&self, word: &[usize]) -> Vec<Scalar> {
        let k = self.len();
        let mut cur = exact::unit_vec(k, 0);
        for &g in word.iter().rev() {
            let mut next = exact::zero_vec(k);
            for (j, c) in cur.iter().enumerate() {
                if !c.is_zero() {
                    exact::axpy(&mut next, c, &self.gen_action[g][j]);
                }
            }
            cur = next;
        }
        cur
    }

    /// The operator with the given coordinates.
    pub fn combine(&self, coords: &[Scalar]) -> Matrix {
        let dim = self.algebra_dim();
        let mut m = Matrix::zeros(dim, dim);
        for (c, op) in coords.iter().zip(&self.ops) {
            if !c.is_zero() {
                m = &m + &op.scale(c);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;

    #[test]
    fn ut2eps_has_two_operators() {
        let ut = builtin("UT2eps").unwrap();
        let ob = operator_basis(&ut.algebra, &ut.action, 4).unwrap();
        assert_eq!(ob.len(), 2);
        assert_eq!(ob.word_text(1), "eps");
        // eps ∘ eps = eps
        assert_eq!(ob.gen_action(0, 1), [exact::int(0), exact::int(1)]);
        assert_eq!(ob.word_coords(&[0, 0, 0]), [exact::int(0), exact::int(1)]);
    }

    #[test]
    fn no_derivations_gives_identity() {
        let ut = builtin("UT3").unwrap();
        let ob = operator_basis(&ut.algebra, &ut.action, 1).unwrap();
        assert_eq!(ob, OperatorBasis::trivial(6));
    }

    #[test]
    fn m2sl2_closes_inside_end() {
        let m = builtin("M2sl2").unwrap();
        let ob = operator_basis(&m.algebra, &m.action, 6).unwrap();
        // M2 = sl2 ⊕ F·1 as a module: image is End(sl2) ⊕ F
        assert_eq!(ob.len(), 10);
        for i in 0..ob.len() {
            for j in 0..ob.len() {
                assert_eq!(ob.combine(ob.product(i, j)), &ob.ops()[i] * &ob.ops()[j]);
            }
        }
        assert!(matches!(
            operator_basis(&m.algebra, &m.action, 1),
            Err(Error::CapExceeded { cap: 1 })
        ));
    }
}
