//! Symmetric-group characters and the decomposition of differential
//! cocharacters into irreducibles.

mod character;
mod partition;

pub use character::{character_table, dimension, irr_char};
pub use partition::{partitions, Partition};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::Algebra;
use crate::codim::{codim, EvaluationTable};
use crate::exact::{self, Echelon, PivotRule, Scalar};
use crate::free::{DiffMonomial, OperatorBasis};
use crate::{Error, Result};

/// Trace of `σ` on the span of the evaluation functions of `basis`
/// (which must be independent and span an `S_n`-stable space).
pub fn trace_of(table: &EvaluationTable, basis: &[DiffMonomial], sigma: &[usize]) -> Result<Scalar> {
    let mut ech = Echelon::tracked(table.columns(), PivotRule::Sparsest);
    for m in basis {
        if ech.insert(&table.row(m)).is_none() {
            return Err(Error::Inconsistent("quotient basis rows are dependent".into()));
        }
    }
    let mut trace = Scalar::zero();
    for (i, m) in basis.iter().enumerate() {
        let image = DiffMonomial::new(m.perm.iter().map(|&v| sigma[v]).collect(), m.labels.clone());
        let coords = ech.express(&table.row(&image)).ok_or_else(|| {
            Error::Inconsistent("permuted monomial left the quotient span".into())
        })?;
        trace += &coords[i];
    }
    Ok(trace)
}

/// Character of the quotient module: the trace of one representative per
/// cycle type.
pub fn module_trace(
    a: &Algebra,
    ob: &OperatorBasis,
    n: usize,
    quotient_basis: &[DiffMonomial],
) -> Result<BTreeMap<Partition, Scalar>> {
    let table = EvaluationTable::new(a, ob, n);
    character_on(&table, n, quotient_basis)
}

fn character_on(
    table: &EvaluationTable,
    n: usize,
    basis: &[DiffMonomial],
) -> Result<BTreeMap<Partition, Scalar>> {
    partitions(n)
        .into_iter()
        .map(|mu| {
            let t = trace_of(table, basis, &mu.representative())?;
            Ok((mu, t))
        })
        .collect()
}

/// `m_λ = (1/n!) Σ_μ |C_μ| χ_λ(μ) tr(μ)` for every `λ ⊢ n`.
pub fn multiplicities(
    n: usize,
    character: &BTreeMap<Partition, Scalar>,
) -> Result<Vec<(Partition, usize)>> {
    let order = Scalar::from_integer(partition::factorial_big(n));
    partitions(n)
        .into_iter()
        .map(|lambda| {
            let mut sum = Scalar::zero();
            for (mu, tr) in character {
                mu.check_size(n)?;
                let size = Scalar::from_integer(mu.class_size().into());
                sum += size * irr_char(&lambda, mu)? * tr;
            }
            let m = sum / &order;
            match (m.is_integer() && !m.is_negative())
                .then(|| m.to_integer().to_usize())
                .flatten()
            {
                Some(v) => Ok((lambda, v)),
                None => Err(Error::NonIntegerMultiplicity {
                    partition: format!("{lambda}"),
                    value: exact::format_scalar(&m),
                }),
            }
        })
        .collect()
}

/// One row of a cocharacter table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocharacterRow {
    pub partition: Partition,
    pub m_l: usize,
    pub m_ordinary: usize,
}

/// The `n`-th differential and ordinary cocharacters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocharacterTable {
    pub n: usize,
    pub rows: Vec<CocharacterRow>,
    pub c_n_l: usize,
    pub c_n_ordinary: usize,
    pub colength_l: usize,
    pub colength_ordinary: usize,
    /// Trace of each class on `P_n^L/(P_n^L ∩ Id^L)`.
    pub module_character: BTreeMap<Partition, Scalar>,
    /// The same on the ordinary quotient.
    pub ordinary_character: BTreeMap<Partition, Scalar>,
}

/// Decomposes the `n`-th cocharacter; multiplicities that are not
/// non-negative integers are reported as errors, never rounded.
pub fn cocharacter(a: &Algebra, ob: &OperatorBasis, n: usize, budget: u128) -> Result<CocharacterTable> {
    let r = codim(a, ob, n, false, budget)?;
    let table = EvaluationTable::new(a, ob, n);
    let module_character = character_on(&table, n, &r.quotient_basis)?;
    let ordinary_character = character_on(&table, n, &r.ordinary_basis)?;
    let ml = multiplicities(n, &module_character)?;
    let mo = multiplicities(n, &ordinary_character)?;
    let rows: Vec<CocharacterRow> = ml
        .into_iter()
        .zip(mo)
        .map(|((partition, m_l), (_, m_ordinary))| CocharacterRow {
            partition,
            m_l,
            m_ordinary,
        })
        .collect();
    Ok(CocharacterTable {
        n,
        c_n_l: r.c_n_l.unwrap_or(0),
        c_n_ordinary: r.c_n_ordinary,
        colength_l: rows.iter().map(|r| r.m_l).sum(),
        colength_ordinary: rows.iter().map(|r| r.m_ordinary).sum(),
        rows,
        module_character,
        ordinary_character,
    })
}

/// True iff `m_λ^L = 0` whenever `|λ| − λ₁ ≥ q`.
pub fn support_check(table: &CocharacterTable, q: usize) -> bool {
    table
        .rows
        .iter()
        .all(|r| r.m_l == 0 || r.partition.below_first_row() < q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::codim::DEFAULT_BUDGET;
    use crate::exact::int;
    use crate::free::operator_basis;

    fn ut2(n: usize) -> CocharacterTable {
        let ut = builtin("UT2eps").unwrap();
        let ob = operator_basis(&ut.algebra, &ut.action, 4).unwrap();
        cocharacter(&ut.algebra, &ob, n, DEFAULT_BUDGET).unwrap()
    }

    fn row(t: &CocharacterTable, parts: &[usize]) -> (usize, usize) {
        let r = t
            .rows
            .iter()
            .find(|r| r.partition.parts() == parts)
            .unwrap();
        (r.m_l, r.m_ordinary)
    }

    #[test]
    fn ut2eps_degree_two() {
        let t = ut2(2);
        assert_eq!(row(&t, &[2]), (3, 1));
        assert_eq!(row(&t, &[1, 1]), (2, 1));
        let tr = |p: &[usize]| t.module_character[&Partition::new(p.to_vec())].clone();
        assert_eq!((tr(&[1, 1]), tr(&[2])), (int(5), int(1)));
        // (1,1) sits one box below the first row, so only q ≤ 1 excludes it
        assert!(!support_check(&t, 1));
        assert!(support_check(&t, 2));
    }

    #[test]
    fn ut2eps_matches_brute_force_traces() {
        let t = ut2(3);
        let tr = |p: &[usize]| t.module_character[&Partition::new(p.to_vec())].clone();
        assert_eq!((tr(&[1, 1, 1]), tr(&[2, 1]), tr(&[3])), (int(13), int(3), int(1)));
        assert_eq!(row(&t, &[3]), (4, 1));
        assert_eq!(row(&t, &[2, 1]), (4, 2));
        assert_eq!(row(&t, &[1, 1, 1]), (1, 1));
        assert_eq!(ut2(1).rows, [CocharacterRow { partition: Partition::new(alloc::vec![1]), m_l: 2, m_ordinary: 1 }]);
    }

    #[test]
    fn field_is_trivial() {
        let f = builtin("F1").unwrap();
        let ob = OperatorBasis::trivial(1);
        let t = cocharacter(&f.algebra, &ob, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(row(&t, &[3]), (1, 1));
        assert_eq!(t.colength_l, 1);
        assert!(support_check(&t, 1));
    }

    #[test]
    fn non_integer_inner_products_are_errors() {
        let mut ch = BTreeMap::new();
        ch.insert(Partition::new(alloc::vec![1, 1]), int(1));
        ch.insert(Partition::new(alloc::vec![2]), int(0));
        assert!(matches!(
            multiplicities(2, &ch),
            Err(Error::NonIntegerMultiplicity { .. })
        ));
    }
}
