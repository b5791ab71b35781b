//! The exponent from the radical-path formula, obstruction search, the
//! block-sum split and the polynomial-growth classifier.

mod evidence;

pub use evidence::{fit_growth, Evidence, GrowthEvidence};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{
    check_l_stability, product_space, radical, wedderburn, Algebra, LAlgebra, WedderburnData,
    DEFAULT_SEED,
};
use crate::cochar::{cocharacter, support_check};
use crate::codim::DEFAULT_BUDGET;
use crate::exact::{self, Scalar};
use crate::free::{operator_basis, DEFAULT_DEGREE_CAP};
use crate::{Error, Result};

/// `max dim(A_{i_1} ⊕ ⋯ ⊕ A_{i_k})` over sequences of distinct blocks with
/// `A_{i_1} J A_{i_2} J ⋯ J A_{i_k} ≠ 0`; `0` when there are no blocks.
pub fn exponent(a: &Algebra, w: &WedderburnData) -> usize {
    let blocks = &w.block_bases;
    let mut best = 0;
    let mut used = alloc::vec![false; blocks.len()];
    for i in 0..blocks.len() {
        if blocks[i].is_empty() {
            continue;
        }
        used[i] = true;
        extend(a, w, &blocks[i], blocks[i].len(), &mut used, &mut best);
        used[i] = false;
    }
    best
}

fn extend(
    a: &Algebra,
    w: &WedderburnData,
    span: &[Vec<Scalar>],
    total: usize,
    used: &mut [bool],
    best: &mut usize,
) {
    *best = (*best).max(total);
    if w.radical_basis.is_empty() {
        return;
    }
    let through_j = product_space(a, span, &w.radical_basis);
    if through_j.is_empty() {
        return;
    }
    for k in 0..w.block_bases.len() {
        if used[k] {
            continue;
        }
        let next = product_space(a, &through_j, &w.block_bases[k]);
        if next.is_empty() {
            continue;
        }
        used[k] = true;
        extend(a, w, &next, total + w.block_bases[k].len(), used, best);
        used[k] = false;
    }
}

/// A structural reason for exponential growth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `1_from · element · 1_to ≠ 0` with `element ∈ J`: the idempotents and
    /// this product span a copy of UT₂ on which `ad(1_from − 1_to)` acts as ε.
    RadicalPath {
        from: usize,
        to: usize,
        element: Vec<Scalar>,
    },
    /// A block `M_size` with `size ≥ 2`, which already contains UT₂.
    MatrixBlock { block: usize, size: usize },
}

/// First radical path between distinct blocks, scanning pairs in order and
/// radical basis vectors in order.
pub fn detect_ut2_pattern(a: &Algebra, w: &WedderburnData) -> Option<Witness> {
    obstructions(a, w).into_iter().next()
}

/// Every radical-path pair (with its first witnessing element) followed by
/// every matrix block of size at least two.
pub fn obstructions(a: &Algebra, w: &WedderburnData) -> Vec<Witness> {
    let mut out = Vec::new();
    let ids = &w.block_idempotents;
    for (i, fi) in ids.iter().enumerate() {
        for (k, fk) in ids.iter().enumerate() {
            if i == k {
                continue;
            }
            let hit = w
                .radical_basis
                .iter()
                .find(|j| !exact::is_zero_vec(&a.mul(&a.mul(fi, j), fk)));
            if let Some(j) = hit {
                out.push(Witness::RadicalPath {
                    from: i,
                    to: k,
                    element: j.clone(),
                });
            }
        }
    }
    for (block, &size) in w.block_dims.iter().enumerate() {
        if size > 1 {
            out.push(Witness::MatrixBlock { block, size });
        }
    }
    out
}

/// `B_i = F·1_i + J` for every block and the radical `J` itself, each with
/// the restricted action. Requires polynomial growth: all blocks of size
/// one and no radical path between distinct blocks.
pub fn block_sum_split(l: &LAlgebra, w: &WedderburnData) -> Result<Vec<LAlgebra>> {
    let a = &l.algebra;
    if let Some(wit) = obstructions(a, w).first() {
        return Err(Error::NotPolynomialGrowth(match wit {
            Witness::RadicalPath { from, to, .. } => {
                format!("radical path between blocks {} and {}", from + 1, to + 1)
            }
            Witness::MatrixBlock { block, size } => {
                format!("block {} is M_{size}", block + 1)
            }
        }));
    }
    let j_labels: Vec<String> = (1..=w.radical_basis.len()).map(|t| format!("j{t}")).collect();
    let mut out = Vec::new();
    for (i, f) in w.block_idempotents.iter().enumerate() {
        let mut basis = alloc::vec![f.clone()];
        basis.extend(w.radical_basis.iter().cloned());
        let mut labels = alloc::vec![format!("u{}", i + 1)];
        labels.extend(j_labels.iter().cloned());
        if !check_l_stability(a, &l.action, &basis) {
            return Err(Error::Inconsistent(format!(
                "F·1_{} + J is not stable under the action",
                i + 1
            )));
        }
        out.push(l.restrict(&basis, labels)?);
    }
    out.push(l.restrict(&w.radical_basis, j_labels)?);
    Ok(out)
}

/// Which structural hypotheses hold for this input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisFlags {
    pub lie_dim: usize,
    /// Killing form of the acting Lie algebra is nondegenerate. The zero
    /// Lie algebra counts as semisimple.
    pub lie_semisimple: bool,
    pub generators_closed: bool,
    /// The semisimple quotient split over the rationals.
    pub split: bool,
    pub radical_l_stable: bool,
}

/// Verdicts for the seven equivalent characterizations of polynomial growth.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionResults {
    /// (1) `c_n^L` polynomially bounded: finite-data evidence only.
    pub c1_codim_bounded: GrowthEvidence,
    /// (2) `exp^L(A) ≤ 1` from the radical-path formula.
    pub c2_exp_l_at_most_one: bool,
    /// (3) `c_n` polynomially bounded: finite-data evidence only.
    pub c3_ordinary_bounded: GrowthEvidence,
    /// (4) `exp(A) ≤ 1`, read off block sizes and the radical-path graph.
    pub c4_exp_at_most_one: bool,
    /// (5) no UT₂-pattern and no matrix block of size ≥ 2.
    pub c5_no_ut2: bool,
    /// (6) the block-sum split exists and each summand has
    /// `dim B/J(B) ≤ 1`.
    pub c6_block_sum: bool,
    /// (7) cocharacter support below the nilpotency index, per degree.
    pub c7_support: Vec<(usize, bool)>,
}

impl ConditionResults {
    /// Conditions (2), (4), (5), (6) agree.
    pub fn structural_coherent(&self) -> bool {
        let v = self.c2_exp_l_at_most_one;
        self.c4_exp_at_most_one == v && self.c5_no_ut2 == v && self.c6_block_sum == v
    }

    pub fn support_everywhere(&self) -> bool {
        self.c7_support.iter().all(|(_, ok)| *ok)
    }
}

/// Codimensions at one degree as gathered by [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodimPoint {
    pub n: usize,
    pub c_n_l: usize,
    pub c_n: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub exponent: usize,
    pub polynomial_growth: bool,
    /// Nilpotency index of `J`.
    pub q: usize,
    pub block_dims: Vec<usize>,
    pub radical_dim: usize,
    pub witness: Option<Witness>,
    pub obstructions: Vec<Witness>,
    pub hypothesis: HypothesisFlags,
    pub conditions: ConditionResults,
    pub codimensions: Vec<CodimPoint>,
    /// Largest degree for which data was computed.
    pub max_n: usize,
}

/// Options for [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthOptions {
    pub seed: u64,
    /// Degrees `1..=depth` are used for the finite-data conditions; fewer
    /// when the budget runs out.
    pub depth: usize,
    pub budget: u128,
    pub degree_cap: usize,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        GrowthOptions {
            seed: DEFAULT_SEED,
            depth: 4,
            budget: DEFAULT_BUDGET,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

/// Assembles the exponent, obstructions and all checkable conditions.
pub fn classify(l: &LAlgebra, opts: &GrowthOptions) -> Result<GrowthReport> {
    let a = &l.algebra;
    let w = wedderburn(a, opts.seed)?;
    let d = exponent(a, &w);
    let obstructions = obstructions(a, &w);
    let hypothesis = HypothesisFlags {
        lie_dim: l.action.lie_dim(),
        lie_semisimple: l.action.killing_nondegenerate(),
        generators_closed: l.action.generators_closed(),
        split: true,
        radical_l_stable: check_l_stability(a, &l.action, &w.radical_basis),
    };

    let c4 = w.block_dims.iter().all(|&n| n == 1) && w.radical_path_graph.is_empty();
    let c5 = obstructions.is_empty();
    let c6 = match block_sum_split(l, &w) {
        Ok(parts) => parts
            .iter()
            .all(|p| p.algebra.dim() - radical(&p.algebra).len() <= 1),
        Err(Error::NotPolynomialGrowth(_)) => false,
        Err(e) => return Err(e),
    };

    let ob = operator_basis(a, &l.action, opts.degree_cap)?;
    let mut codimensions = Vec::new();
    let mut support = Vec::new();
    for n in 1..=opts.depth {
        let table = match cocharacter(a, &ob, n, opts.budget) {
            Ok(t) => t,
            Err(Error::BudgetExceeded { .. }) => break,
            Err(e) => return Err(e),
        };
        codimensions.push(CodimPoint {
            n,
            c_n_l: table.c_n_l,
            c_n: table.c_n_ordinary,
        });
        support.push((n, support_check(&table, w.nilpotency_index)));
    }
    let c1 = fit_growth(&codimensions.iter().map(|p| (p.n, p.c_n_l)).collect::<Vec<_>>());
    let c3 = fit_growth(&codimensions.iter().map(|p| (p.n, p.c_n)).collect::<Vec<_>>());

    Ok(GrowthReport {
        exponent: d,
        polynomial_growth: d <= 1,
        q: w.nilpotency_index,
        block_dims: w.block_dims.clone(),
        radical_dim: w.radical_basis.len(),
        witness: obstructions.first().cloned(),
        obstructions,
        hypothesis,
        conditions: ConditionResults {
            c1_codim_bounded: c1,
            c2_exp_l_at_most_one: d <= 1,
            c3_ordinary_bounded: c3,
            c4_exp_at_most_one: c4,
            c5_no_ut2: c5,
            c6_block_sum: c6,
            c7_support: support,
        },
        max_n: codimensions.last().map_or(0, |p| p.n),
        codimensions,
    })
}
