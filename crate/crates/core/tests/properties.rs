mod common;

use common::{random_l_algebra, random_unimodular, Gen};
use diffpi_core::algebra::{builtin, direct_sum, wedderburn};
use diffpi_core::codim::{codim, evaluate, DEFAULT_BUDGET};
use diffpi_core::exact::{int, nullspace, rank, Scalar, SparseMatrix};
use diffpi_core::free::{
    derive_poly, operator_basis, permutation_unrank, sn_act, DiffPoly, MonomialIndexer,
    DEFAULT_DEGREE_CAP,
};
use diffpi_core::growth::exponent;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
    })
}

fn to_scalars(rows: &[Vec<i64>]) -> Vec<Vec<Scalar>> {
    rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

/// A random polynomial of degree `n` over an operator basis of size `k`.
fn random_poly(g: &mut Gen, n: usize, k: usize) -> DiffPoly {
    let ix = MonomialIndexer::new(n, k);
    let terms = (0..1 + g.below(4))
        .map(|_| (ix.monomial(g.below(ix.len())), int(g.small(3))));
    DiffPoly::from_terms(n, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(rows in small_matrix()) {
        let m = SparseMatrix::from_dense(&to_scalars(&rows));
        let ker = nullspace(&m);
        prop_assert_eq!(rank(&m) + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn derivation_is_leibniz_on_products(seed in any::<u64>(), n1 in 1usize..3, n2 in 1usize..3) {
        let mut g = Gen::new(seed);
        let ut = builtin("UT2eps").unwrap();
        let ob = operator_basis(&ut.algebra, &ut.action, DEFAULT_DEGREE_CAP).unwrap();
        let p = random_poly(&mut g, n1, ob.len());
        let q = random_poly(&mut g, n2, ob.len());
        let lhs = derive_poly(0, &p.mul_shifted(&q), &ob);
        let mut rhs = derive_poly(0, &p, &ob).mul_shifted(&q);
        rhs.add_scaled(&int(1), &p.mul_shifted(&derive_poly(0, &q, &ob)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_equivariant(seed in any::<u64>(), rank_ in 0usize..6) {
        // (σp)(a_1, …, a_n) = p(a_σ(1), …, a_σ(n))
        let mut g = Gen::new(seed);
        let ut = builtin("UT2eps").unwrap();
        let ob = operator_basis(&ut.algebra, &ut.action, DEFAULT_DEGREE_CAP).unwrap();
        let p = random_poly(&mut g, 3, ob.len());
        let args: Vec<Vec<Scalar>> = (0..3)
            .map(|_| (0..3).map(|_| int(g.small(2))).collect())
            .collect();
        let sigma = permutation_unrank(3, rank_);
        let moved = evaluate(&sn_act(&sigma, &p).unwrap(), &args, &ut.algebra, &ob).unwrap();
        let permuted: Vec<Vec<Scalar>> = sigma.iter().map(|&i| args[i].clone()).collect();
        prop_assert_eq!(moved, evaluate(&p, &permuted, &ut.algebra, &ob).unwrap());
    }

    #[test]
    fn exponent_survives_basis_change(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let l = random_l_algebra(&mut g, 4);
        let p = random_unimodular(&mut g, l.algebra.dim());
        let m = l.change_basis(&p).unwrap();
        let e = |a| exponent(a, &wedderburn(a, 0).unwrap());
        prop_assert_eq!(e(&l.algebra), e(&m.algebra));
    }

    #[test]
    fn exponent_of_sum_is_max(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let x = random_l_algebra(&mut g, 3);
        let y = random_l_algebra(&mut g, 3);
        let s = direct_sum(&x, &y).unwrap();
        let e = |a| exponent(a, &wedderburn(a, 0).unwrap());
        prop_assert_eq!(e(&s.algebra), e(&x.algebra).max(e(&y.algebra)));
    }

    #[test]
    fn ordinary_codimension_ignores_the_action(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let l = random_l_algebra(&mut g, 3);
        let ob = operator_basis(&l.algebra, &l.action, DEFAULT_DEGREE_CAP).unwrap();
        let trivial = diffpi_core::free::OperatorBasis::trivial(l.algebra.dim());
        for n in 1..=3 {
            let with = codim(&l.algebra, &ob, n, false, DEFAULT_BUDGET).unwrap();
            let without = codim(&l.algebra, &trivial, n, true, DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(with.c_n_ordinary, without.c_n_ordinary);
            prop_assert!(with.c_n_ordinary <= with.c_n_l.unwrap());
        }
    }
}
