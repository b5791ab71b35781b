use alloc::vec::Vec;
use num_traits::Zero;

use super::{
    derive_poly, sn_act, substitute_derivative, DiffMonomial, DiffPoly, MonomialIndexer,
    OperatorBasis,
};
use crate::exact::{Echelon, PivotRule};
use crate::{Error, Result};

/// `h(x_1 x_2)` expanded with the Leibniz rule along the stored word of
/// each op `h`.
fn product_images(ob: &OperatorBasis) -> Vec<DiffPoly> {
    let base = DiffPoly::from_monomial(DiffMonomial::identity(2));
    ob.words()
        .iter()
        .map(|w| w.iter().rev().fold(base.clone(), |p, &g| derive_poly(g, &p, ob)))
        .collect()
}

/// Degree-2 relations coming from the kernel of `U(L) → End(A)`: the two
/// sides of `g(h(x_1 x_2)) = (g∘h)(x_1 x_2)` expand differently.
fn kernel_relations(ob: &OperatorBasis, images: &[DiffPoly]) -> Vec<DiffPoly> {
    let mut out = Vec::new();
    for g in 0..ob.generators().len() {
        for (j, w) in images.iter().enumerate() {
            let mut r = derive_poly(g, w, ob);
            for (l, c) in ob.gen_action(g, j).iter().enumerate() {
                if !c.is_zero() {
                    r.add_scaled(&-c.clone(), &images[l]);
                }
            }
            if !r.is_zero() {
                out.push(r);
            }
        }
    }
    out
}

/// Substitutes `x_var ↦ x_var x_new` where `x_new` is a fresh last variable.
fn split_variable(p: &DiffPoly, var: usize, images: &[DiffPoly]) -> DiffPoly {
    let n = p.degree();
    let mut out = DiffPoly::zero(n + 1);
    for (m, c) in p.terms() {
        let pos = m.perm.iter().position(|&v| v == var).expect("multilinear");
        for (q, x) in images[m.labels[pos]].terms() {
            let map = |v: usize| if v == 0 { var } else { n };
            let mut perm = m.perm[..pos].to_vec();
            perm.extend(q.perm.iter().map(|&v| map(v)));
            perm.extend_from_slice(&m.perm[pos + 1..]);
            let mut labels = m.labels[..pos].to_vec();
            labels.extend_from_slice(&q.labels);
            labels.extend_from_slice(&m.labels[pos + 1..]);
            out.add_term(DiffMonomial::new(perm, labels), c * x);
        }
    }
    out
}

/// `x_new · p` or `p · x_new` with a fresh last variable.
fn multiply_fresh(p: &DiffPoly, left: bool) -> DiffPoly {
    let n = p.degree();
    let mut out = DiffPoly::zero(n + 1);
    for (m, c) in p.terms() {
        let (mut perm, mut labels) = (m.perm.clone(), m.labels.clone());
        if left {
            perm.insert(0, n);
            labels.insert(0, 0);
        } else {
            perm.push(n);
            labels.push(0);
        }
        out.add_term(DiffMonomial::new(perm, labels), c.clone());
    }
    out
}

/// Span of the degree-`n` multilinear part of a T_L-ideal, grown one
/// degree at a time.
struct Layer {
    ix: MonomialIndexer,
    ech: Echelon,
    basis: Vec<DiffPoly>,
}

impl Layer {
    fn new(n: usize, k: usize) -> Self {
        let ix = MonomialIndexer::new(n, k);
        Layer {
            ech: Echelon::new(ix.len(), PivotRule::Sparsest),
            ix,
            basis: Vec::new(),
        }
    }

    fn offer(&mut self, p: DiffPoly, queue: &mut Vec<DiffPoly>) {
        if p.is_zero() {
            return;
        }
        if self.ech.insert(&p.to_sparse(&self.ix)).is_some() {
            self.basis.push(p.clone());
            queue.push(p);
        }
    }

    /// Closes the span under the S_n action, `x_v ↦ x_v^g` and the
    /// generators acting as derivations.
    fn close(&mut self, seeds: Vec<DiffPoly>, ob: &OperatorBasis) -> Result<()> {
        let n = self.ix.degree();
        let mut queue = Vec::new();
        for s in seeds {
            if s.degree() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: s.degree(),
                });
            }
            self.offer(s, &mut queue);
        }
        let transpositions: Vec<Vec<usize>> = (0..n.saturating_sub(1))
            .map(|i| {
                let mut s: Vec<usize> = (0..n).collect();
                s.swap(i, i + 1);
                s
            })
            .collect();
        let gens = ob.generators().len();
        while let Some(p) = queue.pop() {
            for s in &transpositions {
                self.offer(sn_act(s, &p)?, &mut queue);
            }
            for g in 0..gens {
                self.offer(derive_poly(g, &p, ob), &mut queue);
                for v in 0..n {
                    self.offer(substitute_derivative(v, g, &p, ob), &mut queue);
                }
            }
        }
        Ok(())
    }
}

/// Basis of the degree-`n` multilinear part of the T_L-ideal generated by
/// `gens`, as polynomials over the labels of `ob`.
///
/// Labels are taken modulo the kernel of `U(L) → End(A)`, so the ideal
/// computed is the one generated by `gens` together with that kernel. Each
/// degree `m` is seeded with the generators of degree `m` and with
/// `x_m·f`, `f·x_m` and `f|_{x_i ↦ x_i x_m}` for `f` in degree `m − 1`, then
/// closed under the S_m action, `x_v ↦ x_v^g` and derivation by each `g`.
/// Generators of degree above `n` contribute nothing and are skipped. The
/// returned basis is in reduced echelon form under the monomial order.
pub fn consequences(gens: &[DiffPoly], n: usize, ob: &OperatorBasis) -> Result<Vec<DiffPoly>> {
    let k = ob.len();
    let images = product_images(ob);
    let mut previous: Vec<DiffPoly> = Vec::new();
    let mut layer = Layer::new(0, k);
    for m in 1..=n {
        layer = Layer::new(m, k);
        let mut seeds: Vec<DiffPoly> = gens.iter().filter(|g| g.degree() == m).cloned().collect();
        if m == 2 {
            seeds.extend(kernel_relations(ob, &images));
        }
        for f in &previous {
            seeds.push(multiply_fresh(f, true));
            seeds.push(multiply_fresh(f, false));
            for v in 0..m - 1 {
                seeds.push(split_variable(f, v, &images));
            }
        }
        layer.close(seeds, ob)?;
        previous = core::mem::take(&mut layer.basis);
    }
    let ix = layer.ix;
    let rows = layer.ech.rref();
    Ok(rows
        .into_iter()
        .map(|(_, r)| DiffPoly::from_sparse(&ix, &r))
        .collect())
}

/// `dim P_n` over the labels of `ob`, minus the dimension of the
/// consequences of `gens` in degree `n`.
pub fn codim_via_ideal(gens: &[DiffPoly], ob: &OperatorBasis, n: usize) -> Result<usize> {
    let total = MonomialIndexer::new(n, ob.len()).len();
    Ok(total - consequences(gens, n, ob)?.len())
}

/// Membership test against a basis returned by [`consequences`].
pub fn in_span(basis: &[DiffPoly], p: &DiffPoly, ob: &OperatorBasis) -> bool {
    let ix = MonomialIndexer::new(p.degree(), ob.len());
    let mut ech = Echelon::new(ix.len(), PivotRule::Leading);
    for b in basis {
        ech.insert(&b.to_sparse(&ix));
    }
    ech.contains(&p.to_sparse(&ix))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::free::{operator_basis, parse_diff_poly};

    fn ut2() -> OperatorBasis {
        let ut = builtin("UT2eps").unwrap();
        operator_basis(&ut.algebra, &ut.action, 4).unwrap()
    }

    fn ut2_generators(ob: &OperatorBasis) -> Vec<DiffPoly> {
        ["[x1,x2]^eps - [x1,x2]", "x1^eps*x2^eps", "x1^epseps - x1^eps"]
            .iter()
            .map(|s| parse_diff_poly(s, ob).unwrap())
            .collect()
    }

    #[test]
    fn ut2eps_degree_two() {
        let ob = ut2();
        let basis = consequences(&ut2_generators(&ob), 2, &ob).unwrap();
        assert_eq!(basis.len(), 3);
        assert_eq!(codim_via_ideal(&ut2_generators(&ob), &ob, 2).unwrap(), 5);
    }

    #[test]
    fn trivial_ideals() {
        let ob = ut2();
        let x = parse_diff_poly("x1", &ob).unwrap();
        assert_eq!(consequences(core::slice::from_ref(&x), 2, &ob).unwrap().len(), 8);
        assert_eq!(codim_via_ideal(&[x], &ob, 3).unwrap(), 0);
        // with no action the empty set generates nothing
        let plain = OperatorBasis::trivial(3);
        assert!(consequences(&[], 3, &plain).unwrap().is_empty());
        assert_eq!(codim_via_ideal(&[], &plain, 3).unwrap(), 6);
    }

    #[test]
    fn kernel_of_the_action_is_always_present() {
        // eps∘eps = eps forces (eps² − eps)(x1 x2) = 2 x1^eps x2^eps
        let ob = ut2();
        let basis = consequences(&[], 2, &ob).unwrap();
        // together with its image under the transposition
        assert_eq!(basis.len(), 2);
        let p = parse_diff_poly("x1^eps*x2^eps", &ob).unwrap();
        assert!(in_span(&basis, &p, &ob));
        assert_eq!(codim_via_ideal(&[], &ob, 2).unwrap(), 6);
    }

    #[test]
    fn output_is_stable() {
        let ob = ut2();
        let basis = consequences(&ut2_generators(&ob), 3, &ob).unwrap();
        for b in &basis {
            assert!(in_span(&basis, &sn_act(&[1, 2, 0], b).unwrap(), &ob));
            assert!(in_span(&basis, &derive_poly(0, b, &ob), &ob));
        }
    }
}
