//! Random split algebras for the coherence and property suites.
#![allow(dead_code)]

use diffpi_core::algebra::{builtin, direct_sum, inner_derivation, Algebra, LAlgebra};
use diffpi_core::exact::{int, Matrix, Scalar};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub struct Gen(ChaCha8Rng);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }

    pub fn small(&mut self, r: i64) -> i64 {
        self.below((2 * r + 1) as usize) as i64 - r
    }
}

/// Sets of matrix units `e_ij` (`i ≤ j < size`) closed under multiplication.
pub fn closed_patterns(size: usize, max_dim: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (i..size).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << pairs.len()) {
        let s: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| pairs[b])
            .collect();
        if s.len() > max_dim {
            continue;
        }
        let closed = s.iter().all(|&(i, j)| {
            s.iter()
                .filter(|&&(k, _)| k == j)
                .all(|&(_, l)| s.contains(&(i, l)))
        });
        if closed {
            out.push(s);
        }
    }
    out
}

/// The span of the given matrix units as an algebra.
pub fn pattern_algebra(units: &[(usize, usize)]) -> Algebra {
    let labels = units.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    let mut products = Vec::new();
    for (x, &(i, j)) in units.iter().enumerate() {
        for (y, &(k, l)) in units.iter().enumerate() {
            if j == k {
                let z = units.iter().position(|&u| u == (i, l)).unwrap();
                products.push((x, y, vec![(z, int(1))]));
            }
        }
    }
    Algebra::new(labels, products).unwrap()
}

fn random_vec(g: &mut Gen, d: usize) -> Vec<Scalar> {
    (0..d).map(|_| int(g.small(2))).collect()
}

/// A random unimodular integer matrix: a product of unit triangular ones.
pub fn random_unimodular(g: &mut Gen, d: usize) -> Matrix {
    let mut lo = Matrix::identity(d);
    let mut up = Matrix::identity(d);
    for i in 0..d {
        for j in 0..i {
            lo.set(i, j, int(g.small(1)));
            up.set(j, i, int(g.small(1)));
        }
    }
    &lo * &up
}

/// A random split algebra of dimension at most `max_dim` with one random
/// inner derivation `eps`, written in a scrambled basis.
pub fn random_l_algebra(g: &mut Gen, max_dim: usize) -> LAlgebra {
    let pats = closed_patterns(4, max_dim);
    let a = match g.below(10) {
        0 if max_dim >= 4 => builtin("M2").unwrap().algebra,
        1 if max_dim >= 2 => {
            let p = &pats[g.below(pats.len())];
            if p.len() < max_dim {
                direct_sum(&LAlgebra::plain(pattern_algebra(p)), &builtin("F1").unwrap())
                    .unwrap()
                    .algebra
            } else {
                pattern_algebra(p)
            }
        }
        _ => pattern_algebra(&pats[g.below(pats.len())]),
    };
    let x = random_vec(g, a.dim());
    let eps = inner_derivation(&a, &x);
    let l = LAlgebra::new(a, vec![("eps".into(), eps)]).unwrap();
    let p = random_unimodular(g, l.algebra.dim());
    l.change_basis(&p).unwrap()
}

/// Folds a nonempty list with [`direct_sum`].
pub fn sum_all(parts: &[LAlgebra]) -> LAlgebra {
    parts[1..]
        .iter()
        .fold(parts[0].clone(), |acc, p| direct_sum(&acc, p).unwrap())
}
