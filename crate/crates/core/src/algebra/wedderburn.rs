//! Jacobson radical, Wedderburn–Malcev splitting and the splitting of
//! derivations against a semisimple complement.

use alloc::format;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{inner_derivation, Algebra, Derivation, DerivationAction};
use crate::exact::{self, Echelon, Matrix, PivotRule, Scalar, SparseMatrix};
use crate::{Error, Result};

/// Seed used when callers do not choose one.
pub const DEFAULT_SEED: u64 = 0;

const SPLIT_RETRIES: usize = 8;

/// Basis of the Jacobson radical `J(A)`.
///
/// Dickson's criterion: in characteristic zero `J` is the kernel of the
/// trace form `(x, y) ↦ Tr(L_{xy})` of the unitalization `F·1 ⊕ A`. The
/// returned basis is in reduced echelon form.
pub fn radical(a: &Algebra) -> Vec<Vec<Scalar>> {
    let d = a.dim();
    if d == 0 {
        return Vec::new();
    }
    // traces of left multiplication on F·1 ⊕ A; L_1 is the identity
    let tr: Vec<Scalar> = (0..d)
        .map(|i| a.left_mult(&a.basis_vector(i)).trace())
        .collect();
    let tr_of = |v: &[Scalar]| -> Scalar {
        v.iter()
            .zip(&tr)
            .filter(|(x, _)| !x.is_zero())
            .fold(Scalar::zero(), |acc, (x, t)| acc + x * t)
    };
    let n = d + 1;
    let mut gram = Matrix::zeros(n, n);
    gram.set(0, 0, exact::int(n as i64));
    for i in 0..d {
        gram.set(0, i + 1, tr[i].clone());
        gram.set(i + 1, 0, tr[i].clone());
        for j in 0..d {
            let p = exact::to_dense(a.product(i, j), d);
            gram.set(i + 1, j + 1, tr_of(&p));
        }
    }
    let kernel = exact::nullspace(&SparseMatrix::from_dense(&gram.row_vectors()));
    let vectors: Vec<Vec<Scalar>> = kernel
        .into_iter()
        .map(|v| {
            debug_assert!(v[0].is_zero(), "radical lies inside A");
            v[1..].to_vec()
        })
        .collect();
    exact::span_basis(&vectors, d)
}

/// Span of all products `u·v`, `u ∈ left`, `v ∈ right`.
pub(crate) fn product_space(
    a: &Algebra,
    left: &[Vec<Scalar>],
    right: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon::new(a.dim(), PivotRule::Leading);
    for u in left {
        for v in right {
            ech.insert(&exact::to_sparse(&a.mul(u, v)));
        }
    }
    ech.rref()
        .into_iter()
        .map(|(_, r)| exact::to_dense(&r, a.dim()))
        .collect()
}

/// Least `q ≥ 1` with `J^q = 0` for the ideal spanned by `j` (nilpotent).
pub fn nilpotency_index(a: &Algebra, j: &[Vec<Scalar>]) -> usize {
    powers(a, j).len() + 1
}

/// Nonzero powers `J, J², …` of a nilpotent subspace.
fn powers(a: &Algebra, j: &[Vec<Scalar>]) -> Vec<Vec<Vec<Scalar>>> {
    let mut out = Vec::new();
    let mut cur = exact::span_basis(j, a.dim());
    while !cur.is_empty() {
        let next = product_space(a, &cur, j);
        out.push(cur);
        if out.len() > a.dim() + 1 {
            break;
        }
        cur = next;
    }
    out
}

/// Output of [`wedderburn`].
///
/// Blocks are listed in a canonical order that does not depend on the seed:
/// by the support of the central idempotent of `A/J` they lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedderburnData {
    pub radical_basis: Vec<Vec<Scalar>>,
    pub nilpotency_index: usize,
    /// Orthogonal idempotents `1_i ∈ A` lifting the block units of `A/J`.
    pub block_idempotents: Vec<Vec<Scalar>>,
    /// `n_i` with `B_i ≅ M_{n_i}(ℚ)`.
    pub block_dims: Vec<usize>,
    /// Basis of each block `B_i` of a semisimple complement `B = ⊕ B_i`.
    pub block_bases: Vec<Vec<Vec<Scalar>>>,
    /// Pairs `(i, k)`, `i ≠ k`, with `1_i J 1_k ≠ 0`.
    pub radical_path_graph: Vec<(usize, usize)>,
}

impl WedderburnData {
    pub fn blocks(&self) -> usize {
        self.block_dims.len()
    }

    /// All vectors of the semisimple complement, block after block.
    pub fn complement_basis(&self) -> Vec<Vec<Scalar>> {
        self.block_bases.iter().flatten().cloned().collect()
    }
}

/// The quotient `S = A/J` on the complement spanned by the standard basis
/// vectors outside the pivot columns of `J`.
struct Quotient<'a> {
    a: &'a Algebra,
    radical: &'a [Vec<Scalar>],
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// `gamma[x][y]` = coordinates of `c_x · c_y` in `S`.
    gamma: Vec<Vec<Vec<Scalar>>>,
}

impl<'a> Quotient<'a> {
    fn new(a: &'a Algebra, radical: &'a [Vec<Scalar>]) -> Self {
        let pivots: Vec<usize> = radical
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero radical vector"))
            .collect();
        let free: Vec<usize> = (0..a.dim()).filter(|c| !pivots.contains(c)).collect();
        let mut q = Quotient {
            a,
            radical,
            pivots,
            free,
            gamma: Vec::new(),
        };
        let gamma = q
            .free
            .iter()
            .map(|&x| {
                q.free
                    .iter()
                    .map(|&y| q.project(&exact::to_dense(a.product(x, y), a.dim())))
                    .collect()
            })
            .collect();
        q.gamma = gamma;
        q
    }

    fn dim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates in `S` of the class of `v ∈ A`.
    fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (p, r) in self.pivots.iter().zip(self.radical) {
            let c = w[*p].clone();
            if !c.is_zero() {
                exact::axpy(&mut w, &-c, r);
            }
        }
        self.free.iter().map(|&c| w[c].clone()).collect()
    }

    /// A preimage in `A` of `s ∈ S`.
    fn lift(&self, s: &[Scalar]) -> Vec<Scalar> {
        let mut v = exact::zero_vec(self.a.dim());
        for (x, &c) in s.iter().zip(&self.free) {
            v[c] = x.clone();
        }
        v
    }

    fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = exact::zero_vec(self.dim());
        for (x, ux) in u.iter().enumerate() {
            if ux.is_zero() {
                continue;
            }
            for (y, vy) in v.iter().enumerate() {
                if vy.is_zero() {
                    continue;
                }
                exact::axpy(&mut out, &(ux * vy), &self.gamma[x][y]);
            }
        }
        out
    }

    fn unit(&self) -> Result<Vec<Scalar>> {
        let s = self.dim();
        let mut m = SparseMatrix::new(s);
        let mut rhs = Vec::new();
        for b in 0..s {
            for t in 0..s {
                // Σ_x u_x γ[x][b]_t = δ_{bt} and Σ_x u_x γ[b][x]_t = δ_{bt}
                let left: Vec<Scalar> = (0..s).map(|x| self.gamma[x][b][t].clone()).collect();
                let right: Vec<Scalar> = (0..s).map(|x| self.gamma[b][x][t].clone()).collect();
                let target = if b == t { Scalar::one() } else { Scalar::zero() };
                m.push_row(exact::to_sparse(&left));
                rhs.push(target.clone());
                m.push_row(exact::to_sparse(&right));
                rhs.push(target);
            }
        }
        exact::solve(&m, &rhs)
            .ok_or_else(|| Error::Inconsistent("A/J has no unit; input is not associative".into()))
    }

    fn center(&self) -> Vec<Vec<Scalar>> {
        let s = self.dim();
        let mut m = SparseMatrix::new(s);
        for b in 0..s {
            for t in 0..s {
                let row: Vec<Scalar> = (0..s)
                    .map(|x| &self.gamma[x][b][t] - &self.gamma[b][x][t])
                    .collect();
                m.push_row(exact::to_sparse(&row));
            }
        }
        exact::nullspace(&m)
    }
}

/// Rational roots of a polynomial given by ascending coefficients, if it
/// factors into distinct rational linear factors. `None` otherwise, or
/// when the coefficients are too large to search exhaustively.
fn distinct_rational_roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    let degree = coeffs.len() - 1;
    let mut l = BigInt::one();
    for c in coeffs {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut roots = Vec::new();
    let mut low = 0;
    while low < ints.len() && ints[low].is_zero() {
        low += 1;
    }
    if low > 1 {
        return None;
    }
    if low == 1 {
        roots.push(Scalar::zero());
    }
    let a0 = ints[low].abs().to_u64()?;
    let an = ints[degree].abs().to_u64()?;
    if a0 > 1 << 40 || an > 1 << 40 {
        return None;
    }
    let eval = |x: &Scalar| -> Scalar {
        coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    };
    for p in divisors(a0) {
        for q in divisors(an) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = exact::frac(sign * p as i64, q as i64);
                if eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    (roots.len() == degree).then_some(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Splits the central idempotent `e` of `S` into primitive central idempotents.
fn split_center(
    q: &Quotient<'_>,
    center: &[Vec<Scalar>],
    e: Vec<Scalar>,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Vec<Scalar>>,
) -> Result<()> {
    let s = q.dim();
    let local: Vec<Vec<Scalar>> = center.iter().map(|z| q.mul(&e, z)).collect();
    let local = exact::span_basis(&local, s);
    if local.len() <= 1 {
        out.push(e);
        return Ok(());
    }
    for _ in 0..SPLIT_RETRIES {
        let mut z = exact::zero_vec(s);
        for b in &local {
            let c = (rng.next_u32() % 11) as i64 - 5;
            exact::axpy(&mut z, &exact::int(c), b);
        }
        // minimal polynomial of z inside eZ via its Krylov sequence
        let mut ech = Echelon::tracked(s, PivotRule::Sparsest);
        let mut power = e.clone();
        let mut coeffs = None;
        for k in 0..=local.len() {
            if let Some(c) = ech.express(&exact::to_sparse(&power)) {
                let mut poly: Vec<Scalar> = c.into_iter().map(|x| -x).collect();
                poly.push(Scalar::one());
                coeffs = Some(poly);
                break;
            }
            ech.insert(&exact::to_sparse(&power));
            debug_assert_eq!(ech.rank(), k + 1);
            power = q.mul(&z, &power);
        }
        let Some(coeffs) = coeffs else { continue };
        if coeffs.len() <= 2 {
            continue;
        }
        let Some(roots) = distinct_rational_roots(&coeffs) else {
            continue;
        };
        for (i, lambda) in roots.iter().enumerate() {
            let mut idem = e.clone();
            for (j, mu) in roots.iter().enumerate() {
                if i == j {
                    continue;
                }
                let shifted = exact::sub_vec(&z, &exact::scale_vec(mu, &e));
                let factor = exact::scale_vec(&(lambda - mu).recip(), &shifted);
                idem = q.mul(&idem, &factor);
            }
            split_center(q, center, idem, rng, out)?;
        }
        return Ok(());
    }
    Err(Error::NonSplit(format!(
        "center of a semisimple block has dimension {} but no random element split it after {} tries",
        local.len(),
        SPLIT_RETRIES
    )))
}

/// Multiplication in the unitalization `F·1 ⊕ A`.
fn unital_mul(a: &Algebra, x: &(Scalar, Vec<Scalar>), y: &(Scalar, Vec<Scalar>)) -> (Scalar, Vec<Scalar>) {
    let mut v = a.mul(&x.1, &y.1);
    exact::axpy(&mut v, &x.0, &y.1);
    exact::axpy(&mut v, &y.0, &x.1);
    (&x.0 * &y.0, v)
}

/// Refines `e` with `e ← 3e² − 2e³` until it is exactly idempotent.
fn refine_idempotent(a: &Algebra, mut e: Vec<Scalar>) -> Result<Vec<Scalar>> {
    for _ in 0..=2 * a.dim() + 2 {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = a.mul(&e2, &e);
        e = exact::sub_vec(&exact::scale_vec(&exact::int(3), &e2), &exact::scale_vec(&exact::int(2), &e3));
    }
    Err(Error::Inconsistent("idempotent refinement did not converge".into()))
}

/// Wedderburn–Malcev data of `a`: radical, nilpotency index, lifted block
/// idempotents, block sizes, a semisimple complement and the radical-path
/// graph. Randomness (choice of central elements) is driven by `seed`; the
/// result does not depend on it.
pub fn wedderburn(a: &Algebra, seed: u64) -> Result<WedderburnData> {
    let d = a.dim();
    let radical_basis = radical(a);
    let nilpotency_index = nilpotency_index(a, &radical_basis);
    let q = Quotient::new(a, &radical_basis);
    let s = q.dim();

    let mut central = Vec::new();
    if s > 0 {
        let unit = q.unit()?;
        let center = q.center();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        split_center(&q, &center, unit, &mut rng, &mut central)?;
    }
    central.sort_by(|x, y| {
        let fx = x.iter().position(|c| !c.is_zero());
        let fy = y.iter().position(|c| !c.is_zero());
        fx.cmp(&fy).then_with(|| y.cmp(x))
    });

    let mut block_dims = Vec::new();
    for e in &central {
        let images: Vec<Vec<Scalar>> = (0..s).map(|b| q.mul(e, &exact::unit_vec(s, b))).collect();
        let dim = exact::span_dim(&images, s);
        let n = (1..=dim).find(|n| n * n >= dim).unwrap_or(0);
        if n * n != dim {
            return Err(Error::NonSplit(format!(
                "simple block of dimension {dim} is not a full matrix algebra over the rationals"
            )));
        }
        block_dims.push(n);
    }

    // orthogonal lifting inside the unitalization
    let mut idempotents: Vec<Vec<Scalar>> = Vec::new();
    for e in &central {
        let mut g = (Scalar::one(), exact::zero_vec(d));
        for f in &idempotents {
            g.1 = exact::sub_vec(&g.1, f);
        }
        let lifted = (Scalar::zero(), q.lift(e));
        let x = unital_mul(a, &unital_mul(a, &g, &lifted), &g);
        debug_assert!(x.0.is_zero());
        idempotents.push(refine_idempotent(a, x.1)?);
    }

    let mut block_bases = Vec::new();
    for (f, &n) in idempotents.iter().zip(&block_dims) {
        if n == 1 {
            block_bases.push(alloc::vec![f.clone()]);
        } else {
            block_bases.push(corner_complement(a, f, &radical_basis, n)?);
        }
    }

    let mut radical_path_graph = Vec::new();
    for (i, fi) in idempotents.iter().enumerate() {
        for (k, fk) in idempotents.iter().enumerate() {
            if i != k
                && radical_basis
                    .iter()
                    .any(|j| !exact::is_zero_vec(&a.mul(&a.mul(fi, j), fk)))
            {
                radical_path_graph.push((i, k));
            }
        }
    }

    Ok(WedderburnData {
        radical_basis,
        nilpotency_index,
        block_idempotents: idempotents,
        block_dims,
        block_bases,
        radical_path_graph,
    })
}

/// A subalgebra `B ⊂ fAf` with `B ≅ M_n` and `B ∩ J = 0`, found by
/// correcting a linear section of `fAf → fAf/fJf` one radical layer at a time.
fn corner_complement(
    a: &Algebra,
    f: &[Scalar],
    radical_basis: &[Vec<Scalar>],
    n: usize,
) -> Result<Vec<Vec<Scalar>>> {
    let d = a.dim();
    let sandwich = |v: &[Scalar]| a.mul(&a.mul(f, v), f);
    let corner: Vec<Vec<Scalar>> = (0..d).map(|t| sandwich(&a.basis_vector(t))).collect();
    let corner = exact::span_basis(&corner, d);
    let jc: Vec<Vec<Scalar>> = radical_basis.iter().map(|j| sandwich(j)).collect();
    let jc = exact::span_basis(&jc, d);

    let mut ech = Echelon::new(d, PivotRule::Leading);
    for j in &jc {
        ech.insert(&exact::to_sparse(j));
    }
    let mut sigma: Vec<Vec<Scalar>> = Vec::new();
    for c in &corner {
        if ech.insert(&exact::to_sparse(c)).is_some() {
            sigma.push(c.clone());
        }
    }
    let s = sigma.len();
    if s != n * n {
        return Err(Error::NonSplit(format!(
            "corner algebra has semisimple part of dimension {s}, expected {}",
            n * n
        )));
    }
    let full: Vec<Vec<Scalar>> = sigma.iter().chain(&jc).cloned().collect();
    let coords_in_corner = |v: &[Scalar]| -> Result<Vec<Scalar>> {
        exact::coordinates(&full, v)
            .ok_or_else(|| Error::Inconsistent("product left the corner algebra".into()))
    };
    // structure constants of the quotient in the basis σ
    let mut gamma = alloc::vec![alloc::vec![Vec::new(); s]; s];
    for x in 0..s {
        for y in 0..s {
            let c = coords_in_corner(&a.mul(&sigma[x], &sigma[y]))?;
            gamma[x][y] = c[..s].to_vec();
        }
    }
    let defect = |sigma: &[Vec<Scalar>], x: usize, y: usize| -> Vec<Scalar> {
        let mut v = a.mul(&sigma[x], &sigma[y]);
        for (t, g) in gamma[x][y].iter().enumerate() {
            if !g.is_zero() {
                exact::axpy(&mut v, &-g.clone(), &sigma[t]);
            }
        }
        v
    };

    let layers = powers(a, &jc);
    for (k, layer) in layers.iter().enumerate() {
        let next: &[Vec<Scalar>] = layers.get(k + 1).map_or(&[], Vec::as_slice);
        let mut ech = Echelon::new(d, PivotRule::Leading);
        for v in next {
            ech.insert(&exact::to_sparse(v));
        }
        let mut w: Vec<Vec<Scalar>> = Vec::new();
        for v in layer {
            if ech.insert(&exact::to_sparse(v)).is_some() {
                w.push(v.clone());
            }
        }
        let m = w.len();
        let layer_basis: Vec<Vec<Scalar>> = w.iter().chain(next).cloned().collect();
        let mod_next = |v: &[Scalar]| -> Result<Vec<Scalar>> {
            let c = exact::coordinates(&layer_basis, v).ok_or_else(|| {
                Error::Inconsistent("section defect escaped the radical layer".into())
            })?;
            Ok(c[..m].to_vec())
        };
        // products with layer vectors, reduced modulo the next layer
        let mut left = alloc::vec![Vec::new(); s * m];
        let mut right = alloc::vec![Vec::new(); s * m];
        for x in 0..s {
            for u in 0..m {
                left[x * m + u] = mod_next(&a.mul(&sigma[x], &w[u]))?;
                right[x * m + u] = mod_next(&a.mul(&w[u], &sigma[x]))?;
            }
        }
        let unknowns = s * m;
        let mut system = SparseMatrix::new(unknowns);
        let mut rhs = Vec::new();
        for x in 0..s {
            for y in 0..s {
                let dxy = mod_next(&defect(&sigma, x, y))?;
                for t in 0..m {
                    let mut row = exact::zero_vec(unknowns);
                    for u in 0..m {
                        // σ_x φ_y + φ_x σ_y − Σ_z γ_xy^z φ_z
                        row[y * m + u] += &left[x * m + u][t];
                        row[x * m + u] += &right[y * m + u][t];
                    }
                    for (z, g) in gamma[x][y].iter().enumerate() {
                        row[z * m + t] -= g;
                    }
                    system.push_row(exact::to_sparse(&row));
                    rhs.push(-dxy[t].clone());
                }
            }
        }
        let phi = exact::solve(&system, &rhs).ok_or_else(|| {
            Error::Inconsistent("no Wedderburn–Malcev correction at this radical layer".into())
        })?;
        for x in 0..s {
            for u in 0..m {
                let c = &phi[x * m + u];
                if !c.is_zero() {
                    let wu = w[u].clone();
                    exact::axpy(&mut sigma[x], c, &wu);
                }
            }
        }
    }
    for x in 0..s {
        for y in 0..s {
            if !exact::is_zero_vec(&defect(&sigma, x, y)) {
                return Err(Error::Inconsistent(
                    "semisimple section is not multiplicative after correction".into(),
                ));
            }
        }
    }
    Ok(sigma)
}

/// True iff every generator maps `subspace` into its span.
pub fn check_l_stability(a: &Algebra, act: &DerivationAction, subspace: &[Vec<Scalar>]) -> bool {
    let dim = a.dim();
    if act.algebra_dim() != dim || subspace.iter().any(|v| v.len() != dim) {
        return false;
    }
    let mut ech = Echelon::new(dim, PivotRule::Leading);
    for v in subspace {
        ech.insert(&exact::to_sparse(v));
    }
    act.generators().iter().all(|(_, d)| {
        subspace
            .iter()
            .all(|v| ech.contains(&exact::to_sparse(&d.apply(v))))
    })
}

/// Writes `d = ad a + δ′` with `δ′` vanishing on the semisimple complement.
///
/// When `d` is inner on all of `A`, that `a` is returned and `δ′ = 0`.
/// Otherwise `a` solves `[a, b] = d(b)` for `b` in the complement. Among
/// the solutions (which differ by elements centralizing the system) the
/// one with free coordinates set to zero under the basis order is taken.
pub fn split_derivation(
    a: &Algebra,
    w: &WedderburnData,
    d: &Derivation,
) -> Result<(Vec<Scalar>, Derivation)> {
    let dim = a.dim();
    if d.matrix().rows() != dim || d.matrix().cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: d.matrix().rows(),
        });
    }
    let solve_on = |vectors: &[Vec<Scalar>]| -> Option<Vec<Scalar>> {
        let mut m = SparseMatrix::new(dim);
        let mut rhs = Vec::new();
        for b in vectors {
            // a ↦ ab − ba
            let op = &a.right_mult(b) - &a.left_mult(b);
            let target = d.apply(b);
            for (r, t) in target.into_iter().enumerate() {
                m.push_row(exact::to_sparse(op.row(r)));
                rhs.push(t);
            }
        }
        exact::solve(&m, &rhs)
    };
    let full: Vec<Vec<Scalar>> = (0..dim).map(|i| a.basis_vector(i)).collect();
    let x = match solve_on(&full) {
        Some(x) => x,
        None => solve_on(&w.complement_basis()).ok_or_else(|| {
            Error::Inconsistent("derivation is not inner on the semisimple complement".into())
        })?,
    };
    let rest = d.matrix() - inner_derivation(a, &x).matrix();
    Ok((x, Derivation::new(rest)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::exact::{frac, int};

    fn span_eq(x: &[Vec<Scalar>], y: &[Vec<Scalar>], dim: usize) -> bool {
        exact::span_basis(x, dim) == exact::span_basis(y, dim)
    }

    #[test]
    fn radical_of_ut2() {
        let a = builtin("UT2").unwrap().algebra;
        // basis e11, e12, e22
        let j = radical(&a);
        assert!(span_eq(&j, &[a.basis_vector(1)], 3));
        assert_eq!(nilpotency_index(&a, &j), 2);
    }

    #[test]
    fn radical_of_simple_and_nilpotent() {
        assert!(radical(&builtin("M2").unwrap().algebra).is_empty());
        let nil = Algebra::new(alloc::vec!["b".into()], []).unwrap();
        assert_eq!(radical(&nil).len(), 1);
        assert_eq!(nilpotency_index(&nil, &radical(&nil)), 2);
        assert_eq!(nilpotency_index(&builtin("F2").unwrap().algebra, &[]), 1);
    }

    #[test]
    fn wedderburn_ut2() {
        let a = builtin("UT2").unwrap().algebra;
        let w = wedderburn(&a, DEFAULT_SEED).unwrap();
        assert_eq!(w.block_dims, [1, 1]);
        assert_eq!(w.block_idempotents, [a.basis_vector(0), a.basis_vector(2)]);
        assert_eq!(w.radical_path_graph, [(0, 1)]);
        assert_eq!(w.nilpotency_index, 2);
    }

    #[test]
    fn wedderburn_m2_and_f2() {
        let m2 = builtin("M2").unwrap().algebra;
        let w = wedderburn(&m2, 3).unwrap();
        assert_eq!(w.block_dims, [2]);
        assert_eq!(w.block_bases[0].len(), 4);
        let f2 = builtin("F2").unwrap().algebra;
        let w = wedderburn(&f2, 3).unwrap();
        assert_eq!(w.block_dims, [1, 1]);
        assert!(w.radical_path_graph.is_empty());
    }

    #[test]
    fn wedderburn_ut3_complement_is_subalgebra() {
        let a = builtin("UT3").unwrap().algebra;
        let w = wedderburn(&a, 11).unwrap();
        assert_eq!(w.block_dims, [1, 1, 1]);
        assert_eq!(w.radical_path_graph.len(), 3);
        assert_eq!(w.nilpotency_index, 3);
    }

    #[test]
    fn wedderburn_m2_plus_radical_corner() {
        // UT over M2 blocks: the 2x2 block upper triangular matrices in M4
        // have a 4-dim block M2 ⊕ M2 semisimple part and 4-dim radical
        let m4 = builtin("M4").unwrap().algebra;
        let keep: Vec<usize> = (0..16).filter(|&t| !(t / 4 >= 2 && t % 4 < 2)).collect();
        let basis: Vec<Vec<Scalar>> = keep.iter().map(|&t| m4.basis_vector(t)).collect();
        let labels = keep.iter().map(|t| alloc::format!("b{t}")).collect();
        let a = m4.subalgebra(&basis, labels).unwrap();
        let w = wedderburn(&a, 5).unwrap();
        assert_eq!(w.block_dims, [2, 2]);
        assert_eq!(w.radical_basis.len(), 4);
        let b = w.complement_basis();
        let mut all = b.clone();
        all.extend(w.radical_basis.iter().cloned());
        assert_eq!(exact::span_dim(&all, a.dim()), a.dim());
        for x in &b {
            for y in &b {
                assert!(exact::coordinates(&exact::span_basis(&b, a.dim()), &a.mul(x, y)).is_some());
            }
        }
    }

    /// `M2 ⊗ F[t]/(t²)` written in a scrambled basis, so the corner of the
    /// single block carries radical and the section needs correcting.
    #[test]
    fn wedderburn_matrices_over_dual_numbers() {
        let m2 = builtin("M2").unwrap().algebra;
        let mut products = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                for (k, c) in m2.product(i, j) {
                    for (s, t) in [(0, 0), (0, 1), (1, 0)] {
                        products.push((2 * i + s, 2 * j + t, alloc::vec![(2 * k + s + t, c.clone())]));
                    }
                }
            }
        }
        let labels = (0..8).map(|t| alloc::format!("b{t}")).collect();
        let a = Algebra::new(labels, products).unwrap();
        assert!(a.associativity_witness().is_none());
        let mut p = Matrix::identity(8);
        for r in 0..8 {
            for c in 0..8 {
                if r < c && (r + 2 * c) % 3 == 0 {
                    p.set(r, c, int((r as i64 % 3) - 1));
                }
            }
        }
        let scrambled = crate::algebra::LAlgebra::plain(a).change_basis(&p).unwrap().algebra;
        let w = wedderburn(&scrambled, 2).unwrap();
        assert_eq!(w.block_dims, [2]);
        assert_eq!(w.radical_basis.len(), 4);
        assert_eq!(w.nilpotency_index, 2);
        let b = w.complement_basis();
        let span = exact::span_basis(&b, 8);
        let mut all = b.clone();
        all.extend(w.radical_basis.iter().cloned());
        assert_eq!(exact::span_dim(&all, 8), 8);
        for x in &b {
            for y in &b {
                assert!(exact::coordinates(&span, &scrambled.mul(x, y)).is_some());
            }
        }
    }

    #[test]
    fn seed_does_not_change_result() {
        let a = builtin("UT2+F1+M2").unwrap().algebra;
        let w0 = wedderburn(&a, 0).unwrap();
        for seed in 1..6 {
            assert_eq!(wedderburn(&a, seed).unwrap(), w0);
        }
    }

    #[test]
    fn non_split_quotient_is_rejected() {
        // Q(i): i² = −1
        let a = Algebra::new(
            alloc::vec!["1".into(), "i".into()],
            [
                (0, 0, alloc::vec![(0, int(1))]),
                (0, 1, alloc::vec![(1, int(1))]),
                (1, 0, alloc::vec![(1, int(1))]),
                (1, 1, alloc::vec![(0, int(-1))]),
            ],
        )
        .unwrap();
        assert!(matches!(wedderburn(&a, 0), Err(Error::NonSplit(_))));
    }

    #[test]
    fn stability() {
        let ut = builtin("UT2eps").unwrap();
        let act = &ut.action;
        assert!(check_l_stability(&ut.algebra, act, &[ut.algebra.basis_vector(1)]));
        assert!(check_l_stability(&ut.algebra, act, &[ut.algebra.basis_vector(0)]));
        let m2 = builtin("M2sl2").unwrap();
        assert!(!check_l_stability(&m2.algebra, &m2.action, &[m2.algebra.basis_vector(1)]));
    }

    #[test]
    fn split_recovers_eps() {
        let ut = builtin("UT2eps").unwrap();
        let a = &ut.algebra;
        let w = wedderburn(a, 0).unwrap();
        let eps = &ut.action.generators()[0].1;
        let (x, rest) = split_derivation(a, &w, eps).unwrap();
        assert!(rest.matrix().is_zero());
        let half = alloc::vec![frac(1, 2), int(0), frac(-1, 2)];
        assert_eq!(inner_derivation(a, &x), inner_derivation(a, &half));
    }

    #[test]
    fn split_outer_derivation() {
        // F·1 + F·b with b² = 0 and δ(b) = b is not inner
        let a = Algebra::new(
            alloc::vec!["1".into(), "b".into()],
            [
                (0, 0, alloc::vec![(0, int(1))]),
                (0, 1, alloc::vec![(1, int(1))]),
                (1, 0, alloc::vec![(1, int(1))]),
            ],
        )
        .unwrap();
        let w = wedderburn(&a, 0).unwrap();
        let mut m = Matrix::zeros(2, 2);
        m.set(1, 1, int(1));
        let d = Derivation::new(m.clone());
        let (x, rest) = split_derivation(&a, &w, &d).unwrap();
        assert!(exact::is_zero_vec(&x));
        assert_eq!(rest.matrix(), &m);
        for b in w.complement_basis() {
            assert!(exact::is_zero_vec(&rest.apply(&b)));
        }
    }
}
