use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Scalar, SparseVec};

type IntRow = Vec<(usize, BigInt)>;

/// How [`Echelon`] picks the pivot column of a freshly reduced row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest column index. Gives the canonical reduced echelon form.
    Leading,
    /// Column currently touched by the fewest stored rows (Markowitz-style
    /// fill control), ties broken by the smallest column index.
    Sparsest,
}

/// Incremental row echelon basis of a subspace of `F^cols`.
///
/// Rows are inserted one at a time and reduced against the stored basis with
/// fraction-free integer updates; stored row `i` vanishes on the pivot
/// columns of rows `0..i`, so a single ordered sweep reduces any vector.
/// Optionally every stored row remembers how it was combined from the
/// accepted input rows, which lets [`Echelon::express`] solve for
/// coordinates.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    pivot_limit: usize,
    rule: PivotRule,
    rows: Vec<IntRow>,
    pivots: Vec<usize>,
    pivot_row: BTreeMap<usize, usize>,
    occupancy: BTreeMap<usize, usize>,
    combos: Option<Vec<IntRow>>,
}

struct Work {
    v: BTreeMap<usize, BigInt>,
    combo: BTreeMap<usize, BigInt>,
    scale: BigInt,
}

impl Work {
    fn normalize(&mut self) {
        let mut g = self.scale.abs();
        for x in self.v.values().chain(self.combo.values()) {
            if g.is_one() {
                return;
            }
            g = g.gcd(x);
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for x in self.v.values_mut().chain(self.combo.values_mut()) {
            *x = &*x / &g;
        }
        self.scale = &self.scale / &g;
    }
}

fn integerize(row: &[(usize, Scalar)]) -> (BTreeMap<usize, BigInt>, BigInt) {
    let mut l = BigInt::one();
    for (_, x) in row {
        l = l.lcm(x.denom());
    }
    let v = row
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (*c, x.numer() * (&l / x.denom())))
        .collect();
    (v, l)
}

impl Echelon {
    pub fn new(cols: usize, rule: PivotRule) -> Self {
        Echelon {
            cols,
            pivot_limit: cols,
            rule,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: BTreeMap::new(),
            occupancy: BTreeMap::new(),
            combos: None,
        }
    }

    /// An echelon basis that tracks combinations of accepted input rows.
    pub fn tracked(cols: usize, rule: PivotRule) -> Self {
        let mut e = Self::new(cols, rule);
        e.combos = Some(Vec::new());
        e
    }

    /// Columns at or beyond `limit` are never chosen as pivots; used for
    /// augmented systems.
    pub fn with_pivot_limit(mut self, limit: usize) -> Self {
        self.pivot_limit = limit.min(self.cols);
        self
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce_work(&self, work: &mut Work) {
        let track = self.combos.as_ref();
        let mut queue: BTreeSet<usize> = work
            .v
            .keys()
            .filter_map(|c| self.pivot_row.get(c).copied())
            .collect();
        while let Some(i) = queue.pop_first() {
            let p = self.pivots[i];
            let vp = match work.v.get(&p) {
                Some(x) => x.clone(),
                None => continue,
            };
            let row = &self.rows[i];
            let bp = &row.iter().find(|(c, _)| *c == p).expect("pivot entry").1;
            let g = vp.gcd(bp);
            let bq = bp / &g;
            let vq = &vp / &g;
            let rescale = !bq.is_one();
            if rescale {
                for x in work.v.values_mut() {
                    *x *= &bq;
                }
                for x in work.combo.values_mut() {
                    *x *= &bq;
                }
                work.scale *= &bq;
            }
            for (c, x) in row {
                let delta = &vq * x;
                match work.v.get_mut(c) {
                    Some(y) => {
                        *y -= delta;
                        if y.is_zero() {
                            work.v.remove(c);
                        }
                    }
                    None => {
                        work.v.insert(*c, -delta);
                        if let Some(&j) = self.pivot_row.get(c) {
                            queue.insert(j);
                        }
                    }
                }
            }
            if let Some(combos) = track {
                for (c, x) in &combos[i] {
                    let delta = &vq * x;
                    let y = work.combo.entry(*c).or_insert_with(BigInt::zero);
                    *y -= delta;
                    if y.is_zero() {
                        work.combo.remove(c);
                    }
                }
            }
            if rescale {
                work.normalize();
            }
        }
        work.normalize();
    }

    /// Reduces `row` against the basis; the residual is zero iff `row` lies in the span.
    pub fn reduce(&self, row: &[(usize, Scalar)]) -> SparseVec {
        let (v, l) = integerize(row);
        let mut work = Work {
            v,
            combo: BTreeMap::new(),
            scale: l,
        };
        self.reduce_work(&mut work);
        let s = Scalar::from_integer(work.scale);
        work.v
            .into_iter()
            .map(|(c, x)| (c, Scalar::from_integer(x) / &s))
            .collect()
    }

    pub fn contains(&self, row: &[(usize, Scalar)]) -> bool {
        self.reduce(row).is_empty()
    }

    /// Inserts `row`. Returns the new basis index when the row was
    /// independent of the current span, `None` otherwise (also when its
    /// residual lives only in columns past the pivot limit).
    pub fn insert(&mut self, row: &[(usize, Scalar)]) -> Option<usize> {
        self.insert_checked(row).ok().flatten()
    }

    /// Like [`Echelon::insert`] but distinguishes a residual confined to the
    /// augmented columns (`Err(())`), which marks an inconsistent system.
    pub fn insert_checked(&mut self, row: &[(usize, Scalar)]) -> Result<Option<usize>, ()> {
        let (v, l) = integerize(row);
        let id = self.rows.len();
        let mut combo = BTreeMap::new();
        if self.combos.is_some() {
            combo.insert(id, l.clone());
        }
        let mut work = Work { v, combo, scale: l };
        self.reduce_work(&mut work);
        if work.v.is_empty() {
            return Ok(None);
        }
        let candidates = work.v.keys().copied().filter(|&c| c < self.pivot_limit);
        let pivot = match self.rule {
            PivotRule::Leading => candidates.min(),
            PivotRule::Sparsest => candidates
                .min_by_key(|c| (self.occupancy.get(c).copied().unwrap_or(0), *c)),
        };
        let Some(pivot) = pivot else {
            return Err(());
        };
        if work.v[&pivot].sign() == Sign::Minus {
            for x in work.v.values_mut().chain(work.combo.values_mut()) {
                *x = -&*x;
            }
        }
        for c in work.v.keys() {
            *self.occupancy.entry(*c).or_insert(0) += 1;
        }
        self.rows.push(work.v.into_iter().collect());
        self.pivots.push(pivot);
        self.pivot_row.insert(pivot, id);
        if let Some(combos) = self.combos.as_mut() {
            combos.push(work.combo.into_iter().collect());
        }
        Ok(Some(id))
    }

    /// Coordinates of `target` in terms of the accepted input rows (in
    /// acceptance order), or `None` when it is outside the span.
    ///
    /// # Panics
    /// Panics if the basis was not created with [`Echelon::tracked`].
    pub fn express(&self, target: &[(usize, Scalar)]) -> Option<Vec<Scalar>> {
        assert!(self.combos.is_some(), "express needs a tracked echelon basis");
        let (v, l) = integerize(target);
        let mut work = Work {
            v,
            combo: BTreeMap::new(),
            scale: l,
        };
        self.reduce_work(&mut work);
        if !work.v.is_empty() {
            return None;
        }
        let s = Scalar::from_integer(work.scale);
        let mut out = alloc::vec![Scalar::zero(); self.rows.len()];
        for (c, x) in work.combo {
            out[c] = -Scalar::from_integer(x) / &s;
        }
        Some(out)
    }

    /// Stored basis rows as rationals, in insertion order.
    pub fn rows(&self) -> Vec<SparseVec> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, x)| (*c, Scalar::from_integer(x.clone())))
                    .collect()
            })
            .collect()
    }

    /// Fully reduced basis: each row has a unit pivot and vanishes on every
    /// other pivot column. Rows are returned sorted by pivot column.
    pub fn rref(&self) -> Vec<(usize, SparseVec)> {
        let mut rows: Vec<BTreeMap<usize, Scalar>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, x)| (*c, Scalar::from_integer(x.clone())))
                    .collect()
            })
            .collect();
        for (row, &p) in rows.iter_mut().zip(&self.pivots) {
            let inv = row[&p].recip();
            for x in row.values_mut() {
                *x *= &inv;
            }
        }
        for i in (0..rows.len()).rev() {
            let p = self.pivots[i];
            let (before, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in before.iter_mut() {
                let Some(f) = row.get(&p).cloned() else {
                    continue;
                };
                for (c, x) in pivot_row {
                    let y = row.entry(*c).or_insert_with(Scalar::zero);
                    *y -= &f * x;
                    if y.is_zero() {
                        row.remove(c);
                    }
                }
            }
        }
        let mut out: Vec<(usize, SparseVec)> = self
            .pivots
            .iter()
            .zip(rows)
            .map(|(&p, r)| (p, r.into_iter().collect()))
            .collect();
        out.sort_by_key(|(p, _)| *p);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use alloc::vec;

    #[test]
    fn tracked_express_recovers_combination() {
        let mut e = Echelon::tracked(3, PivotRule::Sparsest);
        let a = vec![(0, int(1)), (1, int(2))];
        let b = vec![(1, frac(1, 2)), (2, int(3))];
        assert_eq!(e.insert(&a), Some(0));
        assert_eq!(e.insert(&b), Some(1));
        // 3a - 4b = (3, 4, -12)
        let t = vec![(0, int(3)), (1, int(4)), (2, int(-12))];
        assert_eq!(e.express(&t), Some(vec![int(3), int(-4)]));
        assert_eq!(e.express(&[(2, int(1))]), None);
    }

    #[test]
    fn dependent_rows_are_rejected() {
        let mut e = Echelon::new(2, PivotRule::Leading);
        assert!(e.insert(&[(0, int(1)), (1, int(2))]).is_some());
        assert!(e.insert(&[(0, int(-2)), (1, int(-4))]).is_none());
        assert!(e.insert(&[]).is_none());
        assert_eq!(e.rank(), 1);
    }

    #[test]
    fn rref_is_reduced() {
        let mut e = Echelon::new(3, PivotRule::Leading);
        e.insert(&[(0, int(1)), (1, int(1)), (2, int(1))]);
        e.insert(&[(1, int(2)), (2, int(4))]);
        let r = e.rref();
        assert_eq!(r[0], (0, vec![(0, int(1)), (2, int(-1))]));
        assert_eq!(r[1], (1, vec![(1, int(1)), (2, int(2))]));
    }
}
