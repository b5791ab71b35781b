use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A partition of `n` as weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `|λ| − λ₁`, the number of boxes below the first row.
    pub fn below_first_row(&self) -> usize {
        self.size() - self.parts.first().copied().unwrap_or(0)
    }

    /// Order of the centralizer of a permutation of this cycle type:
    /// `z_μ = Π i^{m_i} m_i!`.
    pub fn centralizer_order(&self) -> u128 {
        let mut z: u128 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let m = self.parts[i..].iter().take_while(|&&q| q == p).count();
            for j in 1..=m as u128 {
                z *= j * p as u128;
            }
            i += m;
        }
        z
    }

    /// Size of the conjugacy class of this cycle type, `n!/z_μ`.
    pub fn class_size(&self) -> u128 {
        let n = self.size() as u128;
        (1..=n).product::<u128>() / self.centralizer_order()
    }

    /// Representative permutation: cycles of ascending length on
    /// consecutive blocks of `0..n`, e.g. `(2,1)` gives `0 ↦ 0, 1 ↦ 2, 2 ↦ 1`.
    pub fn representative(&self) -> Vec<usize> {
        let mut perm = Vec::with_capacity(self.size());
        let mut start = 0;
        for &len in self.parts.iter().rev() {
            for i in 0..len {
                perm.push(start + (i + 1) % len);
            }
            start += len;
        }
        perm
    }

    /// Sign of a permutation of this cycle type.
    pub fn sign(&self) -> i64 {
        if self.parts.iter().filter(|&&p| p % 2 == 0).count() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub(crate) fn check_size(&self, n: usize) -> Result<()> {
        if self.size() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: self.size(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn factorial_big(n: usize) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::from(1), |acc, x| acc * x)
}

/// All partitions of `n`, in reverse lexicographic order: `(n)` first,
/// `(1ⁿ)` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(3)[0].parts(), [3]);
        assert_eq!(partitions(3)[2].parts(), [1, 1, 1]);
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=7 {
            let total: u128 = partitions(n).iter().map(Partition::class_size).sum();
            assert_eq!(total, (1..=n as u128).product::<u128>());
        }
    }

    #[test]
    fn representative_has_the_cycle_type() {
        for n in 1..=6 {
            for mu in partitions(n) {
                let p = mu.representative();
                let mut seen = alloc::vec![false; n];
                let mut lens = Vec::new();
                for s in 0..n {
                    let mut len = 0;
                    let mut i = s;
                    while !seen[i] {
                        seen[i] = true;
                        i = p[i];
                        len += 1;
                    }
                    if len > 0 {
                        lens.push(len);
                    }
                }
                assert_eq!(Partition::new(lens), mu);
            }
        }
        assert_eq!(Partition::new(alloc::vec![2, 1]).representative(), [0, 2, 1]);
    }

    #[test]
    fn display_and_statistic() {
        let p = Partition::new(alloc::vec![1, 2, 0]);
        assert_eq!(alloc::format!("{p}"), "(2,1)");
        assert_eq!(p.below_first_row(), 1);
    }
}
