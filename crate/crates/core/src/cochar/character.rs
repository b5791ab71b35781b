use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::Partition;
use crate::exact::{self, Scalar};
use crate::{Error, Result};

/// `χ_λ(μ)` by the Murnaghan–Nakayama rule.
///
/// Works on the β-set (first-column hook lengths) of `λ`: removing a rim
/// hook of length `r` moves one bead from `b` to `b − r`, with sign
/// `(−1)^{beads strictly between}`.
pub fn irr_char(lambda: &Partition, mu: &Partition) -> Result<Scalar> {
    if lambda.size() != mu.size() {
        return Err(Error::DegreeMismatch {
            expected: lambda.size(),
            found: mu.size(),
        });
    }
    let len = lambda.parts().len();
    let beta: BTreeSet<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    Ok(exact::int(mn(&beta, mu.parts())))
}

fn mn(beta: &BTreeSet<usize>, hooks: &[usize]) -> i64 {
    let Some((&r, rest)) = hooks.split_first() else {
        return 1;
    };
    let mut total = 0;
    for &b in beta {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.range(b - r + 1..b).count();
        let mut next = beta.clone();
        next.remove(&b);
        next.insert(b - r);
        let sign = if between.is_multiple_of(2) { 1 } else { -1 };
        total += sign * mn(&next, rest);
    }
    total
}

/// Degree `χ_λ(1)`.
pub fn dimension(lambda: &Partition) -> Scalar {
    let one = Partition::new(alloc::vec![1; lambda.size()]);
    irr_char(lambda, &one).expect("same size")
}

/// The character table of `S_n` with rows and columns indexed by
/// [`super::partitions`].
pub fn character_table(n: usize) -> Vec<Vec<Scalar>> {
    let ps = super::partitions(n);
    ps.iter()
        .map(|l| ps.iter().map(|m| irr_char(l, m).expect("same size")).collect())
        .collect()
}
