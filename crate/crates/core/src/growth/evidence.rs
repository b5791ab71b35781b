use alloc::vec::Vec;
use num_traits::Float;

/// Verdict of a finite-data check. Never a proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The data looks polynomially bounded.
    Consistent,
    /// The data grows like an exponential with base at least 2.
    Inconsistent,
    /// Fewer than two nonzero data points.
    Insufficient,
}

/// Least-squares fit of `log₂ c_n` against `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEvidence {
    pub degrees: Vec<usize>,
    /// `2^slope`; the growth rate suggested by the data.
    pub fitted_base: Option<f64>,
    pub verdict: Evidence,
}

/// Fits `log₂ c_n ≈ s·n + b` over the nonzero values and calls the data
/// polynomial-looking when `2^s < 2`. Any base-`d` exponential with
/// `d ≥ 2` eventually fails this, while the sequences of polynomial growth
/// met at small degree pass it.
pub fn fit_growth(data: &[(usize, usize)]) -> GrowthEvidence {
    let pts: Vec<(f64, f64)> = data
        .iter()
        .filter(|(_, c)| *c > 0)
        .map(|&(n, c)| (n as f64, Float::log2(c as f64)))
        .collect();
    let degrees = data.iter().map(|(n, _)| *n).collect();
    if pts.len() < 2 {
        // a sequence that is eventually zero is bounded
        let verdict = if data.len() >= 2 && data.last().is_some_and(|(_, c)| *c == 0) {
            Evidence::Consistent
        } else {
            Evidence::Insufficient
        };
        return GrowthEvidence {
            degrees,
            fitted_base: None,
            verdict,
        };
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
        (a + (x - mx) * (y - my), b + (x - mx) * (x - mx))
    });
    let slope = num / den;
    let base = Float::exp2(slope);
    GrowthEvidence {
        degrees,
        fitted_base: Some(base),
        verdict: if base < 2.0 {
            Evidence::Consistent
        } else {
            Evidence::Inconsistent
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fits() {
        let ut = fit_growth(&[(1, 2), (2, 5), (3, 13), (4, 33)]);
        assert_eq!(ut.verdict, Evidence::Inconsistent);
        assert!((ut.fitted_base.unwrap() - 2.54).abs() < 0.05);
        assert_eq!(fit_growth(&[(1, 1), (2, 1), (3, 1)]).verdict, Evidence::Consistent);
        assert_eq!(fit_growth(&[(1, 1)]).verdict, Evidence::Insufficient);
        assert_eq!(fit_growth(&[(1, 1), (2, 0)]).verdict, Evidence::Consistent);
    }
}
