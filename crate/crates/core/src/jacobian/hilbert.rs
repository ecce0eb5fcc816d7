use serde::Serialize;

use crate::polyring::binomial;

/// Coefficients of `((1 - t^(d-1)) / (1 - t))^(n+1)`, the Hilbert function of
/// a complete intersection of `n+1` forms of degree `d-1` in `n+1` variables.
///
/// The result runs from degree 0 to the socle degree `(n+1)(d-2)`.
pub fn ci_hilbert_coefficients(n: usize, d: u32) -> Vec<usize> {
    assert!(d >= 2, "degree must be at least 2");
    let socle = (n + 1) * (d as usize - 2);
    (0..=socle).map(|p| ci_coefficient(n, d, p)).collect()
}

/// `Σ_j (-1)^j C(n+1, j) C(n + p - j(d-1), n)`; zero past the socle.
pub fn ci_coefficient(n: usize, d: u32, p: usize) -> usize {
    let step = d as usize - 1;
    let mut acc: i128 = 0;
    for j in 0..=n + 1 {
        let shift = j * step;
        if shift > p {
            break;
        }
        let term = binomial(n + 1, j) as i128 * binomial(n + p - shift, n) as i128;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    debug_assert!(acc >= 0);
    acc as usize
}

/// `dim R_0, dim R_1, …, dim R_top`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HilbertFunction(pub Vec<usize>);

impl HilbertFunction {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Coefficients of `(1 + t + … + t^(d-2))^(n+1)` by repeated convolution.
    fn expand_power(n: usize, d: u32) -> Vec<usize> {
        let factor = vec![1usize; d as usize - 1];
        let mut acc = vec![1usize];
        for _ in 0..=n {
            let mut next = vec![0usize; acc.len() + factor.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in factor.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
        acc
    }

    /// Count of `(a_0..a_n)` with `0 ≤ a_i ≤ d-2` summing to `p`.
    fn count_boxed(n: usize, d: u32, p: usize) -> usize {
        fn go(vars: usize, cap: usize, rest: usize) -> usize {
            if vars == 0 {
                return (rest == 0) as usize;
            }
            (0..=cap.min(rest)).map(|a| go(vars - 1, cap, rest - a)).sum()
        }
        go(n + 1, d as usize - 2, p)
    }

    #[test]
    fn known_series() {
        assert_eq!(ci_hilbert_coefficients(4, 3), vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(ci_hilbert_coefficients(3, 4), vec![1, 4, 10, 16, 19, 16, 10, 4, 1]);
        let k3 = ci_hilbert_coefficients(2, 6);
        assert_eq!((k3[5], k3[6]), (18, 19));
        assert_eq!(ci_hilbert_coefficients(1, 3), vec![1, 2, 1]);
    }

    #[test]
    fn inclusion_exclusion_matches_expansion_and_counting() {
        for n in 0..=5 {
            for d in 2..=7u32 {
                let ci = ci_hilbert_coefficients(n, d);
                assert_eq!(ci, expand_power(n, d), "n={n} d={d}");
                for (p, &c) in ci.iter().enumerate().step_by(3) {
                    assert_eq!(c, count_boxed(n, d, p));
                }
                assert_eq!(ci_coefficient(n, d, ci.len()), 0);
                assert!(HilbertFunction(ci).is_palindromic());
            }
        }
    }
}
