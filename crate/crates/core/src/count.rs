//! Exact counting of non-hitting walk pairs.
//!
//! The half-gap `d = (V − W) / 2` is a lazy walk whose flat joint steps come
//! in two kinds, `(+,+)` and `(−,−)`. [`CountTable`] holds, for every
//! reachable state `(t, d)`, the number of ways to finish a valid pair from
//! that state.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default largest `n` for which a [`CountTable`] is built.
pub const DEFAULT_DP_CAP: usize = 4096;

/// Suffix counts `N(t, d)` for `0 ≤ t ≤ n`, `0 ≤ d ≤ min(t, n − t)`.
#[derive(Debug, Clone)]
pub struct CountTable {
    n: usize,
    rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, DEFAULT_DP_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if n > cap {
            return Err(Error::TooLarge {
                what: "exact count table",
                n,
                limit: cap,
                flag: Some("--dp-cap"),
            });
        }
        let mut rows: Vec<Vec<BigUint>> = vec![Vec::new(); n + 1];
        rows[n] = vec![BigUint::one()];
        for t in (0..n).rev() {
            let dmax = t.min(n - t);
            let next = &rows[t + 1];
            let get = |d: usize| -> BigUint {
                // row t+1 only stores reachable heights
                if d < next.len() && (t + 1 == n || d >= 1) {
                    next[d].clone()
                } else {
                    BigUint::zero()
                }
            };
            let mut row = Vec::with_capacity(dmax + 1);
            for d in 0..=dmax {
                let valid_here = t == 0 && d == 0 || t > 0 && d >= 1;
                if !valid_here {
                    row.push(BigUint::zero());
                    continue;
                }
                let mut acc = get(d + 1);
                if d >= 1 {
                    acc += get(d - 1);
                }
                acc += get(d) << 1u32;
                row.push(acc);
            }
            rows[t] = row;
        }
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N(t, d)`; zero outside the stored range.
    pub fn get(&self, t: usize, d: usize) -> BigUint {
        self.get_ref(t, d).cloned().unwrap_or_default()
    }

    pub(crate) fn get_ref(&self, t: usize, d: usize) -> Option<&BigUint> {
        self.rows.get(t).and_then(|row| row.get(d))
    }

    /// `|B_n| = N(0, 0)`.
    pub fn total(&self) -> &BigUint {
        &self.rows[0][0]
    }

    /// Probability that `H(t) = 2d` under the uniform law, as `(d, p)` pairs.
    pub fn height_marginal(&self, t: usize) -> Result<Vec<(usize, f64)>> {
        if t > self.n {
            return Err(Error::TimeOutOfRange { t, n: self.n });
        }
        // prefix counts: ways to reach (t, d) from (0, 0) staying valid
        let mut prefix = vec![BigUint::one()];
        for s in 0..t {
            let next_len = (s + 1).min(self.n - s - 1) + 1;
            let mut next = vec![BigUint::zero(); next_len];
            for (d, c) in prefix.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut push = |nd: usize, mult: u32| {
                    let valid = if s + 1 == self.n { nd == 0 } else { nd >= 1 };
                    if valid && nd < next_len {
                        next[nd] += c * mult;
                    }
                };
                push(d + 1, 1);
                if d >= 1 {
                    push(d - 1, 1);
                }
                push(d, 2);
            }
            prefix = next;
        }
        let total = self.total();
        Ok(prefix
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (d, ratio_f64(&(c * self.get(t, d)), total)))
            .collect())
    }
}

/// `a / b` as `f64`, accurate for integers far beyond the `f64` range.
pub fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    let shift = |x: &BigUint| x.bits().saturating_sub(60);
    let (sa, sb) = (shift(a), shift(b));
    let fa = (a >> sa).to_u64_digits().first().copied().unwrap_or(0) as f64;
    let fb = (b >> sb).to_u64_digits().first().copied().unwrap_or(0) as f64;
    fa / fb * 2f64.powi(sa as i32 - sb as i32)
}

/// `|B_n|`, from the count table.
pub fn count(n: usize) -> Result<BigUint> {
    count_with_cap(n, DEFAULT_DP_CAP)
}

pub fn count_with_cap(n: usize, cap: usize) -> Result<BigUint> {
    Ok(CountTable::with_cap(n, cap)?.total().clone())
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn catalan(j: u64) -> BigUint {
    binomial(2 * j, j) / (j + 1)
}

/// Weights of the nonzero-step count `m` of the half-gap walk:
/// `Binom(n−2, m−2) · Catalan(m/2 − 1) · 2^{n−m}` for even `2 ≤ m ≤ n`.
pub fn decomposition_weights(n: usize) -> Result<Vec<(usize, BigUint)>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the nonzero-step decomposition needs n >= 2, got {n}"
        )));
    }
    let n64 = n as u64;
    Ok((2..=n)
        .step_by(2)
        .map(|m| {
            let m64 = m as u64;
            let w = (binomial(n64 - 2, m64 - 2) * catalan(m64 / 2 - 1)) << (n - m);
            (m, w)
        })
        .collect())
}

/// `Σ_m` of [`decomposition_weights`]; equals `|B_n|` for `n ≥ 2`.
pub fn decomposition_count(n: usize) -> Result<BigUint> {
    Ok(decomposition_weights(n)?.into_iter().map(|(_, w)| w).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let got: Vec<u64> = (1..=6)
            .map(|n| count(n).unwrap().try_into().unwrap())
            .collect();
        assert_eq!(got, vec![2, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(count(0).unwrap_err(), Error::EmptyGroundSet);
    }

    #[test]
    fn cap_is_enforced() {
        let err = count_with_cap(100, 50).unwrap_err();
        assert!(err.to_string().contains("--dp-cap"));
    }

    #[test]
    fn decomposition_examples() {
        let w4 = decomposition_weights(4).unwrap();
        assert_eq!(w4, vec![(2, BigUint::from(4u32)), (4, BigUint::from(1u32))]);
        let w3 = decomposition_weights(3).unwrap();
        assert_eq!(w3, vec![(2, BigUint::from(2u32))]);
        assert!(decomposition_weights(1).is_err());
    }

    #[test]
    fn table_matches_decomposition() {
        for n in 2..=80 {
            assert_eq!(count(n).unwrap(), decomposition_count(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn table_recurrence_boundaries() {
        let t = CountTable::new(6).unwrap();
        assert_eq!(t.get(6, 0), BigUint::one());
        assert!(t.get(6, 1).is_zero());
        assert!(t.get(3, 0).is_zero());
        assert_eq!(t.get(5, 1), BigUint::one());
        // from (4, 1): flat-flat (4 ways) or up-down then down... ends at (6, 0)
        assert_eq!(t.get(4, 1), BigUint::from(2u32));
    }

    #[test]
    fn marginal_sums_to_one() {
        let t = CountTable::new(40).unwrap();
        for time in [0, 1, 20, 39, 40] {
            let m = t.height_marginal(time).unwrap();
            let s: f64 = m.iter().map(|(_, p)| p).sum();
            assert!((s - 1.0).abs() < 1e-12, "t = {time}: {s}");
        }
    }

    #[test]
    fn ratio_handles_huge_values() {
        let a = BigUint::one() << 5000u32;
        let b = BigUint::from(3u32) << 4998u32;
        assert!((ratio_f64(&a, &b) - 4.0 / 3.0).abs() < 1e-15);
    }
}
