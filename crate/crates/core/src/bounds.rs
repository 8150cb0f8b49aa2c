//! Arnold's spectral upper bound for the number of nodes and related counts.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundQuery {
    pub n: usize,
    pub d: usize,
}

impl BoundQuery {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Invalid(format!("need n >= 1 and d >= 1, got n={n}, d={d}")));
        }
        Ok(BoundQuery { n, d })
    }

    /// `floor(n*d/2) + 1`.
    pub fn target(&self) -> usize {
        self.n * self.d / 2 + 1
    }
}

/// Number of tuples in `{1, ..., d-1}^(n+1)` summing to each value, as a
/// vector indexed by the sum.
pub fn composition_counts(n: usize, d: usize) -> Vec<BigUint> {
    let top = (n + 1) * d.saturating_sub(1);
    let mut counts = vec![BigUint::zero(); top + 1];
    counts[0] = BigUint::one();
    let mut reach = 0;
    for _ in 0..=n {
        let mut next = vec![BigUint::zero(); top + 1];
        for (s, c) in counts.iter().enumerate().take(reach + 1) {
            if c.is_zero() {
                continue;
            }
            for k in 1..d {
                next[s + k] += c;
            }
        }
        counts = next;
        reach += d.saturating_sub(1);
    }
    counts
}

/// `Ar_n(d)`: tuples `(k_0, ..., k_n)` with `0 < k_i < d` and
/// `sum k_i = floor(n*d/2) + 1`.
pub fn arnold_number(q: BoundQuery) -> BigUint {
    composition_counts(q.n, q.d).get(q.target()).cloned().unwrap_or_default()
}

/// Binomial coefficient `C(n+1, floor(n/2))`, the maximal number of nodes of a cubic.
pub fn kalker_cubic_count(n: usize) -> BigUint {
    binomial(n + 1, n / 2)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ar(n: usize, d: usize) -> BigUint {
        arnold_number(BoundQuery::new(n, d).unwrap())
    }

    fn brute(n: usize, d: usize, target: usize) -> u64 {
        let mut count = 0;
        let mut k = vec![1usize; n + 1];
        if d < 2 {
            return 0;
        }
        loop {
            if k.iter().sum::<usize>() == target {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == k.len() {
                    return count;
                }
                k[i] += 1;
                if k[i] < d {
                    break;
                }
                k[i] = 1;
                i += 1;
            }
        }
    }

    #[test]
    fn degree_five_values() {
        let expected = [(3, 31u32), (4, 135), (5, 456), (6, 1918), (8, 27876), (10, 411334)];
        for (n, v) in expected {
            assert_eq!(ar(n, 5), BigUint::from(v), "n={n}");
        }
    }

    #[test]
    fn trivial_degrees() {
        for n in 1..8 {
            assert_eq!(ar(n, 1), BigUint::zero());
            assert_eq!(ar(n, 2), BigUint::one());
        }
    }

    #[test]
    fn cubics() {
        assert_eq!(kalker_cubic_count(4), BigUint::from(10u32));
        assert_eq!(kalker_cubic_count(1), BigUint::one());
        assert_eq!(kalker_cubic_count(8), BigUint::from(126u32));
        for n in 1..=12 {
            assert_eq!(ar(n, 3), kalker_cubic_count(n), "n={n}");
        }
    }

    #[test]
    fn matches_enumeration() {
        for n in 1..=4 {
            for d in 1..=6 {
                let q = BoundQuery::new(n, d).unwrap();
                assert_eq!(arnold_number(q), BigUint::from(brute(n, d, q.target())), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn reflection_symmetry() {
        for n in 1..=10 {
            let counts = composition_counts(n, 5);
            let total = (n + 1) * 5;
            for t in 0..counts.len() {
                let mirror = total.checked_sub(t).and_then(|m| counts.get(m)).cloned().unwrap_or_default();
                assert_eq!(counts[t], mirror, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn rejects_zero() {
        assert!(BoundQuery::new(0, 5).is_err());
        assert!(BoundQuery::new(3, 0).is_err());
    }
}
