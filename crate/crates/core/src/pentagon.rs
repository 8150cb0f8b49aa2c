//! Node counts of the pentagon construction: alternating sums of normalized
//! pentagon polynomials in pairs of variables, plus a Chebyshev term when
//! the dimension is odd.
//!
//! Every affine singular point has each block at a critical point, so the
//! count is a convolution of critical-value spectra.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Critical values with their number of critical points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSpectrum {
    entries: BTreeMap<Rational, u64>,
}

impl CriticalSpectrum {
    pub fn new(entries: impl IntoIterator<Item = (Rational, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, m) in entries {
            if m > 0 {
                *map.entry(v).or_insert(0) += m;
            }
        }
        CriticalSpectrum { entries: map }
    }

    fn from_ints(entries: &[(i64, u64)]) -> Self {
        Self::new(entries.iter().map(|&(v, m)| (Rational::from_int(v), m)))
    }

    pub fn entries(&self) -> &BTreeMap<Rational, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, v: &Rational) -> u64 {
        self.entries.get(v).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn negated(&self) -> Self {
        Self::new(self.entries.iter().map(|(v, &m)| (-v.clone(), m)))
    }

    pub fn map_values(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self::new(self.entries.iter().map(|(v, &m)| (f(v), m)))
    }
}

/// `R5 / 16` with `R5 = x^5 - 10x^3y^2 + 5xy^4 - 5x^4 - 10x^2y^2 - 5y^4 + 20x^2 + 20y^2 - 16`.
///
/// On the axis `y = 0`, `dR5/dx = 5x(x-2)(x^2-2x-4)`: the origin has value
/// `-16`, `x = 2` has value `16` and `x = 1 ± √5` lie on two edge lines
/// (value 0). Rotating by the fivefold symmetry gives 1 + 5 + 10 points.
pub fn pentagon_spectrum() -> CriticalSpectrum {
    CriticalSpectrum::from_ints(&[(0, 10), (1, 5), (-1, 1)])
}

/// `T5(z) = 16z^5 - 20z^3 + 5z`, critical values alternating between `±1`.
pub fn chebyshev_spectrum() -> CriticalSpectrum {
    CriticalSpectrum::from_ints(&[(1, 2), (-1, 2)])
}

/// Spectrum of `-(T5(z) - 1)/2`, the right-hand side for odd dimensions.
pub fn rhs_spectrum() -> CriticalSpectrum {
    let half = Rational::new(1, 2);
    chebyshev_spectrum().map_values(|v| -(&(v - &Rational::from_int(1)) * &half))
}

/// Number of pentagon blocks and whether there is a Chebyshev term.
fn layout(n: usize) -> (usize, bool) {
    (n / 2, n % 2 == 1)
}

/// Sign of block `j`: `(-1)^(j*(1 + n mod 2))`.
pub fn block_sign(n: usize, j: usize) -> i64 {
    if (j * (1 + n % 2)) % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn pentagon_node_count(n: usize) -> Result<BigUint> {
    pentagon_node_count_with(n, &pentagon_spectrum())
}

/// Count with an arbitrary block spectrum.
pub fn pentagon_node_count_with(n: usize, block: &CriticalSpectrum) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::Dimension(n));
    }
    let (blocks, odd) = layout(n);
    let mut sums: BTreeMap<Rational, BigUint> = BTreeMap::new();
    sums.insert(Rational::from_int(0), BigUint::from(1u32));
    for j in 0..blocks {
        let sign = Rational::from_int(block_sign(n, j));
        let mut next: BTreeMap<Rational, BigUint> = BTreeMap::new();
        for (s, c) in &sums {
            for (v, &m) in block.entries() {
                let key = s + &(&sign * v);
                *next.entry(key).or_insert_with(BigUint::zero) += c * BigUint::from(m);
            }
        }
        sums = next;
    }
    let count = if odd {
        rhs_spectrum()
            .entries()
            .iter()
            .map(|(v, &m)| sums.get(v).cloned().unwrap_or_default() * BigUint::from(m))
            .sum()
    } else {
        sums.get(&Rational::from_int(0)).cloned().unwrap_or_default()
    };
    Ok(count)
}

/// Printed value for the `n = 3` comparison, where one extra point is
/// attributed to infinity.
pub const N3_REFERENCE: u64 = 31;
