use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the `n+2` coordinates are distributed over at most four distinct values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplicityPattern {
    parts: Vec<usize>,
}

/// Largest supported `n + 2`; `20!` still fits in a `u64`.
pub const MAX_COORDS: usize = 20;

impl MultiplicityPattern {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.len() > 4 || parts.contains(&0) {
            return Err(Error::Invalid(format!("bad multiplicity pattern {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("pattern {parts:?} is not non-increasing")));
        }
        if parts.iter().sum::<usize>() > MAX_COORDS {
            return Err(Error::Dimension(parts.iter().sum::<usize>() - 2));
        }
        Ok(MultiplicityPattern { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of coordinates, `n + 2`.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of ways to place the value blocks on the coordinates.
    pub fn multinomial(&self) -> u64 {
        let mut acc: u128 = 1;
        let mut placed = 0u128;
        for &m in &self.parts {
            // multiply by binomial(placed + m, m)
            let mut b: u128 = 1;
            for i in 0..m as u128 {
                b = b * (placed + i + 1) / (i + 1);
            }
            placed += m as u128;
            acc *= b;
        }
        u64::try_from(acc).expect("at most 20 coordinates")
    }

    /// Letter label such as `5a,2b,2c,1d`.
    pub fn letters(&self) -> String {
        self.parts
            .iter()
            .zip(['a', 'b', 'c', 'd'])
            .map(|(m, l)| format!("{m}{l}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for MultiplicityPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n+2` into at most four parts, largest part first,
/// then lexicographically descending.
pub fn enumerate_patterns(n: usize) -> Result<Vec<MultiplicityPattern>> {
    if n < 2 {
        return Err(Error::Dimension(n));
    }
    let total = n + 2;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    partitions(total, total, &mut cur, &mut out);
    out.into_iter().map(MultiplicityPattern::new).collect()
}

fn partitions(rest: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    if cur.len() == 4 {
        return;
    }
    for p in (1..=max_part.min(rest)).rev() {
        cur.push(p);
        partitions(rest - p, p, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(total: usize) -> usize {
        let mut count = 0;
        for a in 1..=total {
            for b in 0..=a {
                for c in 0..=b {
                    for d in 0..=c {
                        let parts = [a, b, c, d];
                        let ok = parts.windows(2).all(|w| w[1] == 0 || w[0] >= w[1]);
                        let zero_tail = parts.iter().skip_while(|&&x| x != 0).all(|&x| x == 0);
                        if ok && zero_tail && a + b + c + d == total {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn twenty_three_cases_in_dimension_eight() {
        let ps = enumerate_patterns(8).unwrap();
        assert_eq!(ps.len(), 23);
        assert_eq!(ps[0].parts(), &[10]);
        assert_eq!(ps[1].parts(), &[9, 1]);
        assert_eq!(ps[6].parts(), &[7, 1, 1, 1]);
        assert_eq!(ps[11].parts(), &[5, 5]);
        assert_eq!(ps[17].parts(), &[4, 4, 1, 1]);
        assert_eq!(ps[22].parts(), &[3, 3, 2, 2]);
        assert_eq!(ps[22].letters(), "3a,3b,2c,2d");
    }

    #[test]
    fn small_dimensions() {
        let ps = enumerate_patterns(2).unwrap();
        let got: Vec<&[usize]> = ps.iter().map(|p| p.parts()).collect();
        assert_eq!(got, vec![&[4][..], &[3, 1], &[2, 2], &[2, 1, 1], &[1, 1, 1, 1]]);
        assert_eq!(enumerate_patterns(3).unwrap().len(), 6);
        assert!(enumerate_patterns(1).is_err());
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 2..=16 {
            assert_eq!(enumerate_patterns(n).unwrap().len(), brute_count(n + 2), "n = {n}");
        }
    }

    #[test]
    fn multinomials() {
        let p = |v: &[usize]| MultiplicityPattern::new(v.to_vec()).unwrap().multinomial();
        assert_eq!(p(&[5, 5]), 252);
        assert_eq!(p(&[4, 4, 1, 1]), 6300);
        assert_eq!(p(&[5, 2, 2, 1]), 7560);
        assert_eq!(p(&[9, 1]), 10);
        assert_eq!(p(&[1; 4]), 24);
        assert_eq!(p(&[5, 5, 5, 5]), 11_732_745_024);
    }

    #[test]
    fn rejects_malformed_patterns() {
        assert!(MultiplicityPattern::new(vec![1, 2]).is_err());
        assert!(MultiplicityPattern::new(vec![2, 2, 2, 2, 2]).is_err());
        assert!(MultiplicityPattern::new(vec![]).is_err());
    }
}
