//! Orbit combinatorics under coordinate permutations.
//!
//! A labeled point assigns a value to each block of the pattern. Permuting
//! blocks of equal multiplicity (the group `G`) gives the same set of
//! coordinate arrangements, so `k` labeled points in general position
//! account for `k * multinomial / |G|` points of projective space.

use crate::exactnum::{FieldElement, Rational, Ring};

use super::MultiplicityPattern;

/// Permutations of value indices that preserve multiplicities.
pub fn block_symmetries(pattern: &MultiplicityPattern) -> Vec<Vec<usize>> {
    let k = pattern.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    permutations(&mut perm, 0, &mut out);
    out.retain(|p| (0..k).all(|i| pattern.parts()[p[i]] == pattern.parts()[i]));
    out.sort();
    out
}

fn permutations(p: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == p.len() {
        out.push(p.clone());
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permutations(p, start + 1, out);
        p.swap(start, i);
    }
}

pub fn apply<T: Clone>(perm: &[usize], v: &[T]) -> Vec<T> {
    perm.iter().map(|&i| v[i].clone()).collect()
}

/// Group elements `pi` with `pi . v` a scalar multiple of `v`.
pub fn stabilizer_size(values: &[FieldElement], group: &[Vec<usize>]) -> usize {
    let i0 = values.iter().position(|v| !v.is_zero()).expect("nonzero point");
    group
        .iter()
        .filter(|p| {
            let img = apply(p, values);
            if img[i0].is_zero() {
                return false;
            }
            let s = img[i0].clone() / values[i0].clone();
            img.iter().zip(values).all(|(a, b)| *a == s.clone() * b.clone())
        })
        .count()
}

/// Same as [`stabilizer_size`] for values that are linear forms in free
/// parameters, given by coefficient rows. Only constant scalars count.
pub fn stabilizer_size_linear(values: &[Vec<Rational>], group: &[Vec<usize>]) -> usize {
    let nz = |v: &Vec<Rational>| v.iter().any(|c| !c.is_zero());
    let i0 = values.iter().position(nz).expect("nonzero family");
    let j0 = values[i0].iter().position(|c| !c.is_zero()).unwrap();
    group
        .iter()
        .filter(|p| {
            let img = apply(p, values);
            let s = &img[i0][j0] / &values[i0][j0];
            img.iter()
                .zip(values)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| *x == &s * y))
        })
        .count()
}

pub fn orbit_length(pattern: &MultiplicityPattern, values: &[FieldElement]) -> u64 {
    pattern.multinomial() / stabilizer_size(values, &block_symmetries(pattern)) as u64
}

pub fn orbit_length_linear(pattern: &MultiplicityPattern, values: &[Vec<Rational>]) -> u64 {
    pattern.multinomial() / stabilizer_size_linear(values, &block_symmetries(pattern)) as u64
}

/// Number of distinct images of a positive-dimensional family: every
/// element of `G` maps the family's linear span onto itself.
pub fn line_count(pattern: &MultiplicityPattern) -> u64 {
    pattern.multinomial() / block_symmetries(pattern).len() as u64
}

/// Total points in projective space covered by `labeled` labeled points.
pub fn points_for_labeled(pattern: &MultiplicityPattern, labeled: u64) -> u64 {
    labeled * pattern.multinomial() / block_symmetries(pattern).len() as u64
}
