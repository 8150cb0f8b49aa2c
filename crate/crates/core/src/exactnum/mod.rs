//! Exact arithmetic: rationals, dense univariate polynomials, small number
//! fields and fraction-free determinants.
//!
//! Everything here is exact. There is no floating point fallback anywhere in
//! the module; approximations exist only as display helpers.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

mod factor;
mod field;
mod matrix;
mod poly;
mod rational;

pub use factor::{poly_factor, rational_roots, Factor, Factorization};
pub use field::{nf_inv, FieldElement, NumberField, Rebase, MAX_FIELD_DEGREE};
pub use matrix::{det_exact, nullspace, ExactMatrix, Matrix};
pub use poly::{poly_resultant, Poly, UniPoly};
pub use rational::{q, Rational};

/// Commutative ring with exact division where the quotient is known to exist.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Divide when `self` is known to be a multiple of `d`.
    fn exact_div(&self, d: &Self) -> Self;

    /// Image of an integer under `Z -> R`.
    fn from_i64(k: i64) -> Self {
        let mut acc = Self::zero();
        let mut base = Self::one();
        let mut m = k.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc + base.clone();
            }
            base = base.clone() + base;
            m >>= 1;
        }
        if k < 0 {
            -acc
        } else {
            acc
        }
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Self;

    fn div(&self, d: &Self) -> Self {
        self.clone() * d.inv()
    }
}
