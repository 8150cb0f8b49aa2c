use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Field, Rational, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first. The zero polynomial has
/// no coefficients; otherwise the leading coefficient is nonzero.
#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

pub type UniPoly = Poly<Rational>;

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }

    pub fn monomial(c: F, deg: usize) -> Self {
        let mut v = vec![F::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    /// `X - r`.
    pub fn linear_root(r: F) -> Self {
        Poly::new(vec![-r, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn lead(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Horner evaluation at an element of any ring containing `F`.
    pub fn eval_in<R: Ring>(&self, x: &R, lift: impl Fn(&F) -> R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + lift(c);
        }
        acc
    }

    pub fn compose(&self, inner: &Poly<F>) -> Poly<F> {
        self.eval_in(inner, |c| Poly::constant(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = F::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                out.push(c.clone() * k.clone());
            }
            k = k + F::one();
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().inv())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(F::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        let lead_inv = d.lead().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() * lead_inv.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(F::one()), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(F::one()));
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&qt * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&qt * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = r0.lead().inv();
        (r0.scale(&li), s0.scale(&li), t0.scale(&li))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return Poly::constant(F::one());
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Yun's algorithm: returns `[(a_1, 1), (a_2, 2), ...]` with
    /// `monic(self) = prod a_i^i`, every `a_i` squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.divrem(&a).0;
        let mut c = fp.divrem(&a).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if !g.is_constant() {
                out.push((g.clone(), i));
            }
            b = b.divrem(&g).0;
            if b.is_constant() {
                break;
            }
            c = d.divrem(&g).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<Rational> {
    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn from_rationals(cs: &[Rational]) -> Self {
        Poly::new(cs.to_vec())
    }

    /// Content-free integer coefficients with positive leading coefficient,
    /// together with the rational factor `c` such that `self = c * result`.
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::from_int(0), Vec::new());
        }
        let l = Rational::lcm_denoms(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
        (Rational::new(g, l), prim)
    }

    /// Primitive integer polynomial with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        let (_, ints) = self.primitive_integer();
        Poly::new(ints.into_iter().map(Rational::from_int).collect())
    }

    /// Multiplying by `X^k` shift.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![<Rational as Ring>::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(v)
    }

    /// Approximate real roots of a squarefree polynomial, ascending.
    /// Display helper only (Durand-Kerner in `f64`).
    pub fn real_roots_approx(&self) -> Vec<f64> {
        let d = self.deg();
        if self.is_zero() || d == 0 {
            return Vec::new();
        }
        let lead = self.lead().to_f64();
        let c: Vec<f64> = self.coeffs.iter().map(|x| x.to_f64() / lead).collect();
        let eval = |z: (f64, f64)| {
            c.iter().rev().fold((0.0, 0.0), |acc: (f64, f64), &a| (acc.0 * z.0 - acc.1 * z.1 + a, acc.0 * z.1 + acc.1 * z.0))
        };
        let bound = 1.0 + c[..d].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut z: Vec<(f64, f64)> = (0..d)
            .map(|k| {
                let t = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64;
                (bound * t.cos(), bound * t.sin())
            })
            .collect();
        for _ in 0..500 {
            let mut shift = 0.0f64;
            for i in 0..d {
                let num = eval(z[i]);
                let mut den = (1.0, 0.0);
                for j in 0..d {
                    if i != j {
                        let diff = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                        den = (den.0 * diff.0 - den.1 * diff.1, den.0 * diff.1 + den.1 * diff.0);
                    }
                }
                let norm = den.0 * den.0 + den.1 * den.1;
                if norm == 0.0 {
                    continue;
                }
                let q = ((num.0 * den.0 + num.1 * den.1) / norm, (num.1 * den.0 - num.0 * den.1) / norm);
                z[i] = (z[i].0 - q.0, z[i].1 - q.1);
                shift = shift.max(q.0.abs() + q.1.abs());
            }
            if shift < 1e-15 * bound {
                break;
            }
        }
        let mut out: Vec<f64> = z.iter().filter(|w| w.1.abs() < 1e-8 * bound).map(|w| w.0).collect();
        out.sort_by(|a, b| a.total_cmp(b));
        out
    }

    /// Render with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = a == Rational::from_int(1);
            match i {
                0 => s.push_str(&a.to_string()),
                _ => {
                    if !unit {
                        s.push_str(&a.to_string());
                        s.push('*');
                    }
                    s.push_str(var);
                    if i > 1 {
                        s.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        s
    }
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("X"))
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: Field> Add<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<F: Field> Sub<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<F: Field> Mul<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Field> Ring for Poly<F> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn exact_div(&self, d: &Self) -> Self {
        let (qt, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        qt
    }
}

/// Resultant of two nonzero polynomials over `Q`, via the Euclidean
/// remainder sequence.
pub fn poly_resultant(p: &UniPoly, q: &UniPoly) -> Result<Rational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    Ok(resultant_nonzero(p, q))
}

fn resultant_nonzero<F: Field>(p: &Poly<F>, q: &Poly<F>) -> F {
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut acc = F::one();
    loop {
        let da = a.deg();
        let db = b.deg();
        if db == 0 {
            // res(a, c) = c^deg(a)
            let mut c = F::one();
            for _ in 0..da {
                c = c * b.lead();
            }
            return acc * c;
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return F::zero();
        }
        // res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
        let dr = r.deg();
        if da % 2 == 1 && db % 2 == 1 {
            acc = -acc;
        }
        for _ in 0..(da - dr) {
            acc = acc * b.lead();
        }
        a = b;
        b = r;
    }
}

impl<F: Field> Poly<F> {
    pub fn resultant(&self, other: &Self) -> F {
        if self.is_zero() || other.is_zero() {
            return F::zero();
        }
        resultant_nonzero(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[5, -3, 0, 2, 1]);
        let b = p(&[1, 1, 3]);
        let (qt, r) = a.divrem(&b);
        assert_eq!(&(&qt * &b) + &r, a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(poly_resultant(&p(&[-1, 1]), &p(&[1, 1])).unwrap(), q(2, 1));
        assert_eq!(poly_resultant(&p(&[-2, 0, 1]), &p(&[-2, 0, 1])).unwrap(), q(0, 1));
        assert!(poly_resultant(&UniPoly::zero(), &p(&[1])).is_err());
    }

    #[test]
    fn approximate_real_roots() {
        let p = Poly::from_ints(&[-4, -2, 1]);
        let r = p.real_roots_approx();
        assert_eq!(r.len(), 2);
        assert!((r[0] - (1.0 - 5f64.sqrt())).abs() < 1e-12);
        assert!((r[1] - (1.0 + 5f64.sqrt())).abs() < 1e-12);
        assert!(Poly::from_ints(&[1, 0, 1]).real_roots_approx().is_empty());
    }

    #[test]
    fn resultant_matches_product_over_roots() {
        // res(c^2 - 1, 5c^2 - 20c + 27) = g(1) * g(-1) for monic first argument
        let f = p(&[-1, 0, 1]);
        let g = p(&[27, -20, 5]);
        let oracle = g.eval(&q(1, 1)) * g.eval(&q(-1, 1));
        assert_eq!(oracle, q(624, 1));
        assert_eq!(poly_resultant(&f, &g).unwrap(), oracle);
    }

    #[test]
    fn squarefree_decomposition_of_powers() {
        // (x-1)^3 (x+2)
        let f = &p(&[-1, 1]).pow(3) * &p(&[2, 1]);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 3)]);
        assert_eq!(f.squarefree_part(), p(&[-2, 1, 1]));
    }

    #[test]
    fn render_reads_naturally() {
        assert_eq!(p(&[77, 139, 93, 25, 2]).render("b"), "2*b^4 + 25*b^3 + 93*b^2 + 139*b + 77");
        assert_eq!(p(&[-1, 0, 1]).render("X"), "X^2 - 1");
    }

    #[test]
    fn primitive_integer_form() {
        let f = UniPoly::new(vec![q(1, 2), q(-3, 4)]);
        let (c, ints) = f.primitive_integer();
        assert_eq!(ints, vec![BigInt::from(-2), BigInt::from(3)]);
        assert_eq!(c, q(-1, 4));
    }
}
