//! Factorization over `Q` for the small degrees the census needs.
//!
//! Rational roots are found by lifting simple roots modulo a small prime and
//! reconstructing candidates, so no integer factoring is required. A quartic
//! without rational roots is split into quadratics through its resolvent
//! cubic. Anything of degree five or more that survives root extraction is
//! returned as a single factor marked as not proven irreducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, Rational, Ring, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    /// Monic factor.
    pub poly: UniPoly,
    pub multiplicity: usize,
    /// `false` only for residual factors of degree five or more.
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn reconstruct(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit.clone());
        for f in &self.factors {
            acc = &acc * &f.poly.pow(f.multiplicity as u32);
        }
        acc
    }

    /// True when every factor is certified irreducible.
    pub fn is_complete(&self) -> bool {
        self.factors.iter().all(|f| f.irreducible)
    }

    /// Distinct irreducible factors, ignoring multiplicity.
    pub fn distinct(&self) -> impl Iterator<Item = &UniPoly> {
        self.factors.iter().map(|f| &f.poly)
    }
}

pub fn poly_factor(p: &UniPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("factor"));
    }
    let unit = p.lead();
    let mut factors = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for (poly, irreducible) in split_squarefree(&part) {
            factors.push(Factor { poly, multiplicity: mult, irreducible });
        }
    }
    factors.sort_by(|a, b| {
        a.poly
            .deg()
            .cmp(&b.poly.deg())
            .then_with(|| a.poly.coeffs().cmp(b.poly.coeffs()))
    });
    Ok(Factorization { unit, factors })
}

fn split_squarefree(f: &UniPoly) -> Vec<(UniPoly, bool)> {
    let mut out = Vec::new();
    let roots = rational_roots(f);
    let mut rest = f.monic();
    for r in roots {
        let lin = UniPoly::linear_root(r);
        rest = rest.divrem(&lin).0;
        out.push((lin, true));
    }
    match rest.deg() {
        0 => {}
        1..=3 => out.push((rest, true)),
        4 => match split_quartic(&rest) {
            Some((a, b)) => {
                out.push((a, true));
                out.push((b, true));
            }
            None => out.push((rest, true)),
        },
        _ => out.push((rest, false)),
    }
    out
}

/// Distinct rational roots in increasing order.
pub fn rational_roots(f: &UniPoly) -> Vec<Rational> {
    let mut roots = Vec::new();
    if f.is_zero() {
        return roots;
    }
    let mut g = f.squarefree_part();
    if g.coeff(0).is_zero() {
        roots.push(<Rational as Ring>::zero());
        g = g.divrem(&UniPoly::x()).0;
    }
    if g.deg() == 0 {
        return roots;
    }
    if g.deg() == 1 {
        roots.push(-(g.coeff(0) / g.coeff(1)));
        roots.sort();
        return roots;
    }
    let (_, a) = g.primitive_integer();
    let lc = a.last().unwrap().clone();
    let bound = lc.abs() + a.iter().map(|x| x.abs()).max().unwrap();
    let target = &bound * 2 + 1;
    let deriv: Vec<BigInt> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();

    let ell = choose_prime(&a, &deriv, &lc);
    let ell_big = BigInt::from(ell);
    let small_roots: Vec<u64> = (0..ell)
        .filter(|&r| eval_mod(&a, &BigInt::from(r), &ell_big).is_zero())
        .collect();
    for r0 in small_roots {
        let mut r = BigInt::from(r0);
        let mut m = ell_big.clone();
        let dinv = modinv(&eval_mod(&deriv, &r, &ell_big), &ell_big);
        while m < target {
            // r + t*m is a root modulo m*ell
            let fr = eval_mod(&a, &r, &(&m * &ell_big));
            let quot = (fr / &m).mod_floor(&ell_big);
            let t = (-(quot * &dinv)).mod_floor(&ell_big);
            r += t * &m;
            m *= &ell_big;
        }
        let mut c = (&lc * &r).mod_floor(&m);
        if &c * 2 > m {
            c -= &m;
        }
        let cand = Rational::new(c, lc.clone());
        if g.eval(&cand).is_zero() && !roots.contains(&cand) {
            roots.push(cand);
        }
    }
    roots.sort();
    roots
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// A prime not dividing the leading coefficient at which every root of the
/// reduction is simple.
fn choose_prime(a: &[BigInt], deriv: &[BigInt], lc: &BigInt) -> u64 {
    let mut candidate = 2u64;
    loop {
        candidate += 1;
        if !is_prime(candidate) {
            continue;
        }
        let l = BigInt::from(candidate);
        if lc.mod_floor(&l).is_zero() {
            continue;
        }
        let ok = (0..candidate).all(|r| {
            let rb = BigInt::from(r);
            !eval_mod(a, &rb, &l).is_zero() || !eval_mod(deriv, &rb, &l).is_zero()
        });
        if ok {
            return candidate;
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Split a monic quartic with no rational roots into two monic rational
/// quadratics, if possible.
fn split_quartic(f: &UniPoly) -> Option<(UniPoly, UniPoly)> {
    debug_assert_eq!(f.deg(), 4);
    let a = f.coeff(3);
    let b = f.coeff(2);
    let c = f.coeff(1);
    let d = f.coeff(0);
    // roots y = r1 r2 + r3 r4 of the resolvent cubic
    let four = Rational::from_int(4);
    let resolvent = UniPoly::new(vec![
        -(&a * &a * &d - &four * &b * &d + &c * &c),
        &a * &c - &four * &d,
        -b.clone(),
        Rational::from_int(1),
    ]);
    for theta in rational_roots(&resolvent) {
        // q, s are the constant terms: roots of z^2 - theta z + d
        let disc_qs = &theta * &theta - &four * &d;
        // p, r are the linear terms: roots of z^2 - a z + (b - theta)
        let disc_pr = &a * &a - &four * (&b - &theta);
        let (Some(sq), Some(sp)) = (disc_qs.sqrt_exact(), disc_pr.sqrt_exact()) else {
            continue;
        };
        let two = Rational::from_int(2);
        let qv = (&theta + &sq) / &two;
        let sv = (&theta - &sq) / &two;
        let pv = (&a + &sp) / &two;
        let rv = (&a - &sp) / &two;
        for (p1, p2) in [(pv.clone(), rv.clone()), (rv.clone(), pv.clone())] {
            let f1 = UniPoly::new(vec![qv.clone(), p1, Rational::from_int(1)]);
            let f2 = UniPoly::new(vec![sv.clone(), p2, Rational::from_int(1)]);
            if &f1 * &f2 == *f {
                return Some((f1, f2));
            }
        }
    }
    None
}

/// True if `f` (degree at most 4) is irreducible over `Q`.
pub(crate) fn is_irreducible_small(f: &UniPoly) -> Option<bool> {
    let fac = poly_factor(f).ok()?;
    if !fac.is_complete() {
        return None;
    }
    Some(fac.factors.len() == 1 && fac.factors[0].multiplicity == 1)
}

impl Poly<Rational> {
    pub fn factor(&self) -> Result<Factorization> {
        poly_factor(self)
    }
}
