//! The symmetric pencil `alpha*S5 + beta*S2*S3` restricted to `S1 = 0`.
//!
//! Everything here works through the power sums `C_i = sum x_j^i`, in terms
//! of which the pencil member is `(alpha/5) C5 - ((alpha+beta)/6) C2 C3`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::{FieldElement, Rational, Ring, UniPoly};

fn fe(num: i64, den: i64) -> FieldElement {
    FieldElement::rational(Rational::new(num, den))
}

/// A point `(alpha : beta)` of the parameter line, stored normalized.
#[derive(Clone, PartialEq, Eq)]
pub struct PencilParam {
    alpha: FieldElement,
    beta: FieldElement,
    lambda: Option<FieldElement>,
}

impl PencilParam {
    pub fn new(alpha: FieldElement, beta: FieldElement) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let (alpha, beta) = if alpha.is_zero() {
            (FieldElement::int(0), FieldElement::int(1))
        } else {
            let b = (beta / alpha).simplify();
            match b.as_rational() {
                Some(r) => normalize_rational(&Rational::from_int(1), &r),
                None => {
                    let l = Rational::from_int(Rational::lcm_denoms(b.coords()));
                    let scale = FieldElement::rational(l.clone());
                    (FieldElement::rational(l), scale * b)
                }
            }
        };
        let lambda = (!alpha.is_zero())
            .then(|| ((alpha.clone() + beta.clone()) / (FieldElement::int(2) * alpha.clone())).simplify());
        Ok(PencilParam { alpha: alpha.simplify(), beta: beta.simplify(), lambda })
    }

    pub fn from_ints(alpha: i64, beta: i64) -> Result<Self> {
        Self::new(FieldElement::int(alpha), FieldElement::int(beta))
    }

    /// The member with the given `lambda`, i.e. `(1 : 2*lambda - 1)`.
    pub fn from_lambda(lambda: &FieldElement) -> Self {
        let beta = FieldElement::int(2) * lambda.clone() - FieldElement::int(1);
        Self::new(FieldElement::int(1), beta).expect("alpha = 1 is never degenerate")
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    /// `(alpha + beta) / (2 alpha)`, undefined for the degenerate member.
    pub fn lambda(&self) -> Option<&FieldElement> {
        self.lambda.as_ref()
    }

    pub fn is_degenerate(&self) -> bool {
        self.alpha.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.alpha.is_rational() && self.beta.is_rational()
    }

    pub fn rational_pair(&self) -> Option<(Rational, Rational)> {
        Some((self.alpha.as_rational()?, self.beta.as_rational()?))
    }

    /// Monic minimal polynomial of lambda over Q; a field-independent key
    /// for a parameter together with all of its conjugates.
    pub fn lambda_minpoly(&self) -> Option<UniPoly> {
        self.lambda.as_ref().map(|l| l.minimal_polynomial())
    }
}

fn normalize_rational(a: &Rational, b: &Rational) -> (FieldElement, FieldElement) {
    let l = Rational::lcm_denoms([a, b]);
    let an = a.numer() * (&l / a.denom());
    let bn = b.numer() * (&l / b.denom());
    let mut g = an.gcd(&bn);
    if an < BigInt::from(0) || (an == BigInt::from(0) && bn < BigInt::from(0)) {
        g = -g;
    }
    (
        FieldElement::rational(Rational::from_int(an / &g)),
        FieldElement::rational(Rational::from_int(bn / &g)),
    )
}

impl fmt::Display for PencilParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.alpha, self.beta)
    }
}

impl fmt::Debug for PencilParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Power sums `C_1 .. C_5` of a point in `P^{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSums {
    pub n: usize,
    c: [FieldElement; 5],
}

impl PowerSums {
    pub fn new(n: usize, c: [FieldElement; 5]) -> Self {
        PowerSums { n, c }
    }

    /// `C_i` for `i` in `1..=5`.
    pub fn c(&self, i: usize) -> &FieldElement {
        &self.c[i - 1]
    }
}

/// A point given by its distinct coordinate values and their multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoint {
    n: usize,
    values: Vec<FieldElement>,
    mults: Vec<usize>,
}

impl SymPoint {
    pub fn new(values: Vec<FieldElement>, mults: Vec<usize>) -> Result<Self> {
        if values.len() != mults.len() || values.is_empty() || values.len() > 4 {
            return Err(Error::InvalidPoint(format!(
                "{} values with {} multiplicities",
                values.len(),
                mults.len()
            )));
        }
        if mults.contains(&0) {
            return Err(Error::InvalidPoint("zero multiplicity".into()));
        }
        let total: usize = mults.iter().sum();
        if total < 4 {
            return Err(Error::Dimension(total.saturating_sub(2)));
        }
        for i in 0..values.len() {
            for j in 0..i {
                if values[i] == values[j] {
                    return Err(Error::InvalidPoint(format!("repeated value {}", values[i])));
                }
            }
        }
        if values.iter().all(|v| v.is_zero()) {
            return Err(Error::InvalidPoint("all coordinates vanish".into()));
        }
        let s1 = values
            .iter()
            .zip(&mults)
            .fold(FieldElement::int(0), |acc, (v, &m)| acc + FieldElement::int(m as i64) * v.clone());
        if !s1.is_zero() {
            return Err(Error::NonzeroFirstPowerSum);
        }
        Ok(SymPoint { n: total - 2, values, mults })
    }

    pub fn from_ints(values: &[i64], mults: &[usize]) -> Result<Self> {
        Self::new(values.iter().map(|&v| FieldElement::int(v)).collect(), mults.to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    /// All `n+2` homogeneous coordinates, values repeated in listed order.
    pub fn coordinates(&self) -> Vec<FieldElement> {
        self.values
            .iter()
            .zip(&self.mults)
            .flat_map(|(v, &m)| std::iter::repeat(v.clone()).take(m))
            .collect()
    }

    pub fn scaled(&self, s: &FieldElement) -> Self {
        SymPoint {
            n: self.n,
            values: self.values.iter().map(|v| (v.clone() * s.clone()).simplify()).collect(),
            mults: self.mults.clone(),
        }
    }
}

pub fn power_sums(pt: &SymPoint) -> PowerSums {
    let c = std::array::from_fn(|i| {
        pt.values
            .iter()
            .zip(&pt.mults)
            .fold(FieldElement::int(0), |acc, (v, &m)| {
                acc + FieldElement::int(m as i64) * v.pow(i as u32 + 1)
            })
            .simplify()
    });
    PowerSums { n: pt.n, c }
}

/// `S_1 .. S_5` from power sums, valid modulo `S_1`.
pub fn elementary_from_power(ps: &PowerSums) -> Result<[FieldElement; 5]> {
    if !ps.c(1).is_zero() {
        return Err(Error::NonzeroFirstPowerSum);
    }
    let (c2, c3, c4, c5) = (ps.c(2).clone(), ps.c(3).clone(), ps.c(4).clone(), ps.c(5).clone());
    Ok([
        FieldElement::int(0),
        fe(-1, 2) * c2.clone(),
        fe(1, 3) * c3.clone(),
        fe(-1, 4) * c4 + fe(1, 8) * c2.clone() * c2.clone(),
        fe(1, 5) * c5 - fe(1, 6) * c2 * c3,
    ]
    .map(FieldElement::simplify))
}

/// The quartic whose roots contain every coordinate of a singular point.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticP {
    /// Coefficients of `X^0 .. X^4`.
    pub coeffs: [FieldElement; 5],
}

impl QuarticP {
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::int(0), |acc, c| acc * x.clone() + c.clone())
            .simplify()
    }

    pub fn as_poly(&self) -> Option<UniPoly> {
        let cs: Option<Vec<Rational>> = self.coeffs.iter().map(|c| c.as_rational()).collect();
        cs.map(UniPoly::new)
    }
}

/// Coefficients of `P` split as `lambda * A(X) + B(X)`.
pub fn singular_quartic_split(ps: &PowerSums) -> ([FieldElement; 5], [FieldElement; 5]) {
    let n2 = FieldElement::int(ps.n as i64 + 2);
    let (c2, c3, c4) = (ps.c(2).clone(), ps.c(3).clone(), ps.c(4).clone());
    let z = FieldElement::int(0);
    let a = [
        c2.clone() * c2.clone() / n2.clone(),
        fe(-2, 3) * c3,
        -c2,
        z.clone(),
        z.clone(),
    ];
    let b = [-c4 / n2, z.clone(), z.clone(), z, FieldElement::int(1)];
    (a.map(FieldElement::simplify), b.map(FieldElement::simplify))
}

pub fn singular_quartic(lambda: &FieldElement, ps: &PowerSums) -> QuarticP {
    let (a, b) = singular_quartic_split(ps);
    let coeffs = std::array::from_fn(|i| (lambda.clone() * a[i].clone() + b[i].clone()).simplify());
    QuarticP { coeffs }
}

#[allow(non_snake_case)]
pub fn evaluate_F(pt: &SymPoint, p: &PencilParam) -> FieldElement {
    let ps = power_sums(pt);
    let (a, b) = (p.alpha().clone(), p.beta().clone());
    (a.clone() * fe(1, 5) * ps.c(5).clone() - (a + b) * fe(1, 6) * ps.c(2).clone() * ps.c(3).clone())
        .simplify()
}

/// `dF/dx_j` at a coordinate equal to `v`.
pub fn partial_at(v: &FieldElement, ps: &PowerSums, p: &PencilParam) -> FieldElement {
    let (a, b) = (p.alpha().clone(), p.beta().clone());
    let inner = FieldElement::int(2) * v.clone() * ps.c(3).clone()
        + FieldElement::int(3) * v.pow(2) * ps.c(2).clone();
    (a.clone() * v.pow(4) - (a + b) * fe(1, 6) * inner).simplify()
}

/// True iff all partial derivatives agree at the point, i.e. it is a
/// singular point of the hypersurface inside `S1 = 0`.
pub fn verify_singular(pt: &SymPoint, p: &PencilParam) -> Result<bool> {
    if p.is_degenerate() {
        return Err(Error::DegenerateMember);
    }
    let ps = power_sums(pt);
    let first = partial_at(&pt.values[0], &ps, p);
    Ok(pt.values[1..].iter().all(|v| partial_at(v, &ps, p) == first))
}
