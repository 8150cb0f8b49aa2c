use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::factor::is_irreducible_small;
use super::matrix::nullspace;
use super::{Field, Rational, Ring, UniPoly};
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_FIELD_DEGREE: usize = 4;

/// `Q[t]/(q(t))` for a monic irreducible `q` of degree 1 to 4. Degree 1 is
/// the field of rationals itself.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

struct FieldData {
    modulus: UniPoly,
    label: String,
}

impl NumberField {
    pub fn rational() -> Self {
        NumberField(Arc::new(FieldData { modulus: UniPoly::x(), label: "Q".into() }))
    }

    pub fn new(modulus: &UniPoly, label: impl Into<String>) -> Result<Self> {
        let deg = modulus.degree().ok_or(Error::ZeroPolynomial("number field modulus"))?;
        if deg == 0 || deg > MAX_FIELD_DEGREE {
            return Err(Error::FieldDegree(deg));
        }
        match is_irreducible_small(modulus) {
            Some(true) => {}
            _ => return Err(Error::ReducibleModulus(modulus.to_string())),
        }
        Ok(NumberField(Arc::new(FieldData { modulus: modulus.monic(), label: label.into() })))
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.0.modulus
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.deg()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement::from_poly(self, &UniPoly::x())
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.modulus == other.0.modulus
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            f.write_str("Q")
        } else {
            write!(f, "Q[t]/({})", self.0.modulus.render("t"))
        }
    }
}

/// Element of a [`NumberField`], stored as coordinates on `1, t, ..., t^(d-1)`.
///
/// Rational elements may be combined with elements of any field; they are
/// lifted on the fly. Combining elements of two different proper extensions
/// is a programming error and panics.
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn rational(r: Rational) -> Self {
        FieldElement { field: NumberField::rational(), coords: vec![r] }
    }

    pub fn int(v: i64) -> Self {
        Self::rational(Rational::from_int(v))
    }

    pub fn from_poly(field: &NumberField, p: &UniPoly) -> Self {
        if field.is_rational() {
            // modulus X: evaluation at 0
            return FieldElement::rational(p.coeff(0));
        }
        let r = p.rem(field.modulus());
        let coords = (0..field.degree()).map(|i| r.coeff(i)).collect();
        FieldElement { field: field.clone(), coords }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn as_poly(&self) -> UniPoly {
        UniPoly::new(self.coords.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    /// Re-express in the smallest field: rational values drop to `Q`.
    pub fn simplify(self) -> Self {
        if !self.field.is_rational() && self.is_rational() {
            FieldElement::rational(self.coords[0].clone())
        } else {
            self
        }
    }

    pub fn lift_to(&self, field: &NumberField) -> Self {
        if &self.field == field {
            return self.clone();
        }
        assert!(self.is_rational(), "cannot move {self:?} into {field:?}");
        let mut coords = vec![Rational::from_int(0); field.degree()];
        coords[0] = self.coords[0].clone();
        FieldElement { field: field.clone(), coords }
    }

    fn common_field(&self, other: &Self) -> NumberField {
        if self.field == other.field {
            return self.field.clone();
        }
        match (self.field.is_rational(), other.field.is_rational()) {
            (true, _) => other.field.clone(),
            (_, true) => self.field.clone(),
            _ => {
                if other.is_rational() {
                    self.field.clone()
                } else if self.is_rational() {
                    other.field.clone()
                } else {
                    panic!("mixed number fields {:?} and {:?}", self.field, other.field)
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FieldElement::int(1);
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Monic minimal polynomial over `Q`.
    pub fn minimal_polynomial(&self) -> UniPoly {
        if self.is_rational() {
            return UniPoly::linear_root(self.coords[0].clone());
        }
        let d = self.field.degree();
        let mut powers: Vec<Vec<Rational>> = Vec::new();
        let mut cur = FieldElement::int(1).lift_to(&self.field);
        for e in 0..=d {
            powers.push(cur.coords.clone());
            if e >= 1 {
                // columns are the powers 1..x^e; look for a dependency
                let rows: Vec<Vec<Rational>> = (0..d)
                    .map(|i| powers.iter().map(|p| p[i].clone()).collect())
                    .collect();
                let ns = nullspace(&rows, powers.len());
                if let Some(v) = ns.into_iter().next() {
                    return UniPoly::new(v).monic();
                }
            }
            cur = cur * self.clone();
        }
        unreachable!("a field element always has a minimal polynomial of degree <= d")
    }

    /// Approximate complex value at the given root of the modulus, for display.
    pub fn approx_at(&self, root: (f64, f64)) -> (f64, f64) {
        let (mut re, mut im) = (0.0, 0.0);
        for c in self.coords.iter().rev() {
            let nr = re * root.0 - im * root.1 + c.to_f64();
            let ni = re * root.1 + im * root.0;
            re = nr;
            im = ni;
        }
        (re, im)
    }
}

/// Isomorphism from a number field onto `Q[t]/(minpoly(g))` for a
/// generator `g`, used to present elements as polynomials in `g`.
#[derive(Clone, Debug)]
pub struct Rebase {
    generator: FieldElement,
    target: NumberField,
}

impl Rebase {
    /// Fails if `g` does not generate its field.
    pub fn new(g: &FieldElement, label: impl Into<String>) -> Result<Self> {
        let h = g.minimal_polynomial();
        if h.deg() != g.field.degree() {
            return Err(Error::FieldDegree(h.deg()));
        }
        let target = if h.deg() == 1 { NumberField::rational() } else { NumberField::new(&h, label)? };
        Ok(Rebase { generator: g.clone(), target })
    }

    pub fn target(&self) -> &NumberField {
        &self.target
    }

    pub fn map(&self, y: &FieldElement) -> FieldElement {
        if y.is_rational() || self.target.is_rational() {
            return y.clone().simplify();
        }
        let src = self.generator.field.clone();
        let d = src.degree();
        let y = y.lift_to(&src);
        let mut cols = Vec::with_capacity(d);
        let mut cur = FieldElement::int(1).lift_to(&src);
        for _ in 0..d {
            cols.push(cur.coords.clone());
            cur = cur * self.generator.clone();
        }
        let rows: Vec<Vec<Rational>> = (0..d)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(-&y.coords[r]);
                row
            })
            .collect();
        let v = nullspace(&rows, d + 1).into_iter().next().expect("generator powers form a basis");
        let last = v[d].clone();
        let coords: Vec<Rational> = v[..d].iter().map(|c| c / &last).collect();
        FieldElement::from_poly(&self.target, &UniPoly::new(coords))
    }
}

pub fn nf_inv(x: &FieldElement) -> Result<FieldElement> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(x.inv())
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.field == other.field {
            return self.coords == other.coords;
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            write!(f, "{r}")
        } else {
            write!(f, "{}", self.as_poly().render(self.field.label()))
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_rational() || self.is_rational() {
            write!(f, "{self}")
        } else {
            write!(f, "{self} in {:?}", self.field)
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        let k = self.common_field(&rhs);
        let (a, b) = (self.lift_to(&k), rhs.lift_to(&k));
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        FieldElement { field: k, coords }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        let k = self.common_field(&rhs);
        if k.is_rational() {
            return FieldElement::rational(&self.coords[0] * &rhs.coords[0]);
        }
        if let Some(r) = self.as_rational() {
            let b = rhs.lift_to(&k);
            return FieldElement { field: k, coords: b.coords.iter().map(|c| c * &r).collect() };
        }
        if let Some(r) = rhs.as_rational() {
            let a = self.lift_to(&k);
            return FieldElement { field: k, coords: a.coords.iter().map(|c| c * &r).collect() };
        }
        let prod = &self.as_poly() * &rhs.as_poly();
        FieldElement::from_poly(&k, &prod)
    }
}

impl std::ops::Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        self * rhs.inv()
    }
}

impl Ring for FieldElement {
    fn zero() -> Self {
        FieldElement::int(0)
    }
    fn one() -> Self {
        FieldElement::int(1)
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    fn exact_div(&self, d: &Self) -> Self {
        self.clone() * d.inv()
    }
}

impl Field for FieldElement {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero field element");
        if let Some(r) = self.as_rational() {
            return FieldElement::rational(r.recip()).lift_to(&self.field);
        }
        let (g, s, _) = self.as_poly().ext_gcd(self.field.modulus());
        debug_assert!(g.is_constant(), "modulus is irreducible");
        FieldElement::from_poly(&self.field, &s)
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::rational(r)
    }
}
