use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Ring};

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num.into(), den))
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = <Rational as Ring>::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        assert!(!self.0.is_zero(), "division by zero");
        Rational(self.0.recip())
    }

    /// Exact square root if the value is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Least common multiple of denominators.
    pub fn lcm_denoms<'a>(items: impl IntoIterator<Item = &'a Rational>) -> BigInt {
        items
            .into_iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| BigInt::from_str(t.trim()).map_err(|e| format!("bad integer {t:?}: {e}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(Rational::new(parse(n)?, d))
            }
            None => Ok(Rational::from_int(parse(s)?)),
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_int(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational((&self.0).$m(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Shorthand for building small rationals in code and tests.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}
