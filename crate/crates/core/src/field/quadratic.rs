//! Elements `a + b*sqrt(m)` of a real or imaginary quadratic field `Q(sqrt m)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldError;

pub type Rational = BigRational;

/// Square root of a rational number, if it is a square in `Q`.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

pub(crate) fn is_perfect_square(n: i64) -> bool {
    n >= 0 && {
        let r = BigInt::from(n).sqrt();
        &r * &r == BigInt::from(n)
    }
}

pub(crate) fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a: Rational,
    b: Rational,
    m: i64,
}

impl QuadElem {
    pub fn new(a: Rational, b: Rational, m: i64) -> Self {
        Self { a, b, m }
    }

    pub fn from_rational(a: Rational, m: i64) -> Self {
        Self::new(a, Rational::zero(), m)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> i64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, self.m))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(Self::new(&self.a - &other.a, &self.b - &other.b, self.m))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let m = Rational::from_integer(self.m.into());
        Ok(Self::new(
            &self.a * &other.a + &self.b * &other.b * m,
            &self.a * &other.b + &self.b * &other.a,
            self.m,
        ))
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, -&self.b, self.m)
    }

    /// `a^2 - m b^2`.
    pub fn field_norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.m.into())
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, self.m)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        let n = self.field_norm();
        if n.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::new(&self.a / &n, -&self.b / &n, self.m))
    }

    /// A square root inside `Q(sqrt m)`, if one exists.
    ///
    /// `(x + y sqrt m)^2 = a + b sqrt m` forces `a^2 - m b^2 = s^2` with
    /// `s = +-(x^2 - m y^2)`, and then `x^2 = (a +- s)/2`. With `b = 0` the
    /// root is either rational (`y = 0`) or a rational multiple of `sqrt m`.
    pub fn sqrt(&self) -> Option<Self> {
        let m = Rational::from_integer(self.m.into());
        if self.b.is_zero() {
            if let Some(x) = rational_sqrt(&self.a) {
                return Some(Self::from_rational(x, self.m));
            }
            let y = rational_sqrt(&(&self.a / &m))?;
            return Some(Self::new(Rational::zero(), y, self.m));
        }
        let s = rational_sqrt(&self.field_norm())?;
        let two = Rational::from_integer(2.into());
        for cand in [(&self.a + &s) / &two, (&self.a - &s) / &two] {
            let Some(x) = rational_sqrt(&cand) else {
                continue;
            };
            if x.is_zero() {
                continue;
            }
            let y = &self.b / (&two * &x);
            let root = Self::new(x, y, self.m);
            if root.mul(&root).ok().as_ref() == Some(self) {
                return Some(root);
            }
        }
        None
    }
}

fn fmt_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadElem {
    /// `a+b*s`, where `s` stands for `sqrt(m)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return fmt_rational(f, &self.a);
        }
        if !self.a.is_zero() {
            fmt_rational(f, &self.a)?;
            if self.b.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.b == -Rational::one() {
            write!(f, "-")?;
        } else if !self.b.is_one() {
            fmt_rational(f, &self.b)?;
            write!(f, "*")?;
        }
        write!(f, "s")
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadElem({self}; m={})", self.m)
    }
}
