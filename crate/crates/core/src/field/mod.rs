//! Exact arithmetic over the three supported base fields: `Q`, `Q(sqrt m)` and
//! `F2(t,u)`.
//!
//! [`FieldElem`] is a tagged value; arithmetic between elements of different
//! fields is a programming error. The `checked_*` methods and [`field_arith`]
//! report it as [`FieldError::FieldMismatch`], while the operator impls panic.

mod artin_schreier;
mod bitpoly;
mod f2poly;
mod f2ratfun;
mod quadratic;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub(crate) use artin_schreier::solve_additive;
pub use artin_schreier::{artin_schreier_solve, artin_schreier_solve_rational};
pub use f2poly::F2Poly;
pub use f2ratfun::F2RatFun;
pub use quadratic::{rational_sqrt, QuadElem, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("the field has no nontrivial involutive automorphism")]
    NoGaloisAutomorphism,
    #[error("the zero polynomial has no leading pair")]
    ZeroPolynomial,
    #[error("target is not a polynomial")]
    UnsupportedTarget,
    #[error("invalid field: {0}")]
    InvalidField(String),
}

/// Which base field an algebra is built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    /// `Q(sqrt m)` for a squarefree `m` that is not a perfect square.
    QuadExt(i64),
    /// `F2(t,u)` with independent indeterminates `t`, `u`.
    F2TU,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldConfig {
    kind: FieldKind,
}

impl FieldConfig {
    pub fn rationals() -> Self {
        Self {
            kind: FieldKind::Rationals,
        }
    }

    pub fn quadratic(m: i64) -> Result<Self, FieldError> {
        if m == 0 || m == 1 || quadratic::is_perfect_square(m) || !quadratic::is_squarefree(m) {
            return Err(FieldError::InvalidField(format!(
                "radicand {m} must be squarefree and not a square"
            )));
        }
        Ok(Self {
            kind: FieldKind::QuadExt(m),
        })
    }

    pub fn f2tu() -> Self {
        Self {
            kind: FieldKind::F2TU,
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn characteristic(&self) -> u32 {
        match self.kind {
            FieldKind::F2TU => 2,
            _ => 0,
        }
    }

    pub fn has_galois(&self) -> bool {
        !matches!(self.kind, FieldKind::Rationals)
    }

    pub fn zero(&self) -> FieldElem {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        let r = Rational::from_integer(n.clone());
        match self.kind {
            FieldKind::Rationals => FieldElem::Rat(r),
            FieldKind::QuadExt(m) => FieldElem::Quad(QuadElem::from_rational(r, m)),
            FieldKind::F2TU => {
                let odd = n % BigInt::from(2) != BigInt::zero();
                FieldElem::F2(if odd {
                    F2RatFun::one()
                } else {
                    F2RatFun::zero()
                })
            }
        }
    }

    /// `a + b*sqrt(m)`; only valid for quadratic fields.
    pub fn quad(&self, a: Rational, b: Rational) -> Result<FieldElem, FieldError> {
        match self.kind {
            FieldKind::QuadExt(m) => Ok(FieldElem::Quad(QuadElem::new(a, b, m))),
            _ => Err(FieldError::FieldMismatch),
        }
    }

    /// Whether `x` is an element of this field.
    pub fn contains(&self, x: &FieldElem) -> bool {
        match (self.kind, x) {
            (FieldKind::Rationals, FieldElem::Rat(_)) => true,
            (FieldKind::QuadExt(m), FieldElem::Quad(q)) => q.radicand() == m,
            (FieldKind::F2TU, FieldElem::F2(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "rationals"),
            FieldKind::QuadExt(m) => write!(f, "qsqrt({m})"),
            FieldKind::F2TU => write!(f, "f2tu"),
        }
    }
}

/// An exact element of one of the configured base fields.
#[derive(Clone)]
pub enum FieldElem {
    Rat(Rational),
    Quad(QuadElem),
    F2(F2RatFun),
}

/// The four field operations plus negation and inversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Applies `op`; the unary operations ignore `y`.
pub fn field_arith(op: FieldOp, x: &FieldElem, y: &FieldElem) -> Result<FieldElem, FieldError> {
    match op {
        FieldOp::Add => x.checked_add(y),
        FieldOp::Sub => x.checked_sub(y),
        FieldOp::Mul => x.checked_mul(y),
        FieldOp::Div => x.checked_div(y),
        FieldOp::Neg => Ok(-x),
        FieldOp::Inv => x.inv(),
    }
}

impl FieldElem {
    pub fn config(&self) -> FieldConfig {
        match self {
            FieldElem::Rat(_) => FieldConfig::rationals(),
            FieldElem::Quad(q) => FieldConfig {
                kind: FieldKind::QuadExt(q.radicand()),
            },
            FieldElem::F2(_) => FieldConfig::f2tu(),
        }
    }

    pub fn zero_like(&self) -> Self {
        self.config().zero()
    }

    pub fn one_like(&self) -> Self {
        self.config().one()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Quad(q) => q.is_zero(),
            FieldElem::F2(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_one(),
            FieldElem::Quad(q) => q.is_one(),
            FieldElem::F2(f) => f.is_one(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            (FieldElem::Quad(a), FieldElem::Quad(b)) => FieldElem::Quad(a.add(b)?),
            (FieldElem::F2(a), FieldElem::F2(b)) => FieldElem::F2(a.add(b)),
            _ => return Err(FieldError::FieldMismatch),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a - b),
            (FieldElem::Quad(a), FieldElem::Quad(b)) => FieldElem::Quad(a.sub(b)?),
            (FieldElem::F2(a), FieldElem::F2(b)) => FieldElem::F2(a.add(b)),
            _ => return Err(FieldError::FieldMismatch),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            (FieldElem::Quad(a), FieldElem::Quad(b)) => FieldElem::Quad(a.mul(b)?),
            (FieldElem::F2(a), FieldElem::F2(b)) => FieldElem::F2(a.mul(b)),
            _ => return Err(FieldError::FieldMismatch),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(match self {
            FieldElem::Rat(r) if r.is_zero() => return Err(FieldError::DivisionByZero),
            FieldElem::Rat(r) => FieldElem::Rat(r.recip()),
            FieldElem::Quad(q) => FieldElem::Quad(q.inv()?),
            FieldElem::F2(f) => FieldElem::F2(f.inv()?),
        })
    }

    pub fn square(&self) -> Self {
        match self {
            FieldElem::F2(f) => FieldElem::F2(f.square()),
            _ => self * self,
        }
    }

    /// A square root in the same field, if `self` is a square there.
    pub fn is_square(&self) -> Option<Self> {
        match self {
            FieldElem::Rat(r) => rational_sqrt(r).map(FieldElem::Rat),
            FieldElem::Quad(q) => q.sqrt().map(FieldElem::Quad),
            FieldElem::F2(f) => f.sqrt().map(FieldElem::F2),
        }
    }

    /// The nontrivial involution: `sqrt m -> -sqrt m`, or `t <-> u`.
    pub fn galois_apply(&self) -> Result<Self, FieldError> {
        match self {
            FieldElem::Rat(_) => Err(FieldError::NoGaloisAutomorphism),
            FieldElem::Quad(q) => Ok(FieldElem::Quad(q.conjugate())),
            FieldElem::F2(f) => Ok(FieldElem::F2(f.swap_tu())),
        }
    }

    pub fn as_f2(&self) -> Option<&F2RatFun> {
        match self {
            FieldElem::F2(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElem::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_quad(&self) -> Option<&QuadElem> {
        match self {
            FieldElem::Quad(q) => Some(q),
            _ => None,
        }
    }

    /// A nonzero multiple `c * self` that is "integral": numerators only over
    /// `Q`, polynomial over `F2(t,u)`. Returns the multiplier `c`.
    pub(crate) fn denominator(&self) -> Self {
        match self {
            FieldElem::Rat(r) => FieldElem::Rat(Rational::from_integer(r.denom().clone())),
            FieldElem::Quad(q) => {
                let l =
                    num_integer::Integer::lcm(q.rational_part().denom(), q.radical_part().denom());
                FieldElem::Quad(QuadElem::from_rational(
                    Rational::from_integer(l),
                    q.radicand(),
                ))
            }
            FieldElem::F2(f) => FieldElem::F2(F2RatFun::from_poly(f.denominator().clone())),
        }
    }
}

/// `(X, d)` with `xs[i] = X[i] / d` and every `X[i]` free of denominators.
///
/// Over `F2(t,u)` `d` is the product of the distinct denominators and `X` is
/// formed by polynomial multiplication alone, so no gcd is computed; callers
/// do exact arithmetic on `X` and divide by `d` once at the end.
pub(crate) fn split_denominators(xs: &[FieldElem]) -> (Vec<FieldElem>, FieldElem) {
    let one = xs[0].one_like();
    let Some(fs) = xs.iter().map(FieldElem::as_f2).collect::<Option<Vec<_>>>() else {
        let mut scaled = xs.to_vec();
        let mut total = one;
        for idx in 0..xs.len() {
            let d = scaled[idx].denominator();
            if !d.is_one() {
                scaled.iter_mut().for_each(|x| *x = &*x * &d);
                total = &total * &d;
            }
        }
        return (scaled, total);
    };
    let mut dens: Vec<&F2Poly> = Vec::new();
    for f in &fs {
        let d = f.denominator();
        if !d.is_one() && !dens.contains(&d) {
            dens.push(d);
        }
    }
    if dens.is_empty() {
        return (xs.to_vec(), one);
    }
    let product = |skip: Option<&F2Poly>| {
        dens.iter()
            .filter(|d| Some(**d) != skip)
            .fold(F2Poly::one(), |acc, d| acc.mul(d))
    };
    let cleared = fs
        .iter()
        .map(|f| FieldElem::from(f.numerator().mul(&product(Some(f.denominator())))))
        .collect();
    (cleared, FieldElem::from(product(None)))
}

impl From<F2Poly> for FieldElem {
    fn from(p: F2Poly) -> Self {
        FieldElem::F2(F2RatFun::from_poly(p))
    }
}

impl From<F2RatFun> for FieldElem {
    fn from(f: F2RatFun) -> Self {
        FieldElem::F2(f)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => a == b,
            (FieldElem::Quad(a), FieldElem::Quad(b)) => a == b,
            (FieldElem::F2(a), FieldElem::F2(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for FieldElem {}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) if r.is_integer() => write!(f, "{}", r.numer()),
            FieldElem::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            FieldElem::Quad(q) => write!(f, "{q}"),
            FieldElem::F2(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$checked(&rhs).expect("field mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rat(r) => FieldElem::Rat(-r),
            FieldElem::Quad(q) => FieldElem::Quad(q.neg()),
            FieldElem::F2(f) => FieldElem::F2(f.clone()),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> FieldConfig {
        FieldConfig::quadratic(3).unwrap()
    }

    fn q3(a: i64, b: i64) -> FieldElem {
        r3().quad(
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
        )
        .unwrap()
    }

    fn tu() -> FieldElem {
        FieldElem::from(F2Poly::t().add(&F2Poly::u()))
    }

    #[test]
    fn arith_examples() {
        assert_eq!(&q3(1, 1) * &q3(1, -1), q3(-2, 0));
        assert_eq!(&q3(5, 2) * &q3(5, -2), q3(13, 0));
        let inv = field_arith(FieldOp::Inv, &tu(), &tu()).unwrap();
        let f = inv.as_f2().unwrap();
        assert!(f.numerator().is_one());
        assert_eq!(f.denominator(), &F2Poly::t().add(&F2Poly::u()));
    }

    #[test]
    fn errors() {
        let zero = FieldConfig::rationals().zero();
        let one = FieldConfig::rationals().one();
        assert_eq!(
            field_arith(FieldOp::Div, &one, &zero),
            Err(FieldError::DivisionByZero)
        );
        assert_eq!(
            field_arith(FieldOp::Add, &one, &q3(1, 0)),
            Err(FieldError::FieldMismatch)
        );
        assert_eq!(one.galois_apply(), Err(FieldError::NoGaloisAutomorphism));
        assert!(FieldConfig::quadratic(4).is_err());
        assert!(FieldConfig::quadratic(12).is_err());
        assert!(FieldConfig::quadratic(-1).is_ok());
    }

    #[test]
    fn square_examples() {
        assert_eq!(q3(13, 0).is_square(), None);
        assert_eq!(q3(7, 4).is_square(), Some(q3(2, 1)));
        let t2u2 = FieldElem::from(F2Poly::monomial(2, 2));
        assert_eq!(
            t2u2.is_square(),
            Some(FieldElem::from(F2Poly::monomial(1, 1)))
        );
        assert_eq!(FieldElem::from(F2Poly::monomial(1, 1)).is_square(), None);
        assert_eq!(r3().zero().is_square(), Some(r3().zero()));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(q3(5, 2).galois_apply().unwrap(), q3(5, -2));
        // 1 + u^2 (t+u) -> 1 + t^2 (u+t)
        let one = FieldConfig::f2tu().one();
        let x = &one + &(&FieldElem::from(F2Poly::monomial(0, 2)) * &tu());
        let y = &one + &(&FieldElem::from(F2Poly::monomial(2, 0)) * &tu());
        assert_eq!(x.galois_apply().unwrap(), y);
        assert_eq!(q3(7, 0).galois_apply().unwrap(), q3(7, 0));
    }

    #[test]
    fn f2_integers_reduce_mod_two() {
        let f = FieldConfig::f2tu();
        assert!(f.from_int(2).is_zero());
        assert!(f.from_int(-3).is_one());
    }
}
