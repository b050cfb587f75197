//! The rational function field `F2(t, u)`.
//!
//! Fractions are kept in lowest terms. The only unit of `F2[t,u]` is 1, so
//! the reduced form is canonical.

use std::fmt;

use super::f2poly::F2Poly;
use super::FieldError;

#[derive(Clone)]
pub struct F2RatFun {
    num: F2Poly,
    den: F2Poly,
}

impl F2RatFun {
    pub fn zero() -> Self {
        Self::from_poly(F2Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(F2Poly::one())
    }

    pub fn from_poly(p: F2Poly) -> Self {
        Self {
            num: p,
            den: F2Poly::one(),
        }
    }

    pub fn new(num: F2Poly, den: F2Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: F2Poly, den: F2Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return Self { num, den };
        }
        Self {
            num: num.div_exact(&g).expect("gcd divides numerator"),
            den: den.div_exact(&g).expect("gcd divides denominator"),
        }
    }

    pub fn numerator(&self) -> &F2Poly {
        &self.num
    }

    pub fn denominator(&self) -> &F2Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The polynomial this fraction equals, if any.
    pub fn as_polynomial(&self) -> Option<F2Poly> {
        if self.den.is_one() {
            return Some(self.num.clone());
        }
        self.num.div_exact(&self.den)
    }

    /// Both operands are in lowest terms, so only the shared part of the
    /// denominators can cancel against the new numerator.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        let g = self.den.gcd(&other.den);
        let (d1, d2) = (exact(&self.den, &g), exact(&other.den, &g));
        let num = self.num.mul(&d2).add(&other.num.mul(&d1));
        if num.is_zero() {
            return Self::zero();
        }
        let h = num.gcd(&g);
        Self {
            num: exact(&num, &h),
            den: exact(&g, &h).mul(&d1).mul(&d2),
        }
    }

    /// Cancels `n1` against `d2` and `n2` against `d1`; nothing else can.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        Self {
            num: exact(&self.num, &g1).mul(&exact(&other.num, &g2)),
            den: exact(&self.den, &g2).mul(&exact(&other.den, &g1)),
        }
    }

    pub fn square(&self) -> Self {
        Self {
            num: self.num.square(),
            den: self.den.square(),
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn swap_tu(&self) -> Self {
        Self {
            num: self.num.swap_tu(),
            den: self.den.swap_tu(),
        }
    }

    /// `n/d` is a square exactly when the polynomial `n*d` is, and then the
    /// root is `sqrt(n*d)/d`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.den.is_one() {
            return self.num.sqrt().map(Self::from_poly);
        }
        let root = self.num.mul(&self.den).sqrt()?;
        Some(Self::normalized(root, self.den.clone()))
    }

    /// Coordinates `(s0, s1, s2, s3)` with `f = s0^2 + s1^2 t + s2^2 u + s3^2 tu`.
    ///
    /// `f = (n*d)/d^2`; the monomials of `n*d` split by the parity of their
    /// exponents, and halving the exponents of each class gives `s_k * d`.
    pub fn frobenius_coordinates(&self) -> [Self; 4] {
        let p = self.num.mul(&self.den);
        let mut classes: [Vec<u64>; 4] = Default::default();
        for (a, b) in p.exponents() {
            let class = (a % 2 + 2 * (b % 2)) as usize;
            classes[class].push(super::f2poly::pack(a / 2, b / 2));
        }
        classes.map(|terms| Self::normalized(F2Poly::from_packed(terms), self.den.clone()))
    }
}

fn exact(p: &F2Poly, d: &F2Poly) -> F2Poly {
    if d.is_one() {
        return p.clone();
    }
    p.div_exact(d).expect("exact division by a known factor")
}

impl PartialEq for F2RatFun {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        if self.num.is_zero() || other.num.is_zero() {
            return self.num.is_zero() && other.num.is_zero();
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for F2RatFun {}

impl fmt::Display for F2RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &F2Poly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for F2RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2RatFun({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pairs: &[(u32, u32)]) -> F2Poly {
        F2Poly::from_exponents(pairs.iter().copied())
    }

    fn rf(num: &[(u32, u32)], den: &[(u32, u32)]) -> F2RatFun {
        F2RatFun::new(poly(num), poly(den)).unwrap()
    }

    #[test]
    fn equality_by_cross_multiplication() {
        // (t+u)/(t^2+u^2) == 1/(t+u)
        let a = rf(&[(1, 0), (0, 1)], &[(2, 0), (0, 2)]);
        let b = rf(&[(0, 0)], &[(1, 0), (0, 1)]);
        assert_eq!(a, b);
        assert_ne!(a, F2RatFun::one());
    }

    #[test]
    fn normalization_strips_monomials() {
        let a = rf(&[(2, 1), (1, 1)], &[(1, 2)]);
        assert_eq!(a.numerator(), &poly(&[(1, 0), (0, 0)]));
        assert_eq!(a.denominator(), &poly(&[(0, 1)]));
    }

    #[test]
    fn inverse_of_t_plus_u() {
        let s = rf(&[(1, 0), (0, 1)], &[(0, 0)]);
        let inv = s.inv().unwrap();
        assert_eq!(inv.numerator(), &F2Poly::one());
        assert_eq!(inv.denominator(), &poly(&[(1, 0), (0, 1)]));
        assert!(s.mul(&inv).is_one());
        assert_eq!(
            F2RatFun::zero().inv().unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn squares() {
        assert_eq!(
            rf(&[(2, 2)], &[(0, 0)]).sqrt(),
            Some(rf(&[(1, 1)], &[(0, 0)]))
        );
        assert_eq!(rf(&[(1, 1)], &[(0, 0)]).sqrt(), None);
        // t/u^3 is not a square but t/t^3 = 1/t^2 is
        assert_eq!(rf(&[(1, 0)], &[(0, 3)]).sqrt(), None);
        assert_eq!(
            rf(&[(1, 0)], &[(3, 0)]).sqrt(),
            Some(rf(&[(0, 0)], &[(1, 0)]))
        );
        assert_eq!(F2RatFun::zero().sqrt(), Some(F2RatFun::zero()));
    }

    #[test]
    fn frobenius_examples() {
        let f = rf(&[(3, 0), (0, 1)], &[(0, 0)]);
        let [s0, s1, s2, s3] = f.frobenius_coordinates();
        assert!(s0.is_zero());
        assert_eq!(s1, rf(&[(1, 0)], &[(0, 0)]));
        assert_eq!(s2, F2RatFun::one());
        assert!(s3.is_zero());

        let g = rf(&[(0, 0)], &[(1, 0)]);
        let [s0, s1, s2, s3] = g.frobenius_coordinates();
        assert!(s0.is_zero() && s2.is_zero() && s3.is_zero());
        assert_eq!(s1, rf(&[(0, 0)], &[(1, 0)]));
    }

    #[test]
    fn as_polynomial_detects_hidden_polynomials() {
        let s = poly(&[(1, 0), (0, 1)]);
        let f = F2RatFun::new(s.pow(3), s.clone()).unwrap();
        assert_eq!(f.as_polynomial(), Some(s.pow(2)));
        assert_eq!(rf(&[(0, 0)], &[(1, 0), (0, 0)]).as_polynomial(), None);
    }
}
