//! Dense univariate polynomials over the two-element field, one bit per
//! coefficient. Used as coefficient ring when a bivariate polynomial is
//! viewed as a polynomial in `u` over `F2[t]`.

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct BitPoly(Vec<u64>);

impl BitPoly {
    pub(crate) fn zero() -> Self {
        Self(Vec::new())
    }

    #[cfg(test)]
    pub(crate) fn one() -> Self {
        Self(vec![1])
    }

    pub(crate) fn set_bit(&mut self, e: u32) {
        let (w, b) = ((e / 64) as usize, e % 64);
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] ^= 1 << b;
        self.trim();
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn is_one(&self) -> bool {
        self.0 == [1]
    }

    pub(crate) fn degree(&self) -> Option<u32> {
        let top = *self.0.last()?;
        Some((self.0.len() as u32 - 1) * 64 + 63 - top.leading_zeros())
    }

    /// Exponents of the nonzero coefficients, ascending.
    pub(crate) fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(w as u32 * 64 + b)
            })
        })
    }

    /// `self ^= other * t^shift`.
    pub(crate) fn xor_shifted(&mut self, other: &Self, shift: u32) {
        if other.is_zero() {
            return;
        }
        let (ws, bs) = ((shift / 64) as usize, shift % 64);
        let need = other.0.len() + ws + 1;
        if self.0.len() < need {
            self.0.resize(need, 0);
        }
        for (i, &word) in other.0.iter().enumerate() {
            self.0[i + ws] ^= word << bs;
            if bs != 0 {
                self.0[i + ws + 1] ^= word >> (64 - bs);
            }
        }
        self.trim();
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_shifted(other, 0);
        out
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (small, big) = if self.0.len() <= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![0u64; small.0.len() + big.0.len()];
        for e in small.exponents() {
            let (ws, bs) = ((e / 64) as usize, e % 64);
            for (i, &word) in big.0.iter().enumerate() {
                out[i + ws] ^= word << bs;
                if bs != 0 {
                    out[i + ws + 1] ^= word >> (64 - bs);
                }
            }
        }
        let mut out = Self(out);
        out.trim();
        out
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub(crate) fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree().filter(|&rd| rd >= dd) {
            quot.set_bit(rd - dd);
            rem.xor_shifted(divisor, rd - dd);
        }
        (quot, rem)
    }

    pub(crate) fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_exps(e: &[u32]) -> BitPoly {
        let mut p = BitPoly::zero();
        for &x in e {
            p.set_bit(x);
        }
        p
    }

    #[test]
    fn long_products_and_division() {
        let a = from_exps(&[0, 3, 70, 130]);
        let b = from_exps(&[1, 64, 65]);
        let prod = a.mul(&b);
        assert_eq!(prod.degree(), Some(195));
        let (q, r) = prod.div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        let (q, r) = prod.add(&BitPoly::one()).div_rem(&a);
        assert_eq!((q, r), (b, BitPoly::one()));
    }

    #[test]
    fn gcd_of_products() {
        // (1+t)(1+t+t^2) and (1+t)^2
        let x1 = from_exps(&[0, 1]);
        let x2 = from_exps(&[0, 1, 2]);
        assert_eq!(x1.mul(&x2).gcd(&x1.mul(&x1)), x1);
        assert!(x2.gcd(&x1).is_one());
    }
}
