//! Sparse polynomials in `t` and `u` over the two-element field.
//!
//! A polynomial is the set of its monomials `t^a u^b`; every coefficient is 1.
//! Monomials are packed into a `u64` as `(a << 32) | b`, so the natural order of
//! the packed words is the lexicographic order on exponent pairs with `t`
//! compared first. The monomial vector is kept sorted and duplicate-free.

use std::fmt;

use super::bitpoly::BitPoly;
use super::FieldError;

pub(crate) const SHIFT: u32 = 32;
const LOW: u64 = (1 << SHIFT) - 1;

#[inline]
pub(crate) fn pack(t_exp: u32, u_exp: u32) -> u64 {
    ((t_exp as u64) << SHIFT) | u_exp as u64
}

#[inline]
pub(crate) fn unpack(m: u64) -> (u32, u32) {
    ((m >> SHIFT) as u32, (m & LOW) as u32)
}

#[inline]
fn total_degree(m: u64) -> u32 {
    let (a, b) = unpack(m);
    a + b
}

/// Sorts a list of monomials and cancels them in pairs (coefficients mod 2).
fn canonicalize(mut terms: Vec<u64>) -> Vec<u64> {
    terms.sort_unstable();
    let mut out: Vec<u64> = Vec::with_capacity(terms.len());
    for m in terms {
        if out.last() == Some(&m) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

/// Symmetric difference of two sorted monomial lists.
fn merge_xor(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn upoly_trim(p: &mut Vec<BitPoly>) {
    while p.last().is_some_and(BitPoly::is_zero) {
        p.pop();
    }
}

/// Gcd of the coefficients; zero for the zero polynomial.
fn upoly_content(p: &[BitPoly]) -> BitPoly {
    let mut g = BitPoly::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn upoly_divide(p: &mut [BitPoly], c: &BitPoly) {
    if c.is_zero() || c.is_one() {
        return;
    }
    for x in p.iter_mut() {
        *x = x.div_rem(c).0;
    }
}

/// Pseudo-remainder of `a` by nonzero `b`: repeatedly scale by the leading
/// coefficient of `b` and cancel the top term of the running remainder.
fn upoly_prem(a: &[BitPoly], b: &[BitPoly]) -> Vec<BitPoly> {
    let n = b.len() - 1;
    let lcb = &b[n];
    let mut r = a.to_vec();
    while r.len() > n {
        let m = r.len() - 1;
        let lcr = r[m].clone();
        for x in r.iter_mut() {
            *x = x.mul(lcb);
        }
        for (j, bj) in b.iter().enumerate() {
            let idx = m - n + j;
            r[idx] = r[idx].add(&lcr.mul(bj));
        }
        debug_assert!(r[m].is_zero());
        upoly_trim(&mut r);
    }
    r
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Poly {
    terms: Vec<u64>,
}

impl F2Poly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0)
    }

    pub fn u() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(t_exp: u32, u_exp: u32) -> Self {
        Self {
            terms: vec![pack(t_exp, u_exp)],
        }
    }

    /// Builds a polynomial from exponent pairs; repeated pairs cancel.
    pub fn from_exponents<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        Self {
            terms: canonicalize(pairs.into_iter().map(|(a, b)| pack(a, b)).collect()),
        }
    }

    pub(crate) fn from_packed(terms: Vec<u64>) -> Self {
        Self {
            terms: canonicalize(terms),
        }
    }

    pub(crate) fn packed(&self) -> &[u64] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == 0
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Exponent pairs in ascending lexicographic order.
    pub fn exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.iter().map(|&m| unpack(m))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|&m| total_degree(m)).max()
    }

    /// The lexicographically largest exponent pair (`t` before `u`).
    pub fn t_leading_pair(&self) -> Result<(u32, u32), FieldError> {
        self.terms
            .last()
            .map(|&m| unpack(m))
            .ok_or(FieldError::ZeroPolynomial)
    }

    /// Leading pair for the lexicographic order that compares `u` first,
    /// reported as `(t_exp, u_exp)`.
    pub fn u_leading_pair(&self) -> Option<(u32, u32)> {
        self.exponents().max_by_key(|&(a, b)| (b, a))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            terms: merge_xor(&self.terms, &other.terms),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        if self.terms.len() * other.terms.len() > 64 {
            return self.mul_dense(other);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &a in &self.terms {
            for &b in &other.terms {
                terms.push(a + b);
            }
        }
        Self::from_packed(terms)
    }

    /// Squaring is additive in characteristic 2, so it just doubles exponents.
    pub fn square(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|&m| m << 1).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn mul_monomial(&self, t_exp: u32, u_exp: u32) -> Self {
        let shift = pack(t_exp, u_exp);
        Self {
            terms: self.terms.iter().map(|&m| m + shift).collect(),
        }
    }

    /// Swaps the roles of `t` and `u`.
    pub fn swap_tu(&self) -> Self {
        Self::from_packed(
            self.terms
                .iter()
                .map(|&m| {
                    let (a, b) = unpack(m);
                    pack(b, a)
                })
                .collect(),
        )
    }

    /// Componentwise minimum exponents over all monomials: the largest
    /// monomial dividing the polynomial.
    pub fn monomial_content(&self) -> Option<(u32, u32)> {
        let mut it = self.exponents();
        let first = it.next()?;
        Some(it.fold(first, |(a, b), (c, d)| (a.min(c), b.min(d))))
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    ///
    /// With a single divisor the lexicographic division algorithm has a
    /// unique remainder, so the first leading term that the divisor's leading
    /// term does not divide already proves non-divisibility.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let lead = *divisor.terms.last()?;
        if divisor.is_one() {
            return Some(self.clone());
        }
        let (lt, lu) = unpack(lead);
        let mut rest = self.terms.clone();
        let mut quotient = Vec::new();
        while let Some(&top) = rest.last() {
            let (a, b) = unpack(top);
            if a < lt || b < lu {
                return None;
            }
            let shift = top - lead;
            quotient.push(shift);
            let scaled: Vec<u64> = divisor.terms.iter().map(|&m| m + shift).collect();
            rest = merge_xor(&rest, &scaled);
        }
        Some(Self::from_packed(quotient))
    }

    /// Greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// The polynomials are viewed in `F2[t][u]`: the gcd of the contents (in
    /// `F2[t]`) times the gcd of the primitive parts, the latter computed by a
    /// primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() || self == other {
            return self.clone();
        }
        if self.is_one() || other.is_one() {
            return Self::one();
        }
        if self.is_monomial() && other.is_monomial() {
            let (a, b) = unpack(self.terms[0]);
            let (c, d) = unpack(other.terms[0]);
            return Self::monomial(a.min(c), b.min(d));
        }
        if self.images_coprime(other) {
            return Self::one();
        }

        let (mut a, mut b) = (self.to_upoly(), other.to_upoly());
        let ca = upoly_content(&a);
        let cb = upoly_content(&b);
        let content = ca.gcd(&cb);
        upoly_divide(&mut a, &ca);
        upoly_divide(&mut b, &cb);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let mut r = upoly_prem(&a, &b);
            let cr = upoly_content(&r);
            upoly_divide(&mut r, &cr);
            a = b;
            b = r;
        }
        for c in &mut a {
            *c = c.mul(&content);
        }
        Self::from_upoly(&a)
    }

    /// A fast sufficient test for `gcd = 1`. The substitution
    /// `t -> u^n + c` with `n` above every `u`-degree is a ring map to
    /// `F2[u]` that sends nonconstant polynomials to nonconstant ones, so
    /// coprime images force a constant gcd.
    fn images_coprime(&self, other: &Self) -> bool {
        let max_exp = |p: &Self| {
            p.exponents()
                .fold((0, 0), |(a, b), (c, d)| (a.max(c), b.max(d)))
        };
        let ((ta, ua), (tb, ub)) = (max_exp(self), max_exp(other));
        let (tmax, n) = (ta.max(tb), ua.max(ub).max(3) + 1);
        for c in [0u32, 0b11, 0b111, 0b1011] {
            let mut base = BitPoly::zero();
            base.set_bit(n);
            for bit in (0..4).filter(|bit| c >> bit & 1 == 1) {
                base.set_bit(bit);
            }
            let mut powers = vec![BitPoly::zero(); tmax as usize + 1];
            powers[0].set_bit(0);
            for a in 1..powers.len() {
                powers[a] = powers[a - 1].mul(&base);
            }
            let image = |p: &Self| {
                let mut out = BitPoly::zero();
                for (a, b) in p.exponents() {
                    out.xor_shifted(&powers[a as usize], b);
                }
                out
            };
            if image(self).gcd(&image(other)).degree() == Some(0) {
                return true;
            }
        }
        false
    }

    /// Multiplication in `F2[t][u]` with bit-packed coefficients.
    fn mul_dense(&self, other: &Self) -> Self {
        let (a, b) = (self.to_upoly(), other.to_upoly());
        let mut out = vec![BitPoly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        Self::from_upoly(&out)
    }

    /// Coefficients in `F2[t]` of the powers of `u`, lowest first.
    fn to_upoly(&self) -> Vec<BitPoly> {
        let mut out: Vec<BitPoly> = Vec::new();
        for (a, b) in self.exponents() {
            let b = b as usize;
            if out.len() <= b {
                out.resize(b + 1, BitPoly::zero());
            }
            out[b].set_bit(a);
        }
        out
    }

    fn from_upoly(coeffs: &[BitPoly]) -> Self {
        Self::from_packed(
            coeffs
                .iter()
                .enumerate()
                .flat_map(|(b, c)| c.exponents().map(move |a| pack(a, b as u32)))
                .collect(),
        )
    }

    /// True when every exponent is even, i.e. the polynomial is a square.
    pub fn is_square(&self) -> bool {
        self.exponents().all(|(a, b)| a % 2 == 0 && b % 2 == 0)
    }

    /// Square root of a square polynomial.
    pub fn sqrt(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        Some(Self {
            terms: self.terms.iter().map(|&m| m >> 1).collect(),
        })
    }

    /// All monomials of total degree at most `bound`.
    pub fn monomials_up_to(bound: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for d in 0..=bound {
            for a in 0..=d {
                out.push((a, d - a));
            }
        }
        out
    }

    /// Every polynomial whose monomials have total degree at most `bound`,
    /// including zero. There are `2^((bound+1)(bound+2)/2)` of them.
    pub fn all_up_to_degree(bound: u32) -> Vec<Self> {
        let monos = Self::monomials_up_to(bound);
        assert!(monos.len() < 24, "enumeration too large");
        (0u32..(1 << monos.len()))
            .map(|mask| {
                Self::from_exponents(
                    monos
                        .iter()
                        .enumerate()
                        .filter(|(idx, _)| mask >> idx & 1 == 1)
                        .map(|(_, &p)| p),
                )
            })
            .collect()
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, a: u32, b: u32) -> fmt::Result {
    let factor = |f: &mut fmt::Formatter<'_>, v: &str, e: u32| match e {
        1 => write!(f, "{v}"),
        _ => write!(f, "{v}^{e}"),
    };
    match (a, b) {
        (0, 0) => write!(f, "1"),
        (a, 0) => factor(f, "t", a),
        (0, b) => factor(f, "u", b),
        (a, b) => {
            factor(f, "t", a)?;
            write!(f, "*")?;
            factor(f, "u", b)
        }
    }
}

impl fmt::Display for F2Poly {
    /// Prints monomials by descending total degree, then descending `t` power.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pairs: Vec<(u32, u32)> = self.exponents().collect();
        pairs.sort_by_key(|&(a, b)| std::cmp::Reverse((a + b, a)));
        for (idx, (a, b)) in pairs.into_iter().enumerate() {
            if idx > 0 {
                write!(f, "+")?;
            }
            fmt_monomial(f, a, b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly({self})")
    }
}
