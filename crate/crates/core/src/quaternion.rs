//! Quaternion algebras over a [`FieldConfig`] as structure-constant algebras.
//!
//! Every algebra is a table of the sixteen products of the basis
//! `1, i, j, k`. Two constructors fill it:
//!
//! * [`QuaternionAlgebra::ordinary`]: `i^2 = a`, `j^2 = b`, `k = ij = -ji`,
//!   for characteristic 0.
//! * [`QuaternionAlgebra::cyclic_char2`]: the algebra `(K/F, b)` with
//!   `K = F(i)`, `i^2 + i + 1 = 0`, over `F2(t,u)`:
//!
//! ```text
//!   .  |  i      j        k
//!   ---+----------------------------
//!   i  |  1+i    k        j+k
//!   j  |  j+k    b        b(1+i)
//!   k  |  j      b*i      b
//! ```
//!
//! Conjugation is read off the table: each basis element `e` satisfies
//! `e^2 = tau*e - nu` and is sent to `tau - e`.

use std::fmt;

use thiserror::Error;

use crate::field::{split_denominators, FieldConfig, FieldElem, FieldError};
use crate::linalg::{self, Row};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("quaternion does not belong to this algebra's field")]
    AlgebraMismatch,
    #[error("division by zero: element has norm 0")]
    DivisionByZero,
    #[error("trace or norm left the centre; the structure table is broken")]
    NotCentral,
    #[error("operation requires characteristic {expected}")]
    WrongCharacteristic { expected: &'static str },
    #[error("structure parameter must be nonzero")]
    ZeroParameter,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A vector `c0 + c1 i + c2 j + c3 k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Quaternion([FieldElem; 4]);

impl Quaternion {
    pub fn new(coords: [FieldElem; 4]) -> Self {
        Self(coords)
    }

    pub fn zero(field: &FieldConfig) -> Self {
        Self(std::array::from_fn(|_| field.zero()))
    }

    pub fn scalar(c: FieldElem) -> Self {
        let z = c.zero_like();
        Self([c, z.clone(), z.clone(), z])
    }

    /// The basis vector `1, i, j, k` for `idx = 0..4`.
    pub fn basis(field: &FieldConfig, idx: usize) -> Self {
        Self(std::array::from_fn(|c| {
            if c == idx {
                field.one()
            } else {
                field.zero()
            }
        }))
    }

    pub fn coords(&self) -> &[FieldElem; 4] {
        &self.0
    }

    pub fn coord(&self, idx: usize) -> &FieldElem {
        &self.0[idx]
    }

    pub fn into_coords(self) -> [FieldElem; 4] {
        self.0
    }

    pub fn field(&self) -> FieldConfig {
        self.0[0].config()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElem::is_zero)
    }

    /// True when the quaternion lies in `F*1`.
    pub fn is_scalar(&self) -> bool {
        self.0[1..].iter().all(FieldElem::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(std::array::from_fn(|i| &self.0[i] - &other.0[i]))
    }

    pub fn neg(&self) -> Self {
        Self(std::array::from_fn(|i| -&self.0[i]))
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Self(std::array::from_fn(|i| c * &self.0[i]))
    }

    pub fn map(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Self {
        Self(std::array::from_fn(|i| f(&self.0[i])))
    }

    /// Coordinatewise field automorphism.
    pub fn galois_apply(&self) -> Result<Self, FieldError> {
        let [a, b, c, d] = &self.0;
        Ok(Self([
            a.galois_apply()?,
            b.galois_apply()?,
            c.galois_apply()?,
            d.galois_apply()?,
        ]))
    }

    /// A nonzero scalar multiple with cleared denominators; same point of
    /// the projective space, smaller expressions.
    pub fn primitive(&self) -> Self {
        self.split_denominator().0
    }

    /// `(X, d)` with `self = X / d` and `X` free of denominators.
    pub(crate) fn split_denominator(&self) -> (Self, FieldElem) {
        let (cleared, d) = split_denominators(&self.0);
        (Self::from_row(&cleared), d)
    }

    pub fn to_row(&self) -> Row {
        self.0.to_vec()
    }

    pub fn from_row(row: &[FieldElem]) -> Self {
        Self(std::array::from_fn(|i| row[i].clone()))
    }
}

fn needs_parens(s: &str) -> bool {
    s.char_indices()
        .any(|(idx, ch)| (idx > 0 && (ch == '+' || ch == '-')) || ch == '/')
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "i", "j", "k"];
        let mut first = true;
        for (idx, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let term = if idx == 0 {
                s
            } else if c.is_one() {
                UNITS[idx].to_string()
            } else if (-c).is_one() {
                format!("-{}", UNITS[idx])
            } else if needs_parens(&s) {
                format!("({s})*{}", UNITS[idx])
            } else {
                format!("{s}*{}", UNITS[idx])
            };
            if !first && !term.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{term}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quaternion({self})")
    }
}

/// How the structure table was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flavor {
    Ordinary {
        a: FieldElem,
        b: FieldElem,
    },
    CyclicChar2 {
        b: FieldElem,
    },
    /// Arbitrary products of `i, j, k`; not validated on construction.
    Custom,
}

#[derive(Debug, Clone)]
pub struct QuaternionAlgebra {
    field: FieldConfig,
    flavor: Flavor,
    table: [[Quaternion; 4]; 4],
    conj_images: [Quaternion; 4],
    gram: Option<(Vec<Row>, FieldElem)>,
}

impl QuaternionAlgebra {
    /// Ordinary quaternions `(a, b)` over a field of characteristic 0.
    pub fn ordinary(field: FieldConfig, a: FieldElem, b: FieldElem) -> Result<Self, AlgebraError> {
        if field.characteristic() == 2 {
            return Err(AlgebraError::WrongCharacteristic { expected: "not 2" });
        }
        if !field.contains(&a) || !field.contains(&b) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        if a.is_zero() || b.is_zero() {
            return Err(AlgebraError::ZeroParameter);
        }
        let q = |c: [FieldElem; 4]| Quaternion::new(c);
        let (z, o) = (field.zero(), field.one());
        let ab = &a * &b;
        // products of i, j, k
        let products = [
            [
                q([a.clone(), z.clone(), z.clone(), z.clone()]),
                q([z.clone(), z.clone(), z.clone(), o.clone()]),
                q([z.clone(), z.clone(), a.clone(), z.clone()]),
            ],
            [
                q([z.clone(), z.clone(), z.clone(), -&o]),
                q([b.clone(), z.clone(), z.clone(), z.clone()]),
                q([z.clone(), -&b, z.clone(), z.clone()]),
            ],
            [
                q([z.clone(), z.clone(), -&a, z.clone()]),
                q([z.clone(), b.clone(), z.clone(), z.clone()]),
                q([-&ab, z.clone(), z.clone(), z]),
            ],
        ];
        Ok(Self::build(field, Flavor::Ordinary { a, b }, products))
    }

    /// Hamilton-type quaternions `(-1, -1)`.
    pub fn ordinary_default(field: FieldConfig) -> Result<Self, AlgebraError> {
        Self::ordinary(field, field.from_int(-1), field.from_int(-1))
    }

    /// The cyclic algebra `(K/F, b)` over `F2(t,u)`.
    pub fn cyclic_char2(b: FieldElem) -> Result<Self, AlgebraError> {
        let field = FieldConfig::f2tu();
        if !field.contains(&b) {
            return Err(AlgebraError::WrongCharacteristic { expected: "2" });
        }
        if b.is_zero() {
            return Err(AlgebraError::ZeroParameter);
        }
        let q = |c: [FieldElem; 4]| Quaternion::new(c);
        let (z, o) = (field.zero(), field.one());
        let products = [
            [
                q([o.clone(), o.clone(), z.clone(), z.clone()]),
                q([z.clone(), z.clone(), z.clone(), o.clone()]),
                q([z.clone(), z.clone(), o.clone(), o.clone()]),
            ],
            [
                q([z.clone(), z.clone(), o.clone(), o.clone()]),
                q([b.clone(), z.clone(), z.clone(), z.clone()]),
                q([b.clone(), b.clone(), z.clone(), z.clone()]),
            ],
            [
                q([z.clone(), z.clone(), o.clone(), z.clone()]),
                q([z.clone(), b.clone(), z.clone(), z.clone()]),
                q([b.clone(), z.clone(), z.clone(), z]),
            ],
        ];
        Ok(Self::build(field, Flavor::CyclicChar2 { b }, products))
    }

    /// An algebra from the nine products `e_r * e_c` of `i, j, k`
    /// (`products[r][c]`, row-major), with `1` as identity. Nothing is
    /// checked; see [`QuaternionAlgebra::audit`].
    pub fn from_table(
        field: FieldConfig,
        products: [[Quaternion; 3]; 3],
    ) -> Result<Self, AlgebraError> {
        if products
            .iter()
            .flatten()
            .flat_map(Quaternion::coords)
            .any(|c| !field.contains(c))
        {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(Self::build(field, Flavor::Custom, products))
    }

    fn build(field: FieldConfig, flavor: Flavor, products: [[Quaternion; 3]; 3]) -> Self {
        let table: [[Quaternion; 4]; 4] = std::array::from_fn(|r| {
            std::array::from_fn(|c| match (r, c) {
                (0, c) => Quaternion::basis(&field, c),
                (r, 0) => Quaternion::basis(&field, r),
                (r, c) => products[r - 1][c - 1].clone(),
            })
        });
        let conj_images = std::array::from_fn(|e| {
            if e == 0 {
                return Quaternion::basis(&field, 0);
            }
            let tau = table[e][e].coord(e).clone();
            Quaternion::scalar(tau).sub(&Quaternion::basis(&field, e))
        });
        let mut alg = Self {
            field,
            flavor,
            table,
            conj_images,
            gram: None,
        };
        alg.gram = alg.gram_matrix().ok().map(|g| {
            let det = linalg::determinant(&g);
            (g, det)
        });
        alg
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    /// The product `e_r * e_c` of basis elements.
    pub fn basis_product(&self, r: usize, c: usize) -> &Quaternion {
        &self.table[r][c]
    }

    pub fn one(&self) -> Quaternion {
        Quaternion::basis(&self.field, 0)
    }

    pub fn zero(&self) -> Quaternion {
        Quaternion::zero(&self.field)
    }

    pub fn basis(&self, idx: usize) -> Quaternion {
        Quaternion::basis(&self.field, idx)
    }

    pub fn scalar(&self, c: FieldElem) -> Quaternion {
        Quaternion::scalar(c)
    }

    pub fn contains(&self, x: &Quaternion) -> bool {
        x.coords().iter().all(|c| self.field.contains(c))
    }

    /// Products of fractions are formed on cleared numerators and reduced
    /// once per coordinate at the end.
    pub fn mul(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        let (xn, dx) = x.split_denominator();
        let (yn, dy) = y.split_denominator();
        let product = self.mul_integral(&xn, &yn);
        let d = &dx * &dy;
        if d.is_one() {
            return product;
        }
        product.scale(&d.inv().expect("denominators are nonzero"))
    }

    fn mul_integral(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        let mut acc: [FieldElem; 4] = std::array::from_fn(|_| self.field.zero());
        for (a, xa) in x.coords().iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.coords().iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let coeff = xa * yb;
                for (slot, t) in acc.iter_mut().zip(self.table[a][b].coords()) {
                    if !t.is_zero() {
                        *slot = &*slot + &(&coeff * t);
                    }
                }
            }
        }
        Quaternion::new(acc)
    }

    pub fn try_mul(&self, x: &Quaternion, y: &Quaternion) -> Result<Quaternion, AlgebraError> {
        if !self.contains(x) || !self.contains(y) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(self.mul(x, y))
    }

    pub fn mul3(&self, x: &Quaternion, y: &Quaternion, z: &Quaternion) -> Quaternion {
        self.mul(&self.mul(x, y), z)
    }

    pub fn conj(&self, x: &Quaternion) -> Quaternion {
        x.coords()
            .iter()
            .zip(&self.conj_images)
            .filter(|(c, _)| !c.is_zero())
            .fold(self.zero(), |acc, (c, e)| acc.add(&e.scale(c)))
    }

    fn central_part(&self, x: Quaternion) -> Result<FieldElem, AlgebraError> {
        if !x.is_scalar() {
            return Err(AlgebraError::NotCentral);
        }
        Ok(x.into_coords()
            .into_iter()
            .next()
            .expect("four coordinates"))
    }

    pub fn try_trace(&self, x: &Quaternion) -> Result<FieldElem, AlgebraError> {
        self.central_part(x.add(&self.conj(x)))
    }

    pub fn try_norm(&self, x: &Quaternion) -> Result<FieldElem, AlgebraError> {
        self.central_part(self.mul(&self.conj(x), x))
    }

    /// `x + conj(x)`. Panics if the table is broken; use
    /// [`try_trace`](Self::try_trace) for custom tables.
    pub fn trace(&self, x: &Quaternion) -> FieldElem {
        self.try_trace(x).expect("trace must be central")
    }

    /// `conj(x) * x`. Panics if the table is broken.
    pub fn norm(&self, x: &Quaternion) -> FieldElem {
        self.try_norm(x).expect("norm must be central")
    }

    /// `conj(x) / N(x)`.
    pub fn inverse(&self, x: &Quaternion) -> Result<Quaternion, AlgebraError> {
        let n = self.try_norm(x)?;
        if n.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.conj(x).scale(&n.inv()?))
    }

    /// `<x, y> = tr(x conj(y))`.
    pub fn bilinear_form(&self, x: &Quaternion, y: &Quaternion) -> Result<FieldElem, AlgebraError> {
        self.try_trace(&self.mul(x, &self.conj(y)))
    }

    /// Whether `x^2 - tr(x) x + N(x) = 0` holds exactly.
    pub fn quadratic_identity_check(&self, x: &Quaternion) -> bool {
        let (Ok(tr), Ok(n)) = (self.try_trace(x), self.try_norm(x)) else {
            return false;
        };
        self.mul(x, x)
            .sub(&x.scale(&tr))
            .add(&Quaternion::scalar(n))
            .is_zero()
    }

    pub fn gram_matrix(&self) -> Result<Vec<Row>, AlgebraError> {
        (0..4)
            .map(|r| {
                (0..4)
                    .map(|c| self.bilinear_form(&self.basis(r), &self.basis(c)))
                    .collect()
            })
            .collect()
    }

    /// Determinant of the Gram matrix of `<.,.>` on `1, i, j, k`; `None` when
    /// the form could not be evaluated.
    pub fn gram_determinant(&self) -> Option<&FieldElem> {
        self.gram.as_ref().map(|(_, d)| d)
    }

    /// The cached Gram matrix, when the form could be evaluated.
    pub fn gram(&self) -> Option<&[Row]> {
        self.gram.as_ref().map(|(g, _)| g.as_slice())
    }

    /// Matrix (acting on coordinate columns) of `x -> g x`.
    pub fn left_mul_matrix(&self, g: &Quaternion) -> Vec<Row> {
        self.matrix_of(|e| self.mul(g, e))
    }

    /// Matrix of `x -> x g`.
    pub fn right_mul_matrix(&self, g: &Quaternion) -> Vec<Row> {
        self.matrix_of(|e| self.mul(e, g))
    }

    pub(crate) fn matrix_of(&self, f: impl Fn(&Quaternion) -> Quaternion) -> Vec<Row> {
        let cols: Vec<Quaternion> = (0..4).map(|c| f(&self.basis(c))).collect();
        (0..4)
            .map(|r| (0..4).map(|c| cols[c].coord(r).clone()).collect())
            .collect()
    }

    /// Basis triples `(a, b, c)` with `(e_a e_b) e_c != e_a (e_b e_c)`.
    pub fn associativity_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let (x, y, z) = (self.basis(a), self.basis(b), self.basis(c));
                    if self.mul3(&x, &y, &z) != self.mul(&x, &self.mul(&y, &z)) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Whether the centralizer of `{i, j}` is exactly `F*1`.
    pub fn centre_is_scalar(&self) -> bool {
        let mut rows = Vec::new();
        for g in [self.basis(1), self.basis(2)] {
            let l = self.left_mul_matrix(&g);
            let r = self.right_mul_matrix(&g);
            for (lr, rr) in l.iter().zip(&r) {
                rows.push(lr.iter().zip(rr).map(|(a, b)| a - b).collect());
            }
        }
        let ns = linalg::nullspace(&rows, 4, &self.field.zero());
        ns.len() == 1 && Quaternion::from_row(&ns[0]).is_scalar()
    }

    /// Structural problems of the table, empty for a quaternion algebra.
    pub fn audit(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if let Some(&(a, b, c)) = self.associativity_violations().first() {
            issues.push(format!("not associative on basis triple ({a}, {b}, {c})"));
        }
        if !self.centre_is_scalar() {
            issues.push("centre is larger than F".to_string());
        }
        for e in 0..4 {
            let x = self.basis(e);
            if self.try_norm(&x).is_err() || self.try_trace(&x).is_err() {
                issues.push(format!("trace or norm of basis element {e} is not central"));
            }
        }
        match self.gram_determinant() {
            Some(d) if !d.is_zero() => {}
            _ => issues.push("bilinear form is degenerate".to_string()),
        }
        issues
    }
}
