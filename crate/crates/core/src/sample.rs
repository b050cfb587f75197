//! Seeded generation of field elements and quaternions.
//!
//! The generator is ChaCha8 keyed through `SeedableRng::seed_from_u64`, and
//! every draw is reduced from a raw `u64` by an explicit modulus so that the
//! stream of sampled values depends only on the ChaCha8 keystream. Integer
//! coefficients are drawn from `[-9, 9]`; polynomials over `F2` are random
//! subsets of the ten monomials of total degree at most 3.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::field::{F2Poly, FieldConfig, FieldElem, FieldKind, Rational};
use crate::geometry::{Line, ProjPoint};
use crate::quaternion::Quaternion;

pub const COEFF_HEIGHT: i64 = 9;
pub const POLY_DEGREE: u32 = 3;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent stream for the same seed, e.g. one per named check.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `0..n` up to modulo bias.
    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.next_u64() % n
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.rng.next_u64() & 1 == 1
    }

    pub fn f2_poly(&mut self, degree: u32) -> F2Poly {
        let monos = F2Poly::monomials_up_to(degree);
        let bits = self.rng.next_u64();
        F2Poly::from_exponents(
            monos
                .into_iter()
                .enumerate()
                .filter(|(idx, _)| bits >> idx & 1 == 1)
                .map(|(_, p)| p),
        )
    }

    pub fn field_elem(&mut self, field: &FieldConfig) -> FieldElem {
        match field.kind() {
            FieldKind::Rationals => field.from_int(self.int_in(-COEFF_HEIGHT, COEFF_HEIGHT)),
            FieldKind::QuadExt(_) => {
                let a = self.int_in(-COEFF_HEIGHT, COEFF_HEIGHT);
                let b = self.int_in(-COEFF_HEIGHT, COEFF_HEIGHT);
                field
                    .quad(
                        Rational::from_integer(a.into()),
                        Rational::from_integer(b.into()),
                    )
                    .expect("quadratic field")
            }
            FieldKind::F2TU => FieldElem::from(self.f2_poly(POLY_DEGREE)),
        }
    }

    pub fn nonzero_field_elem(&mut self, field: &FieldConfig) -> FieldElem {
        loop {
            let x = self.field_elem(field);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn quaternion(&mut self, field: &FieldConfig) -> Quaternion {
        Quaternion::new(std::array::from_fn(|_| self.field_elem(field)))
    }

    pub fn nonzero_quaternion(&mut self, field: &FieldConfig) -> Quaternion {
        loop {
            let q = self.quaternion(field);
            if !q.is_zero() {
                return q;
            }
        }
    }

    pub fn point(&mut self, field: &FieldConfig) -> ProjPoint {
        ProjPoint::new(&self.nonzero_quaternion(field)).expect("nonzero")
    }

    pub fn line(&mut self, field: &FieldConfig) -> Line {
        loop {
            let x = self.quaternion(field);
            let y = self.quaternion(field);
            if let Ok(l) = Line::span(&x, &y) {
                return l;
            }
        }
    }

    /// A line through `1`.
    pub fn star_line(&mut self, field: &FieldConfig) -> Line {
        loop {
            if let Ok(l) = Line::through_one(&self.quaternion(field)) {
                return l;
            }
        }
    }
}
