//! Semilinear transformations of `H` and the parallelisms they preserve.
//!
//! A map is stored as a 4x4 matrix `A` over `F` plus a field automorphism
//! `sigma`, acting by `x -> A sigma(x)` on coordinate columns.
//!
//! # Classification on basis pairs
//!
//! Let `alpha` be `sigma`-semilinear. If `alpha(e_a e_b) = alpha(e_a)
//! alpha(e_b)` for all sixteen basis pairs, then for `x = sum x_a e_a`,
//! `y = sum y_b e_b`:
//!
//! ```text
//!   alpha(xy) = sum sigma(x_a y_b) alpha(e_a e_b)
//!             = sum sigma(x_a) alpha(e_a) sigma(y_b) alpha(e_b) = alpha(x) alpha(y),
//! ```
//!
//! since `sigma(x_a)` is central. The reversed products work the same way
//! for antiautomorphisms.
//!
//! # Preservation
//!
//! Every invertible semilinear `beta` factors as `beta = lambda_g o alpha`
//! with `g = beta(1)` and `alpha(1) = 1`. Left translations preserve every
//! Clifford-like parallelism, so `beta` does iff `alpha` does, and `alpha`
//! must be an automorphism or antiautomorphism of `H`.
//!
//! For an automorphism `alpha` and a defining set given by orbit
//! representatives plus separability flags, `alpha(D) = D` reduces to
//! `alpha(rep) in D` for each rep: `alpha` conjugates inner automorphisms to
//! inner automorphisms, so it maps orbits bijectively to orbits; it keeps
//! traces up to `sigma`, so flagged classes map onto themselves and
//! unflagged rep orbits land on rep orbits, where an injective self-map of
//! a finite set is onto.
//!
//! An antiautomorphism must send `D` onto its complement. A flagged class is
//! mapped into itself, so any flag, or any rep whose image stays in `D`,
//! settles the answer as "no". Otherwise the answer needs a finite
//! description of the complement; without one the verdict is a conservative
//! "no" marked as undecided.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldElem, FieldError};
use crate::geometry::Line;
use crate::linalg::{self, Row};
use crate::parallelism::{CliffordLikeParallelism, Parallelism, ParallelismError};
use crate::quaternion::{AlgebraError, Quaternion, QuaternionAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("a zero element does not define this map")]
    ZeroElement,
    #[error("the matrix is singular")]
    NotInvertible,
    #[error("the map does not fix 1")]
    NotUnital,
    #[error("map has a {0}x{1} matrix, expected 4x4")]
    BadShape(usize, usize),
    #[error("compatibility with trace, norm or conjugation fails at {0}")]
    Incompatible(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Parallelism(#[from] ParallelismError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldAuto {
    Identity,
    Galois,
}

impl FieldAuto {
    pub fn apply(self, q: &Quaternion) -> Result<Quaternion, FieldError> {
        match self {
            Self::Identity => Ok(q.clone()),
            Self::Galois => q.galois_apply(),
        }
    }

    pub fn then(self, other: Self) -> Self {
        if self == other {
            Self::Identity
        } else {
            Self::Galois
        }
    }
}

impl fmt::Display for FieldAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Identity => "identity",
            Self::Galois => "galois",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Automorphism,
    Antiautomorphism,
    Neither,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Automorphism => "automorphism",
            Self::Antiautomorphism => "antiautomorphism",
            Self::Neither => "neither",
        })
    }
}

#[derive(Clone)]
pub struct SemilinearMap {
    matrix: Vec<Row>,
    sigma: FieldAuto,
    /// `matrix = cleared / denom`, kept for fraction-free application.
    cleared: Vec<Row>,
    denom: FieldElem,
}

impl PartialEq for SemilinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma && self.matrix == other.matrix
    }
}

impl Eq for SemilinearMap {}

impl SemilinearMap {
    pub fn new(matrix: Vec<Row>, sigma: FieldAuto) -> Result<Self, MapError> {
        let cols = matrix.first().map_or(0, Vec::len);
        if matrix.len() != 4 || matrix.iter().any(|r| r.len() != 4) {
            return Err(MapError::BadShape(matrix.len(), cols));
        }
        if linalg::determinant(&matrix).is_zero() {
            return Err(MapError::NotInvertible);
        }
        Ok(Self::build(matrix, sigma))
    }

    pub fn matrix(&self) -> &[Row] {
        &self.matrix
    }

    pub fn sigma(&self) -> FieldAuto {
        self.sigma
    }

    pub fn identity(alg: &QuaternionAlgebra) -> Self {
        Self::build(alg.matrix_of(Quaternion::clone), FieldAuto::Identity)
    }

    fn build(matrix: Vec<Row>, sigma: FieldAuto) -> Self {
        let (cleared, denom) = linalg::split_matrix(&matrix);
        Self {
            matrix,
            sigma,
            cleared,
            denom,
        }
    }

    pub fn apply(&self, x: &Quaternion) -> Quaternion {
        let (sx, dx) = self.sigma_split(x);
        let d = &self.denom * &dx;
        let image = self.cleared_product(&sx);
        if d.is_one() {
            image
        } else {
            image.scale(&d.inv().expect("denominators are nonzero"))
        }
    }

    /// `d * self(x)` where `d` is the common denominator of the matrix.
    fn apply_cleared(&self, x: &Quaternion) -> Quaternion {
        let sx = self
            .sigma
            .apply(x)
            .expect("maps with a Galois part are only built over fields that have one");
        self.cleared_product(&sx)
    }

    fn sigma_split(&self, x: &Quaternion) -> (Quaternion, FieldElem) {
        self.sigma
            .apply(x)
            .expect("maps with a Galois part are only built over fields that have one")
            .split_denominator()
    }

    fn cleared_product(&self, v: &Quaternion) -> Quaternion {
        Quaternion::new(std::array::from_fn(|r| {
            self.cleared[r]
                .iter()
                .zip(v.coords())
                .filter(|(a, c)| !a.is_zero() && !c.is_zero())
                .fold(v.coord(0).zero_like(), |acc, (a, c)| &acc + &(a * c))
        }))
    }

    pub fn apply_line(&self, l: &Line) -> Line {
        l.map(|x| self.apply(x))
    }

    fn sigma_matrix(&self, m: &[Row]) -> Vec<Row> {
        m.iter()
            .map(|row| {
                row.iter()
                    .map(|x| match self.sigma {
                        FieldAuto::Identity => x.clone(),
                        FieldAuto::Galois => x.galois_apply().expect("field has a Galois map"),
                    })
                    .collect()
            })
            .collect()
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::build(
            linalg::mat_mul(&self.matrix, &self.sigma_matrix(&other.matrix)),
            self.sigma.then(other.sigma),
        )
    }

    pub fn inverse(&self) -> Self {
        let inv = linalg::inverse(&self.matrix).expect("stored maps are invertible");
        Self::build(self.sigma_matrix(&inv), self.sigma)
    }
}

impl fmt::Debug for SemilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        write!(f, "SemilinearMap([{}], {})", rows.join("; "), self.sigma)
    }
}

impl fmt::Display for SemilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn nonzero(alg: &QuaternionAlgebra, x: &Quaternion) -> Result<(), MapError> {
    if x.is_zero() {
        return Err(MapError::ZeroElement);
    }
    if alg.try_norm(x)?.is_zero() {
        return Err(MapError::Algebra(AlgebraError::DivisionByZero));
    }
    Ok(())
}

fn linear(alg: &QuaternionAlgebra, f: impl Fn(&Quaternion) -> Quaternion) -> SemilinearMap {
    SemilinearMap::build(alg.matrix_of(f), FieldAuto::Identity)
}

/// `x -> h^-1 x h`.
pub fn inner(alg: &QuaternionAlgebra, h: &Quaternion) -> Result<SemilinearMap, MapError> {
    nonzero(alg, h)?;
    let hinv = alg.inverse(h)?;
    Ok(linear(alg, |x| alg.mul3(&hinv, x, h)))
}

/// `x -> g x`.
pub fn left_translation(
    alg: &QuaternionAlgebra,
    g: &Quaternion,
) -> Result<SemilinearMap, MapError> {
    nonzero(alg, g)?;
    Ok(linear(alg, |x| alg.mul(g, x)))
}

/// `x -> x g`.
pub fn right_translation(
    alg: &QuaternionAlgebra,
    g: &Quaternion,
) -> Result<SemilinearMap, MapError> {
    nonzero(alg, g)?;
    Ok(linear(alg, |x| alg.mul(x, g)))
}

/// `x -> conj(x)`.
pub fn conjugation(alg: &QuaternionAlgebra) -> SemilinearMap {
    linear(alg, |x| alg.conj(x))
}

/// The Galois automorphism on coordinates, fixing `1, i, j, k`.
pub fn galois_outer(alg: &QuaternionAlgebra) -> Result<SemilinearMap, MapError> {
    if !alg.field().has_galois() {
        return Err(MapError::Field(FieldError::NoGaloisAutomorphism));
    }
    Ok(SemilinearMap::build(
        alg.matrix_of(Quaternion::clone),
        FieldAuto::Galois,
    ))
}

fn sigma_scalar(sigma: FieldAuto, c: &FieldElem) -> FieldElem {
    match sigma {
        FieldAuto::Identity => c.clone(),
        FieldAuto::Galois => c.galois_apply().expect("field has a Galois map"),
    }
}

/// Whether `alpha` respects products (`reversed = false`) or reverses them,
/// checked on the sixteen basis pairs. With `alpha = C/d` the condition
/// `alpha(xy) = alpha(x) alpha(y)` reads `d C(xy) = C(x) C(y)`, which keeps
/// the arithmetic free of fractions.
fn multiplicative(alg: &QuaternionAlgebra, alpha: &SemilinearMap, reversed: bool) -> bool {
    let images: Vec<Quaternion> = (0..4).map(|e| alpha.apply_cleared(&alg.basis(e))).collect();
    (0..4).all(|a| {
        (0..4).all(|b| {
            let lhs = alpha
                .apply_cleared(alg.basis_product(a, b))
                .scale(&alpha.denom);
            let rhs = if reversed {
                alg.mul(&images[b], &images[a])
            } else {
                alg.mul(&images[a], &images[b])
            };
            lhs == rhs
        })
    })
}

/// Trace, norm and conjugation compatibility, checked on `e_a` and
/// `e_a + e_b`. Trace and conjugation are linear, so the basis suffices; the
/// norm is a quadratic form, fixed by its values on the basis together with
/// its polar form, and `B(x, y) = N(x + y) - N(x) - N(y)`. As above the
/// checks are scaled by powers of `d`.
fn check_compatibility(alg: &QuaternionAlgebra, alpha: &SemilinearMap) -> Result<(), MapError> {
    let basis: Vec<Quaternion> = (0..4).map(|e| alg.basis(e)).collect();
    let probes = basis.iter().cloned().chain(
        (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .map(|(a, b)| basis[a].add(&basis[b])),
    );
    let d = &alpha.denom;
    for x in probes {
        let cx = alpha.apply_cleared(&x);
        let ok = alg.try_norm(&cx)? == &(d * d) * &sigma_scalar(alpha.sigma, &alg.try_norm(&x)?)
            && alg.try_trace(&cx)? == d * &sigma_scalar(alpha.sigma, &alg.try_trace(&x)?)
            && alpha.apply_cleared(&alg.conj(&x)) == alg.conj(&cx);
        if !ok {
            return Err(MapError::Incompatible(x.to_string()));
        }
    }
    Ok(())
}

/// Automorphism, antiautomorphism or neither, for a map fixing 1.
pub fn classify(alg: &QuaternionAlgebra, alpha: &SemilinearMap) -> Result<MapKind, MapError> {
    if alpha.apply(&alg.one()) != alg.one() {
        return Err(MapError::NotUnital);
    }
    let kind = if multiplicative(alg, alpha, false) {
        MapKind::Automorphism
    } else if multiplicative(alg, alpha, true) {
        MapKind::Antiautomorphism
    } else {
        return Ok(MapKind::Neither);
    };
    check_compatibility(alg, alpha)?;
    Ok(kind)
}

/// `beta = lambda_g o alpha` with `g = beta(1)` and `alpha(1) = 1`.
#[derive(Debug, Clone)]
pub struct MapClassification {
    pub translation_part: Quaternion,
    pub unit_part: SemilinearMap,
    pub unit_part_kind: MapKind,
}

pub fn factorize(
    alg: &QuaternionAlgebra,
    beta: &SemilinearMap,
) -> Result<MapClassification, MapError> {
    let g = beta.apply(&alg.one());
    nonzero(alg, &g)?;
    let unit_part = left_translation(alg, &alg.inverse(&g)?)?.compose(beta);
    let unit_part_kind = classify(alg, &unit_part)?;
    Ok(MapClassification {
        translation_part: g,
        unit_part,
        unit_part_kind,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationVerdict {
    pub preserves: bool,
    /// False when the answer is a conservative "no" for lack of a
    /// description of the complement.
    pub decided: bool,
    pub kind: MapKind,
    pub reason: String,
}

impl PreservationVerdict {
    fn decided(preserves: bool, kind: MapKind, reason: impl Into<String>) -> Self {
        Self {
            preserves,
            decided: true,
            kind,
            reason: reason.into(),
        }
    }
}

fn clifford_like_verdict(
    p: &CliffordLikeParallelism,
    alpha: &SemilinearMap,
    kind: MapKind,
) -> Result<PreservationVerdict, MapError> {
    match kind {
        MapKind::Automorphism => {
            for rep in &p.defining().reps {
                let image = alpha.apply_line(rep);
                if !p.in_defining_set(&image)? {
                    return Ok(PreservationVerdict::decided(
                        false,
                        kind,
                        format!("image {image} of {rep} leaves the defining set"),
                    ));
                }
            }
            Ok(PreservationVerdict::decided(
                true,
                kind,
                "every representative maps into the defining set",
            ))
        }
        MapKind::Antiautomorphism => {
            if let Some(flag) = p.defining().flags.first() {
                return Ok(PreservationVerdict::decided(
                    false,
                    kind,
                    format!("the {flag} class is mapped into itself"),
                ));
            }
            for rep in &p.defining().reps {
                let image = alpha.apply_line(rep);
                if p.in_defining_set(&image)? {
                    return Ok(PreservationVerdict::decided(
                        false,
                        kind,
                        format!("image {image} of {rep} stays in the defining set"),
                    ));
                }
            }
            let Some(complement) = p.complement_parallelism() else {
                return Ok(PreservationVerdict {
                    preserves: false,
                    decided: false,
                    kind,
                    reason: "every representative leaves the defining set; no description of the complement to finish the check".to_string(),
                });
            };
            if let Some(flag) = complement.defining().flags.first() {
                return Ok(PreservationVerdict {
                    preserves: false,
                    decided: false,
                    kind,
                    reason: format!("complement contains the {flag} class, which cannot be matched by finitely many orbits"),
                });
            }
            let alpha_inv = alpha.inverse();
            for rep in &complement.defining().reps {
                let pre = alpha_inv.apply_line(rep);
                if !p.in_defining_set(&pre)? {
                    return Ok(PreservationVerdict::decided(
                        false,
                        kind,
                        format!(
                            "complement representative {rep} is not an image of the defining set"
                        ),
                    ));
                }
            }
            for rep in &p.defining().reps {
                let image = alpha.apply_line(rep);
                if !complement.in_defining_set(&image)? {
                    return Ok(PreservationVerdict::decided(
                        false,
                        kind,
                        format!("image {image} of {rep} misses the complement"),
                    ));
                }
            }
            Ok(PreservationVerdict::decided(
                true,
                kind,
                "the defining set is exchanged with its complement",
            ))
        }
        MapKind::Neither => unreachable!("handled by the caller"),
    }
}

/// Whether `beta` maps the classes of `P` to classes of `P`.
pub fn preservation_verdict(
    alg: &QuaternionAlgebra,
    beta: &SemilinearMap,
    p: &Parallelism,
) -> Result<PreservationVerdict, MapError> {
    let fact = factorize(alg, beta)?;
    let kind = fact.unit_part_kind;
    if kind == MapKind::Neither {
        return Ok(PreservationVerdict::decided(
            false,
            kind,
            "the unit part is neither an automorphism nor an antiautomorphism",
        ));
    }
    match p {
        Parallelism::LeftClifford | Parallelism::RightClifford => {
            let preserves = kind == MapKind::Automorphism;
            let reason = if preserves {
                "automorphisms keep left and right classes"
            } else {
                "antiautomorphisms exchange left and right classes"
            };
            Ok(PreservationVerdict::decided(preserves, kind, reason))
        }
        Parallelism::CliffordLike(cl) => clifford_like_verdict(cl, &fact.unit_part, kind),
    }
}

pub fn preserves_parallelism(
    alg: &QuaternionAlgebra,
    beta: &SemilinearMap,
    p: &Parallelism,
) -> Result<bool, MapError> {
    Ok(preservation_verdict(alg, beta, p)?.preserves)
}
