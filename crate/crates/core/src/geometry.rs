//! Points and lines of the projective space on `H` as a 4-dimensional
//! `F`-vector space, and the left and right Clifford parallelisms.
//!
//! A line is stored by two spanning vectors and its Pluecker coordinates, so
//! equal subspaces compare equal without any division. Left parallel lines are those
//! in one orbit of left multiplication by `H*`; every orbit meets the star of
//! lines through `F*1` exactly once, in the *anchor* `m^-1 M` (`m` any nonzero
//! vector of `M`). Parallelism tests compare anchors.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::field::FieldElem;
use crate::linalg;
use crate::quaternion::{AlgebraError, Quaternion, QuaternionAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("the zero vector is not a point")]
    ZeroVector,
    #[error("the bilinear form is degenerate")]
    DegenerateForm,
    #[error("line does not pass through F*1")]
    NotInStar,
    #[error("operation requires characteristic 2")]
    WrongCharacteristic,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A point `F x`, scaled so the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    rep: Quaternion,
}

impl ProjPoint {
    pub fn new(x: &Quaternion) -> Result<Self, GeometryError> {
        let lead = x
            .coords()
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(GeometryError::ZeroVector)?;
        let inv = lead.inv().expect("nonzero leading coordinate");
        Ok(Self { rep: x.scale(&inv) })
    }

    pub fn rep(&self) -> &Quaternion {
        &self.rep
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({})", self.rep)
    }
}

/// Pairs `(a, b)` of coordinate indices, in the order of the stored minors.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_index(a: usize, b: usize) -> usize {
    PAIRS.iter().position(|&p| p == (a, b)).expect("a < b")
}

/// A line as two denominator-free spanning vectors together with their six
/// 2x2 minors (Pluecker coordinates). Equality and incidence use only the
/// minors, so they need no division; the reduced echelon basis is computed on
/// demand for display.
#[derive(Clone)]
pub struct Line {
    rows: [Quaternion; 2],
    minors: [FieldElem; 6],
    echelon: OnceLock<[Quaternion; 2]>,
}

impl Line {
    pub fn span(x: &Quaternion, y: &Quaternion) -> Result<Self, GeometryError> {
        let (x, y) = (x.primitive(), y.primitive());
        let minors = PAIRS.map(|(a, b)| &(x.coord(a) * y.coord(b)) - &(x.coord(b) * y.coord(a)));
        if minors.iter().all(FieldElem::is_zero) {
            return Err(GeometryError::DependentVectors);
        }
        Ok(Self {
            rows: [x, y],
            minors,
            echelon: OnceLock::new(),
        })
    }

    /// The star line `F 1 + F q`.
    pub fn through_one(q: &Quaternion) -> Result<Self, GeometryError> {
        Self::span(&Quaternion::basis(&q.field(), 0), q)
    }

    /// `D(a, b)` for any `a != b`.
    fn minor(&self, a: usize, b: usize) -> FieldElem {
        if a < b {
            self.minors[pair_index(a, b)].clone()
        } else {
            -&self.minors[pair_index(b, a)]
        }
    }

    /// Two spanning vectors without denominators. They depend on how the
    /// line was built; use [`Line::basis`] for a canonical pair.
    pub fn spanning(&self) -> &[Quaternion; 2] {
        &self.rows
    }

    /// The reduced echelon basis, read off the minors: the pivot columns are
    /// the first pair `(p,q)` with `D(p,q) != 0`, and the rows are
    /// `D(c,q)/D(p,q)` and `D(p,c)/D(p,q)`.
    pub fn basis(&self) -> &[Quaternion; 2] {
        self.echelon.get_or_init(|| {
            let k = self
                .minors
                .iter()
                .position(|m| !m.is_zero())
                .expect("a line has a nonzero minor");
            let (p, q) = PAIRS[k];
            let inv = self.minors[k].inv().expect("nonzero minor");
            let entry = |a: usize, b: usize| {
                if a == b {
                    self.minors[k].zero_like()
                } else {
                    &self.minor(a, b) * &inv
                }
            };
            [
                Quaternion::new(std::array::from_fn(|c| entry(c, q))),
                Quaternion::new(std::array::from_fn(|c| entry(p, c))),
            ]
        })
    }

    /// `x` lies on the line iff every 3x3 minor of `(r0; r1; x)` vanishes,
    /// i.e. `x_a D(b,c) - x_b D(a,c) + x_c D(a,b) = 0` for all `a < b < c`.
    pub fn contains(&self, x: &Quaternion) -> bool {
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
            .iter()
            .all(|&(a, b, c)| {
                let sum = &(&(x.coord(a) * &self.minor(b, c)) - &(x.coord(b) * &self.minor(a, c)))
                    + &(x.coord(c) * &self.minor(a, b));
                sum.is_zero()
            })
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        self.contains(p.rep())
    }

    /// Whether `1` lies on the line: the minors avoiding column 0 vanish.
    pub fn in_star(&self) -> bool {
        self.minors[3..].iter().all(FieldElem::is_zero)
    }

    /// A generator with zero scalar part of a star line, so that together
    /// with 1 it spans the line. It is determined up to a nonzero scalar.
    pub fn star_generator(&self) -> Result<Quaternion, GeometryError> {
        if !self.in_star() {
            return Err(GeometryError::NotInStar);
        }
        let [x, y] = &self.rows;
        Ok(y.scale(x.coord(0)).sub(&x.scale(y.coord(0))))
    }

    /// The line with each vector mapped by `f`; `f` must be injective and
    /// semilinear.
    pub fn map(&self, f: impl Fn(&Quaternion) -> Quaternion) -> Self {
        let [a, b] = &self.rows;
        Self::span(&f(a), &f(b)).expect("injective map keeps a line a line")
    }
}

/// Same subspace iff the minor vectors are proportional.
impl PartialEq for Line {
    fn eq(&self, other: &Self) -> bool {
        let Some(k) = self.minors.iter().position(|m| !m.is_zero()) else {
            return false;
        };
        let (a, b) = (&self.minors[k], &other.minors[k]);
        if b.is_zero() {
            return false;
        }
        (0..6).all(|i| i == k || &self.minors[i] * b == &other.minors[i] * a)
    }
}

impl Eq for Line {}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r0, r1] = self.basis();
        write!(f, "span({r0}; {r1})")
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line({self})")
    }
}

impl QuaternionAlgebra {
    /// `g M`.
    pub fn left_translate(&self, g: &Quaternion, m: &Line) -> Line {
        let g = g.primitive();
        m.map(|x| self.mul(&g, x))
    }

    /// `M g`.
    pub fn right_translate(&self, m: &Line, g: &Quaternion) -> Line {
        let g = g.primitive();
        m.map(|x| self.mul(x, &g))
    }

    /// `h^-1 L h`, computed as `conj(h) L h`.
    pub fn conjugate_line(&self, h: &Quaternion, l: &Line) -> Line {
        let h = h.primitive();
        let hc = self.conj(&h);
        l.map(|x| self.mul3(&hc, x, &h))
    }

    fn anchor(&self, m: &Line, side: Side) -> Line {
        // conj(m) is a nonzero scalar multiple of m^-1.
        let [m0, m1] = m.spanning();
        let mc = self.conj(m0);
        let q = match side {
            Side::Left => self.mul(&mc, m1),
            Side::Right => self.mul(m1, &mc),
        };
        Line::through_one(&q).expect("anchor is a line")
    }

    /// The left parallel of `M` through `F*1`.
    pub fn left_anchor(&self, m: &Line) -> Line {
        self.anchor(m, Side::Left)
    }

    /// The right parallel of `M` through `F*1`.
    pub fn right_anchor(&self, m: &Line) -> Line {
        self.anchor(m, Side::Right)
    }

    pub fn side_anchor(&self, m: &Line, side: Side) -> Line {
        self.anchor(m, side)
    }

    pub fn is_left_parallel(&self, m1: &Line, m2: &Line) -> bool {
        m1 == m2 || self.left_anchor(m1) == self.left_anchor(m2)
    }

    pub fn is_right_parallel(&self, m1: &Line, m2: &Line) -> bool {
        m1 == m2 || self.right_anchor(m1) == self.right_anchor(m2)
    }

    pub fn is_side_parallel(&self, m1: &Line, m2: &Line, side: Side) -> bool {
        match side {
            Side::Left => self.is_left_parallel(m1, m2),
            Side::Right => self.is_right_parallel(m1, m2),
        }
    }

    /// The unique line through `p` that is `side`-parallel to `M`.
    pub fn parallel_through(&self, p: &ProjPoint, m: &Line, side: Side) -> Line {
        let x = p.rep();
        match side {
            Side::Left => self.left_translate(x, &self.left_anchor(m)),
            Side::Right => self.right_translate(&self.right_anchor(m), x),
        }
    }

    /// `M^perp` with respect to `<x, y> = tr(x conj(y))`.
    pub fn orthocomplement(&self, m: &Line) -> Result<Line, GeometryError> {
        let gram = match (self.gram(), self.gram_determinant()) {
            (Some(g), Some(d)) if !d.is_zero() => g,
            _ => return Err(GeometryError::DegenerateForm),
        };
        let zero = self.field().zero();
        let rows: Vec<linalg::Row> = m
            .spanning()
            .iter()
            .map(|r| {
                (0..4)
                    .map(|c| (0..4).fold(zero.clone(), |acc, a| &acc + &(r.coord(a) * &gram[a][c])))
                    .collect()
            })
            .collect();
        let ns = linalg::nullspace(&rows, 4, &zero);
        if ns.len() != 2 {
            return Err(GeometryError::DegenerateForm);
        }
        Line::span(&Quaternion::from_row(&ns[0]), &Quaternion::from_row(&ns[1]))
    }

    /// Whether a star line is a separable extension of `F`, in characteristic
    /// 2: its generator has nonzero trace. Any `a + b q` with `b != 0` has
    /// trace `b tr(q)`, so the choice of generator does not matter.
    pub fn is_separable(&self, l: &Line) -> Result<bool, GeometryError> {
        let q = &l.star_generator()?;
        if self.characteristic() != 2 {
            return Err(GeometryError::WrongCharacteristic);
        }
        Ok(!self.try_trace(q)?.is_zero())
    }

    /// Whether `x` and `y` are nonzero and span the same point.
    pub fn same_point(&self, x: &Quaternion, y: &Quaternion) -> bool {
        match (ProjPoint::new(x), ProjPoint::new(y)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// A point of `M` other than its first basis vector: `r0 + c r1`.
    pub fn point_on(&self, m: &Line, c: &FieldElem) -> ProjPoint {
        let [r0, r1] = m.basis();
        ProjPoint::new(&r0.add(&r1.scale(c))).expect("basis rows are independent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F2Poly, FieldConfig};

    fn hamilton() -> QuaternionAlgebra {
        QuaternionAlgebra::ordinary_default(FieldConfig::rationals()).unwrap()
    }

    fn cyclic() -> QuaternionAlgebra {
        QuaternionAlgebra::cyclic_char2(FieldElem::from(F2Poly::t().add(&F2Poly::u()))).unwrap()
    }

    fn q(alg: &QuaternionAlgebra, c: [i64; 4]) -> Quaternion {
        Quaternion::new(c.map(|v| alg.field().from_int(v)))
    }

    fn span(alg: &QuaternionAlgebra, a: [i64; 4], b: [i64; 4]) -> Line {
        Line::span(&q(alg, a), &q(alg, b)).unwrap()
    }

    #[test]
    fn canonical_spans() {
        let h = hamilton();
        let l = span(&h, [1, 0, 0, 0], [0, 1, 0, 0]);
        assert_eq!(span(&h, [2, 0, 0, 0], [0, 3, 0, 0]), l);
        assert_eq!(span(&h, [1, 1, 0, 0], [1, -1, 0, 0]), l);
        assert_eq!(
            Line::span(&h.basis(1), &h.basis(1).scale(&h.field().from_int(2))),
            Err(GeometryError::DependentVectors)
        );
    }

    #[test]
    fn anchors() {
        let h = hamilton();
        let jk = span(&h, [0, 0, 1, 0], [0, 0, 0, 1]);
        let one_i = span(&h, [1, 0, 0, 0], [0, 1, 0, 0]);
        assert_eq!(h.left_anchor(&jk), one_i);
        assert_eq!(h.left_anchor(&one_i), one_i);
        assert_eq!(h.right_anchor(&one_i), one_i);
    }

    #[test]
    fn left_parallel_examples() {
        let h = hamilton();
        let l = span(&h, [1, 0, 0, 0], [0, 1, 0, 0]);
        let jl = h.left_translate(&h.basis(2), &l);
        let kl = h.left_translate(&h.basis(3), &l);
        assert!(h.is_left_parallel(&jl, &kl));
        assert!(h.is_left_parallel(&l, &l));
        let one_j = span(&h, [1, 0, 0, 0], [0, 0, 1, 0]);
        assert!(!h.is_left_parallel(&l, &one_j));
    }

    #[test]
    fn parallel_through_examples() {
        let h = hamilton();
        let l = span(&h, [1, 0, 0, 0], [0, 1, 0, 0]);
        let pj = ProjPoint::new(&h.basis(2)).unwrap();
        let got = h.parallel_through(&pj, &l, Side::Left);
        assert_eq!(got, span(&h, [0, 0, 1, 0], [0, 0, 0, 1]));
        assert!(got.contains_point(&pj));
        let p1 = ProjPoint::new(&h.one()).unwrap();
        let m = span(&h, [0, 1, 1, 0], [0, 0, 1, 3]);
        assert_eq!(h.parallel_through(&p1, &m, Side::Left), h.left_anchor(&m));
    }

    #[test]
    fn orthocomplement_examples() {
        let h = hamilton();
        let l = span(&h, [1, 0, 0, 0], [0, 1, 0, 0]);
        let perp = h.orthocomplement(&l).unwrap();
        assert_eq!(perp, span(&h, [0, 0, 1, 0], [0, 0, 0, 1]));
        assert_eq!(h.orthocomplement(&perp).unwrap(), l);

        let c = cyclic();
        let m = span(&c, [0, 1, 0, 0], [0, 0, 1, 1]);
        let perp = c.orthocomplement(&m).unwrap();
        assert_eq!(c.orthocomplement(&perp).unwrap(), m);
        assert!(c.is_left_parallel(&m, &perp) && c.is_right_parallel(&m, &perp));
    }

    #[test]
    fn separability_of_star_lines() {
        let c = cyclic();
        assert_eq!(
            c.is_separable(&span(&c, [1, 0, 0, 0], [0, 1, 0, 0])),
            Ok(true)
        );
        assert_eq!(
            c.is_separable(&span(&c, [1, 0, 0, 0], [0, 0, 1, 0])),
            Ok(false)
        );
        let jk = span(&c, [0, 0, 1, 0], [0, 0, 0, 1]);
        assert!(!jk.in_star());
        assert_eq!(c.is_separable(&jk), Err(GeometryError::NotInStar));
        let h = hamilton();
        assert_eq!(
            h.is_separable(&span(&h, [1, 0, 0, 0], [0, 1, 0, 0])),
            Err(GeometryError::WrongCharacteristic)
        );
    }

    #[test]
    fn points_are_scaled() {
        let h = hamilton();
        let p = ProjPoint::new(&q(&h, [0, 2, 4, 0])).unwrap();
        assert_eq!(p.rep(), &q(&h, [0, 1, 2, 0]));
        assert_eq!(ProjPoint::new(&h.zero()), Err(GeometryError::ZeroVector));
    }
}
