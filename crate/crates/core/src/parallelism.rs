//! Clifford-like parallelisms and conjugacy of maximal subfields.
//!
//! A Clifford-like parallelism is fixed by a set `D` of star lines that is
//! closed under inner automorphisms `x -> h^-1 x h`: lines whose left anchor
//! lies in `D` keep their left class, all other lines their right class.
//! `D` is described by finitely many orbit representatives plus, in
//! characteristic 2, optional "all separable" / "all inseparable" flags.
//!
//! # Conjugacy of star lines
//!
//! Star lines are exactly the maximal subfields `F(q)`. Two of them are
//! conjugate iff they contain generators with the same minimal polynomial
//! `x^2 - tr(x) x + N(x)`: one direction because inner maps are algebra
//! maps, the other because an `F`-isomorphism `F(q1) -> F(q2)` extends to an
//! inner automorphism of `H` (Skolem-Noether). Normalizing generators gives
//! three decidable criteria:
//!
//! * characteristic not 2, `tr(q1) = tr(q2) = 0`: the other trace-zero
//!   generators of `L1` are `c q1`, so the lines are conjugate iff
//!   `N(q2) / N(q1)` is a square `c^2`.
//! * characteristic 2, `tr(q1) = tr(q2) = 1`: the trace-one generators of
//!   `L1` are `q1 + d`, with norm `N(q1) + d + d^2`, so the test is
//!   `d^2 + d = N(q1) + N(q2)`.
//! * characteristic 2, `tr(q1) = tr(q2) = 0`: generators `c q1 + d` have
//!   square `c^2 N(q1) + d^2`. Writing both norms in the basis
//!   `1, t, u, tu` over the squares, the `t, u, tu` coordinates must be
//!   proportional with a nonzero factor `c`.
//!
//! A positive answer comes with the matched generator `q1'`; any nonzero
//! solution `h` of the linear equation `q1' h = h q2` then satisfies
//! `h^-1 L1 h = L2`, which [`conjugacy_witness`] returns and verifies.

use std::fmt;

use thiserror::Error;

use crate::field::{
    artin_schreier_solve_rational, F2Poly, FieldConfig, FieldElem, FieldError, FieldKind, Rational,
};
use crate::geometry::{GeometryError, Line, Side};
use crate::linalg;
use crate::quaternion::{AlgebraError, Quaternion, QuaternionAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParallelismError {
    #[error("line {0} does not pass through F*1")]
    NotInStar(String),
    #[error("invalid defining set: {}", .0.join("; "))]
    InvalidDefiningSet(Vec<String>),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeparabilityFlag {
    AllSeparable,
    AllInseparable,
}

impl SeparabilityFlag {
    pub fn covers(self, separable: bool) -> bool {
        match self {
            Self::AllSeparable => separable,
            Self::AllInseparable => !separable,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Self::AllSeparable => Self::AllInseparable,
            Self::AllInseparable => Self::AllSeparable,
        }
    }
}

impl fmt::Display for SeparabilityFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AllSeparable => "all_separable",
            Self::AllInseparable => "all_inseparable",
        })
    }
}

/// Orbit representatives plus separability flags.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DefiningSet {
    pub reps: Vec<Line>,
    pub flags: Vec<SeparabilityFlag>,
}

impl DefiningSet {
    pub fn new(reps: Vec<Line>, flags: Vec<SeparabilityFlag>) -> Self {
        Self { reps, flags }
    }

    pub fn from_reps(reps: Vec<Line>) -> Self {
        Self::new(reps, Vec::new())
    }

    pub fn has_flag(&self, flag: SeparabilityFlag) -> bool {
        self.flags.contains(&flag)
    }
}

impl fmt::Display for DefiningSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .reps
            .iter()
            .map(ToString::to_string)
            .chain(self.flags.iter().map(ToString::to_string))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone)]
pub struct DefiningSetReport {
    pub violations: Vec<String>,
    /// The input with offending reps dropped and flags sorted and deduplicated.
    pub normalized: DefiningSet,
}

impl DefiningSetReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_defining_set(alg: &QuaternionAlgebra, d: &DefiningSet) -> DefiningSetReport {
    let mut violations = Vec::new();
    let mut flags = d.flags.clone();
    flags.sort();
    flags.dedup();
    if flags.len() != d.flags.len() {
        violations.push("repeated flag".to_string());
    }
    if !flags.is_empty() && alg.characteristic() != 2 {
        violations.push("separability flags need characteristic 2".to_string());
        flags.clear();
    }
    let mut reps: Vec<Line> = Vec::new();
    for rep in &d.reps {
        if !rep.in_star() {
            violations.push(format!("{rep} is not a star line"));
            continue;
        }
        if let Ok(sep) = alg.is_separable(rep) {
            if let Some(flag) = flags.iter().find(|f| f.covers(sep)) {
                violations.push(format!("{rep} is already covered by {flag}"));
                continue;
            }
        }
        if let Some(prev) = reps
            .iter()
            .find(|prev| conjugate_lines(alg, prev, rep).unwrap_or(false))
        {
            violations.push(format!("{rep} is conjugate to {prev}"));
            continue;
        }
        reps.push(rep.clone());
    }
    DefiningSetReport {
        violations,
        normalized: DefiningSet::new(reps, flags),
    }
}

fn require_star(l: &Line) -> Result<Quaternion, ParallelismError> {
    l.star_generator()
        .map_err(|_| ParallelismError::NotInStar(l.to_string()))
}

fn half(field: &FieldConfig) -> FieldElem {
    field.from_int(2).inv().expect("characteristic is not 2")
}

/// A generator `q1'` of `L1` with the same minimal polynomial as the
/// normalized generator `q2` of `L2`, or `None` if the lines are not
/// conjugate.
fn matched_generators(
    alg: &QuaternionAlgebra,
    l1: &Line,
    l2: &Line,
) -> Result<Option<(Quaternion, Quaternion)>, ParallelismError> {
    // Star generators are denominator-free, which keeps the norms polynomial.
    let g1 = &require_star(l1)?;
    let g2 = &require_star(l2)?;
    let field = alg.field();
    if alg.characteristic() != 2 {
        let centre = |g: &Quaternion| -> Result<Quaternion, ParallelismError> {
            let tr = alg.try_trace(g)?;
            Ok(g.sub(&Quaternion::scalar(&tr * &half(field))))
        };
        let (q1, q2) = (centre(g1)?, centre(g2)?);
        let ratio = alg.try_norm(&q2)?.checked_div(&alg.try_norm(&q1)?)?;
        return Ok(ratio.is_square().map(|c| (q1.scale(&c), q2)));
    }
    let (tr1, tr2) = (alg.try_trace(g1)?, alg.try_trace(g2)?);
    match (tr1.is_zero(), tr2.is_zero()) {
        (false, false) => {
            let q1 = g1.scale(&tr1.inv()?);
            let q2 = g2.scale(&tr2.inv()?);
            let target = &alg.try_norm(&q1)? + &alg.try_norm(&q2)?;
            let f = target.as_f2().expect("characteristic 2 field is F2(t,u)");
            Ok(artin_schreier_solve_rational(f)
                .map(|d| (q1.add(&Quaternion::scalar(FieldElem::from(d))), q2)))
        }
        (true, true) => {
            let n1 = alg.try_norm(g1)?;
            let n2 = alg.try_norm(g2)?;
            let (Some(n1), Some(n2)) = (n1.as_f2(), n2.as_f2()) else {
                unreachable!("characteristic 2 field is F2(t,u)");
            };
            let a = n2.frobenius_coordinates();
            let b = n1.frobenius_coordinates();
            let Some(k) = (1..4).find(|&k| !b[k].is_zero()) else {
                // N(q1) a square would put q1 in F.
                return Ok(None);
            };
            let c = a[k].mul(&b[k].inv()?);
            if c.is_zero() || (1..4).any(|m| a[m] != c.mul(&b[m])) {
                return Ok(None);
            }
            let d = a[0].add(&c.mul(&b[0]));
            let q1 = g1
                .scale(&FieldElem::from(c))
                .add(&Quaternion::scalar(FieldElem::from(d)));
            Ok(Some((q1, g2.clone())))
        }
        // Inner automorphisms preserve the trace, hence separability.
        _ => Ok(None),
    }
}

/// Whether `L2 = h^-1 L1 h` for some nonzero `h`.
pub fn conjugate_lines(
    alg: &QuaternionAlgebra,
    l1: &Line,
    l2: &Line,
) -> Result<bool, ParallelismError> {
    if l1 == l2 {
        require_star(l1)?;
        return Ok(true);
    }
    Ok(matched_generators(alg, l1, l2)?.is_some())
}

/// A nonzero `h` with `h^-1 L1 h = L2`, if the lines are conjugate.
pub fn conjugacy_witness(
    alg: &QuaternionAlgebra,
    l1: &Line,
    l2: &Line,
) -> Result<Option<Quaternion>, ParallelismError> {
    let Some((q1, q2)) = matched_generators(alg, l1, l2)? else {
        return Ok(None);
    };
    let left = alg.left_mul_matrix(&q1);
    let right = alg.right_mul_matrix(&q2);
    let rows: Vec<linalg::Row> = left
        .iter()
        .zip(&right)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
        .collect();
    let kernel = linalg::nullspace(&rows, 4, &alg.field().zero());
    let h =
        Quaternion::from_row(kernel.first().expect("matched generators are conjugate")).primitive();
    debug_assert!(alg.conjugate_line(&h, l1) == *l2);
    Ok(Some(h))
}

/// The elements whose coordinates are small: integers `|n| <= height`,
/// `a + b s` with `|a|, |b| <= height`, or polynomials of degree `<= height`.
pub fn small_elements(field: &FieldConfig, height: u32) -> Vec<FieldElem> {
    let h = i64::from(height);
    match field.kind() {
        FieldKind::Rationals => (-h..=h).map(|n| field.from_int(n)).collect(),
        FieldKind::QuadExt(_) => (-h..=h)
            .flat_map(|a| (-h..=h).map(move |b| (a, b)))
            .map(|(a, b)| {
                field
                    .quad(
                        Rational::from_integer(a.into()),
                        Rational::from_integer(b.into()),
                    )
                    .expect("quadratic field")
            })
            .collect(),
        FieldKind::F2TU => F2Poly::all_up_to_degree(height)
            .into_iter()
            .map(FieldElem::from)
            .collect(),
    }
}

/// Exhaustive search for `h` with small coordinates and `h^-1 L1 h = L2`.
/// An independent check on [`conjugate_lines`], which never uses it.
pub fn bounded_conjugacy_search(
    alg: &QuaternionAlgebra,
    l1: &Line,
    l2: &Line,
    height: u32,
) -> Option<Quaternion> {
    let elems = small_elements(alg.field(), height);
    for a in &elems {
        for b in &elems {
            for c in &elems {
                for d in &elems {
                    let h = Quaternion::new([a.clone(), b.clone(), c.clone(), d.clone()]);
                    if h.is_zero() {
                        continue;
                    }
                    if alg.try_norm(&h).map_or(true, |n| n.is_zero()) {
                        continue;
                    }
                    if alg.conjugate_line(&h, l1) == *l2 {
                        return Some(h);
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct CliffordLikeParallelism {
    algebra: QuaternionAlgebra,
    defining: DefiningSet,
    complement: Option<DefiningSet>,
}

impl CliffordLikeParallelism {
    pub fn new(
        algebra: QuaternionAlgebra,
        defining: DefiningSet,
    ) -> Result<Self, ParallelismError> {
        let report = validate_defining_set(&algebra, &defining);
        if !report.is_valid() {
            return Err(ParallelismError::InvalidDefiningSet(report.violations));
        }
        Ok(Self {
            algebra,
            defining: report.normalized,
            complement: None,
        })
    }

    /// Attaches a finite description of the star lines outside the defining
    /// set. Disjointness is checked; that the two descriptions together
    /// cover the whole star is taken on trust.
    pub fn with_complement(mut self, complement: DefiningSet) -> Result<Self, ParallelismError> {
        let report = validate_defining_set(&self.algebra, &complement);
        let mut violations = report.violations;
        for flag in &report.normalized.flags {
            if self.defining.has_flag(*flag) {
                violations.push(format!("{flag} appears on both sides"));
            }
        }
        for rep in &report.normalized.reps {
            if self.in_defining_set(rep)? {
                violations.push(format!(
                    "complement representative {rep} lies in the defining set"
                ));
            }
        }
        let probe = Self {
            algebra: self.algebra.clone(),
            defining: report.normalized.clone(),
            complement: None,
        };
        for rep in &self.defining.reps {
            if probe.in_defining_set(rep)? {
                violations.push(format!("representative {rep} lies in the complement"));
            }
        }
        if !violations.is_empty() {
            return Err(ParallelismError::InvalidDefiningSet(violations));
        }
        self.complement = Some(report.normalized);
        Ok(self)
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn defining(&self) -> &DefiningSet {
        &self.defining
    }

    pub fn complement(&self) -> Option<&DefiningSet> {
        self.complement.as_ref()
    }

    /// The parallelism described by the complement, if one was attached.
    pub fn complement_parallelism(&self) -> Option<Self> {
        let complement = self.complement.clone()?;
        Some(Self {
            algebra: self.algebra.clone(),
            defining: complement,
            complement: Some(self.defining.clone()),
        })
    }

    pub fn in_defining_set(&self, l: &Line) -> Result<bool, ParallelismError> {
        require_star(l)?;
        if !self.defining.flags.is_empty() {
            let sep = self.algebra.is_separable(l)?;
            if self.defining.flags.iter().any(|f| f.covers(sep)) {
                return Ok(true);
            }
        }
        for rep in &self.defining.reps {
            if conjugate_lines(&self.algebra, rep, l)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `Left` when the left anchor of `M` is in the defining set.
    pub fn class_kind(&self, m: &Line) -> Side {
        self.class_kind_via(m, Side::Left)
    }

    /// The same decision made from the anchor on `side`; the two agree
    /// because the anchors are conjugate and the defining set is closed
    /// under conjugation.
    pub fn class_kind_via(&self, m: &Line, side: Side) -> Side {
        let anchor = self.algebra.side_anchor(m, side);
        if self
            .in_defining_set(&anchor)
            .expect("anchors are star lines")
        {
            Side::Left
        } else {
            Side::Right
        }
    }

    pub fn are_parallel(&self, m1: &Line, m2: &Line) -> bool {
        let side = self.class_kind(m1);
        self.algebra.is_side_parallel(m1, m2, side)
    }

    /// The class of `M` through the point `p`.
    pub fn parallel_through(&self, p: &crate::geometry::ProjPoint, m: &Line) -> Line {
        self.algebra.parallel_through(p, m, self.class_kind(m))
    }
}

/// A parallelism on the lines of `P(H)`.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)] // few values exist, all long-lived
pub enum Parallelism {
    LeftClifford,
    RightClifford,
    CliffordLike(CliffordLikeParallelism),
}

impl Parallelism {
    /// The side whose class `M` belongs to.
    pub fn class_kind(&self, m: &Line) -> Side {
        match self {
            Self::LeftClifford => Side::Left,
            Self::RightClifford => Side::Right,
            Self::CliffordLike(p) => p.class_kind(m),
        }
    }

    pub fn are_parallel(&self, alg: &QuaternionAlgebra, m1: &Line, m2: &Line) -> bool {
        alg.is_side_parallel(m1, m2, self.class_kind(m1))
    }
}

impl fmt::Display for Parallelism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LeftClifford => f.write_str("left Clifford"),
            Self::RightClifford => f.write_str("right Clifford"),
            Self::CliffordLike(p) => write!(f, "Clifford-like with defining set {}", p.defining),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamilton() -> QuaternionAlgebra {
        QuaternionAlgebra::ordinary_default(FieldConfig::rationals()).unwrap()
    }

    fn cyclic() -> QuaternionAlgebra {
        QuaternionAlgebra::cyclic_char2(FieldElem::from(F2Poly::t().add(&F2Poly::u()))).unwrap()
    }

    fn star(alg: &QuaternionAlgebra, q: [i64; 4]) -> Line {
        Line::through_one(&Quaternion::new(q.map(|v| alg.field().from_int(v)))).unwrap()
    }

    #[test]
    fn i_and_j_lines_are_conjugate() {
        let h = hamilton();
        let (li, lj) = (star(&h, [0, 1, 0, 0]), star(&h, [0, 0, 1, 0]));
        assert_eq!(conjugate_lines(&h, &li, &lj), Ok(true));
        let w = conjugacy_witness(&h, &li, &lj).unwrap().unwrap();
        assert_eq!(h.conjugate_line(&w, &li), lj);
        // i + j, found independently
        let known = Quaternion::new([0, 1, 1, 0].map(|v| h.field().from_int(v)));
        assert_eq!(h.conjugate_line(&known, &li), lj);
    }

    #[test]
    fn norm_ratio_decides_in_characteristic_zero() {
        let h = hamilton();
        // N(i) = 1 and N(i + j + k) = 3 is not a rational square.
        let (li, l3) = (star(&h, [0, 1, 0, 0]), star(&h, [0, 1, 1, 1]));
        assert_eq!(conjugate_lines(&h, &li, &l3), Ok(false));
        assert!(bounded_conjugacy_search(&h, &li, &l3, 2).is_none());
        // N(3i + 4j) = 25.
        let l5 = star(&h, [0, 3, 4, 0]);
        assert_eq!(conjugate_lines(&h, &li, &l5), Ok(true));
        assert!(bounded_conjugacy_search(&h, &li, &l5, 2).is_some());
    }

    #[test]
    fn char_two_cases() {
        let c = cyclic();
        let li = star(&c, [0, 1, 0, 0]);
        let lj = star(&c, [0, 0, 1, 0]);
        assert_eq!(conjugate_lines(&c, &li, &lj), Ok(false));
        // j and j + k are both inseparable; compare with the bounded search.
        let ljk = star(&c, [0, 0, 1, 1]);
        let decided = conjugate_lines(&c, &lj, &ljk).unwrap();
        let found = bounded_conjugacy_search(&c, &lj, &ljk, 1);
        if found.is_some() {
            assert!(decided);
        }
        if decided {
            let w = conjugacy_witness(&c, &lj, &ljk).unwrap().unwrap();
            assert_eq!(c.conjugate_line(&w, &lj), ljk);
        }
        // i and i + j are both separable.
        let lij = star(&c, [0, 1, 1, 0]);
        let decided = conjugate_lines(&c, &li, &lij).unwrap();
        assert_eq!(decided, conjugacy_witness(&c, &li, &lij).unwrap().is_some());
        if bounded_conjugacy_search(&c, &li, &lij, 1).is_some() {
            assert!(decided);
        }
    }

    #[test]
    fn conjugating_by_known_elements() {
        let c = cyclic();
        let li = star(&c, [0, 1, 0, 0]);
        let h = Quaternion::new([1, 0, 1, 1].map(|v| c.field().from_int(v)));
        let image = c.conjugate_line(&h, &li);
        assert_eq!(conjugate_lines(&c, &li, &image), Ok(true));
        let lj = star(&c, [0, 0, 1, 0]);
        let image = c.conjugate_line(&h, &lj);
        assert_eq!(conjugate_lines(&c, &lj, &image), Ok(true));
    }

    #[test]
    fn non_star_lines_are_rejected() {
        let h = hamilton();
        let jk = Line::span(&h.basis(2), &h.basis(3)).unwrap();
        let li = star(&h, [0, 1, 0, 0]);
        assert!(matches!(
            conjugate_lines(&h, &jk, &li),
            Err(ParallelismError::NotInStar(_))
        ));
    }

    #[test]
    fn defining_set_validation() {
        let h = hamilton();
        let li = star(&h, [0, 1, 0, 0]);
        let lj = star(&h, [0, 0, 1, 0]);
        let report = validate_defining_set(&h, &DefiningSet::from_reps(vec![li.clone(), lj]));
        assert!(!report.is_valid());
        assert_eq!(report.normalized.reps, vec![li.clone()]);

        let flagged = DefiningSet::new(vec![li], vec![SeparabilityFlag::AllSeparable]);
        assert!(!validate_defining_set(&h, &flagged).is_valid());

        let c = cyclic();
        let lj = star(&c, [0, 0, 1, 0]);
        let redundant = DefiningSet::new(vec![lj], vec![SeparabilityFlag::AllInseparable]);
        assert!(!validate_defining_set(&c, &redundant).is_valid());
    }

    #[test]
    fn class_kinds() {
        let h = hamilton();
        let l3 = star(&h, [0, 1, 1, 1]);
        let p = CliffordLikeParallelism::new(h.clone(), DefiningSet::from_reps(vec![l3.clone()]))
            .unwrap();
        let g = Quaternion::new([1, 2, 0, -1].map(|v| h.field().from_int(v)));
        let m = h.left_translate(&g, &l3);
        assert_eq!(p.class_kind(&m), Side::Left);
        assert_eq!(p.class_kind_via(&m, Side::Right), Side::Left);
        let li = star(&h, [0, 1, 0, 0]);
        assert_eq!(p.class_kind(&li), Side::Right);

        let c = cyclic();
        let lj = star(&c, [0, 0, 1, 0]);
        let li = star(&c, [0, 1, 0, 0]);
        let p = CliffordLikeParallelism::new(
            c.clone(),
            DefiningSet::new(vec![], vec![SeparabilityFlag::AllInseparable]),
        )
        .unwrap();
        assert_eq!(p.class_kind(&lj), Side::Left);
        assert_eq!(p.class_kind(&li), Side::Right);
    }

    #[test]
    fn parallel_pairs() {
        let h = hamilton();
        let l3 = star(&h, [0, 1, 1, 1]);
        let p = CliffordLikeParallelism::new(h.clone(), DefiningSet::from_reps(vec![l3.clone()]))
            .unwrap();
        let jl = h.left_translate(&h.basis(2), &l3);
        let kl = h.left_translate(&h.basis(3), &l3);
        assert!(p.are_parallel(&jl, &kl));
        assert!(p.are_parallel(&jl, &jl));
        let lj = h.right_translate(&l3, &h.basis(2));
        let lk = h.right_translate(&l3, &h.basis(3));
        assert_eq!(p.are_parallel(&lj, &lk), h.is_left_parallel(&lj, &lk));
    }

    #[test]
    fn complement_must_be_disjoint() {
        let c = cyclic();
        let li = star(&c, [0, 1, 0, 0]);
        let p = CliffordLikeParallelism::new(
            c.clone(),
            DefiningSet::new(vec![li.clone()], vec![SeparabilityFlag::AllInseparable]),
        )
        .unwrap();
        let bad = DefiningSet::new(vec![li], vec![]);
        assert!(p.clone().with_complement(bad).is_err());
        let overlapping = DefiningSet::new(vec![], vec![SeparabilityFlag::AllInseparable]);
        assert!(p.with_complement(overlapping).is_err());
    }
}
