//! The seeded property suite run by `cliffpar axioms`.
//!
//! Every check draws from its own ChaCha8 stream of the shared seed, so checks
//! can run in any order or in parallel without changing their samples.
//! Sample counts scale with `samples = n`: `n` points, lines and classifier
//! maps, `2n` parallelism triples and preserving maps, `n/5` negative
//! controls and `5n` structural samples.

use std::panic::{self, AssertUnwindSafe};

use cliffpar_core::linalg::Row;
use cliffpar_core::semilinear::{conjugation, inner, left_translation};
use cliffpar_core::FieldAuto;
use cliffpar_core::{
    classify, factorize, preservation_verdict, GeometryError, Line, MapKind, Parallelism,
    ProjPoint, Quaternion, QuaternionAlgebra, Sampler, SemilinearMap,
};
use rayon::prelude::*;

use crate::config::Config;
use crate::report::{self, Report};

pub struct Suite {
    alg: QuaternionAlgebra,
    p: Parallelism,
    samples: usize,
}

type CheckFn = fn(&Suite, &mut Sampler) -> Result<String, String>;

/// Name, stream id and body of every registered check. A body returns the
/// passing summary or the counterexample; `Err` starting with `skip:` marks
/// a check that does not apply to the configured algebra.
const CHECKS: &[(&str, u64, CheckFn)] = &[
    ("algebra.associativity_basis", 1, associativity_basis),
    ("algebra.audit", 2, audit),
    (
        "algebra.conjugation_antiautomorphism",
        3,
        conjugation_antiautomorphism,
    ),
    ("algebra.norm_multiplicative", 4, norm_multiplicative),
    ("algebra.quadratic_identity", 5, quadratic_identity),
    ("automorphisms.classify_inner", 6, classify_inner),
    ("automorphisms.factorize_roundtrip", 7, factorize_roundtrip),
    ("automorphisms.negative_controls", 8, negative_controls),
    ("automorphisms.shadow_preserving", 9, shadow_preserving),
    ("field.galois_homomorphism", 10, galois_homomorphism),
    ("geometry.orthocomplement", 11, orthocomplement),
    ("parallelism.class_through_point", 12, class_through_point),
    ("parallelism.equivalence", 13, equivalence),
];

const SKIP: &str = "skip:";

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _, _)| *name).collect()
}

/// Runs every registered check; the result is sorted by check name and,
/// apart from timings, depends only on `(config, samples, seed)`.
pub fn run_axiom_suite(config: &Config, samples: usize, seed: u64) -> Vec<Report> {
    let suite = Suite {
        alg: config.algebra.clone(),
        p: Parallelism::CliffordLike(config.parallelism.clone()),
        samples,
    };
    let mut reports: Vec<Report> = CHECKS
        .par_iter()
        .map(|&(name, stream, body)| {
            Report::timed(name, || {
                let mut sampler = Sampler::with_stream(seed, stream);
                let outcome = panic::catch_unwind(AssertUnwindSafe(|| body(&suite, &mut sampler)));
                match outcome {
                    Ok(Ok(summary)) => Report::pass(name, Some(summary)),
                    Ok(Err(w)) => match w.strip_prefix(SKIP) {
                        Some(reason) => Report::skip(name, reason.trim()),
                        None => Report::fail(name, w),
                    },
                    Err(payload) => {
                        Report::fail(name, format!("panicked: {}", panic_message(&payload)))
                    }
                }
            })
        })
        .collect();
    report::sort(&mut reports);
    reports
}

fn panic_message(payload: &Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

const BASIS_NAMES: [&str; 4] = ["1", "i", "j", "k"];

impl Suite {
    fn nonzero(&self, s: &mut Sampler) -> Quaternion {
        s.nonzero_quaternion(self.alg.field())
    }

    fn line(&self, s: &mut Sampler) -> Line {
        s.line(self.alg.field())
    }

    fn point(&self, s: &mut Sampler) -> ProjPoint {
        s.point(self.alg.field())
    }

    /// A unit of the algebra: nonzero with nonzero norm.
    fn unit(&self, s: &mut Sampler) -> Quaternion {
        loop {
            let x = self.nonzero(s);
            if self.alg.try_norm(&x).is_ok_and(|n| !n.is_zero()) {
                return x;
            }
        }
    }

    fn class_line(&self, p: &Parallelism, point: &ProjPoint, m: &Line) -> Line {
        self.alg.parallel_through(point, m, p.class_kind(m))
    }

    fn parallel(&self, p: &Parallelism, a: &Line, b: &Line) -> bool {
        p.are_parallel(&self.alg, a, b)
    }

    /// `lambda_g o h~` for seeded units `g, h`.
    fn preserving_map(&self, s: &mut Sampler) -> Result<SemilinearMap, String> {
        let (g, h) = (self.unit(s), self.unit(s));
        let lt = left_translation(&self.alg, &g).map_err(|e| e.to_string())?;
        let inn = inner(&self.alg, &h).map_err(|e| e.to_string())?;
        Ok(lt.compose(&inn))
    }

    fn structural(&self) -> usize {
        5 * self.samples
    }
}

fn associativity_basis(suite: &Suite, _: &mut Sampler) -> Result<String, String> {
    match suite.alg.associativity_violations().first() {
        None => Ok("all 64 basis triples associate".into()),
        Some(&(a, b, c)) => Err(format!(
            "({}*{})*{} != {}*({}*{})",
            BASIS_NAMES[a],
            BASIS_NAMES[b],
            BASIS_NAMES[c],
            BASIS_NAMES[a],
            BASIS_NAMES[b],
            BASIS_NAMES[c]
        )),
    }
}

fn audit(suite: &Suite, _: &mut Sampler) -> Result<String, String> {
    let issues = suite.alg.audit();
    if issues.is_empty() {
        Ok("structure table passes the audit".into())
    } else {
        Err(issues.join("; "))
    }
}

fn norm_multiplicative(suite: &Suite, s: &mut Sampler) -> Result<String, String> {
    let alg = &suite.alg;
    for _ in 0..suite.structural() {
        let (x, y) = (s.quaternion(alg.field()), s.quaternion(alg.field()));
        let lhs = alg.try_norm(&alg.mul(&x, &y)).map_err(|e| e.to_string())?;
        let rhs = &alg.try_norm(&x).map_err(|e| e.to_string())?
            * &alg.try_norm(&y).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("x = {x}, y = {y}: N(xy) = {lhs}, N(x)N(y) = {rhs}"));
        }
    }
    Ok(format!("{} pairs", suite.structural()))
}

fn conjugation_antiautomorphism(suite: &Suite, s: &mut Sampler) -> Result<String, String> {
    let alg = &suite.alg;
    for _ in 0..suite.structural() {
        let (x, y) = (s.quaternion(alg.field()), s.quaternion(alg.field()));
        let lhs = alg.conj(&alg.mul(&x, &y));
        let rhs = alg.mul(&alg.conj(&y), &alg.conj(&x));
        if lhs != rhs {
            return Err(format!(
                "x = {x}, y = {y}: conj(xy) = {lhs}, conj(y)conj(x) = {rhs}"
            ));
        }
    }
    Ok(format!("{} pairs", suite.structural()))
}

fn quadratic_identity(suite: &Suite, s: &mut Sampler) -> Result<String, String> {
    for _ in 0..suite.structural() {
        let x = s.quaternion(suite.alg.field());
        if !suite.alg.quadratic_identity_check(&x) {
            return Err(format!("x^2 - tr(x)x + N(x) != 0 for x = {x}"));
        }
    }
    Ok(format!("{} samples", suite.structural()))
}

fn galois_homomorphism(suite: &Suite, s: &mut Sampler) -> Result<String, String> {
    let field = suite.alg.field();
    if !field.has_galois() {
        return Err(format!("{SKIP} {field} has no Galois map"));
    }
    let g = |x: &cliffpar_core::FieldElem| x.galois_apply().map_err(|e| e.to_string());
    for _ in 0..suite.samples {
        let (x, y) = (s.field_elem(field), s.field_elem(field));
        if g(&(&x * &y))? != &g(&x)? * &g(&y)? || g(&(&x + &y))? != &g(&x)? + &g(&y)? {
            return Err(format!("x = {x}, y = {y}"));
        }
        if g(&g(&x)?)? != x {
            return Err(format!("not an involution at {x}"));
        }
    }
    Ok(format!("{} pairs", suite.samples))
}

fn orthocomplement(suite: &Suite, s: &mut Sampler) -> Result<String, String> {
    let alg = &suite.alg;
    for _ in 0..suite.samples {
        let m = suite.line(s);
        let perp = match alg.orthocomplement(&m) {
            Ok(p) => p,
            Err(GeometryError::DegenerateForm) => {
                return Err(format!("{SKIP} the bilinear form is degenerate"))
            }
            Err(e) => return Err(e.to_string()),
        };
        if !alg.is_left_parallel(&m, &perp) || !alg.is_right_parallel(&m, &perp) {
            return Err(format!("M = {m} is not parallel to M^perp = {perp}"));
        }
        let back = alg.orthocomplement(&perp).map_err(|e| e.to_string())?;
        if back != m {
            return Err(format!("(M^perp)^perp = {back} != M = {m}"));
        }
    }
    Ok(format!("{} lines", suite.samples))
}

/// Existence and sampled uniqueness of the class line through a point.
fn class_through_point(suite: &Suite, s: &mut Sampler) -> Result<String, String> {
    let alg = &suite.alg;
    let p = &suite.p;
    for _ in 0..suite.samples {
        let (point, m) = (suite.point(s), suite.line(s));
        let l = suite.class_line(p, &point, &m);
        if !l.contains_point(&point) || !suite.parallel(p, &m, &l) {
            return Err(format!(
                "class line {l} of {m} through {point} is not a class member through the point"
            ));
        }
        let other = alg.point_on(&l, &s.nonzero_field_elem(alg.field()));
        let again = suite.class_line(p, &other, &m);
        if again != l {
            return Err(format!(
                "two class lines {l} and {again} of {m} meet in {other}"
            ));
        }
        if let Ok(rival) = Line::span(point.rep(), &s.quaternion(alg.field())) {
            if rival != l && suite.parallel(p, &m, &rival) {
                return Err(format!(
                    "{rival} and {l} through {point} are both parallel to {m}"
                ));
            }
        }
    }
    Ok(format!("{} (point, class) pairs", suite.samples))
}

/// Reflexivity, symmetry and transitivity on triples in which the second
/// and third lines are class members of the first half of the time.
fn equivalence(suite: &Suite, s: &mut Sampler) -> Result<String, String> {
    let p = &suite.p;
    let related = |suite: &Suite, s: &mut Sampler, m: &Line| {
        if s.coin() {
            let point = suite.point(s);
            suite.class_line(p, &point, m)
        } else {
            suite.line(s)
        }
    };
    let mut chains = 0;
    for _ in 0..2 * suite.samples {
        let m1 = suite.line(s);
        let m2 = related(suite, s, &m1);
        let m3 = related(suite, s, &m2);
        if !suite.parallel(p, &m1, &m1) {
            return Err(format!("{m1} is not parallel to itself"));
        }
        let (a, b) = (suite.parallel(p, &m1, &m2), suite.parallel(p, &m2, &m1));
        if a != b {
            return Err(format!("asymmetric on {m1}, {m2}"));
        }
        if a && suite.parallel(p, &m2, &m3) {
            chains += 1;
            if !suite.parallel(p, &m1, &m3) {
                return Err(format!("not transitive on {m1}, {m2}, {m3}"));
            }
        }
    }
    Ok(format!(
        "{} triples, {chains} parallel chains",
        2 * suite.samples
    ))
}

fn verdict(suite: &Suite, beta: &SemilinearMap, p: &Parallelism) -> Result<bool, String> {
    preservation_verdict(&suite.alg, beta, p)
        .map(|v| v.preserves)
        .map_err(|e| e.to_string())
}

/// Maps `lambda_g o h~` preserve the left Clifford parallelism and the
/// configured one, and carry a sampled parallel pair to a parallel pair.
fn shadow_preserving(suite: &Suite, s: &mut Sampler) -> Result<String, String> {
    let p = &suite.p;
    for _ in 0..2 * suite.samples {
        let beta = suite.preserving_map(s)?;
        for target in [&Parallelism::LeftClifford, p] {
            if !verdict(suite, &beta, target)? {
                return Err(format!("{beta:?} rejected for {target}"));
            }
        }
        let (point, m) = (suite.point(s), suite.line(s));
        let l = suite.class_line(p, &point, &m);
        let (bm, bl) = (beta.apply_line(&m), beta.apply_line(&l));
        if !suite.parallel(p, &bm, &bl) {
            return Err(format!("{beta:?} maps parallel {m}, {l} to {bm}, {bl}"));
        }
    }
    Ok(format!("{} maps", 2 * suite.samples))
}

/// A random invertible linear map whose unit part is neither an
/// automorphism nor an antiautomorphism.
fn neither_map(suite: &Suite, s: &mut Sampler) -> Result<SemilinearMap, String> {
    let field = suite.alg.field();
    loop {
        let matrix: Vec<Row> = (0..4)
            .map(|_| (0..4).map(|_| s.field_elem(field)).collect())
            .collect();
        let Ok(beta) = SemilinearMap::new(matrix, FieldAuto::Identity) else {
            continue;
        };
        let fact = factorize(&suite.alg, &beta).map_err(|e| e.to_string())?;
        if fact.unit_part_kind == MapKind::Neither {
            return Ok(beta);
        }
    }
}

/// A sampled parallel pair whose image is not parallel, found within a few
/// tries; an independent confirmation that the map preserves nothing.
fn broken_pair(suite: &Suite, s: &mut Sampler, beta: &SemilinearMap, p: &Parallelism) -> bool {
    (0..5).any(|_| {
        let (point, m) = (suite.point(s), suite.line(s));
        let l = suite.class_line(p, &point, &m);
        !suite.parallel(p, &beta.apply_line(&m), &beta.apply_line(&l))
    })
}

fn negative_controls(suite: &Suite, s: &mut Sampler) -> Result<String, String> {
    let count = (suite.samples / 5).max(1);
    for _ in 0..count {
        let beta = neither_map(suite, s)?;
        for target in [&Parallelism::LeftClifford, &suite.p] {
            if verdict(suite, &beta, target)? {
                return Err(format!("{beta:?} accepted for {target}"));
            }
            if !broken_pair(suite, s, &beta, target) {
                return Err(format!(
                    "{beta:?} kept five sampled {target} pairs parallel"
                ));
            }
        }
    }
    Ok(format!("{count} maps"))
}

fn factorize_roundtrip(suite: &Suite, s: &mut Sampler) -> Result<String, String> {
    let alg = &suite.alg;
    for n in 0..suite.samples {
        let beta = match n % 3 {
            0 => suite.preserving_map(s)?,
            1 => suite.preserving_map(s)?.compose(&conjugation(alg)),
            _ => neither_map(suite, s)?,
        };
        let fact = factorize(alg, &beta).map_err(|e| e.to_string())?;
        let lt = left_translation(alg, &fact.translation_part).map_err(|e| e.to_string())?;
        if lt.compose(&fact.unit_part) != beta || fact.unit_part.apply(&alg.one()) != alg.one() {
            return Err(format!("{beta:?} does not factor as lambda_g o alpha"));
        }
    }
    Ok(format!("{} maps", suite.samples))
}

fn classify_inner(suite: &Suite, s: &mut Sampler) -> Result<String, String> {
    let alg = &suite.alg;
    for _ in 0..suite.samples {
        let h = suite.unit(s);
        let inn = inner(alg, &h).map_err(|e| e.to_string())?;
        let anti = inn.compose(&conjugation(alg));
        let kinds = (
            classify(alg, &inn).map_err(|e| e.to_string())?,
            classify(alg, &anti).map_err(|e| e.to_string())?,
        );
        if kinds != (MapKind::Automorphism, MapKind::Antiautomorphism) {
            return Err(format!(
                "h = {h}: inner is {}, inner o conj is {}",
                kinds.0, kinds.1
            ));
        }
    }
    Ok(format!("{} elements", suite.samples))
}
