//! The five worked examples: two division algebras, one star line each, and
//! the outer automorphism induced by the Galois map of the centre.

use std::fmt;
use std::str::FromStr;

use cliffpar_core::field::artin_schreier_solve;
use cliffpar_core::parse::parse_field_elem;
use cliffpar_core::semilinear::{conjugation, galois_outer, inner, left_translation};
use cliffpar_core::{
    conjugate_lines, preservation_verdict, validate_defining_set, F2Poly, F2RatFun, FieldElem,
    Line, Parallelism, QuaternionAlgebra, Sampler, SemilinearMap,
};
use thiserror::Error;

use crate::config::{Config, ConfigError, DEFAULT_SEED};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "unknown scenario `{0}` (expected one of root3, c2-sep, c2-sep-old, c2-insep, c2-insep-old)"
)]
pub struct UnknownScenario(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioId {
    Root3,
    C2Sep,
    C2SepOld,
    C2Insep,
    C2InsepOld,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 5] = [
        ScenarioId::Root3,
        ScenarioId::C2Sep,
        ScenarioId::C2SepOld,
        ScenarioId::C2Insep,
        ScenarioId::C2InsepOld,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioId::Root3 => "root3",
            ScenarioId::C2Sep => "c2-sep",
            ScenarioId::C2SepOld => "c2-sep-old",
            ScenarioId::C2Insep => "c2-insep",
            ScenarioId::C2InsepOld => "c2-insep-old",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioId {
    type Err = UnknownScenario;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownScenario(s.to_string()))
    }
}

/// What each example asserts about its own data.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: ScenarioId,
    pub config_text: &'static str,
    /// The generator `q` of the defining line `L = F1 + Fq`.
    pub generator: &'static str,
    pub norm: &'static str,
    pub galois_norm: &'static str,
    /// `tr(q)` in characteristic 2.
    pub trace: Option<&'static str>,
}

const ROOT3: &str = "\
field = qsqrt(3)
algebra = ordinary(-1, -1)
defining_reps = [span(1; i+(1+s)*j)]
";

const C2_SEP: &str = "\
field = f2tu
algebra = cyclic_char2(t+u)
defining_reps = [span(1; i+u*j)]
";

const C2_SEP_OLD: &str = "\
field = f2tu
algebra = cyclic_char2(t+u)
defining_reps = [span(1; i+u*j)]
flags = all_inseparable
";

const C2_INSEP: &str = "\
field = f2tu
algebra = cyclic_char2(t+u)
defining_reps = [span(1; j+u*k)]
";

const C2_INSEP_OLD: &str = "\
field = f2tu
algebra = cyclic_char2(t+u)
defining_reps = [span(1; j+u*k)]
flags = all_separable
";

impl Scenario {
    pub fn get(id: ScenarioId) -> Self {
        match id {
            // root3 example: N(q) = 5+2 sqrt3 and its Galois image 5-2 sqrt3
            ScenarioId::Root3 => Self {
                id,
                config_text: ROOT3,
                generator: "i+(1+s)*j",
                norm: "5+2*s",
                galois_norm: "5-2*s",
                trace: None,
            },
            // c2-sep example: tr(q) = 1, N(q) = 1+u^2(t+u)
            ScenarioId::C2Sep | ScenarioId::C2SepOld => Self {
                id,
                config_text: if id == ScenarioId::C2Sep {
                    C2_SEP
                } else {
                    C2_SEP_OLD
                },
                generator: "i+u*j",
                norm: "1+u^2*(t+u)",
                galois_norm: "1+t^2*(u+t)",
                trace: Some("1"),
            },
            // c2-insep example: tr(q) = 0, N(q) = (u+t)(1+u+u^2)
            ScenarioId::C2Insep | ScenarioId::C2InsepOld => Self {
                id,
                config_text: if id == ScenarioId::C2Insep {
                    C2_INSEP
                } else {
                    C2_INSEP_OLD
                },
                generator: "j+u*k",
                norm: "(u+t)*(1+u+u^2)",
                galois_norm: "(u+t)*(1+t+t^2)",
                trace: Some("0"),
            },
        }
    }

    pub fn config(&self) -> Result<Config, ConfigError> {
        Config::parse(self.config_text)
    }
}

/// Inner automorphisms and left translations sampled per example.
const MAP_SAMPLES: usize = 5;

struct Ctx {
    name: &'static str,
    alg: QuaternionAlgebra,
    p: Parallelism,
}

impl Ctx {
    fn check(&self, suffix: &str, f: impl FnOnce() -> Report) -> Report {
        Report::timed(&format!("{}.{suffix}", self.name), f)
    }

    fn elem(&self, src: &str) -> FieldElem {
        parse_field_elem(self.alg.field(), src).expect("built-in literal")
    }

    fn field_eq(&self, suffix: &str, got: FieldElem, expected: &str) -> Report {
        let want = self.elem(expected);
        self.check(suffix, || {
            Report::expect("", got == want, &got, format!("got {got}, expected {want}"))
        })
    }

    /// `beta` preserves `p` exactly when `expected`.
    fn preserves(
        &self,
        suffix: &str,
        beta: &SemilinearMap,
        p: &Parallelism,
        expected: bool,
    ) -> Report {
        self.check(suffix, || match preservation_verdict(&self.alg, beta, p) {
            Ok(v) => Report::expect(
                "",
                v.preserves == expected && v.decided,
                format!("{} ({})", v.preserves, v.reason),
                format!("expected {expected}, got {} ({})", v.preserves, v.reason),
            ),
            Err(e) => Report::fail("", e.to_string()),
        })
    }
}

pub fn run_example(id: ScenarioId) -> Vec<Report> {
    let scenario = Scenario::get(id);
    let config = scenario
        .config()
        .expect("built-in scenario config is valid");
    let ctx = Ctx {
        name: id.name(),
        alg: config.algebra.clone(),
        p: Parallelism::CliffordLike(config.parallelism.clone()),
    };
    let alg = &ctx.alg;
    let q =
        cliffpar_core::parse::parse_quaternion(alg, scenario.generator).expect("built-in literal");
    let line = Line::through_one(&q).expect("generator is not scalar");
    let galois = galois_outer(alg).expect("the centre has a Galois map");
    let image = galois.apply(&q);
    let image_line = galois.apply_line(&line);

    let mut reports = vec![
        ctx.check("defining_set_valid", || {
            let defining = config.parallelism.defining();
            let report = validate_defining_set(alg, defining);
            Report::expect(
                "",
                report.is_valid(),
                defining,
                report.violations.join("; "),
            )
        }),
        ctx.field_eq("norm", alg.norm(&q), scenario.norm),
        ctx.field_eq("norm_galois_image", alg.norm(&image), scenario.galois_norm),
        ctx.check("galois_image_not_conjugate", || {
            match conjugate_lines(alg, &line, &image_line) {
                Ok(c) => Report::expect(
                    "",
                    !c,
                    format!("{line} and {image_line} are not conjugate"),
                    format!("{line} and {image_line} reported conjugate"),
                ),
                Err(e) => Report::fail("", e.to_string()),
            }
        }),
    ];
    if let Some(tr) = scenario.trace {
        reports.push(ctx.field_eq("trace", alg.trace(&q), tr));
    }
    match id {
        ScenarioId::Root3 => reports.push(ctx.check("is_square_13", || {
            let thirteen = ctx.elem("13");
            match thirteen.is_square() {
                None => Report::pass("", Some("13 has no square root".into())),
                Some(r) => Report::fail("", format!("square root {r}")),
            }
        })),
        ScenarioId::C2Sep => reports.extend(separable_checks(&ctx, &q, &image)),
        ScenarioId::C2Insep => reports.push(ctx.check("bounded_witness_search", || {
            insep_witness_search(&ctx, &q, &image)
        })),
        _ => {}
    }

    let left = Parallelism::LeftClifford;
    let right = Parallelism::RightClifford;
    reports.push(ctx.preserves("galois_outer.left_clifford", &galois, &left, true));
    reports.push(ctx.preserves("galois_outer.right_clifford", &galois, &right, true));
    reports.push(ctx.preserves("galois_outer.clifford_like", &galois, &ctx.p, false));
    reports.push(ctx.preserves(
        "conjugation.clifford_like",
        &conjugation(alg),
        &ctx.p,
        false,
    ));

    let mut sampler = Sampler::with_stream(DEFAULT_SEED, 0);
    let field = alg.field();
    let hs: Vec<_> = (0..MAP_SAMPLES)
        .map(|_| sampler.nonzero_quaternion(field))
        .collect();
    let gs: Vec<_> = (0..MAP_SAMPLES)
        .map(|_| sampler.nonzero_quaternion(field))
        .collect();
    reports.push(ctx.check("inner_samples.clifford_like", || {
        sampled_maps_preserve(&ctx, &hs, |h| inner(alg, h))
    }));
    reports.push(ctx.check("left_translation_samples.clifford_like", || {
        sampled_maps_preserve(&ctx, &gs, |g| left_translation(alg, g))
    }));

    let verdict_ok = ["galois_outer.left_clifford", "galois_outer.clifford_like"]
        .iter()
        .all(|s| {
            let name = format!("{}.{s}", ctx.name);
            reports
                .iter()
                .any(|r| r.check == name && r.status == crate::report::Status::Pass)
        });
    reports.push(ctx.check("verdict", || {
        Report::expect(
            "",
            verdict_ok,
            "automorphism group of the Clifford-like parallelism is a proper subgroup of the left Clifford group (galois_outer separates them)",
            "galois_outer does not separate the two groups",
        )
    }));
    crate::report::sort(&mut reports);
    reports
}

fn sampled_maps_preserve(
    ctx: &Ctx,
    params: &[cliffpar_core::Quaternion],
    build: impl Fn(&cliffpar_core::Quaternion) -> Result<SemilinearMap, cliffpar_core::MapError>,
) -> Report {
    for x in params {
        let verdict = build(x).and_then(|m| preservation_verdict(&ctx.alg, &m, &ctx.p));
        match verdict {
            Ok(v) if v.preserves => {}
            Ok(v) => return Report::fail("", format!("parameter {x}: {}", v.reason)),
            Err(e) => return Report::fail("", format!("parameter {x}: {e}")),
        }
    }
    Report::pass("", Some(format!("{} maps preserve", params.len())))
}

fn as_poly(x: &FieldElem) -> F2Poly {
    x.as_f2()
        .and_then(F2RatFun::as_polynomial)
        .expect("polynomial value")
}

/// In the separable case the lines are conjugate iff `d^2 + d = N(q) + N(a(q))`
/// has a solution; here the sum is `(u+t)^3`.
fn separable_checks(
    ctx: &Ctx,
    q: &cliffpar_core::Quaternion,
    image: &cliffpar_core::Quaternion,
) -> Vec<Report> {
    let sum = as_poly(&(&ctx.alg.norm(q) + &ctx.alg.norm(image)));
    let cube = F2Poly::t().add(&F2Poly::u()).pow(3);
    vec![
        ctx.check("norm_sum", || {
            Report::expect("", sum == cube, &sum, format!("got {sum}, expected {cube}"))
        }),
        ctx.check("artin_schreier_unsolvable", || {
            match artin_schreier_solve(&sum) {
                None => Report::pass("", Some(format!("d^2+d = {sum} has no solution"))),
                Some(d) => Report::fail("", format!("solution d = {d}")),
            }
        }),
        ctx.check("artin_schreier_exhaustive_degree_2", || {
            let candidates = F2Poly::all_up_to_degree(2);
            match candidates.iter().find(|d| d.square().add(d) == sum) {
                None => Report::pass(
                    "",
                    Some(format!(
                        "none of {} candidates solves d^2+d = {sum}",
                        candidates.len()
                    )),
                ),
                Some(d) => Report::fail("", format!("solution d = {d}")),
            }
        }),
    ]
}

/// In the inseparable case `c q + d` has the minimal polynomial of `a(q)`
/// iff `c^2 N(q) + d^2 = N(a(q))`. For each `c = a/e` with `deg a, deg e <= 2`
/// the only candidate `d` is the square root of `N(a(q)) - c^2 N(q)`, so
/// checking that root covers every `d` of the same size.
fn insep_witness_search(
    ctx: &Ctx,
    q: &cliffpar_core::Quaternion,
    image: &cliffpar_core::Quaternion,
) -> Report {
    let n1 = ctx.alg.norm(q).as_f2().expect("F2(t,u)").clone();
    let n2 = ctx.alg.norm(image).as_f2().expect("F2(t,u)").clone();
    let polys = F2Poly::all_up_to_degree(2);
    let small = |p: &F2Poly| p.degree().is_none_or(|d| d <= 2);
    let mut tried = 0usize;
    for a in polys.iter().filter(|p| !p.is_zero()) {
        for e in polys.iter().filter(|p| !p.is_zero()) {
            if !a.gcd(e).is_one() {
                continue;
            }
            tried += 1;
            let c = F2RatFun::new(a.clone(), e.clone()).expect("nonzero denominator");
            let rest = n2.add(&c.square().mul(&n1));
            if let Some(d) = rest.sqrt() {
                if small(d.numerator()) && small(d.denominator()) {
                    return Report::fail("", format!("c = {c}, d = {d}"));
                }
            }
        }
    }
    Report::pass("", Some(format!("no (c, d) among {tried} reduced c")))
}
