#![allow(dead_code)]

use cliffpar_core::{
    CliffordLikeParallelism, DefiningSet, F2Poly, FieldConfig, FieldElem, FieldKind, Line,
    Quaternion, QuaternionAlgebra, Rational, SeparabilityFlag,
};
use proptest::prelude::*;

pub fn hamilton() -> QuaternionAlgebra {
    QuaternionAlgebra::ordinary_default(FieldConfig::rationals()).unwrap()
}

pub fn root3() -> QuaternionAlgebra {
    QuaternionAlgebra::ordinary_default(FieldConfig::quadratic(3).unwrap()).unwrap()
}

pub fn cyclic() -> QuaternionAlgebra {
    QuaternionAlgebra::cyclic_char2(FieldElem::from(F2Poly::t().add(&F2Poly::u()))).unwrap()
}

pub fn algebras() -> Vec<(&'static str, QuaternionAlgebra)> {
    vec![
        ("hamilton", hamilton()),
        ("root3", root3()),
        ("cyclic", cyclic()),
    ]
}

pub fn poly_from_mask(mask: u16) -> F2Poly {
    F2Poly::from_exponents(
        F2Poly::monomials_up_to(3)
            .into_iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p),
    )
}

pub fn elem(field: FieldConfig) -> BoxedStrategy<FieldElem> {
    match field.kind() {
        FieldKind::Rationals => (-9i64..=9).prop_map(move |n| field.from_int(n)).boxed(),
        FieldKind::QuadExt(_) => (-9i64..=9, -9i64..=9)
            .prop_map(move |(a, b)| {
                field
                    .quad(
                        Rational::from_integer(a.into()),
                        Rational::from_integer(b.into()),
                    )
                    .unwrap()
            })
            .boxed(),
        FieldKind::F2TU => (0u16..1024)
            .prop_map(|m| FieldElem::from(poly_from_mask(m)))
            .boxed(),
    }
}

pub fn nonzero_elem(field: FieldConfig) -> BoxedStrategy<FieldElem> {
    elem(field).prop_filter("nonzero", |x| !x.is_zero()).boxed()
}

pub fn quaternion(field: FieldConfig) -> BoxedStrategy<Quaternion> {
    prop::array::uniform4(elem(field))
        .prop_map(Quaternion::new)
        .boxed()
}

pub fn nonzero_quaternion(field: FieldConfig) -> BoxedStrategy<Quaternion> {
    quaternion(field)
        .prop_filter("nonzero", |q| !q.is_zero())
        .boxed()
}

pub fn line(field: FieldConfig) -> BoxedStrategy<Line> {
    (quaternion(field), quaternion(field))
        .prop_filter_map("independent", |(x, y)| Line::span(&x, &y).ok())
        .boxed()
}

pub fn star_line(field: FieldConfig) -> BoxedStrategy<Line> {
    quaternion(field)
        .prop_filter_map("not scalar", |q| Line::through_one(&q).ok())
        .boxed()
}

pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig::with_cases(n)
}

pub fn star(alg: &QuaternionAlgebra, generator: &str) -> Line {
    cliffpar_core::parse::parse_line(alg, &format!("span(1; {generator})")).unwrap()
}

/// The five worked scenarios plus one over `Q`: name, parallelism.
pub fn scenario_parallelisms() -> Vec<(&'static str, CliffordLikeParallelism)> {
    use SeparabilityFlag::{AllInseparable, AllSeparable};
    let build = |alg: QuaternionAlgebra, generator: &str, flags: Vec<SeparabilityFlag>| {
        let l = star(&alg, generator);
        CliffordLikeParallelism::new(alg, DefiningSet::new(vec![l], flags)).unwrap()
    };
    vec![
        ("hamilton", build(hamilton(), "i", vec![])),
        ("root3", build(root3(), "i+(1+s)*j", vec![])),
        ("c2-sep", build(cyclic(), "i+u*j", vec![])),
        ("c2-sep-old", build(cyclic(), "i+u*j", vec![AllInseparable])),
        ("c2-insep", build(cyclic(), "j+u*k", vec![])),
        ("c2-insep-old", build(cyclic(), "j+u*k", vec![AllSeparable])),
    ]
}
